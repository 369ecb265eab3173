/*
 * Copyright 2026 the motherbody toolkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MOTHERBODY_UNIPOLY_HPP
#define MOTHERBODY_UNIPOLY_HPP

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "motherbody/common.hpp"
#include "motherbody/exactq.hpp"

namespace mbody {

/* Dense univariate polynomial over K, coefficients in ascending degree.
 * The zero polynomial is the empty coefficient vector.  Construction
 * trims exact zeros only; callers strip numerically-negligible leading
 * coefficients explicitly when they know the scale (trim_relative). */
template <class K>
class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<K> cs) : coeffs_(cs) { trim(); }
    explicit Poly(std::vector<K> cs) : coeffs_(std::move(cs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const K& c) { return Poly(std::vector<K>{c}); }
    static Poly identity() { return Poly(std::vector<K>{ScalarOps<K>::zero(), ScalarOps<K>::one()}); }

    /* (z - r) */
    static Poly linear_root(const K& r) {
        return Poly(std::vector<K>{-r, ScalarOps<K>::one()});
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const K& operator[](size_t i) const { return coeffs_[i]; }
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return ScalarOps<K>::zero();
        return coeffs_[i];
    }
    const std::vector<K>& coeffs() const { return coeffs_; }

    K leading() const {
        if (is_zero()) throw ZeroPolynomial("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    K operator()(const K& z) const {  // Horner
        K acc = ScalarOps<K>::zero();
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<K> d(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) {
            K k = ScalarOps<K>::zero();
            for (size_t j = 0; j < i; ++j) k += ScalarOps<K>::one();  // i as K
            d[i - 1] = coeffs_[i] * k;
        }
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> c(std::max(a.coeffs_.size(), b.coeffs_.size()), ScalarOps<K>::zero());
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<K> c(std::max(a.coeffs_.size(), b.coeffs_.size()), ScalarOps<K>::zero());
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<K> c(a.coeffs_);
        for (auto& x : c) x = -x;
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> c(a.coeffs_.size() + b.coeffs_.size() - 1, ScalarOps<K>::zero());
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const K& s, const Poly& a) {
        std::vector<K> c(a.coeffs_);
        for (auto& x : c) x = s * x;
        return Poly(std::move(c));
    }

    /* Synthetic division by (z - r); returns quotient, writes remainder = p(r). */
    Poly deflate(const K& r, K* remainder = nullptr) const {
        if (is_zero()) {
            if (remainder) *remainder = ScalarOps<K>::zero();
            return Poly();
        }
        std::vector<K> q(coeffs_.size() - 1, ScalarOps<K>::zero());
        K carry = ScalarOps<K>::zero();
        for (int i = degree(); i >= 1; --i) {
            carry = coeffs_[i] + carry * r;
            q[i - 1] = carry;
        }
        if (remainder) *remainder = coeffs_[0] + carry * r;
        return Poly(std::move(q));
    }

    /* Magnitude reference Σ|a_k||z|^k for relative residual tests. */
    double magnitude_at(double absz) const {
        double s = 0.0, p = 1.0;
        for (const auto& c : coeffs_) {
            s += ScalarOps<K>::magnitude(c) * p;
            p *= absz;
        }
        return s;
    }

    double max_coeff_magnitude() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, ScalarOps<K>::magnitude(c));
        return m;
    }

    /* Drop leading coefficients below tol relative to the largest one. */
    Poly trim_relative(double tol = 1e-12) const {
        double m = max_coeff_magnitude();
        std::vector<K> c(coeffs_);
        while (!c.empty() && ScalarOps<K>::magnitude(c.back()) <= tol * m) c.pop_back();
        return Poly(std::move(c));
    }

    template <class L>
    Poly<L> convert() const {
        std::vector<L> c;
        c.reserve(coeffs_.size());
        for (const auto& x : coeffs_) c.push_back(static_cast<L>(ScalarOps<K>::to_complex(x)));
        return Poly<L>(std::move(c));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  private:
    void trim() {
        while (!coeffs_.empty() && ScalarOps<K>::is_zero(coeffs_.back(), 0.0) &&
               ScalarOps<K>::magnitude(coeffs_.back()) == 0.0)
            coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

using UniPoly = Poly<Complex>;
using ExactUniPoly = Poly<ExactComplex>;

inline UniPoly real_poly(std::initializer_list<double> cs) {
    std::vector<Complex> c;
    c.reserve(cs.size());
    for (double x : cs) c.emplace_back(x, 0.0);
    return UniPoly(std::move(c));
}

}  // namespace mbody

#endif  // MOTHERBODY_UNIPOLY_HPP
