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

#ifndef MOTHERBODY_BIPOLY_HPP
#define MOTHERBODY_BIPOLY_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "motherbody/unipoly.hpp"

namespace mbody {

/* Exponent pair: first = power of the transform variable C, second = power
 * of z.  Kept as a plain pair so it can key a std::map. */
using Exponent = std::pair<int, int>;

/* Sparse bivariate polynomial sum alpha_{i,j} C^i z^j.  Stored coefficients
 * are never zero; the support is exactly the key set. */
template <class K>
class BiPolyT {
  public:
    BiPolyT() = default;

    void set(int i, int j, const K& coeff) {
        if (ScalarOps<K>::magnitude(coeff) == 0.0) {
            monomials_.erase({i, j});
        } else {
            monomials_[{i, j}] = coeff;
        }
    }

    K coeff(int i, int j) const {
        auto it = monomials_.find({i, j});
        return it == monomials_.end() ? ScalarOps<K>::zero() : it->second;
    }

    const std::map<Exponent, K>& monomials() const { return monomials_; }
    bool is_zero() const { return monomials_.empty(); }

    int max_c_degree() const {
        int d = 0;
        for (const auto& [e, c] : monomials_) d = std::max(d, e.first);
        return d;
    }

    /* Coefficient of C^i as a polynomial in z. */
    Poly<K> c_coefficient(int i) const {
        int dz = 0;
        for (const auto& [e, c] : monomials_)
            if (e.first == i) dz = std::max(dz, e.second);
        std::vector<K> out(static_cast<size_t>(dz) + 1, ScalarOps<K>::zero());
        bool any = false;
        for (const auto& [e, c] : monomials_)
            if (e.first == i) {
                out[static_cast<size_t>(e.second)] = c;
                any = true;
            }
        if (!any) return Poly<K>();
        return Poly<K>(std::move(out));
    }

    K evaluate(const K& c, const K& z) const {
        K acc = ScalarOps<K>::zero();
        for (const auto& [e, a] : monomials_) {
            K term = a;
            for (int t = 0; t < e.first; ++t) term *= c;
            for (int t = 0; t < e.second; ++t) term *= z;
            acc += term;
        }
        return acc;
    }

    BiPolyT scaled(const K& s) const {
        BiPolyT out;
        for (const auto& [e, a] : monomials_) out.set(e.first, e.second, s * a);
        return out;
    }

    double max_coeff_magnitude() const {
        double m = 0.0;
        for (const auto& [e, a] : monomials_) m = std::max(m, ScalarOps<K>::magnitude(a));
        return m;
    }

    template <class L>
    BiPolyT<L> convert() const {
        BiPolyT<L> out;
        for (const auto& [e, a] : monomials_)
            out.set(e.first, e.second, static_cast<L>(ScalarOps<K>::to_complex(a)));
        return out;
    }

  private:
    std::map<Exponent, K> monomials_;
};

using BiPoly = BiPolyT<Complex>;
using ExactBiPoly = BiPolyT<ExactComplex>;

/* Support of a bivariate polynomial together with its Newton polygon and
 * the minimum of i - j over the support. */
struct NewtonSupport {
    std::set<Exponent> points;
    std::vector<Exponent> hull;  // convex hull vertices, counterclockwise
    int M = 0;
};

namespace detail {

inline long long cross(const Exponent& o, const Exponent& a, const Exponent& b) {
    return static_cast<long long>(a.first - o.first) * (b.second - o.second) -
           static_cast<long long>(a.second - o.second) * (b.first - o.first);
}

/* Andrew monotone chain; strict turns, so collinear interior points are
 * dropped and a fully collinear set yields a 2-vertex "hull". */
inline std::vector<Exponent> convex_hull(std::vector<Exponent> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Exponent> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace detail

template <class K>
NewtonSupport newton_support(const BiPolyT<K>& p) {
    if (p.is_zero()) throw ZeroPolynomial("newton support of the zero polynomial");
    NewtonSupport s;
    bool first = true;
    std::vector<Exponent> pts;
    for (const auto& [e, a] : p.monomials()) {
        s.points.insert(e);
        pts.push_back(e);
        int d = e.first - e.second;
        if (first || d < s.M) s.M = d;
        first = false;
    }
    s.hull = detail::convex_hull(std::move(pts));
    return s;
}

}  // namespace mbody

#endif  // MOTHERBODY_BIPOLY_HPP
