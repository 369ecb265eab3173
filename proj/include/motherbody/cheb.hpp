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

#ifndef MOTHERBODY_CHEB_HPP
#define MOTHERBODY_CHEB_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <vector>

#include "motherbody/unipoly.hpp"

namespace mbody {

/* Chebyshev-basis helpers for high-degree polynomials whose roots live on
 * or near a real interval [-s, s].  Monomial coefficients of such
 * polynomials are exponentially ill-conditioned for root extraction; the
 * T-basis keeps the coefficient vector O(1) and the colleague matrix makes
 * rootfinding a stable eigenvalue problem. */
namespace cheb {

/* Coefficients c with p(z) = sum c_m T_m(z / s). */
struct Series {
    double scale = 1.0;
    std::vector<Complex> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
};

/* Derivative with respect to z (not the scaled variable). */
inline std::vector<Complex> derivative(const std::vector<Complex>& a, double scale) {
    const int n = static_cast<int>(a.size()) - 1;
    if (n <= 0) return {};
    std::vector<Complex> b(static_cast<size_t>(n), Complex(0.0, 0.0));
    // descending recurrence b_{m} = b_{m+2} + 2 (m+1) a_{m+1}
    for (int m = n - 1; m >= 0; --m) {
        Complex high = (m + 2 <= n - 1) ? b[static_cast<size_t>(m + 2)] : Complex(0.0, 0.0);
        b[static_cast<size_t>(m)] = high + 2.0 * static_cast<double>(m + 1) * a[static_cast<size_t>(m + 1)];
    }
    b[0] *= 0.5;
    for (auto& x : b) x /= scale;
    return b;
}

/* Product with another T-series (T_a T_b = (T_{a+b} + T_{|a-b|}) / 2). */
inline std::vector<Complex> multiply(const std::vector<Complex>& a,
                                     const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0, 0.0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Complex(0.0, 0.0)) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            Complex v = 0.5 * a[i] * b[j];
            out[i + j] += v;
            out[static_cast<size_t>(std::abs(static_cast<long>(i) - static_cast<long>(j)))] += v;
        }
    }
    return out;
}

/* Monomial polynomial converted to T coefficients on [-s, s]. */
inline std::vector<Complex> from_poly(const UniPoly& p, double scale) {
    std::vector<Complex> acc{Complex(0.0, 0.0)};
    // Horner in the scaled variable: acc = acc * (s y) + coeff
    std::vector<Complex> y{Complex(0.0, 0.0), Complex(1.0, 0.0)};  // T_1
    for (int i = p.degree(); i >= 0; --i) {
        acc = multiply(acc, y);
        for (auto& x : acc) x *= scale;
        if (acc.empty()) acc.assign(1, Complex(0.0, 0.0));
        acc[0] += p.coeff(i);
    }
    return acc;
}

/* Clenshaw evaluation at a complex point. */
inline Complex evaluate(const Series& s, Complex z) {
    Complex y = z / s.scale;
    Complex b1(0.0, 0.0), b2(0.0, 0.0);
    for (int m = s.degree(); m >= 1; --m) {
        Complex b0 = 2.0 * y * b1 - b2 + s.c[static_cast<size_t>(m)];
        b2 = b1;
        b1 = b0;
    }
    return y * b1 - b2 + s.c[0];
}

inline double coeff_norm(const Series& s) {
    double m = 0.0;
    for (const auto& x : s.c) m += std::abs(x);
    return m;
}

/* Roots via the colleague matrix of the normalized coefficient vector:
 * multiplication by y in the T-basis, with T_n eliminated through p = 0. */
inline std::vector<Complex> roots(const Series& s) {
    std::vector<Complex> a = s.c;
    while (!a.empty() && std::abs(a.back()) == 0.0) a.pop_back();
    const int n = static_cast<int>(a.size()) - 1;
    if (n <= 0) return {};
    for (auto& x : a) x /= a[static_cast<size_t>(n)];
    if (n == 1) return {-a[0] * s.scale};

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(0, 1) = 1.0;
    for (int j = 1; j < n; ++j) {
        m(j, j - 1) = 0.5;
        if (j + 1 < n) m(j, j + 1) = 0.5;
    }
    for (int j = 0; j < n; ++j) m(n - 1, j) -= 0.5 * a[static_cast<size_t>(j)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i) * s.scale;
    return out;
}

/* Newton polish in the T-basis; a couple of steps reach machine accuracy
 * for simple roots and cost next to nothing. */
inline void polish(const Series& s, std::vector<Complex>& rs, int steps = 3) {
    Series d{s.scale, derivative(s.c, s.scale)};
    for (auto& r : rs) {
        for (int it = 0; it < steps; ++it) {
            Complex pv = evaluate(s, r);
            Complex dv = evaluate(d, r);
            if (std::abs(dv) == 0.0) break;
            Complex step = pv / dv;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            if (std::abs(step) > 0.1 * (1.0 + std::abs(r))) break;
            r -= step;
        }
    }
}

}  // namespace cheb
}  // namespace mbody

#endif  // MOTHERBODY_CHEB_HPP
