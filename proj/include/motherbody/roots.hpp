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

#ifndef MOTHERBODY_ROOTS_HPP
#define MOTHERBODY_ROOTS_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <utility>
#include <vector>

#include "motherbody/unipoly.hpp"

namespace mbody {

struct RootCluster {
    Complex root;
    int multiplicity = 1;
};

namespace detail {

/* Simultaneous (Ehrlich–Aberth) iteration on a monic coefficient vector.
 * Returns true when every correction fell below the stopping tolerance.
 * Multiple roots converge linearly; the caller clusters them afterwards. */
inline bool aberth_iterate(const std::vector<Complex>& monic, std::vector<Complex>& z,
                           int max_iter = 400) {
    const int n = static_cast<int>(monic.size()) - 1;
    std::vector<Complex> pv(n), dv(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            // Horner for p and p'
            Complex p = monic[n], dp = 0.0;
            for (int i = n - 1; i >= 0; --i) {
                dp = dp * z[j] + p;
                p = p * z[j] + monic[i];
            }
            if (p == Complex(0.0, 0.0)) continue;
            Complex newton = (dp == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : p / dp;
            Complex repulse(0.0, 0.0);
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                Complex diff = z[j] - z[k];
                if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
                repulse += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * repulse;
            Complex delta = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            z[j] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[j])));
        }
        if (worst < 1e-14) return true;
    }
    return false;
}

inline std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, n - 1) = -monic[i];
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

}  // namespace detail

/* All complex roots (with multiplicity order preserved arbitrarily) of a
 * nonzero polynomial.  Ehrlich–Aberth first; companion-matrix eigenvalues
 * when the iteration stalls.  Degrees in the hundreds are routine. */
inline std::vector<Complex> all_roots(const UniPoly& p_in) {
    UniPoly p = p_in.trim_relative();
    if (p.is_zero()) throw ZeroPolynomial("root finding on the zero polynomial");
    std::vector<Complex> roots;

    // Strip exact zero roots first: leading zeros of the ascending vector.
    std::vector<Complex> cs(p.coeffs().begin(), p.coeffs().end());
    size_t zero_roots = 0;
    double cmax = p.max_coeff_magnitude();
    while (zero_roots < cs.size() - 1 && std::abs(cs[zero_roots]) <= 1e-14 * cmax) ++zero_roots;
    for (size_t i = 0; i < zero_roots; ++i) roots.emplace_back(0.0, 0.0);
    cs.erase(cs.begin(), cs.begin() + static_cast<long>(zero_roots));

    const int n = static_cast<int>(cs.size()) - 1;
    if (n == 0) return roots;
    std::vector<Complex> monic(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) monic[i] = cs[i] / cs.back();

    if (n == 1) {
        roots.push_back(-monic[0]);
        return roots;
    }
    if (n == 2) {
        Complex b = monic[1], c = monic[0];
        Complex disc = std::sqrt(b * b - 4.0 * c);
        // Citardauq ordering to avoid cancellation
        Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
        roots.push_back(q);
        roots.push_back(std::abs(q) > 0 ? c / q : -b - q);
        return roots;
    }

    // Initial guesses on a circle sized by the Fujiwara-style bound.
    double r = 0.0;
    for (int k = 1; k <= n; ++k)
        r = std::max(r, 2.0 * std::pow(std::abs(monic[n - k]), 1.0 / k));
    r = std::max(r, 0.5);
    std::vector<Complex> z(n);
    for (int j = 0; j < n; ++j) {
        double th = 2.0 * kPi * j / n + 0.4;
        z[j] = r * Complex(std::cos(th), std::sin(th));
    }

    bool ok = detail::aberth_iterate(monic, z);
    if (!ok) z = detail::companion_roots(monic);
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

/* Cluster within radius 1e-8*(1+|root|) and replace each cluster by its
 * mean.  The mean is what restores accuracy for multiple roots: the
 * individual approximations scatter like eps^(1/m) but symmetrically. */
inline std::vector<RootCluster> cluster_roots(std::vector<Complex> roots,
                                              double rel_radius = 1e-8) {
    std::vector<RootCluster> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> members{i};
        used[i] = true;
        // grow the cluster transitively
        for (size_t gi = 0; gi < members.size(); ++gi) {
            for (size_t j = 0; j < roots.size(); ++j) {
                if (used[j]) continue;
                double rad = rel_radius * (1.0 + std::abs(roots[members[gi]]));
                if (std::abs(roots[j] - roots[members[gi]]) <= rad) {
                    used[j] = true;
                    members.push_back(j);
                }
            }
        }
        Complex mean(0.0, 0.0);
        for (size_t m : members) mean += roots[m];
        mean /= static_cast<double>(members.size());
        out.push_back({mean, static_cast<int>(members.size())});
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
    return out;
}

inline std::vector<RootCluster> poly_roots(const UniPoly& p) {
    return cluster_roots(all_roots(p));
}

namespace detail {

/* Balanced product of (z - r) factors.  Roots are sorted by angle and the
 * recursion splits even/odd positions, so subproducts of circle-like root
 * clouds keep O(1) coefficients instead of the exponentially large arc
 * products a sequential multiply would run through. */
inline UniPoly balanced_from_roots(std::vector<Complex> rs) {
    if (rs.empty()) return UniPoly::constant(Complex(1.0, 0.0));
    if (rs.size() == 1) return UniPoly::linear_root(rs[0]);
    std::sort(rs.begin(), rs.end(), [](const Complex& a, const Complex& b) {
        double pa = std::atan2(a.imag(), a.real()), pb = std::atan2(b.imag(), b.real());
        if (pa != pb) return pa < pb;
        return std::abs(a) < std::abs(b);
    });
    std::vector<Complex> even, odd;
    for (size_t i = 0; i < rs.size(); ++i) (i % 2 ? odd : even).push_back(rs[i]);
    return balanced_from_roots(std::move(even)) * balanced_from_roots(std::move(odd));
}

}  // namespace detail

/* Leading-coefficient * prod (z - r_i)^{m_i}; used by tests to check the
 * reconstruction residual, and by the rational-function reduction. */
inline UniPoly from_roots(const std::vector<RootCluster>& clusters, Complex lc) {
    std::vector<Complex> rs;
    for (const auto& c : clusters)
        for (int m = 0; m < c.multiplicity; ++m) rs.push_back(c.root);
    return lc * detail::balanced_from_roots(std::move(rs));
}

/* Sylvester-matrix resultant (LU determinant). */
inline Complex resultant(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("resultant with zero polynomial");
    const int n = p.degree(), m = q.degree();
    if (n == 0) return std::pow(p.coeff(0), m);
    if (m == 0) return std::pow(q.coeff(0), n);
    const int size = n + m;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k) s(row, row + k) = p.coeff(n - k);
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k) s(m + row, row + k) = q.coeff(m - k);
    return s.determinant();
}

/* True iff gcd(p, q) is constant.  Float mode guards the zero test of the
 * resultant against the Hadamard scale of the Sylvester matrix. */
inline bool coprime(const UniPoly& p, const UniPoly& q, double tol = 1e-10) {
    if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("coprime test with zero polynomial");
    Complex res = resultant(p, q);
    double scale = 1.0;
    {
        const int n = p.degree(), m = q.degree();
        double pr = 0.0, qr = 0.0;
        for (int i = 0; i <= n; ++i) pr += std::norm(p.coeff(i));
        for (int i = 0; i <= m; ++i) qr += std::norm(q.coeff(i));
        scale = std::pow(std::sqrt(pr), m) * std::pow(std::sqrt(qr), n);
    }
    return std::abs(res) > tol * scale;
}

/* Q^2 - 4 P R, the discriminant of P*C^2 + Q*C + R = 0 in C. */
inline UniPoly discriminant_D(const UniPoly& p, const UniPoly& q, const UniPoly& r) {
    return q * q - Complex(4.0, 0.0) * (p * r);
}

/* Residue num/den at a simple root z0 of den: num(z0)/den'(z0). */
inline Complex residue_at(const UniPoly& num, const UniPoly& den, Complex z0, double tol = 1e-8) {
    Complex dp = den.derivative()(z0);
    double scale = den.derivative().magnitude_at(std::abs(z0));
    if (std::abs(dp) <= tol * (1.0 + scale))
        throw NotSimplePole("den' vanishes at the pole; pole is not simple");
    Complex nv = num(z0);
    return nv / dp;
}

}  // namespace mbody

#endif  // MOTHERBODY_ROOTS_HPP
