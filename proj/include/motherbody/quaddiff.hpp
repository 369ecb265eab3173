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

#ifndef MOTHERBODY_QUADDIFF_HPP
#define MOTHERBODY_QUADDIFF_HPP

#include <optional>
#include <string>
#include <vector>

#include "motherbody/roots.hpp"

namespace mbody {

/* Rational function in factored form: lead * prod (z - r)^m with m of
 * either sign.  The factored representation keeps singularity orders exact
 * after the numerator/denominator cancellation and makes local leading
 * coefficients a one-line evaluation. */
struct FactoredRational {
    Complex lead{1.0, 0.0};
    std::vector<std::pair<Complex, int>> factors;  // (root, signed order)

    bool is_zero() const { return lead == Complex(0.0, 0.0); }

    Complex eval(Complex z) const {
        Complex v = lead;
        for (const auto& [r, m] : factors) {
            Complex d = z - r;
            if (m > 0)
                for (int t = 0; t < m; ++t) v *= d;
            else
                for (int t = 0; t < -m; ++t) v /= d;
        }
        return v;
    }

    /* Leading local coefficient at a stored root: lim f / (z - r)^m. */
    Complex local_coeff(size_t idx) const {
        Complex v = lead;
        const Complex r0 = factors[idx].first;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i == idx) continue;
            const auto& [r, m] = factors[i];
            Complex d = r0 - r;
            if (m > 0)
                for (int t = 0; t < m; ++t) v *= d;
            else
                for (int t = 0; t < -m; ++t) v /= d;
        }
        return v;
    }

    int degree_at_infinity() const {  // f ~ lead_eff * z^deg
        int d = 0;
        for (const auto& [r, m] : factors) d += m;
        return d;
    }
};

/* num/den reduced by cancelling clustered common roots. */
inline FactoredRational reduce_rational(const UniPoly& num, const UniPoly& den,
                                        double cluster_tol = 1e-7) {
    if (den.trim_relative().is_zero()) throw ZeroPolynomial("rational with zero denominator");
    FactoredRational f;
    if (num.trim_relative().is_zero()) {
        f.lead = Complex(0.0, 0.0);
        return f;
    }
    auto nz = poly_roots(num.trim_relative());
    auto dz = poly_roots(den.trim_relative());
    for (auto& d : dz) {
        for (auto& n : nz) {
            if (n.multiplicity == 0 || d.multiplicity == 0) continue;
            if (std::abs(n.root - d.root) <= cluster_tol * (1.0 + std::abs(d.root))) {
                int c = std::min(n.multiplicity, d.multiplicity);
                n.multiplicity -= c;
                d.multiplicity -= c;
            }
        }
    }
    f.lead = num.trim_relative().leading() / den.trim_relative().leading();
    for (const auto& n : nz)
        if (n.multiplicity > 0) f.factors.emplace_back(n.root, n.multiplicity);
    for (const auto& d : dz)
        if (d.multiplicity > 0) f.factors.emplace_back(d.root, -d.multiplicity);
    return f;
}

struct SingularPoint {
    enum class Kind { Zero, SimplePole, DoublePole, HigherPole };
    Complex location;
    int order = 0;          // phi ~ local_coeff * (z - location)^order
    Complex local_coeff;
    Kind kind = Kind::Zero;
    std::vector<double> directions;  // trajectory launch angles (order + 2 of them)
};

/* The differential attached to P C^2 + Q C + R = 0.  phi carries the
 * trajectory field: Theta = -D/P^2 dz^2 in general, Psi = R/P dz^2 when
 * Q = 0 (the two differ by the positive factor 4 there, which leaves the
 * trajectories unchanged but matches the pole-order bookkeeping of the
 * Strebel analysis). */
struct QuadraticDifferential {
    UniPoly P, Q, R;
    UniPoly D;               // Q^2 - 4 P R
    FactoredRational phi;
    bool q_is_zero = false;
    bool degenerate = false;  // phi == 0
    int infinity_order = 0;   // pole order of phi dz^2 at infinity (negative: zero)
    Complex infinity_coeff;   // leading coefficient in the 1/z chart
};

namespace detail {

inline void fill_infinity(QuadraticDifferential& qd) {
    if (qd.degenerate) return;
    int m = qd.phi.degree_at_infinity();
    qd.infinity_order = m + 4;
    qd.infinity_coeff = qd.phi.lead;
}

}  // namespace detail

inline QuadraticDifferential build_theta(const UniPoly& p, const UniPoly& q, const UniPoly& r) {
    if (p.trim_relative().is_zero()) throw ZeroPolynomial("P must be nonzero");
    QuadraticDifferential qd;
    qd.P = p.trim_relative();
    qd.Q = q.trim_relative();
    qd.R = r.trim_relative();
    qd.D = discriminant_D(qd.P, qd.Q, qd.R).trim_relative();
    qd.q_is_zero = qd.Q.is_zero();
    UniPoly num = (Complex(-1.0, 0.0) * qd.D).trim_relative();
    if (num.is_zero()) {
        qd.degenerate = true;
        return qd;
    }
    if (qd.q_is_zero) {
        // Psi = R/P; same trajectories as -D/P^2 = 4R/P
        qd.phi = reduce_rational(qd.R, qd.P);
    } else {
        qd.phi = reduce_rational(num, qd.P * qd.P);
    }
    detail::fill_infinity(qd);
    return qd;
}

inline std::vector<SingularPoint> singular_points(const QuadraticDifferential& qd) {
    if (qd.degenerate) throw DegenerateDifferential("phi vanishes identically");
    std::vector<SingularPoint> out;
    for (size_t i = 0; i < qd.phi.factors.size(); ++i) {
        const auto& [r, m] = qd.phi.factors[i];
        SingularPoint sp;
        sp.location = r;
        sp.order = m;
        sp.local_coeff = qd.phi.local_coeff(i);
        if (m > 0)
            sp.kind = SingularPoint::Kind::Zero;
        else if (m == -1)
            sp.kind = SingularPoint::Kind::SimplePole;
        else if (m == -2)
            sp.kind = SingularPoint::Kind::DoublePole;
        else
            sp.kind = SingularPoint::Kind::HigherPole;
        if (m >= -1) {
            // the m+2 directions theta with arg(c) + (m+2) theta = 0 mod 2 pi
            int count = m + 2;
            double base = -std::arg(sp.local_coeff) / (m + 2);
            for (int l = 0; l < count; ++l)
                sp.directions.push_back(base + 2.0 * kPi * l / (m + 2));
        }
        out.push_back(std::move(sp));
    }
    std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

inline Complex phi_eval(const QuadraticDifferential& qd, Complex z) { return qd.phi.eval(z); }

}  // namespace mbody

#endif  // MOTHERBODY_QUADDIFF_HPP
