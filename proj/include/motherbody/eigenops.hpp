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

#ifndef MOTHERBODY_EIGENOPS_HPP
#define MOTHERBODY_EIGENOPS_HPP

#include <utility>
#include <vector>

#include "motherbody/branch.hpp"
#include "motherbody/cheb.hpp"
#include "motherbody/roots.hpp"

namespace mbody {

/* Linear differential operator sum Q_i(z) d^i/dz^i with deg Q_i <= i and
 * equality for at least one i.  Such an operator maps a degree-m polynomial
 * to a polynomial of degree at most m, which makes its spectral problem
 * triangular in the monomial basis. */
struct ExactlySolvableOperator {
    int k = 0;                 // order
    std::vector<UniPoly> qs;   // Q_1..Q_k, qs[i-1] is Q_i
    int j0 = 0;                // largest i with deg Q_i == i
    bool nondegenerate = false;

    const UniPoly& q(int i) const { return qs[static_cast<size_t>(i - 1)]; }
    Complex diag_coeff(int i) const {  // a_{i,i}
        const UniPoly& qi = q(i);
        return qi.degree() == i ? qi.leading() : Complex(0.0, 0.0);
    }
};

inline ExactlySolvableOperator make_operator(std::vector<UniPoly> qs) {
    ExactlySolvableOperator op;
    while (!qs.empty() && qs.back().is_zero()) qs.pop_back();
    if (qs.empty()) throw ZeroPolynomial("operator with no coefficients");
    op.k = static_cast<int>(qs.size());
    op.qs = std::move(qs);
    op.j0 = 0;
    for (int i = 1; i <= op.k; ++i) {
        if (op.qs[static_cast<size_t>(i - 1)].degree() > i)
            throw AnalysisError("NotExactlySolvable", "deg Q_" + std::to_string(i) +
                                                          " exceeds " + std::to_string(i));
        if (op.qs[static_cast<size_t>(i - 1)].degree() == i) op.j0 = i;
    }
    if (op.j0 == 0)
        throw AnalysisError("NotExactlySolvable", "no i with deg Q_i == i");
    op.nondegenerate = (op.j0 == op.k);
    return op;
}

/* Operator attached to a balanced equation: P is rescaled so its constant
 * term equals -1 and the C^i coefficients become the Q_i. */
inline ExactlySolvableOperator operator_from_balanced(const BiPoly& p) {
    if (!is_balanced(p)) throw NotBalanced("support has min(i - j) != 0");
    Complex c0 = p.coeff(0, 0);
    if (std::abs(c0) <= 1e-14 * p.max_coeff_magnitude())
        throw NoConstantTerm("constant term vanishes");
    auto rep = probability_branch_test(p);
    if (!rep.necessary_holds || !rep.sufficient_holds)
        throw NoProbabilityBranch("equation has no (unique) probability branch");

    BiPoly scaled = p.scaled(Complex(-1.0, 0.0) / c0);
    std::vector<UniPoly> qs;
    int k = scaled.max_c_degree();
    for (int i = 1; i <= k; ++i) qs.push_back(scaled.c_coefficient(i).trim_relative());
    return make_operator(std::move(qs));
}

namespace detail {

inline double falling_factorial(long n, int i) {
    double f = 1.0;
    for (int t = 0; t < i; ++t) f *= static_cast<double>(n - t);
    return f;
}

}  // namespace detail

/* Polynomial in lambda whose roots are the degree-n eigenvalues:
 * lambda^k - sum_i a_{i,i} n(n-1)...(n-i+1) lambda^{k-i}. */
inline UniPoly eigenvalue_equation(const ExactlySolvableOperator& op, long n) {
    std::vector<Complex> v(static_cast<size_t>(op.k) + 1, Complex(0.0, 0.0));
    v[static_cast<size_t>(op.k)] = 1.0;
    for (int i = 1; i <= op.k; ++i)
        v[static_cast<size_t>(op.k - i)] = -op.diag_coeff(i) * detail::falling_factorial(n, i);
    return UniPoly(std::move(v));
}

/* Same equation for the normalized eigenvalue lambda/n at n = infinity:
 * lambda^k - sum_i a_{i,i} lambda^{k-i}. */
inline UniPoly normalized_eigenvalue_equation(const ExactlySolvableOperator& op) {
    std::vector<Complex> v(static_cast<size_t>(op.k) + 1, Complex(0.0, 0.0));
    v[static_cast<size_t>(op.k)] = 1.0;
    for (int i = 1; i <= op.k; ++i) v[static_cast<size_t>(op.k - i)] = -op.diag_coeff(i);
    return UniPoly(std::move(v));
}

/* All k eigenvalues for degree n, with multiplicity.  For a degenerate
 * operator exactly k - j0 of them vanish. */
inline std::vector<Complex> eigenvalues_for_degree(const ExactlySolvableOperator& op, long n) {
    std::vector<Complex> out;
    for (const auto& cl : poly_roots(eigenvalue_equation(op, n)))
        for (int m = 0; m < cl.multiplicity; ++m) out.push_back(cl.root);
    return out;
}

struct PrincipalEigenvalue {
    long n = 0;
    Complex lambda;
};

/* The eigenvalue branch with lambda_n / n -> 1, selected by greedy
 * nearest-neighbor continuation of lambda/n starting from the n_max end
 * where the branches are guaranteed separated.  Requires 1 to be a simple
 * root of the normalized equation. */
inline std::vector<PrincipalEigenvalue> select_principal_sequence(
    const ExactlySolvableOperator& op, long n_max) {
    UniPoly e = normalized_eigenvalue_equation(op);
    double scale = e.magnitude_at(1.0);
    if (std::abs(e(Complex(1.0, 0.0))) > 1e-9 * scale)
        throw NoUnitRoot("1 is not a root of the normalized eigenvalue equation");
    if (std::abs(e.derivative()(Complex(1.0, 0.0))) <= 1e-9 * scale)
        throw MultipleRootLambda("1 is a multiple root of the normalized eigenvalue equation");

    std::vector<PrincipalEigenvalue> out;
    Complex target(1.0, 0.0);
    for (long n = n_max; n >= op.k; --n) {
        auto lambdas = eigenvalues_for_degree(op, n);
        Complex best = lambdas.front();
        double bd = 1e300;
        for (const auto& l : lambdas) {
            double d = std::abs(l / static_cast<double>(n) - target);
            if (d < bd) {
                bd = d;
                best = l;
            }
        }
        out.push_back({n, best});
        target = best / static_cast<double>(n);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

struct EigenPair {
    long n = 0;
    Complex lambda;
    UniPoly p;          // monic, degree n
    cheb::Series basis;  // T-basis copy for large n, where monomial
                         // coefficients no longer pin the roots
};

namespace detail {

/* Basis interval half-width for the T-basis solve: the root support of the
 * principal chain ends near the zeros of the leading coefficients, so size
 * the interval by them. */
inline double cheb_scale(const ExactlySolvableOperator& op) {
    double s = 0.5;
    for (int i = 1; i <= op.k; ++i) {
        const UniPoly& qi = op.q(i);
        if (qi.is_zero() || qi.degree() == 0) continue;
        for (const auto& cl : poly_roots(qi)) s = std::max(s, std::abs(cl.root));
    }
    return s;
}

/* Same triangular solve as the monomial path, carried out in Chebyshev
 * coefficients on [-s, s].  The operator image of T_l is computed by the
 * T-basis derivative and product recurrences, so nothing ever passes
 * through the ill-conditioned monomial representation. */
inline cheb::Series eigenpolynomial_cheb(const ExactlySolvableOperator& op, long n,
                                         Complex lambda, double tol) {
    const int k = op.k;
    const double scale = cheb_scale(op);
    std::vector<Complex> lpow(static_cast<size_t>(k) + 1);
    lpow[static_cast<size_t>(k)] = 1.0;
    for (int i = k - 1; i >= 0; --i) lpow[static_cast<size_t>(i)] = lpow[static_cast<size_t>(i + 1)] * lambda;
    const Complex lk = lpow[0];
    const double ref = 1.0 + std::abs(lk);

    std::vector<std::vector<Complex>> qc(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i)
        qc[static_cast<size_t>(i - 1)] = cheb::from_poly(op.q(i), scale);

    // columns of the operator image, column l = coefficients of A T_l
    std::vector<std::vector<Complex>> col(static_cast<size_t>(n) + 1);
    for (long l = 0; l <= n; ++l) {
        std::vector<Complex> img(static_cast<size_t>(l) + 1, Complex(0.0, 0.0));
        std::vector<Complex> d(static_cast<size_t>(l) + 1, Complex(0.0, 0.0));
        d.back() = 1.0;
        for (int i = 1; i <= k; ++i) {
            d = cheb::derivative(d, scale);
            if (d.empty()) break;
            if (op.q(i).is_zero()) continue;
            auto term = cheb::multiply(qc[static_cast<size_t>(i - 1)], d);
            for (size_t t = 0; t < term.size(); ++t) {
                if (t < img.size())
                    img[t] += lpow[static_cast<size_t>(i)] * term[t];
            }
        }
        col[static_cast<size_t>(l)] = std::move(img);
    }

    std::vector<Complex> c(static_cast<size_t>(n) + 1, Complex(0.0, 0.0));
    c[static_cast<size_t>(n)] = 1.0;
    for (long m = n - 1; m >= 0; --m) {
        Complex s(0.0, 0.0);
        for (long l = m + 1; l <= n; ++l) {
            const auto& cl = col[static_cast<size_t>(l)];
            if (m < static_cast<long>(cl.size())) s += cl[static_cast<size_t>(m)] * c[static_cast<size_t>(l)];
        }
        Complex denom = col[static_cast<size_t>(m)][static_cast<size_t>(m)] - lk;
        if (std::abs(denom) <= tol * ref)
            throw Resonance("degree-" + std::to_string(m) +
                            " diagonal entry collides with lambda^k");
        c[static_cast<size_t>(m)] = -s / denom;
    }
    return {scale, std::move(c)};
}

}  // namespace detail

/* Monic degree-n solution of the lambda-weighted spectral identity
 *
 *   Q_k p^(k) + lambda Q_{k-1} p^(k-1) + ... + lambda^{k-1} Q_1 p' = lambda^k p
 *
 * by back-substitution: the left side maps z^m to degree <= m, so after
 * fixing the leading coefficient the system is triangular.  The diagonal
 * entry at degree m is sum_i lambda^{k-i} a_{i,i} m(m-1)...(m-i+1); a
 * collision with lambda^k below degree n is a resonance. */
inline EigenPair eigenpolynomial(const ExactlySolvableOperator& op, long n, Complex lambda,
                                 double tol = 1e-10) {
    const int k = op.k;
    std::vector<Complex> lpow(static_cast<size_t>(k) + 1);  // lpow[i] = lambda^{k-i}
    lpow[static_cast<size_t>(k)] = 1.0;
    for (int i = k - 1; i >= 0; --i) lpow[static_cast<size_t>(i)] = lpow[static_cast<size_t>(i + 1)] * lambda;

    auto diag = [&](long m) {
        Complex d(0.0, 0.0);
        for (int i = 1; i <= std::min<long>(k, m); ++i)
            d += lpow[static_cast<size_t>(i)] * op.diag_coeff(i) * detail::falling_factorial(m, i);
        return d;
    };
    const Complex lk = lpow[0];
    const double ref = 1.0 + std::abs(lk);

    if (std::abs(diag(n) - lk) > std::max(tol, 1e-8) * (ref + std::abs(diag(n))))
        throw NoSolution("lambda does not satisfy the degree-" + std::to_string(n) +
                         " eigenvalue equation");

    std::vector<Complex> c(static_cast<size_t>(n) + 1, Complex(0.0, 0.0));
    c[static_cast<size_t>(n)] = 1.0;
    for (long m = n - 1; m >= 0; --m) {
        Complex s(0.0, 0.0);
        for (long l = m + 1; l <= std::min(n, m + k); ++l) {
            // entry (m, l): coefficient of z^m in the image of z^l
            Complex a(0.0, 0.0);
            for (int i = std::max<long>(1, l - m); i <= std::min<long>(k, l); ++i) {
                int zexp = static_cast<int>(m - l) + i;  // < i since l > m
                const UniPoly& qi = op.q(i);
                if (zexp < 0 || zexp > qi.degree()) continue;
                a += lpow[static_cast<size_t>(i)] * qi.coeff(zexp) *
                     detail::falling_factorial(l, i);
            }
            s += a * c[static_cast<size_t>(l)];
        }
        Complex denom = diag(m) - lk;
        if (std::abs(denom) <= tol * ref)
            throw Resonance("degree-" + std::to_string(m) +
                            " diagonal entry collides with lambda^k");
        c[static_cast<size_t>(m)] = -s / denom;
    }
    EigenPair pair{n, lambda, UniPoly(std::move(c)), {}};
    if (n > 30) pair.basis = detail::eigenpolynomial_cheb(op, n, lambda, tol);
    return pair;
}

/* Residual coefficients of the spectral identity for a computed pair;
 * all entries should be <= 1e-10 * (1 + |lambda|^k). */
inline double eigen_identity_residual(const ExactlySolvableOperator& op, const EigenPair& pair) {
    UniPoly lhs;
    UniPoly d = pair.p;
    std::vector<Complex> lpow(static_cast<size_t>(op.k) + 1);
    lpow[static_cast<size_t>(op.k)] = 1.0;
    for (int i = op.k - 1; i >= 0; --i)
        lpow[static_cast<size_t>(i)] = lpow[static_cast<size_t>(i + 1)] * pair.lambda;
    for (int i = 1; i <= op.k; ++i) {
        d = d.derivative();
        lhs = lhs + lpow[static_cast<size_t>(i)] * (op.q(i) * d);
    }
    UniPoly rhs = lpow[0] * pair.p;
    UniPoly res = lhs - rhs;
    double m = 0.0;
    for (const auto& cc : res.coeffs()) m = std::max(m, std::abs(cc));
    return m;
}

struct RootMeasure {
    long n = 0;
    std::vector<Complex> points;  // n roots, weight 1/n each
};

inline RootMeasure root_measure(const EigenPair& pair) {
    RootMeasure mu;
    mu.n = pair.n;
    if (!pair.basis.c.empty()) {
        auto rs = cheb::roots(pair.basis);
        cheb::polish(pair.basis, rs);
        double norm = cheb::coeff_norm(pair.basis);
        bool ok = static_cast<long>(rs.size()) == pair.n;
        for (const auto& r : rs)
            if (std::abs(cheb::evaluate(pair.basis, r)) > 1e-8 * norm) ok = false;
        if (ok) {
            for (const auto& cl : cluster_roots(rs))
                for (int m = 0; m < cl.multiplicity; ++m) mu.points.push_back(cl.root);
            return mu;
        }
    }
    for (const auto& cl : poly_roots(pair.p))
        for (int m = 0; m < cl.multiplicity; ++m) mu.points.push_back(cl.root);
    return mu;
}

/* Normalized logarithmic derivative p'(z) / (lambda p(z)), evaluated in the
 * stable basis when one is attached. */
inline Complex eigen_log_derivative(const EigenPair& pair, Complex z) {
    if (!pair.basis.c.empty()) {
        cheb::Series d{pair.basis.scale, cheb::derivative(pair.basis.c, pair.basis.scale)};
        Complex pv = cheb::evaluate(pair.basis, z);
        if (std::abs(pv) == 0.0) throw EvalAtRoot("evaluation point is a root");
        return cheb::evaluate(d, z) / (pair.lambda * pv);
    }
    Complex pv = pair.p(z);
    if (std::abs(pv) == 0.0) throw EvalAtRoot("evaluation point is a root");
    return pair.p.derivative()(z) / (pair.lambda * pv);
}

/* Cauchy transform of the root-counting measure of p: p'(z) / (n p(z)). */
inline Complex cauchy_of_polynomial(const UniPoly& p, Complex z, double tol = 1e-12) {
    if (p.is_zero()) throw ZeroPolynomial("cauchy transform of zero polynomial");
    Complex pv = p(z);
    if (std::abs(pv) <= tol * (1.0 + p.magnitude_at(std::abs(z))))
        throw EvalAtRoot("evaluation point is a root of p");
    return p.derivative()(z) / (static_cast<double>(p.degree()) * pv);
}

/* |sum_i Q_i(z) L^i - 1|, the defect of L against the symbol equation. */
inline double symbol_residual(const ExactlySolvableOperator& op, Complex L, Complex z) {
    Complex acc(0.0, 0.0);
    Complex lp(1.0, 0.0);
    for (int i = 1; i <= op.k; ++i) {
        lp *= L;
        acc += op.q(i)(z) * lp;
    }
    return std::abs(acc - Complex(1.0, 0.0));
}

struct BoundednessReport {
    std::vector<std::pair<long, double>> max_moduli;  // (n, max |root| of p_n)
    bool growth_flag = false;       // some entry exceeds 2x the median
    bool hypothesis_met = true;     // nondegenerate and 1 a simple unit root
    std::string note;
};

inline BoundednessReport roots_bounded_check(const ExactlySolvableOperator& op,
                                             const std::vector<long>& degrees) {
    BoundednessReport rep;
    if (!op.nondegenerate) {
        rep.hypothesis_met = false;
        rep.note = "operator is degenerate; boundedness hypothesis unmet";
    }
    long n_max = 0;
    for (long n : degrees) n_max = std::max(n_max, n);
    std::vector<PrincipalEigenvalue> seq;
    try {
        seq = select_principal_sequence(op, n_max);
    } catch (const AnalysisError& e) {
        rep.hypothesis_met = false;
        rep.note = e.what();
    }
    for (long n : degrees) {
        Complex lambda;
        bool have = false;
        for (const auto& pe : seq)
            if (pe.n == n) {
                lambda = pe.lambda;
                have = true;
            }
        if (!have) {
            // fall back to the largest-modulus eigenvalue so the check still runs
            for (const auto& l : eigenvalues_for_degree(op, n))
                if (!have || std::abs(l) > std::abs(lambda)) {
                    lambda = l;
                    have = true;
                }
        }
        auto mu = root_measure(eigenpolynomial(op, n, lambda));
        double m = 0.0;
        for (const auto& r : mu.points) m = std::max(m, std::abs(r));
        rep.max_moduli.emplace_back(n, m);
    }
    std::vector<double> vals;
    for (const auto& [n, m] : rep.max_moduli) vals.push_back(m);
    std::sort(vals.begin(), vals.end());
    if (!vals.empty()) {
        double median = vals[vals.size() / 2];
        for (double v : vals)
            if (v > 2.0 * median && v > 1e-12) rep.growth_flag = true;
    }
    return rep;
}

}  // namespace mbody

#endif  // MOTHERBODY_EIGENOPS_HPP
