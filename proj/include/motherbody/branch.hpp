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

#ifndef MOTHERBODY_BRANCH_HPP
#define MOTHERBODY_BRANCH_HPP

#include <vector>

#include "motherbody/bipoly.hpp"
#include "motherbody/measure.hpp"
#include "motherbody/roots.hpp"

namespace mbody {

/* Diagnostics for the existence of a probability branch C = 1/z + ... of
 * P(C, z) = 0 at infinity.
 *
 * necessary_holds:  the coefficients along the extremal diagonal i - j = M
 *                   sum to zero (required for any probability branch).
 * sufficient_holds: the index-weighted diagonal sum is nonzero (infinity is
 *                   not a branch point of the curve).  The two flags are
 *                   independent tests; both together guarantee a unique
 *                   probability branch, and (C z - 1)^2 shows a branch can
 *                   exist when the second test fails. */
template <class K>
struct BranchReportT {
    int M = 0;
    bool necessary_holds = false;
    bool sufficient_holds = false;
    K diagonal_sum{};
    K weighted_diagonal_sum{};
};

using BranchReport = BranchReportT<Complex>;
using ExactBranchReport = BranchReportT<ExactComplex>;

template <class K>
BranchReportT<K> probability_branch_test(const BiPolyT<K>& p) {
    if (p.is_zero()) throw ZeroPolynomial("probability branch test of zero polynomial");
    BranchReportT<K> rep;
    rep.M = newton_support(p).M;
    K diag = ScalarOps<K>::zero();
    K weighted = ScalarOps<K>::zero();
    double abs_scale = 0.0;
    for (const auto& [e, a] : p.monomials()) {
        if (e.first - e.second != rep.M) continue;
        diag += a;
        K idx = ScalarOps<K>::zero();
        for (int t = 0; t < e.first; ++t) idx += ScalarOps<K>::one();
        weighted += idx * a;
        abs_scale += ScalarOps<K>::magnitude(a);
    }
    rep.diagonal_sum = diag;
    rep.weighted_diagonal_sum = weighted;
    rep.necessary_holds = ScalarOps<K>::is_zero(diag, abs_scale);
    rep.sufficient_holds = !ScalarOps<K>::is_zero(weighted, abs_scale);
    return rep;
}

/* Truncated germ 1/z + sum_{i>=2} a_i / z^i. */
template <class K>
struct BranchSeriesT {
    double a0 = 1.0;
    std::vector<K> tail;  // a_2 .. a_N
    int order = 1;        // N

    K a(int i) const {  // coefficient a_i, i >= 2
        int idx = i - 2;
        if (idx < 0 || idx >= static_cast<int>(tail.size())) return ScalarOps<K>::zero();
        return tail[static_cast<size_t>(idx)];
    }
};

using BranchSeries = BranchSeriesT<Complex>;
using ExactBranchSeries = BranchSeriesT<ExactComplex>;

namespace detail {

/* Truncated power series in w, dense coefficients 0..len-1. */
template <class K>
struct TruncSeries {
    std::vector<K> c;

    static TruncSeries one(size_t len) {
        TruncSeries s;
        s.c.assign(len, ScalarOps<K>::zero());
        s.c[0] = ScalarOps<K>::one();
        return s;
    }
    size_t len() const { return c.size(); }

    static TruncSeries mul(const TruncSeries& a, const TruncSeries& b, size_t len) {
        TruncSeries out;
        out.c.assign(len, ScalarOps<K>::zero());
        for (size_t i = 0; i < a.c.size() && i < len; ++i)
            for (size_t j = 0; j < b.c.size() && i + j < len; ++j)
                out.c[i + j] += a.c[i] * b.c[j];
        return out;
    }
};

/* P~(d, w) = sum alpha_{i,j} d^i w^{i-j-M}, truncated at order len-1. */
template <class K>
TruncSeries<K> substituted_series(const BiPolyT<K>& p, int M, const TruncSeries<K>& d,
                                  size_t len) {
    int max_i = p.max_c_degree();
    std::vector<TruncSeries<K>> pow(static_cast<size_t>(max_i) + 1);
    pow[0] = TruncSeries<K>::one(len);
    for (int i = 1; i <= max_i; ++i)
        pow[static_cast<size_t>(i)] = TruncSeries<K>::mul(pow[static_cast<size_t>(i - 1)], d, len);

    TruncSeries<K> acc;
    acc.c.assign(len, ScalarOps<K>::zero());
    for (const auto& [e, a] : p.monomials()) {
        int shift = e.first - e.second - M;  // >= 0 by the definition of M
        const auto& di = pow[static_cast<size_t>(e.first)].c;
        for (size_t t = 0; t + static_cast<size_t>(shift) < len && t < di.size(); ++t)
            acc.c[t + static_cast<size_t>(shift)] += a * di[t];
    }
    return acc;
}

}  // namespace detail

/* Coefficients a_2..a_N of the probability branch, obtained by writing
 * C = D/z and solving the substituted equation order by order:  each new
 * coefficient enters linearly through the weighted diagonal sum, so one
 * division per order suffices.  The substitution residual of the result
 * vanishes through order N-1 in w by construction; tests re-verify. */
template <class K>
BranchSeriesT<K> expand_probability_branch(const BiPolyT<K>& p, int order_n) {
    BranchReportT<K> rep = probability_branch_test(p);
    if (!rep.necessary_holds)
        throw NecessaryConditionFails("diagonal coefficient sum is nonzero");
    if (!rep.sufficient_holds)
        throw SufficientConditionFails(
            "weighted diagonal sum vanishes; order-by-order solve is not possible");

    BranchSeriesT<K> out;
    out.order = order_n;
    if (order_n < 2) return out;

    const size_t len = static_cast<size_t>(order_n);  // orders w^0 .. w^{N-1}
    auto d = detail::TruncSeries<K>::one(len);
    const K s1 = rep.weighted_diagonal_sum;

    for (int r = 0; r + 2 <= order_n; ++r) {
        auto res = detail::substituted_series(p, rep.M, d, static_cast<size_t>(r) + 2);
        K b = res.c[static_cast<size_t>(r) + 1];
        d.c[static_cast<size_t>(r) + 1] = -(b / s1);
    }
    out.tail.assign(d.c.begin() + 1, d.c.end());
    return out;
}

/* Residual series of the truncated branch: coefficients of w^0..w^{N-1}
 * of P~(d, w).  Exposed for the postcondition tests. */
template <class K>
std::vector<K> branch_residual_series(const BiPolyT<K>& p, const BranchSeriesT<K>& s) {
    int M = newton_support(p).M;
    size_t len = static_cast<size_t>(s.order);
    auto d = detail::TruncSeries<K>::one(len);
    for (size_t i = 0; i + 1 < len && i < s.tail.size(); ++i) d.c[i + 1] = s.tail[i];
    return detail::substituted_series(p, M, d, len).c;
}

template <class K>
bool is_balanced(const BiPolyT<K>& p) {
    if (p.is_zero()) return false;
    return newton_support(p).M == 0;
}

/* Genericity test for irreducibility over a fixed support: the Newton
 * polygon must be two-dimensional and the support must contain a pure
 * power of each variable (the origin counts for both). */
inline bool genericity_irreducible(const NewtonSupport& s) {
    if (s.points.empty()) throw ZeroPolynomial("empty support");
    if (s.hull.size() < 3) return false;
    bool pure_c = false, pure_z = false;
    for (const auto& [i, j] : s.points) {
        if (j == 0) pure_c = true;
        if (i == 0) pure_z = true;
    }
    return pure_c && pure_z;
}

/* Degree-one case: a rational germ num/den admits a motherbody exactly
 * when every pole is simple with a real residue; the measure is purely
 * atomic with the residues as weights. */
inline SignedMeasure rational_motherbody(const UniPoly& num, const UniPoly& den,
                                         double real_tol = 1e-8) {
    if (num.is_zero() || den.is_zero()) throw ZeroPolynomial("rational germ with zero part");
    if (num.degree() >= den.degree())
        throw AnalysisError("GermDoesNotVanish", "deg num must be < deg den");
    if (!coprime(num, den)) throw NotCoprime("numerator and denominator share a factor");

    SignedMeasure mu;
    for (const auto& cl : poly_roots(den)) {
        if (cl.multiplicity > 1)
            throw MultiplePole("pole of order " + std::to_string(cl.multiplicity) + " at (" +
                               std::to_string(cl.root.real()) + ", " +
                               std::to_string(cl.root.imag()) + ")");
        Complex res = residue_at(num, den, cl.root);
        if (!is_real(res, real_tol))
            throw NonRealResidue("residue " + std::to_string(res.real()) + " + " +
                                 std::to_string(res.imag()) + "i at pole (" +
                                 std::to_string(cl.root.real()) + ", " +
                                 std::to_string(cl.root.imag()) + ")");
        mu.atoms.push_back({cl.root, res.real()});
        mu.total_mass += res.real();
    }
    return mu;
}

}  // namespace mbody

#endif  // MOTHERBODY_BRANCH_HPP
