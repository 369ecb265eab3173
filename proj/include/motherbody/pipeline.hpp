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

#ifndef MOTHERBODY_PIPELINE_HPP
#define MOTHERBODY_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "motherbody/planargraph.hpp"
#include "motherbody/trace.hpp"

namespace mbody {

struct LaunchRecord {
    int singular_index = -1;
    double angle = 0.0;
    Trajectory traj;
};

/* Result of sweeping all singular launch directions of a differential. */
struct TrajectoryAtlas {
    QuadraticDifferential qd;
    std::vector<SingularPoint> sing;
    std::vector<LaunchRecord> launches;
    TrajectoryGraph dk0;   // double-singular trajectories with both ends at zeros
    TrajectoryGraph dk;    // ends at zeros or simple poles; isolated double poles kept
    std::vector<size_t> budget_exceeded;   // indices into launches
    std::vector<size_t> escaped;
    bool degree_warning = false;           // outside the deg P = n+2 normalization
    bool infinity_branch_point = false;    // deg D odd: the germ branches at infinity
};

namespace detail {

inline double point_segment_dist(Complex p, Complex a, Complex b) {
    Complex ab = b - a;
    double l2 = std::norm(ab);
    if (l2 == 0.0) return std::abs(p - a);
    double t = std::clamp(
        ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / l2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

inline double polyline_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto one_sided = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = 1e300;
            for (size_t i = 0; i + 1 < to.size(); ++i)
                best = std::min(best, point_segment_dist(p, to[i], to[i + 1]));
            if (to.size() == 1) best = std::abs(p - to[0]);
            worst = std::max(worst, best);
            if (worst > 1e6) break;
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

inline GraphEdge edge_from_trajectory(const Trajectory& t, int v0, int v1) {
    GraphEdge e;
    e.v0 = v0;
    e.v1 = v1;
    e.polyline = t.nodes;
    e.w = t.w;
    e.velocity = t.velocity;
    e.stub_start = t.stub_start;
    e.stub_end = t.stub_end;
    e.angle0 = t.start_angle;
    e.angle1 = t.end_angle;
    return e;
}

/* First and last polyline hops: the launch offset and the terminal capture
 * jump, the two places a re-trace of the same edge may legitimately differ. */
inline double endpoint_slack(const Trajectory& t) {
    double s = 0.0;
    if (t.nodes.size() >= 2) {
        s += std::abs(t.nodes[1] - t.nodes[0]);
        s += std::abs(t.nodes[t.nodes.size() - 1] - t.nodes[t.nodes.size() - 2]);
    }
    return s;
}

/* Keep one representative of trajectories sharing an endpoint pair and a
 * geometric footprint (reversed re-traces of the same edge). */
inline std::vector<const Trajectory*> dedup_edges(std::vector<const Trajectory*> traces,
                                                  double tol) {
    std::vector<const Trajectory*> kept;
    for (const Trajectory* t : traces) {
        bool dup = false;
        for (const Trajectory* k : kept) {
            bool same_pair = (k->start_singular == t->start_singular &&
                              k->end_singular == t->end_singular) ||
                             (k->start_singular == t->end_singular &&
                              k->end_singular == t->start_singular);
            if (!same_pair) continue;
            double pair_tol = tol + endpoint_slack(*k) + endpoint_slack(*t);
            if (polyline_hausdorff(k->nodes, t->nodes) <= pair_tol) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(t);
    }
    return kept;
}

inline TrajectoryGraph assemble_graph(const std::vector<SingularPoint>& sing,
                                      const std::vector<const Trajectory*>& edges,
                                      const std::vector<int>& vertex_of_singular) {
    TrajectoryGraph g;
    std::vector<int> map = vertex_of_singular;
    for (size_t i = 0; i < sing.size(); ++i) {
        if (map[i] < 0) continue;
        GraphVertex v;
        v.location = sing[i].location;
        v.kind = sing[i].kind;
        v.order = sing[i].order;
        map[i] = static_cast<int>(g.vertices.size());
        g.vertices.push_back(v);
    }
    for (const Trajectory* t : edges)
        g.edges.push_back(edge_from_trajectory(*t, map[static_cast<size_t>(t->start_singular)],
                                               map[static_cast<size_t>(t->end_singular)]));
    g.build();
    return g;
}

}  // namespace detail

/* Trace every direction from the launchable singular points of the
 * differential and assemble the double-singular graphs.  launch_poles
 * selects whether simple poles launch too (they do for the Q = 0 Strebel
 * sweep; the zero-zero graph never needs them). */
inline TrajectoryAtlas sweep_trajectories(const QuadraticDifferential& qd,
                                          const TraceOptions& opt = {},
                                          bool launch_poles = true) {
    if (qd.degenerate) throw DegenerateDifferential("phi vanishes identically");
    TrajectoryAtlas atlas;
    atlas.qd = qd;
    atlas.sing = singular_points(qd);

    const int dp = qd.P.degree(), dq = qd.Q.is_zero() ? -1 : qd.Q.degree(),
              dr = qd.R.is_zero() ? -1 : qd.R.degree();
    const bool normalized = dp >= 2 && dq <= dp - 1 && dr <= dp - 2;
    const int dd = qd.D.is_zero() ? -1 : qd.D.degree();
    if (normalized) {
        if (dd < 2 * dp - 2)
            throw BranchPointAtInfinity("deg D = " + std::to_string(dd) + " < " +
                                        std::to_string(2 * dp - 2));
    } else {
        atlas.degree_warning = true;
    }
    atlas.infinity_branch_point = (dd >= 0) && (dd % 2 == 1);

    TrajectoryTracer tracer(qd, atlas.sing, opt);
    for (size_t i = 0; i < atlas.sing.size(); ++i) {
        const SingularPoint& sp = atlas.sing[i];
        bool launch = sp.kind == SingularPoint::Kind::Zero ||
                      (launch_poles && sp.kind == SingularPoint::Kind::SimplePole);
        if (!launch) continue;
        for (double angle : sp.directions) {
            LaunchRecord rec;
            rec.singular_index = static_cast<int>(i);
            rec.angle = angle;
            rec.traj = tracer.trace_from_singular(static_cast<int>(i), angle);
            if (rec.traj.classification == TraceEnd::BudgetExceeded)
                atlas.budget_exceeded.push_back(atlas.launches.size());
            if (rec.traj.classification == TraceEnd::Escaped)
                atlas.escaped.push_back(atlas.launches.size());
            atlas.launches.push_back(std::move(rec));
        }
    }

    auto kind_of = [&](int idx) { return atlas.sing[static_cast<size_t>(idx)].kind; };
    double snap_abs = opt.snap_rel * 10.0;

    // zero-zero edges
    std::vector<const Trajectory*> zz, zp;
    for (const auto& rec : atlas.launches) {
        if (!rec.traj.double_singular()) continue;
        auto ks = kind_of(rec.traj.start_singular), ke = kind_of(rec.traj.end_singular);
        bool s_zero = ks == SingularPoint::Kind::Zero, e_zero = ke == SingularPoint::Kind::Zero;
        bool s_ok = s_zero || ks == SingularPoint::Kind::SimplePole;
        bool e_ok = e_zero || ke == SingularPoint::Kind::SimplePole;
        if (s_zero && e_zero) zz.push_back(&rec.traj);
        if (s_ok && e_ok) zp.push_back(&rec.traj);
    }
    zz = detail::dedup_edges(zz, snap_abs);
    zp = detail::dedup_edges(zp, snap_abs);

    std::vector<int> zeros_only(atlas.sing.size(), -1), zeros_and_poles(atlas.sing.size(), -1);
    for (size_t i = 0; i < atlas.sing.size(); ++i) {
        if (atlas.sing[i].kind == SingularPoint::Kind::Zero) zeros_only[i] = 0;
        if (atlas.sing[i].kind != SingularPoint::Kind::HigherPole) zeros_and_poles[i] = 0;
    }
    atlas.dk0 = detail::assemble_graph(atlas.sing, zz, zeros_only);
    atlas.dk = detail::assemble_graph(atlas.sing, zp, zeros_and_poles);
    return atlas;
}

/* DK0 entry point with the zero-zero graph as the headline result. */
inline TrajectoryAtlas build_DK0(const QuadraticDifferential& qd, const TraceOptions& opt = {}) {
    return sweep_trajectories(qd, opt, /*launch_poles=*/false);
}

/* True iff every zero of D appears among the graph vertices with at least
 * one incident edge. */
inline bool spans_all_branch_points(const TrajectoryGraph& g, const QuadraticDifferential& qd) {
    if (qd.D.is_zero()) return true;
    std::vector<int> degree(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        degree[static_cast<size_t>(e.v0)]++;
        degree[static_cast<size_t>(e.v1)]++;
    }
    for (const auto& cl : poly_roots(qd.D)) {
        bool covered = false;
        for (size_t v = 0; v < g.vertices.size(); ++v) {
            if (std::abs(g.vertices[v].location - cl.root) <=
                    1e-5 * (1.0 + std::abs(cl.root)) &&
                degree[v] > 0)
                covered = true;
        }
        if (!covered) return false;
    }
    return true;
}

struct StrebelResult {
    bool strebel = false;
    std::string reason;             // set when false
    TrajectoryGraph k;              // singular trajectories + singular points
    TrajectoryAtlas atlas;
    int d = 0;                      // complement components of K, incl unbounded
};

/* Numerical Strebel surrogate for Psi = R/P dz^2: the pole-order and
 * double-pole-coefficient gates run first; then the differential passes
 * iff every singular trajectory closes up on a zero or simple pole within
 * budget.  A trace that runs out of budget is reported as such and makes
 * the surrogate fail without certifying non-Strebel. */
inline StrebelResult strebel_surrogate(const UniPoly& p, const UniPoly& r,
                                       const TraceOptions& opt = {}) {
    if (!coprime(p, r)) throw NotCoprime("P and R share a factor");
    QuadraticDifferential qd = build_theta(p, UniPoly(), r);
    if (qd.degenerate) throw DegenerateDifferential("R vanishes identically");
    StrebelResult out;

    auto sing = singular_points(qd);
    for (const auto& sp : sing) {
        if (sp.kind == SingularPoint::Kind::HigherPole) {
            out.reason = "pole of order " + std::to_string(-sp.order) + " in the finite plane";
            return out;
        }
        if (sp.kind == SingularPoint::Kind::DoublePole) {
            bool neg = is_real(sp.local_coeff, 1e-8) && sp.local_coeff.real() < 0.0;
            if (!neg) {
                out.reason = "double pole with non-negative leading coefficient";
                return out;
            }
        }
    }
    if (qd.infinity_order > 2) {
        out.reason = "pole of order " + std::to_string(qd.infinity_order) + " at infinity";
        return out;
    }
    if (qd.infinity_order == 2 &&
        !(is_real(qd.infinity_coeff, 1e-8) && qd.infinity_coeff.real() < 0.0)) {
        out.reason = "double pole at infinity with non-negative leading coefficient";
        return out;
    }

    out.atlas = sweep_trajectories(qd, opt, /*launch_poles=*/true);
    for (const auto& rec : out.atlas.launches) {
        if (rec.traj.classification == TraceEnd::BudgetExceeded) {
            out.reason = "trace budget exceeded (inconclusive)";
            return out;
        }
        if (rec.traj.classification != TraceEnd::AtSingular || !rec.traj.double_singular()) {
            out.reason = "a singular trajectory does not terminate at a zero or simple pole";
            return out;
        }
        auto ek = out.atlas.sing[static_cast<size_t>(rec.traj.end_singular)].kind;
        if (ek == SingularPoint::Kind::DoublePole || ek == SingularPoint::Kind::HigherPole) {
            out.reason = "a singular trajectory terminates at a higher-order pole";
            return out;
        }
    }
    out.strebel = true;
    out.k = out.atlas.dk;
    out.d = out.k.d;
    return out;
}

}  // namespace mbody

#endif  // MOTHERBODY_PIPELINE_HPP
