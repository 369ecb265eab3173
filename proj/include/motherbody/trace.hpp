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

#ifndef MOTHERBODY_TRACE_HPP
#define MOTHERBODY_TRACE_HPP

#include <unordered_map>
#include <vector>

#include "motherbody/quaddiff.hpp"

namespace mbody {

/* Horizontal trajectories of phi dz^2 are straight lines Im w = const in
 * the canonical parameter w = integral of sqrt(phi) dz.  The tracer
 * integrates dz/dw = 1 / sqrt(phi) with an embedded Cash-Karp pair, keeps
 * the square-root branch by nearest-value continuation, and projects the
 * accumulated Im w back to zero each step so that long traces stay on the
 * foliation leaf they started on. */

struct TraceOptions {
    double snap_rel = 1e-6;         // termination radius 1e-6 * (1 + |location|)
    double budget = 0.0;            // arclength budget; 0 = 50 * singular diameter
    double box_radius = 0.0;        // escape radius; 0 = 4 * max(1, max |singular|)
    double rk_tol = 1e-12;
    double max_w_step = 0.01;       // also the node resolution for quadrature
    double launch_offset_rel = 1e-5;
    long max_steps = 400000;
    double closure_angle_tol = 1e-3;
};

enum class TraceEnd { AtSingular, Closed, Escaped, BudgetExceeded };

struct Trajectory {
    std::vector<Complex> nodes;
    std::vector<double> w;          // canonical parameter per node, from 0
    std::vector<Complex> velocity;  // dz/dw per node (0 at exact singular endpoints)
    int start_singular = -1;        // index into the singular point list, or -1
    int end_singular = -1;
    TraceEnd classification = TraceEnd::BudgetExceeded;
    double arclength = 0.0;
    double imag_drift = 0.0;        // |Im sum sqrt(phi) dz| accumulated before projection
    bool stub_start = false;        // first interval follows the local power model
    bool stub_end = false;
    double start_angle = 0.0;       // outgoing direction at the start node
    double end_angle = 0.0;         // outgoing direction at the end node

    bool double_singular() const {
        return classification == TraceEnd::AtSingular && start_singular >= 0 &&
               end_singular >= 0;
    }
};

namespace detail {

inline Complex sqrt_continued(Complex v, Complex ref) {
    Complex s = std::sqrt(v);
    if (std::abs(s - ref) > std::abs(s + ref)) s = -s;
    return s;
}

/* w-length of the ray from a singular point of order m out to distance d,
 * by the local model phi ~ c t^m. */
inline double local_stub_w(const SingularPoint& sp, double d) {
    if (sp.order <= -2) return std::sqrt(std::abs(sp.local_coeff)) * d;  // nominal only
    double e = 0.5 * sp.order + 1.0;
    return std::sqrt(std::abs(sp.local_coeff)) * std::pow(d, e) / e;
}

inline double point_to_segment(Complex p, Complex a, Complex b) {
    Complex ab = b - a;
    double l2 = std::norm(ab);
    if (l2 == 0.0) return std::abs(p - a);
    double t = std::clamp(
        ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / l2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

/* Incremental spatial hash over polyline segments for the closure test.
 * The cell size tracks the longest segment seen (rebuilding is geometric,
 * so amortized insertion stays O(1)). */
class SegmentGrid {
  public:
    explicit SegmentGrid(double cell) : cell_(std::max(cell, 1e-12)) {}

    void insert(size_t idx, Complex a, Complex b) {
        segs_.push_back({idx, a, b});
        double len = std::abs(b - a);
        if (len > cell_) {
            cell_ = 2.0 * len;
            grid_.clear();
            for (size_t i = 0; i < segs_.size(); ++i) place(i);
        } else {
            place(segs_.size() - 1);
        }
    }

    template <class F>
    void for_near(Complex z, F&& fn) const {
        long cx = lcell(z.real()), cy = lcell(z.imag());
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(pack(cx + dx, cy + dy));
                if (it == grid_.end()) continue;
                for (size_t si : it->second) fn(segs_[si].idx, segs_[si].a, segs_[si].b);
            }
    }

  private:
    struct Seg {
        size_t idx;
        Complex a, b;
    };
    void place(size_t si) {
        // the segment is no longer than the cell: cover both endpoint cells
        long long k1 = key(segs_[si].a), k2 = key(segs_[si].b);
        grid_[k1].push_back(si);
        if (k2 != k1) grid_[k2].push_back(si);
    }
    long lcell(double x) const { return static_cast<long>(std::floor(x / cell_)); }
    static long long pack(long x, long y) {
        return (static_cast<long long>(x) << 21) ^ (static_cast<long long>(y) & ((1LL << 21) - 1));
    }
    long long key(Complex z) const { return pack(lcell(z.real()), lcell(z.imag())); }
    double cell_;
    std::vector<Seg> segs_;
    std::unordered_map<long long, std::vector<size_t>> grid_;
};

struct CashKarpResult {
    Complex z;
    double error;
};

template <class F>
CashKarpResult cash_karp_step(const F& f, Complex z, double h) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 3.0 / 10, a42 = -9.0 / 10, a43 = 6.0 / 5;
    static const double a51 = -11.0 / 54, a52 = 5.0 / 2, a53 = -70.0 / 27, a54 = 35.0 / 27;
    static const double a61 = 1631.0 / 55296, a62 = 175.0 / 512, a63 = 575.0 / 13824,
                        a64 = 44275.0 / 110592, a65 = 253.0 / 4096;
    static const double b1 = 37.0 / 378, b3 = 250.0 / 621, b4 = 125.0 / 594, b6 = 512.0 / 1771;
    static const double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                        d5 = 277.0 / 14336, d6 = 1.0 / 4;
    Complex k1 = f(z);
    Complex k2 = f(z + h * (a21 * k1));
    Complex k3 = f(z + h * (a31 * k1 + a32 * k2));
    Complex k4 = f(z + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Complex k5 = f(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Complex k6 = f(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Complex z5 = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b6 * k6);
    Complex z4 = z + h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    return {z5, std::abs(z5 - z4)};
}

}  // namespace detail

class TrajectoryTracer {
  public:
    TrajectoryTracer(const QuadraticDifferential& qd, std::vector<SingularPoint> sing,
                     TraceOptions opt = {})
        : qd_(qd), sing_(std::move(sing)), opt_(opt) {
        double max_abs = 0.0, diam = 0.0;
        for (const auto& a : sing_) {
            max_abs = std::max(max_abs, std::abs(a.location));
            for (const auto& b : sing_) diam = std::max(diam, std::abs(a.location - b.location));
        }
        if (opt_.box_radius <= 0.0) opt_.box_radius = 4.0 * std::max(1.0, max_abs);
        if (opt_.budget <= 0.0) opt_.budget = 50.0 * std::max(1.0, diam);
    }

    const TraceOptions& options() const { return opt_; }
    const std::vector<SingularPoint>& singular() const { return sing_; }

    /* Launch from singular point sing_[idx] along one of its directions. */
    Trajectory trace_from_singular(int idx, double angle) const {
        const SingularPoint& sp = sing_[static_cast<size_t>(idx)];
        if (sp.order <= -2)
            throw StartAtHigherPole("tracing from a pole of order >= 2 is refused");
        double eps = opt_.launch_offset_rel * (1.0 + std::abs(sp.location));
        Complex dir = std::polar(1.0, angle);
        Complex z1 = sp.location + eps * dir;
        Complex s = std::sqrt(phi(z1));
        if ((dir * s).real() < 0.0) s = -s;

        Trajectory out;
        out.start_singular = idx;
        out.start_angle = angle;
        out.stub_start = true;
        out.nodes.push_back(sp.location);
        out.w.push_back(0.0);
        out.velocity.push_back(Complex(0.0, 0.0));
        run(out, z1, s, detail::local_stub_w(sp, eps), idx);
        return out;
    }

    /* Launch from a regular point with an explicit direction. */
    Trajectory trace_from_regular(Complex z0, double angle) const {
        Complex dir = std::polar(1.0, angle);
        Complex p0 = phi(z0);
        if (std::abs(p0) == 0.0) throw DegenerateDifferential("regular start lies on a zero");
        Complex s = std::sqrt(p0);
        if ((dir * s).real() < 0.0) s = -s;
        Trajectory out;
        out.start_angle = angle;
        run(out, z0, s, 0.0, -1);
        return out;
    }

  private:
    Complex phi(Complex z) const { return qd_.phi.eval(z); }

    double snap_radius(const SingularPoint& sp) const {
        return opt_.snap_rel * (1.0 + std::abs(sp.location));
    }

    std::pair<int, double> nearest_singular(Complex z) const {
        int best = -1;
        double bd = 1e300;
        for (size_t i = 0; i < sing_.size(); ++i) {
            double d = std::abs(z - sing_[i].location);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(i);
            }
        }
        return {best, bd};
    }

    void finish_at_singular(Trajectory& t, int idx, Complex z_cur) const {
        const SingularPoint& sp = sing_[static_cast<size_t>(idx)];
        double d = std::abs(z_cur - sp.location);
        t.nodes.push_back(sp.location);
        t.w.push_back(t.w.back() + detail::local_stub_w(sp, d));
        t.velocity.push_back(Complex(0.0, 0.0));
        t.arclength += d;
        t.stub_end = true;
        t.end_singular = idx;
        // the arrival must run along one of the vertex directions; the raw
        // chord angle curls by O(miss/dist) when the capture was loose
        double chord = std::arg(z_cur - sp.location);
        t.end_angle = chord;
        double best = 1e300;
        for (double dir : sp.directions) {
            double da = std::abs(std::remainder(chord - dir, 2.0 * kPi));
            if (da < best) {
                best = da;
                t.end_angle = dir;
            }
        }
        t.classification = TraceEnd::AtSingular;
    }

    void run(Trajectory& t, Complex z, Complex s_ref, double w0, int start_idx) const {
        double snap_scale = opt_.snap_rel * (1.0 + std::abs(z));
        detail::SegmentGrid grid(4.0 * snap_scale);
        std::vector<double> arc_at(t.nodes.size(), 0.0);  // arclength per node
        bool start_armed = false;
        double rearm_dist = 20.0 * opt_.launch_offset_rel * (1.0 + std::abs(z));

        if (!t.nodes.empty()) t.arclength += std::abs(z - t.nodes.back());
        t.nodes.push_back(z);
        t.w.push_back(w0);
        t.velocity.push_back(1.0 / s_ref);
        arc_at.push_back(t.arclength);

        double h = opt_.max_w_step * 1e-3;
        for (long step = 0; step < opt_.max_steps; ++step) {
            auto [ns_idx, ns_dist] = nearest_singular(z);

            // step-size ceiling: never jump a sizable fraction of the gap
            // to the nearest singular point
            double h_max = opt_.max_w_step;
            if (ns_idx >= 0) {
                double zmag = std::abs(s_ref);
                h_max = std::min(h_max, 0.25 * ns_dist * zmag + 1e-300);
            }
            h = std::min(std::max(h, 1e-14), h_max);

            auto f = [&](Complex p) {
                Complex sv = detail::sqrt_continued(phi(p), s_ref);
                return 1.0 / sv;
            };

            Complex z_new;
            while (true) {
                auto res = detail::cash_karp_step(f, z, h);
                double scale = opt_.rk_tol * (1.0 + std::abs(res.z));
                if (res.error <= scale || h <= 1e-13) {
                    z_new = res.z;
                    // grow for the next step
                    double grow = (res.error > 0) ? 0.9 * std::pow(scale / res.error, 0.2) : 2.0;
                    h = std::min(h * std::min(grow, 2.0), h_max);
                    break;
                }
                h = std::max(h * std::max(0.1, 0.9 * std::pow(scale / res.error, 0.25)), 1e-13);
            }

            // Newton-project the step endpoint back onto the horizontal
            // leaf: the step's Im of integral sqrt(phi) dz (composite
            // Simpson along the chord) is driven to zero.  Without this the
            // leaf error accumulates and loop trajectories miss their
            // return vertex by more than the snap radius.
            Complex s_new = s_ref;
            double residual_drift = 0.0;
            for (int it = 0; it < 4; ++it) {
                Complex dz = z_new - z;
                Complex sample = s_ref, acc(0.0, 0.0);
                static const double simpson[5] = {1.0, 4.0, 2.0, 4.0, 1.0};
                for (int qp = 0; qp <= 4; ++qp) {
                    Complex p = z + dz * (0.25 * qp);
                    sample = detail::sqrt_continued(phi(p), sample);
                    acc += simpson[qp] * sample;
                }
                Complex integral = dz / 12.0 * acc;
                residual_drift = integral.imag();
                s_new = sample;
                if (std::abs(residual_drift) <= 1e-15 * (1.0 + std::abs(integral))) break;
                Complex corr = Complex(0.0, -residual_drift) / s_new;
                if (std::abs(corr) > 0.2 * std::abs(dz)) break;
                z_new -= corr;
            }
            t.imag_drift += std::abs(residual_drift);

            t.arclength += std::abs(z_new - z);
            z = z_new;
            s_ref = s_new;
            t.nodes.push_back(z);
            t.w.push_back(t.w.back() + h);
            t.velocity.push_back(1.0 / s_ref);
            arc_at.push_back(t.arclength);

            // termination: singular point.  Zeros use an error-aware capture
            // radius: an accumulated leaf error of delta in Im w turns into a
            // geometric miss of order delta^{2/(m+2)} at an order-m zero, so a
            // pass within that bound is indistinguishable from a hit.
            auto [idx2, dist2] = nearest_singular(z);
            if (idx2 >= 0) {
                const SingularPoint& sp2 = sing_[static_cast<size_t>(idx2)];
                double cap = snap_radius(sp2);
                if (sp2.order >= 1) {
                    double delta = std::max(t.imag_drift * 4.0, 1e-13);
                    double e = 0.5 * sp2.order + 1.0;
                    double miss = std::pow(e * delta / std::sqrt(std::abs(sp2.local_coeff)),
                                           1.0 / e);
                    cap = std::min(std::max(cap, 3.0 * miss),
                                   1e-3 * (1.0 + std::abs(sp2.location)));
                }
                if (dist2 <= cap) {
                    bool is_start = (idx2 == start_idx);
                    if (!is_start || start_armed) {
                        finish_at_singular(t, idx2, z);
                        return;
                    }
                }
            }
            if (start_idx >= 0 && !start_armed) {
                double ds = std::abs(z - sing_[static_cast<size_t>(start_idx)].location);
                if (ds > rearm_dist) start_armed = true;
            }

            // termination: escape
            if (std::abs(z) > opt_.box_radius) {
                t.classification = TraceEnd::Escaped;
                t.end_angle = std::arg(z - t.nodes[t.nodes.size() - 2]);
                return;
            }

            // termination: budget
            if (t.arclength > opt_.budget) {
                t.classification = TraceEnd::BudgetExceeded;
                return;
            }

            // termination: closure against own past (distance to an earlier
            // segment within snap with matching travel direction; an
            // arclength gate keeps consecutive steps from matching)
            size_t cur = t.nodes.size() - 1;
            double snap_here = opt_.snap_rel * (1.0 + std::abs(z));
            bool closed = false;
            grid.for_near(z, [&](size_t idx, Complex a, Complex b) {
                if (closed) return;
                if (arc_at[cur] - arc_at[idx] < 200.0 * snap_here) return;  // too recent
                if (detail::point_to_segment(z, a, b) > snap_here) return;
                double a1 = std::arg(t.velocity[idx]);
                double a2 = std::arg(t.velocity[cur]);
                double da = std::remainder(a1 - a2, 2.0 * kPi);
                if (std::abs(da) < opt_.closure_angle_tol) closed = true;
            });
            if (closed) {
                t.classification = TraceEnd::Closed;
                return;
            }
            if (cur >= 1) grid.insert(cur - 1, t.nodes[cur - 1], t.nodes[cur]);
        }
        t.classification = TraceEnd::BudgetExceeded;
    }

    const QuadraticDifferential& qd_;
    std::vector<SingularPoint> sing_;
    TraceOptions opt_;
};

}  // namespace mbody

#endif  // MOTHERBODY_TRACE_HPP
