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

#ifndef MOTHERBODY_MEASURE_HPP
#define MOTHERBODY_MEASURE_HPP

#include <vector>

#include "motherbody/common.hpp"

namespace mbody {

struct Atom {
    Complex location;
    double weight = 0.0;
};

/* One support arc of a signed measure.
 *
 * Arcs are stored in the canonical parameter of the quadratic differential
 * they were traced on: w[i] is the accumulated real canonical time at
 * nodes[i] and velocity[i] = dz/dw there.  Integrals of a smooth kernel g
 * against the measure restricted to the arc reduce to
 *
 *     quad_sign / (2 pi) * integral of g(z(w)) dw,
 *
 * which has no endpoint singularity even where the arclength density blows
 * up like an inverse square root.  The first/last intervals may be "stubs":
 * short runs next to a singular endpoint where z(w) follows the local power
 * model and only the total w extent is trusted. */
struct Arc {
    std::vector<Complex> nodes;
    std::vector<double> w;
    std::vector<Complex> velocity;   // dz/dw per node; unset entries are 0
    std::vector<double> density;     // signed density w.r.t. arclength per node
    double quad_sign = 1.0;
    bool stub_start = false;         // interval [0,1] is a local-model stub
    bool stub_end = false;           // interval [n-2,n-1] is a local-model stub
    bool closed = false;

    double w_length() const { return w.empty() ? 0.0 : w.back() - w.front(); }
    double mass() const { return quad_sign * w_length() / (2.0 * kPi); }
};

/* Atoms plus arcs with real densities.  total_mass records the germ
 * residue the measure is supposed to carry; agreement with the actual
 * atom weights and arc integrals is a verified invariant, not a
 * definition. */
struct SignedMeasure {
    std::vector<Atom> atoms;
    std::vector<Arc> arcs;
    double total_mass = 0.0;

    double computed_mass() const {
        double m = 0.0;
        for (const auto& a : atoms) m += a.weight;
        for (const auto& arc : arcs) m += arc.mass();
        return m;
    }

    bool is_positive(double tol = 1e-9) const {
        for (const auto& a : atoms)
            if (a.weight < -tol) return false;
        for (const auto& arc : arcs)
            for (double d : arc.density)
                if (d < -tol) return false;
        return true;
    }
};

}  // namespace mbody

#endif  // MOTHERBODY_MEASURE_HPP
