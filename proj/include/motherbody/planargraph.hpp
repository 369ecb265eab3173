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

#ifndef MOTHERBODY_PLANARGRAPH_HPP
#define MOTHERBODY_PLANARGRAPH_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "motherbody/quaddiff.hpp"

namespace mbody {

struct GraphVertex {
    Complex location;
    SingularPoint::Kind kind = SingularPoint::Kind::Zero;
    int order = 0;  // signed order of phi at the vertex (0 for abstract graphs)
};

struct GraphEdge {
    int v0 = -1, v1 = -1;
    std::vector<Complex> polyline;   // polyline[0] at v0, back() at v1
    std::vector<double> w;           // canonical parameter (may be empty for abstract)
    std::vector<Complex> velocity;
    bool stub_start = false, stub_end = false;
    double angle0 = 0.0, angle1 = 0.0;  // outgoing directions at v0 / v1
    bool loop() const { return v0 == v1; }
};

/* Embedded planar multigraph (loops and parallel edges allowed) with the
 * face structure of its plane complement.
 *
 * Darts: 2e = edge e traversed v0 -> v1, 2e+1 the reverse.  Faces are the
 * orbits of "arrive, then take the counterclockwise-next outgoing dart";
 * with that convention each face lies to the LEFT of its darts and bounded
 * faces come out with positive signed area.  A complement component
 * ("region") is a bounded face together with the outer walks of any
 * components nested inside it; d is the number of regions including the
 * unbounded one. */
class TrajectoryGraph {
  public:
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;

    struct Face {
        std::vector<int> darts;
        double signed_area = 0.0;
        int component = -1;
        bool outer = false;
        Complex interior_point;   // meaningful for bounded faces
        bool interior_valid = false;
    };

    std::vector<std::vector<int>> rotation;  // per vertex, darts sorted CCW
    std::vector<int> dart_face;
    std::vector<Face> faces;
    std::vector<int> vertex_component;
    int n_components = 0;
    std::vector<int> face_region;   // face -> region id
    int unbounded_region = -1;
    int n_regions = 0;
    int d = 0;

    int tail(int dart) const {
        const GraphEdge& e = edges[static_cast<size_t>(dart / 2)];
        return (dart % 2 == 0) ? e.v0 : e.v1;
    }
    int head(int dart) const {
        const GraphEdge& e = edges[static_cast<size_t>(dart / 2)];
        return (dart % 2 == 0) ? e.v1 : e.v0;
    }
    double tail_angle(int dart) const {
        const GraphEdge& e = edges[static_cast<size_t>(dart / 2)];
        return (dart % 2 == 0) ? e.angle0 : e.angle1;
    }

    /* Polyline of the dart in travel order. */
    std::vector<Complex> dart_polyline(int dart) const {
        std::vector<Complex> p = edges[static_cast<size_t>(dart / 2)].polyline;
        if (dart % 2 == 1) std::reverse(p.begin(), p.end());
        return p;
    }

    void build() {
        compute_rotation();
        compute_components();
        compute_faces();
        compute_regions();
    }

    int euler_total_faces() const {  // bounded + one unbounded
        int bounded = 0;
        for (const auto& f : faces)
            if (!f.outer) ++bounded;
        return bounded + 1;
    }

    /* Index of the region containing an arbitrary point (not on the graph). */
    int region_of_point(Complex z) const {
        int best_face = -1;
        double best_area = 1e300;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            const Face& f = faces[fi];
            if (f.outer) continue;
            if (std::abs(winding_number(face_loop(static_cast<int>(fi)), z)) < 0.5) continue;
            if (std::abs(f.signed_area) < best_area) {
                best_area = std::abs(f.signed_area);
                best_face = static_cast<int>(fi);
            }
        }
        if (best_face < 0) return unbounded_region;
        return face_region[static_cast<size_t>(best_face)];
    }

    /* Regions on the two sides of an edge: (left of v0->v1, right). */
    std::pair<int, int> edge_regions(int e) const {
        return {face_region[static_cast<size_t>(dart_face[static_cast<size_t>(2 * e)])],
                face_region[static_cast<size_t>(dart_face[static_cast<size_t>(2 * e + 1)])]};
    }

    /* Concatenated boundary polyline of a face walk. */
    std::vector<Complex> face_loop(int fi) const {
        std::vector<Complex> loop;
        for (int dart : faces[static_cast<size_t>(fi)].darts) {
            auto p = dart_polyline(dart);
            loop.insert(loop.end(), p.begin(), p.end());
        }
        return loop;
    }

    static double winding_number(const std::vector<Complex>& loop, Complex z) {
        double total = 0.0;
        for (size_t i = 0; i + 1 < loop.size(); ++i) {
            Complex a = loop[i] - z, b = loop[i + 1] - z;
            total += std::arg(b / a);
        }
        if (!loop.empty()) total += std::arg((loop.front() - z) / (loop.back() - z));
        return total / (2.0 * kPi);
    }

    /* Cut edges (in no simple cycle); computed on the multigraph. */
    std::vector<int> bridge_edges() const {
        std::vector<int> disc(vertices.size(), -1), low(vertices.size(), 0);
        std::vector<int> out;
        int timer = 0;
        std::vector<std::vector<std::pair<int, int>>> adj(vertices.size());
        for (size_t e = 0; e < edges.size(); ++e) {
            adj[static_cast<size_t>(edges[e].v0)].push_back({edges[e].v1, static_cast<int>(e)});
            adj[static_cast<size_t>(edges[e].v1)].push_back({edges[e].v0, static_cast<int>(e)});
        }
        std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
            disc[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = timer++;
            for (auto [to, e] : adj[static_cast<size_t>(v)]) {
                if (e == parent_edge) continue;
                if (edges[static_cast<size_t>(e)].loop()) continue;
                if (disc[static_cast<size_t>(to)] >= 0) {
                    low[static_cast<size_t>(v)] =
                        std::min(low[static_cast<size_t>(v)], disc[static_cast<size_t>(to)]);
                } else {
                    dfs(to, e);
                    low[static_cast<size_t>(v)] =
                        std::min(low[static_cast<size_t>(v)], low[static_cast<size_t>(to)]);
                    if (low[static_cast<size_t>(to)] > disc[static_cast<size_t>(v)])
                        out.push_back(e);
                }
            }
        };
        for (size_t v = 0; v < vertices.size(); ++v)
            if (disc[v] < 0) dfs(static_cast<int>(v), -1);
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    void compute_rotation() {
        rotation.assign(vertices.size(), {});
        for (size_t e = 0; e < edges.size(); ++e) {
            rotation[static_cast<size_t>(edges[e].v0)].push_back(static_cast<int>(2 * e));
            rotation[static_cast<size_t>(edges[e].v1)].push_back(static_cast<int>(2 * e + 1));
        }
        for (size_t v = 0; v < rotation.size(); ++v) {
            auto& rot = rotation[v];
            std::sort(rot.begin(), rot.end(), [&](int a, int b) {
                return std::remainder(tail_angle(a), 2.0 * kPi) <
                       std::remainder(tail_angle(b), 2.0 * kPi);
            });
            for (size_t i = 0; i + 1 < rot.size(); ++i) {
                double da = std::remainder(tail_angle(rot[i + 1]) - tail_angle(rot[i]), 2.0 * kPi);
                if (std::abs(da) < 1e-9)
                    throw DegenerateEmbedding("two edge-ends share a launch angle at vertex " +
                                              std::to_string(v));
            }
        }
    }

    void compute_components() {
        vertex_component.assign(vertices.size(), -1);
        n_components = 0;
        for (size_t v = 0; v < vertices.size(); ++v) {
            if (vertex_component[v] >= 0) continue;
            std::vector<size_t> stack{v};
            vertex_component[v] = n_components;
            while (!stack.empty()) {
                size_t cur = stack.back();
                stack.pop_back();
                for (int dart : rotation[cur]) {
                    size_t to = static_cast<size_t>(head(dart));
                    if (vertex_component[to] < 0) {
                        vertex_component[to] = n_components;
                        stack.push_back(to);
                    }
                }
            }
            ++n_components;
        }
    }

    int next_dart(int dart) const {
        // arrive at head(dart); continue along the clockwise-next edge-end
        // (the predecessor in the CCW rotation), which keeps the face on
        // the left of the walk
        int h = head(dart);
        int reverse = dart ^ 1;
        const auto& rot = rotation[static_cast<size_t>(h)];
        auto it = std::find(rot.begin(), rot.end(), reverse);
        size_t pos = static_cast<size_t>(it - rot.begin());
        return rot[(pos + rot.size() - 1) % rot.size()];
    }

    static double polyline_area2(const std::vector<Complex>& p, double& acc) {
        for (size_t i = 0; i + 1 < p.size(); ++i)
            acc += p[i].real() * p[i + 1].imag() - p[i + 1].real() * p[i].imag();
        return acc;
    }

    void compute_faces() {
        faces.clear();
        dart_face.assign(2 * edges.size(), -1);
        for (size_t start = 0; start < 2 * edges.size(); ++start) {
            if (dart_face[start] >= 0) continue;
            Face f;
            int dart = static_cast<int>(start);
            double area2 = 0.0;
            do {
                dart_face[static_cast<size_t>(dart)] = static_cast<int>(faces.size());
                f.darts.push_back(dart);
                auto p = dart_polyline(dart);
                polyline_area2(p, area2);
                // closing segment to the next dart's start is degenerate
                // (same vertex), so the shoelace over concatenation is exact
                dart = next_dart(dart);
            } while (dart != static_cast<int>(start));
            f.signed_area = 0.5 * area2;
            f.component = vertex_component[static_cast<size_t>(tail(f.darts.front()))];
            faces.push_back(std::move(f));
        }
        // the outer walk of each component is its minimal-area face
        for (int c = 0; c < n_components; ++c) {
            int best = -1;
            double bd = 1e300;
            for (size_t fi = 0; fi < faces.size(); ++fi) {
                if (faces[fi].component != c) continue;
                if (faces[fi].signed_area < bd) {
                    bd = faces[fi].signed_area;
                    best = static_cast<int>(fi);
                }
            }
            if (best >= 0) faces[static_cast<size_t>(best)].outer = true;
        }
        for (size_t fi = 0; fi < faces.size(); ++fi)
            if (!faces[fi].outer) locate_interior_point(static_cast<int>(fi));
    }

    void locate_interior_point(int fi) {
        Face& f = faces[static_cast<size_t>(fi)];
        auto loop = face_loop(fi);
        for (int dart : f.darts) {
            auto p = dart_polyline(dart);
            for (size_t frac = 1; frac <= 3; ++frac) {
                size_t i = p.size() * frac / 4;
                if (i + 1 >= p.size()) continue;
                Complex mid = 0.5 * (p[i] + p[i + 1]);
                Complex tangent = p[i + 1] - p[i];
                if (std::abs(tangent) == 0.0) continue;
                Complex normal = Complex(0.0, 1.0) * tangent / std::abs(tangent);
                double scale = std::max(1e-9, std::abs(tangent));
                for (double off : {0.5, 0.1, 0.01}) {
                    Complex cand = mid + off * scale * normal;  // left of travel
                    double wind = winding_number(loop, cand);
                    if (std::abs(wind - 1.0) < 0.2) {
                        f.interior_point = cand;
                        f.interior_valid = true;
                        return;
                    }
                }
            }
        }
    }

    void compute_regions() {
        // every bounded face is a region seed; outer walks merge into the
        // innermost bounded face of another component containing them
        face_region.assign(faces.size(), -1);
        n_regions = 0;
        for (size_t fi = 0; fi < faces.size(); ++fi)
            if (!faces[fi].outer) face_region[fi] = n_regions++;
        unbounded_region = n_regions++;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (!faces[fi].outer) continue;
            Complex probe = vertices[static_cast<size_t>(tail(faces[fi].darts.front()))].location;
            int container = containing_bounded_face(probe, faces[fi].component);
            face_region[fi] = (container < 0) ? unbounded_region
                                              : face_region[static_cast<size_t>(container)];
        }
        d = n_regions;
    }

    int containing_bounded_face(Complex z, int exclude_component) const {
        int best = -1;
        double best_area = 1e300;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            const Face& f = faces[fi];
            if (f.outer || f.component == exclude_component) continue;
            if (std::abs(winding_number(face_loop(static_cast<int>(fi)), z)) < 0.5) continue;
            if (std::abs(f.signed_area) < best_area) {
                best_area = std::abs(f.signed_area);
                best = static_cast<int>(fi);
            }
        }
        return best;
    }
};

/* Prop-style positivity data: whether any branch assignment yields a
 * positive measure, and the forest that supports it. */
struct PositivityVerdict {
    bool admits = false;
    std::vector<int> support_edges;  // bridges of the graph when admits
};

/* A positive measure exists exactly when no edge of a component lies
 * inside a simple cycle of the same component; equivalently, every edge
 * of each component borders that component's unbounded side.  The
 * support is then the graph minus all its simple cycles, i.e. the cut
 * edges. */
inline PositivityVerdict positivity_criterion(const TrajectoryGraph& g) {
    PositivityVerdict v;
    std::vector<char> edge_on_outer(g.edges.size(), 0);
    for (size_t fi = 0; fi < g.faces.size(); ++fi) {
        if (!g.faces[fi].outer) continue;
        for (int dart : g.faces[fi].darts) edge_on_outer[static_cast<size_t>(dart / 2)] = 1;
    }
    v.admits = true;
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (!edge_on_outer[e]) v.admits = false;
    if (v.admits) v.support_edges = g.bridge_edges();
    return v;
}

}  // namespace mbody

#endif  // MOTHERBODY_PLANARGRAPH_HPP
