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

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <random>

#include "motherbody/bipoly.hpp"
#include "motherbody/roots.hpp"

using namespace mbody;

namespace {

/* Independent root oracle: plain companion-matrix eigenvalues, no shared
 * code with the library root finder. */
std::vector<Complex> companion_oracle(const UniPoly& p) {
    const int n = p.degree();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, n - 1) = -p.coeff(i) / p.leading();
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    // greedy bipartite match; fine for well-separated sets
    double worst = 0.0;
    for (const auto& x : a) {
        double best = 1e300;
        size_t arg = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            double d = std::abs(x - b[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        worst = std::max(worst, best);
        b.erase(b.begin() + static_cast<long>(arg));
    }
    return worst;
}

double coeff_distance(const UniPoly& a, const UniPoly& b) {
    double num = 0.0, den = 0.0;
    int d = std::max(a.degree(), b.degree());
    for (int i = 0; i <= d; ++i) {
        num = std::max(num, std::abs(a.coeff(i) - b.coeff(i)));
        den = std::max(den, std::abs(a.coeff(i)));
    }
    return num / (den > 0 ? den : 1.0);
}

}  // namespace

TEST_CASE("poly_roots: symmetric pair z^2 - 1") {
    auto clusters = poly_roots(real_poly({-1, 0, 1}));
    REQUIRE(clusters.size() == 2);
    CHECK(std::abs(clusters[0].root - Complex(-1, 0)) < 1e-12);
    CHECK(std::abs(clusters[1].root - Complex(1, 0)) < 1e-12);
    CHECK(clusters[0].multiplicity == 1);
    CHECK(clusters[1].multiplicity == 1);
}

TEST_CASE("poly_roots: repeated root (z-2)^2") {
    auto clusters = poly_roots(real_poly({4, -4, 1}));
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].multiplicity == 2);
    CHECK(std::abs(clusters[0].root - Complex(2, 0)) < 1e-8);
}

TEST_CASE("poly_roots: fifth roots of unity vs companion oracle") {
    UniPoly p = real_poly({-1, 0, 0, 0, 0, 1});
    auto clusters = poly_roots(p);
    REQUIRE(clusters.size() == 5);
    std::vector<Complex> got;
    for (const auto& c : clusters) {
        CHECK(c.multiplicity == 1);
        got.push_back(c.root);
    }
    CHECK(match_distance(got, companion_oracle(p)) < 1e-9);
}

TEST_CASE("poly_roots: zero polynomial rejected") {
    CHECK_THROWS_AS(poly_roots(UniPoly()), ZeroPolynomial);
}

TEST_CASE("poly_roots then reconstruct is the identity (well-separated roots)") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int deg : {10, 40, 100}) {
        std::vector<RootCluster> truth;
        for (int i = 0; i < deg; ++i) {
            // Angular jitter only: radial spread at high degree makes the
            // coefficient vector exponentially large and the roots no longer
            // recoverable from doubles at all.
            double th = 2.0 * kPi * (i + 0.3 * u(rng)) / deg;
            double r = 1.0 + 2.0 * u(rng) / deg;
            truth.push_back({r * Complex(std::cos(th), std::sin(th)), 1});
        }
        UniPoly p = from_roots(truth, Complex(1.3, -0.2));
        UniPoly q = from_roots(poly_roots(p), p.leading());
        CHECK(coeff_distance(p, q) < 1e-10);
    }
}

TEST_CASE("coprime: shared and disjoint factors") {
    UniPoly z2m1 = real_poly({-1, 0, 1});
    CHECK_FALSE(coprime(z2m1, real_poly({-1, 1})));
    CHECK(coprime(z2m1, real_poly({0, 1})));
}

TEST_CASE("coprime: resultant matches the Sylvester value 4") {
    // Res(z^2+1, z^2+2z+1) = lc^deg * prod q(roots of p) = q(i) q(-i)
    //                      = (2i)(-2i) = 4, same as the 4x4 Sylvester det.
    UniPoly p = real_poly({1, 0, 1});
    UniPoly q = real_poly({1, 2, 1});
    Complex oracle(1.0, 0.0);
    for (const auto& r : companion_oracle(p)) oracle *= q(r);
    CHECK(std::abs(oracle - Complex(4.0, 0.0)) < 1e-12);
    CHECK(std::abs(resultant(p, q) - Complex(4.0, 0.0)) < 1e-10);
    CHECK(coprime(p, q));
}

TEST_CASE("discriminant_D: hand expansions") {
    UniPoly d1 = discriminant_D(real_poly({1}), real_poly({0, -1}), real_poly({1}));
    CHECK(coeff_distance(d1, real_poly({-4, 0, 1})) < 1e-15);

    UniPoly d2 = discriminant_D(real_poly({-1, 0, 1}), UniPoly(), real_poly({-1}));
    CHECK(coeff_distance(d2, real_poly({-4, 0, 4})) < 1e-15);

    CHECK(discriminant_D(UniPoly(), UniPoly(), UniPoly()).is_zero());
}

TEST_CASE("discriminant_D agrees with pointwise Q^2 - 4PR at random points") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    UniPoly p = real_poly({0.5, -1, 2}), q = real_poly({1, 3}), r = real_poly({-2, 0, 0, 1});
    UniPoly d = discriminant_D(p, q, r);
    for (int s = 0; s < 20; ++s) {
        Complex z(u(rng), u(rng));
        Complex direct = q(z) * q(z) - 4.0 * p(z) * r(z);
        CHECK(std::abs(d(z) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("residue_at: partial fractions of (3z+1)/(z^2-1)") {
    UniPoly num = real_poly({1, 3});
    UniPoly den = real_poly({-1, 0, 1});
    // (3z+1)/(z^2-1) = 2/(z-1) + 1/(z+1)
    CHECK(std::abs(residue_at(num, den, Complex(1, 0)) - Complex(2, 0)) < 1e-14);
    CHECK(std::abs(residue_at(num, den, Complex(-1, 0)) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("residue_at: double pole rejected") {
    CHECK_THROWS_AS(residue_at(real_poly({1}), real_poly({0, 0, 1}), Complex(0, 0)),
                    NotSimplePole);
}

TEST_CASE("newton_support: support, hull and M") {
    BiPoly cz_minus_1;
    cz_minus_1.set(1, 1, 1.0);
    cz_minus_1.set(0, 0, -1.0);
    auto s1 = newton_support(cz_minus_1);
    CHECK(s1.points == std::set<Exponent>{{1, 1}, {0, 0}});
    CHECK(s1.M == 0);

    BiPoly c2_minus_z;
    c2_minus_z.set(2, 0, 1.0);
    c2_minus_z.set(0, 1, -1.0);
    CHECK(newton_support(c2_minus_z).M == -1);

    BiPoly p3;  // C^2 z^2 + C^2 - 1
    p3.set(2, 2, 1.0);
    p3.set(2, 0, 1.0);
    p3.set(0, 0, -1.0);
    CHECK(newton_support(p3).M == 0);
}

TEST_CASE("newton_support: hull is contained in the support") {
    BiPoly p;
    p.set(0, 0, 1.0);
    p.set(3, 0, 2.0);
    p.set(0, 2, -1.0);
    p.set(1, 1, 5.0);
    auto s = newton_support(p);
    for (const auto& v : s.hull) CHECK(s.points.count(v) == 1);
    CHECK(s.hull.size() == 3);  // (1,1) is interior
}

TEST_CASE("M is invariant under multiplying by powers of (C z)") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> e(0, 4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        BiPoly p;
        for (int m = 0; m < 5; ++m) p.set(e(rng), e(rng), Complex(u(rng) + 2.0, u(rng)));
        for (int a : {1, 2, 5}) {
            BiPoly shifted;
            for (const auto& [ex, c] : p.monomials()) shifted.set(ex.first + a, ex.second + a, c);
            CHECK(newton_support(shifted).M == newton_support(p).M);
        }
    }
}

TEST_CASE("exact arithmetic round trip") {
    ExactComplex a(Rational(1, 2), Rational(-1, 3));
    ExactComplex b(Rational(2, 5), Rational(1, 7));
    ExactComplex c = (a * b) / b;
    CHECK(c == a);
    ExactUniPoly p({ExactComplex(1), ExactComplex(0), ExactComplex(-3)});
    CHECK(p(ExactComplex(2)) == ExactComplex(-11));
}
