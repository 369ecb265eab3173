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

#ifndef MOTHERBODY_EXACTQ_HPP
#define MOTHERBODY_EXACTQ_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "motherbody/common.hpp"

namespace mbody {

using Rational = boost::multiprecision::cpp_rational;

/* Gaussian rational a + b*i with exact arithmetic.  Used where zero
 * tests must be exact: diagonal-sum conditions and branch-series
 * coefficients.  Everything downstream of those is double precision. */
struct ExactComplex {
    Rational re{0};
    Rational im{0};

    ExactComplex() = default;
    ExactComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    ExactComplex(long r) : re(r) {}
    ExactComplex(int r) : re(r) {}

    static ExactComplex from_ratio(long long num, long long den) {
        return ExactComplex(Rational(num, den));
    }

    bool is_zero() const { return re == 0 && im == 0; }

    Complex to_complex() const {
        return Complex(static_cast<double>(re), static_cast<double>(im));
    }

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re + b.re, a.im + b.im);
    }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re - b.re, a.im - b.im);
    }
    friend ExactComplex operator-(const ExactComplex& a) {
        return ExactComplex(-a.re, -a.im);
    }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw AnalysisError("DivisionByZero", "exact complex division by zero");
        return ExactComplex((a.re * b.re + a.im * b.im) / n,
                            (a.im * b.re - a.re * b.im) / n);
    }
    ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
    ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
    ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }
    ExactComplex& operator/=(const ExactComplex& b) { return *this = *this / b; }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) {
        return !(a == b);
    }
};

/* Uniform scalar interface for the templated polynomial/series code.
 * Float mode uses tolerance-based zero tests; exact mode is exact. */
template <class K>
struct ScalarOps;

template <>
struct ScalarOps<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return Complex(0.0, 0.0); }
    static Complex one() { return Complex(1.0, 0.0); }
    static bool is_zero(const Complex& x, double scale) {
        return std::abs(x) <= 1e-10 * (1.0 + scale);
    }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex to_complex(const Complex& x) { return x; }
};

template <>
struct ScalarOps<ExactComplex> {
    static constexpr bool exact = true;
    static ExactComplex zero() { return ExactComplex(); }
    static ExactComplex one() { return ExactComplex(1); }
    static bool is_zero(const ExactComplex& x, double /*scale*/) { return x.is_zero(); }
    static double magnitude(const ExactComplex& x) { return std::abs(x.to_complex()); }
    static Complex to_complex(const ExactComplex& x) { return x.to_complex(); }
};

}  // namespace mbody

#endif  // MOTHERBODY_EXACTQ_HPP
