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

#ifndef MOTHERBODY_COMMON_HPP
#define MOTHERBODY_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>

namespace mbody {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/* Error taxonomy.  Every rejection that a caller may want to branch on
 * carries a stable machine-readable code; the CLI maps these to exit
 * status 2 and a JSON {"error": code, "detail": ...} payload. */
class AnalysisError : public std::runtime_error {
  public:
    AnalysisError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define MBODY_DEFINE_ERROR(NAME)                                          \
    class NAME : public AnalysisError {                                   \
      public:                                                             \
        explicit NAME(const std::string& detail)                          \
            : AnalysisError(#NAME, detail) {}                             \
    }

MBODY_DEFINE_ERROR(ZeroPolynomial);
MBODY_DEFINE_ERROR(NotSimplePole);
MBODY_DEFINE_ERROR(SufficientConditionFails);
MBODY_DEFINE_ERROR(NecessaryConditionFails);
MBODY_DEFINE_ERROR(MultiplePole);
MBODY_DEFINE_ERROR(NonRealResidue);
MBODY_DEFINE_ERROR(NotBalanced);
MBODY_DEFINE_ERROR(NoConstantTerm);
MBODY_DEFINE_ERROR(NoProbabilityBranch);
MBODY_DEFINE_ERROR(NoUnitRoot);
MBODY_DEFINE_ERROR(MultipleRootLambda);
MBODY_DEFINE_ERROR(Resonance);
MBODY_DEFINE_ERROR(NoSolution);
MBODY_DEFINE_ERROR(EvalAtRoot);
MBODY_DEFINE_ERROR(DegenerateDifferential);
MBODY_DEFINE_ERROR(StartAtHigherPole);
MBODY_DEFINE_ERROR(BranchPointAtInfinity);
MBODY_DEFINE_ERROR(TraceBudgetExceeded);
MBODY_DEFINE_ERROR(TooManyEdges);
MBODY_DEFINE_ERROR(InconsistentSection);
MBODY_DEFINE_ERROR(MultiplePoleOfP);
MBODY_DEFINE_ERROR(NonRealDensity);
MBODY_DEFINE_ERROR(NotStrebel);
MBODY_DEFINE_ERROR(NotCoprime);
MBODY_DEFINE_ERROR(TooCloseToSupport);
MBODY_DEFINE_ERROR(LevelCurveNotClosed);
MBODY_DEFINE_ERROR(DegenerateEmbedding);
MBODY_DEFINE_ERROR(NonRealGerm);
MBODY_DEFINE_ERROR(GeometryDegeneracy);

#undef MBODY_DEFINE_ERROR

/* Scale-free zero test: |x| below tol relative to a magnitude reference. */
inline bool near_zero(double x, double scale, double tol = 1e-12) {
    return std::abs(x) <= tol * (1.0 + std::abs(scale));
}

inline bool near_zero(const Complex& x, double scale, double tol = 1e-12) {
    return std::abs(x) <= tol * (1.0 + std::abs(scale));
}

inline bool is_real(const Complex& x, double tol = 1e-9) {
    return std::abs(x.imag()) <= tol * (1.0 + std::abs(x.real()));
}

}  // namespace mbody

#endif  // MOTHERBODY_COMMON_HPP
