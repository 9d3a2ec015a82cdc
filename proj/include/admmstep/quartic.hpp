// Copyright 2026 The admmstep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Optimal step-size polynomial
//
//   p(alpha) = a alpha^4 + b alpha^3 + d alpha + e,   gamma* = alpha^2,
//
// with a = ||Ax*||^2, b = -<Ax*, zeta0>, d = <lambda*, zeta0>,
// e = -||lambda*||^2. Its positive roots are the stationary points of
//
//   h(alpha) = ||alpha Ax* + lambda*/alpha - zeta0||^2 - ||zeta0||^2
//            = a alpha^2 - e / alpha^2 + 2 b alpha - 2 d / alpha,
//
// the squared distance from zeta0 to the unscaled fixed point at gamma =
// alpha^2. For most inputs there is exactly one positive root. When b < 0 and
// d > 0 there can be three (e.g. roots 1, 2, 3 for a = 1, b = -25/6,
// d = 85/6, e = -11); SolveQuartic then returns the positive root that
// minimizes h.

#ifndef ADMMSTEP_QUARTIC_HPP_
#define ADMMSTEP_QUARTIC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"

namespace admmstep {

struct QuarticCoefficients {
  double a = 0.0;  // alpha^4
  double b = 0.0;  // alpha^3
  double d = 0.0;  // alpha^1
  double e = 0.0;  // alpha^0

  // Inner products the coefficients were built from, when known.
  struct Provenance {
    bool from_vectors = false;
    double ax_norm_sq = 0.0;
    double ax_dot_zeta0 = 0.0;
    double lambda_dot_zeta0 = 0.0;
    double lambda_norm_sq = 0.0;
  } provenance;

  double scale() const {
    return std::max({std::abs(a), std::abs(b), std::abs(d), std::abs(e)});
  }

  double Evaluate(double alpha) const {
    return ((a * alpha + b) * alpha * alpha + d) * alpha + e;
  }

  double Derivative(double alpha) const {
    return (4.0 * a * alpha + 3.0 * b) * alpha * alpha + d;
  }

  // h(alpha) above; p(alpha) = alpha^3 h'(alpha) / 2.
  double RateObjective(double alpha) const {
    return a * alpha * alpha - e / (alpha * alpha) + 2.0 * b * alpha - 2.0 * d / alpha;
  }

  double RateObjectiveDerivative(double alpha) const {
    return 2.0 * a * alpha + 2.0 * e / (alpha * alpha * alpha) + 2.0 * b +
           2.0 * d / (alpha * alpha);
  }
};

inline QuarticCoefficients BuildCoefficients(const Vector& ax_star, const Vector& lambda_star,
                                             const Vector& zeta0) {
  Require(lambda_star.size() == ax_star.size() && zeta0.size() == ax_star.size(),
          ErrorCode::kDimensionMismatch,
          "quartic inputs differ in size: Ax* " + std::to_string(ax_star.size()) +
              ", lambda* " + std::to_string(lambda_star.size()) + ", zeta0 " +
              std::to_string(zeta0.size()));
  QuarticCoefficients c;
  auto& p = c.provenance;
  p.from_vectors = true;
  p.ax_norm_sq = ax_star.squaredNorm();
  p.lambda_norm_sq = lambda_star.squaredNorm();
  p.ax_dot_zeta0 = ax_star.dot(zeta0);
  p.lambda_dot_zeta0 = lambda_star.dot(zeta0);
  Require(p.ax_norm_sq > 0.0, ErrorCode::kDegenerateProblem,
          "Ax* vanishes; the solution is already known");
  Require(p.lambda_norm_sq > 0.0, ErrorCode::kDegenerateProblem,
          "lambda* vanishes; the equality constraint is inactive");
  c.a = p.ax_norm_sq;
  c.b = -p.ax_dot_zeta0;
  c.d = p.lambda_dot_zeta0;
  c.e = -p.lambda_norm_sq;
  return c;
}

using QuarticRoots = std::array<std::complex<double>, 4>;

namespace detail {

// Ferrari's closed form for a x^4 + b x^3 + d x + e (no quadratic term).
// cube_branch selects which of the three cube roots of u2 is used.
inline QuarticRoots FerrariRaw(double a, double b, double d, double e, int cube_branch) {
  using C = std::complex<double>;
  const double delta0 = b * d - 4.0 * a * e;
  const double u1 = std::sqrt(27.0) / 2.0 * (a * d * d + b * b * e);
  const C disc = std::sqrt(C(delta0 * delta0 * delta0 + u1 * u1));
  // Either sign of the square root is valid; take the one without cancellation.
  const C u2 = std::abs(u1 + disc) >= std::abs(u1 - disc) ? u1 + disc : u1 - disc;
  C u3 = 0.0;
  if (std::abs(u2) > 0.0) {
    const C omega = std::polar(1.0, 2.0 * M_PI / 3.0);
    C cube = std::pow(u2, 1.0 / 3.0);
    for (int i = 0; i < cube_branch; ++i) cube *= omega;
    u3 = (cube - delta0 / cube) / (std::sqrt(3.0) * a);
  }
  const double ba = b / a;
  const C u4 = std::sqrt(ba * ba / 4.0 + u3);
  const C u5 = ba * ba / 2.0 - u3;
  QuarticRoots roots;
  if (std::abs(u4) == 0.0) {
    // Depressed quartic is biquadratic in (x + b/4a); u6 would divide by zero.
    roots.fill(std::numeric_limits<double>::quiet_NaN());
    return roots;
  }
  const C u6 = -(ba * ba * ba + 8.0 * d / a) / (4.0 * u4);
  const C s1 = std::sqrt(u5 - u6);
  const C s2 = std::sqrt(u5 + u6);
  roots[0] = 0.5 * (-ba / 2.0 - u4 - s1);
  roots[1] = 0.5 * (-ba / 2.0 - u4 + s1);
  roots[2] = 0.5 * (-ba / 2.0 + u4 - s2);
  roots[3] = 0.5 * (-ba / 2.0 + u4 + s2);
  return roots;
}

inline bool IsRealPositive(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) && z.real() > 0.0 &&
         std::abs(z.imag()) < 1e-8 * (1.0 + std::abs(z.real()));
}

// Normalizes to a monic quartic with constant -1 through alpha = s beta,
// s = (-e/a)^{1/4}. Returns s; the normalized coefficients go to nb, nd.
inline double Normalize(const QuarticCoefficients& c, double& nb, double& nd) {
  const double s = std::pow(-c.e / c.a, 0.25);
  nb = c.b * s * s * s / -c.e;
  nd = c.d * s / -c.e;
  return s;
}

inline void CheckDomain(const QuarticCoefficients& c) {
  const double scale = c.scale();
  Require(std::isfinite(scale), ErrorCode::kInvalidArgument, "quartic coefficients not finite");
  Require(scale >= std::numeric_limits<double>::min(), ErrorCode::kCoefficientUnderflow,
          "all quartic coefficients underflow");
  Require(c.a > 0.0, ErrorCode::kInvalidArgument, "leading coefficient must be positive");
  Require(c.e < 0.0, ErrorCode::kInvalidArgument, "constant coefficient must be negative");
  Require(std::isnormal(c.a / scale) && std::isnormal(c.e / scale),
          ErrorCode::kCoefficientUnderflow, "quartic coefficients underflow relative to scale");
}

}  // namespace detail

// All four roots of p via Ferrari's formula, in the original scale. Uses the
// principal cube root unless it makes u4 vanish.
inline QuarticRoots FerrariRoots(const QuarticCoefficients& c) {
  detail::CheckDomain(c);
  double nb = 0.0, nd = 0.0;
  const double s = detail::Normalize(c, nb, nd);
  QuarticRoots roots = detail::FerrariRaw(1.0, nb, nd, -1.0, 0);
  if (!std::isfinite(roots[0].real())) {
    for (int branch = 1; branch < 3 && !std::isfinite(roots[0].real()); ++branch)
      roots = detail::FerrariRaw(1.0, nb, nd, -1.0, branch);
  }
  for (auto& r : roots) r *= s;
  return roots;
}

// Positive real roots after Newton polishing, ascending.
inline std::vector<double> PositiveRealRoots(const QuarticCoefficients& c) {
  const QuarticRoots roots = FerrariRoots(c);
  const double s = std::pow(-c.e / c.a, 0.25);
  std::vector<double> out;
  for (const auto& r : roots) {
    if (!detail::IsRealPositive(r / s)) continue;
    double x = r.real();
    for (int i = 0; i < 3 && std::abs(c.Evaluate(x)) > 1e-12 * c.scale(); ++i) {
      const double dp = c.Derivative(x);
      if (dp == 0.0) break;
      const double next = x - c.Evaluate(x) / dp;
      if (!(next > 0.0) || std::abs(c.Evaluate(next)) >= std::abs(c.Evaluate(x))) break;
      x = next;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// alpha* > 0. Solves the biquadratic directly when b = d = 0.
inline double SolveQuartic(const QuarticCoefficients& c) {
  detail::CheckDomain(c);
  if (c.b == 0.0 && c.d == 0.0) return std::pow(-c.e / c.a, 0.25);

  std::vector<double> candidates = PositiveRealRoots(c);
  if (candidates.empty()) {
    // A positive root always exists (p(0) < 0 < p(inf)); a near-double root
    // can push it past the imaginary-part filter. Polish the most real one.
    const QuarticRoots roots = FerrariRoots(c);
    const auto* best = std::min_element(roots.begin(), roots.end(), [](auto x, auto y) {
      const bool px = x.real() > 0.0, py = y.real() > 0.0;
      if (px != py) return px;
      return std::abs(x.imag()) < std::abs(y.imag());
    });
    if (best->real() > 0.0) {
      double x = best->real();
      for (int i = 0; i < 3; ++i) {
        const double dp = c.Derivative(x);
        if (dp == 0.0) break;
        const double next = x - c.Evaluate(x) / dp;
        if (next > 0.0) x = next;
      }
      if (std::abs(c.Evaluate(x)) <= 1e-9 * c.scale()) candidates.push_back(x);
    }
  }
  Require(!candidates.empty(), ErrorCode::kNoPositiveRoot,
          "no positive real root of the step-size quartic within tolerance");
  return *std::min_element(candidates.begin(), candidates.end(), [&c](double x, double y) {
    return c.RateObjective(x) < c.RateObjective(y);
  });
}

inline double OptimalGamma(const QuarticCoefficients& c) {
  const double alpha = SolveQuartic(c);
  return alpha * alpha;
}

}  // namespace admmstep

#endif  // ADMMSTEP_QUARTIC_HPP_
