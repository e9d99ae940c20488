// Adaptive Gauss-Legendre quadrature along piecewise smooth complex paths.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"

namespace pivlag {

struct PathSegment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Complex a, b;  // line endpoints
  Complex center;
  Real radius, start_angle, end_angle;

  static PathSegment line(Complex from, Complex to);
  /// Arc c + r e^{i theta}, theta running from t0 to t1 (orientation follows).
  static PathSegment arc(Complex c, Real r, Real t0, Real t1);

  /// Point at parameter t in [0, 1].
  Complex point(const Real& t) const;
  /// dz/dt at parameter t.
  Complex tangent(const Real& t) const;
  Complex start() const;
  Complex end() const;
  Real length() const;
};

using Path = std::vector<PathSegment>;

/// Checks that consecutive segments join within 2^{-bits} (relative to scale).
bool path_is_connected(const Path& path, Bits bits);

struct QuadOptions {
  /// Points of the coarse rule per panel; 0 picks from the precision.
  int order = 0;
  std::size_t max_panels = 1 << 16;
};

struct QuadResult {
  Complex value;
  Real error;
  std::size_t panels = 0;
};

struct VecQuadResult {
  std::vector<Complex> values;
  std::vector<Real> errors;
  std::size_t panels = 0;
};

using ScalarIntegrand = std::function<Complex(const Complex&)>;
/// Fills out[0..m) with the integrand components at z.
using VectorIntegrand = std::function<void(const Complex&, std::vector<Complex>&)>;
/// Parametric form: returns g(t) dt-weights already included (f(z(t)) z'(t)).
using ParamIntegrand = std::function<void(const Real&, std::vector<Complex>&)>;

QuadResult integrate_path(const ScalarIntegrand& f, const Path& path, const PrecisionContext& ctx,
                          const QuadOptions& opts = {});

VecQuadResult integrate_path(const VectorIntegrand& f, std::size_t m, const Path& path,
                             const PrecisionContext& ctx, const QuadOptions& opts = {});

/// Integral over t in [t0, t1] of a vector-valued parametric integrand.
VecQuadResult integrate_interval(const ParamIntegrand& g, std::size_t m, const Real& t0,
                                 const Real& t1, const PrecisionContext& ctx,
                                 const QuadOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1] at the working precision.
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};
const GaussRule& gauss_legendre(int points);

}  // namespace pivlag
