// Planar geometry: the Szego curve, the branch points beta, the phi function
// and the level curve Re phi = 0.
#pragma once

#include <vector>

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"
#include "pivlag/weight.hpp"

namespace pivlag {

// ------------------------------------------------------------ Szego curve

/// |z e^{1-z}| - 1.
Real szego_membership(const Complex& z);

/// Radius r(theta) in (0, 1] of the curve point at polar angle theta.
Real szego_radius(const Real& theta);

/// `samples` points at equally spaced polar angles, counterclockwise from z = 1.
std::vector<Complex> szego_curve(long samples, const PrecisionContext& ctx);

/// Distance from z to the curve (coarse polyline search, then golden-section
/// refinement in the polar angle to about 1e-13).
double szego_distance(const Complex& z);

// ---------------------------------------------------------------- branch points

/// Case I (nu > 0): real beta1 < beta2. Case II (nu < 0): beta1 = conj(beta),
/// beta2 = beta with Im beta > 0.
struct BetaPoints {
  bool case_one = true;
  Complex beta1;
  Complex beta2;
};

/// Throws ExcludedNu for nu in N_0.
BetaPoints beta_points(const ModelParams& p);

/// R_n(s) with the cut on the segment [beta1, beta2] and R_n(s) ~ s at infinity.
Complex r_n(const Complex& s, const BetaPoints& bp);

/// phi_n(z) = (1/2) int R_n(s)/s ds from beta1 (Case I) or beta (Case II).
/// Routes through the upper half-plane when z is on the real axis. Throws
/// PathCrossesCut when z is on the cut or at the origin.
Complex phi_n(const Complex& z, const ModelParams& p, const PrecisionContext& ctx);

/// (1/2) int_a^b R_n(s)/s ds along the straight segment.
Complex phi_increment(const Complex& a, const Complex& b, const BetaPoints& bp,
                      const PrecisionContext& ctx);

// ----------------------------------------------------------------- level curve

struct Gamma0Trace {
  /// Case I: closed loop listed counterclockwise starting at beta1.
  /// Case II: open arc from conj(beta) to beta.
  std::vector<Complex> vertices;
  /// Unit tangents at the vertices, in listing order.
  std::vector<Complex> tangents;
  bool closed = true;
  /// Negative-axis crossing.
  Real crossing;
};

struct TraceOptions {
  double corrector_tol = 1e-14;
  std::size_t max_vertices = 200000;
};

/// Predictor-corrector trace of Re phi_n = 0. Throws TraceStalled.
Gamma0Trace gamma0_trace(const ModelParams& p, double step, const PrecisionContext& ctx,
                         const TraceOptions& opts = {});

/// Winding number of a polyline about z0 (closing edge added when closed).
long winding_number(const std::vector<Complex>& poly, const Complex& z0, bool closed);

/// (1/(2 pi i)) R_n(y)/y * dir, the measure density along unit direction dir.
Complex measure_density(const Complex& y, const Complex& dir, const BetaPoints& bp);

}  // namespace pivlag
