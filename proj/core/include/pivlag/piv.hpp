// Painleve IV: residual, auxiliary functions, Psi-expansion coefficients,
// Stokes multipliers, the Schlesinger map, closed-form special solutions
// for b in {0, 1/2, 1}, and an adaptive integrator.
//
// u'' = u'^2/(2u) + (3/2)u^3 + 4s u^2 + 2(s^2 + 1 - 2 Theta_inf) u - 8 Theta^2 / u
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"

namespace pivlag {

struct PivParams {
  Real theta;
  Real theta_inf;

  /// Theta = -b, Theta_inf = nu + b.
  static PivParams family(const Real& nu, const Real& b);
};

struct PivPoint {
  Real s;
  Complex u;
  Complex u_prime;
};

struct AuxValues {
  std::optional<Complex> y;
  Complex K;
  Complex K_prime;
  Complex H;
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

struct PsiCoefficients {
  Matrix2 psi_m1;
  Matrix2 psi_m2;
};

/// Right-hand side of the equation, i.e. u'' forced by (s, u, u').
Complex piv_rhs(const Real& s, const Complex& u, const Complex& up, const PivParams& params,
                const PrecisionContext& ctx);

/// u'' minus the right-hand side. Throws DivisionNearZero when |u| is below
/// tolerance and the singular terms do not vanish identically.
Complex piv_residual(const PivPoint& p, const Complex& u_dd, const PivParams& params,
                     const PrecisionContext& ctx);

/// Closed-form special solution.
struct SpecialSolution {
  PivPoint point;
  Complex u_dd;
  /// Unset when nu is an integer (the normalizing constant is singular).
  std::optional<Complex> y;
};

/// b must be 0, 1/2 or 1. Throws AtPole when s is a pole, UnsupportedB
/// otherwise.
SpecialSolution special_solution(const Real& b, const Real& nu, const Real& s,
                                 const PrecisionContext& ctx);

/// Taylor coefficients of u about s (order 0..order) for b in {1/2, 1}; b = 0 gives zeros.
std::vector<Complex> special_u_taylor(const Real& b, const Real& nu, const Real& s, int order,
                                      const PrecisionContext& ctx);

/// K from (s, u, u').
Complex k_value(const PivPoint& p, const PivParams& params);

/// K, K', H and (optionally) y. u'' is taken from the equation unless u_dd is
/// supplied, which is required when |u| is below tolerance.
AuxValues aux_values(const PivPoint& p, const PivParams& params, const PrecisionContext& ctx,
                     const std::optional<Complex>& y = std::nullopt,
                     const std::optional<Complex>& u_dd = std::nullopt);

/// Psi_{-1} and Psi_{-2}. Throws MissingY or DivisionNearZero.
PsiCoefficients psi_expansion(const PivPoint& p, const AuxValues& aux, const PivParams& params,
                              const PrecisionContext& ctx);

/// u* = -2K(K+2b) / (u(K - nu)), a solution with Theta = -b, Theta_inf = nu + b + 1.
Complex schlesinger_ustar(const AuxValues& aux, const PivPoint& p, const Real& nu, const Real& b,
                          const PrecisionContext& ctx);

// ----------------------------------------------------------- Stokes data

struct StokesMultipliers {
  Complex s1, s2, s3, s4;
};

enum class StokesSet { Canonical, CaseOne, CaseTwo };

StokesMultipliers stokes_set(StokesSet which, const Real& nu, const Real& b,
                             const PrecisionContext& ctx);

/// {d s1, s2/d, d s3, s4/d}. Throws ZeroScale for d = 0.
StokesMultipliers stokes_transform(const StokesMultipliers& sm, const Complex& d);

/// Left side minus right side of the cyclic relation.
Complex stokes_residual(const StokesMultipliers& sm, const PivParams& params,
                        const PrecisionContext& ctx);

/// The scale factors relating the canonical set to the two case sets.
Complex stokes_d_case_one(const Real& nu, const PrecisionContext& ctx);
Complex stokes_d_case_two(const Real& nu, const PrecisionContext& ctx);

// -------------------------------------------------------------- integrator

struct PoleInfo {
  Real location;
  Real residue;
};

struct Trajectory {
  std::vector<PivPoint> points;
  /// Set when integration stopped at a blow-up of u.
  std::optional<PoleInfo> pole;
};

struct OdeOptions {
  /// |u| above this stops integration and triggers the pole fit.
  double blowup = 1e6;
  std::size_t max_steps = 2000000;
};

/// Dormand-Prince 5(4) with local error controlled by ctx.target_rel_tol.
/// Throws StepUnderflow when the step collapses away from a pole.
Trajectory ode_integrate(const PivPoint& start, const PivParams& params, const Real& s_end,
                         const PrecisionContext& ctx, const OdeOptions& opts = {});

}  // namespace pivlag
