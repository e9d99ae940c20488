// The modified Laguerre weight z^alpha e^{-Nz} (z-1)^{2b}, the loop contour
// around [0, inf), and its moments.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"
#include "pivlag/quadrature.hpp"

namespace pivlag {

struct ModelParams {
  Real nu;
  Real b;
  Real L;
  long n = 0;
  // Derived.
  Real alpha;  // -n + nu
  Real N;      // n + sqrt2 L sqrt(n)
  Real t;      // N / n
  Real A;      // 1 - nu / n

  /// Computes the derived fields at the working precision.
  static ModelParams make(const Real& nu, const Real& b, const Real& L, long n);
  /// Same (nu, b, L) with another degree.
  ModelParams with_n(long n) const;
};

/// Evaluates the weight with arg z and arg(z-1) in (0, 2 pi).
/// Throws OnCut within tolerance of [0, inf).
Complex weight_eval(const Complex& z, const ModelParams& p, const PrecisionContext& ctx);

struct ContourSpec {
  Real rho;
  Real eps;
  Real R;
};

/// rho = min(1/t, 0.9), eps = min(0.4, rho/2), R from the tail bound at `bits`
/// for moments up to index m.
ContourSpec default_contour(const ModelParams& p, Bits bits, long m = -1);

/// Lower ray inward at Im z = -eps, clockwise arc of radius rho through the
/// negative axis, upper ray outward at Im z = +eps.
Path contour_path(const ContourSpec& c);

/// Bits that make the moment-to-recurrence pipeline keep `requested` bits.
Bits moment_bits(const ModelParams& p, Bits requested);

enum class MomentMethod { Quadrature, ClosedForm };

std::string method_name(MomentMethod m);

struct MomentTable {
  ModelParams params;
  Bits prec_bits = 0;
  MomentMethod method = MomentMethod::ClosedForm;
  std::vector<Complex> values;
  /// Quadrature error estimates (empty for closed form).
  std::vector<Real> errors;
};

/// True when 2b is a nonnegative integer.
bool closed_form_capable(const Real& b);

/// mu_0..mu_m. Throws UnsupportedClosedForm or NoConvergence.
MomentTable moments(const ModelParams& p, long m, MomentMethod method, const PrecisionContext& ctx,
                    const std::optional<ContourSpec>& contour = std::nullopt);

/// b = 0 closed form -2 pi i e^{i pi(alpha+j+1)} / (Gamma(-alpha-j) N^{alpha+j+1}) for j = 0..m.
std::vector<Complex> laguerre_moments(const Real& alpha, const Real& N, long m,
                                      const PrecisionContext& ctx);

}  // namespace pivlag
