// First-order large-n predictions for the recurrence coefficients, their
// comparison with computed coefficients, and the zero-to-Szego distances.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pivlag/moment_cache.hpp"
#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"
#include "pivlag/weight.hpp"

namespace pivlag {

enum class Branch { Generic, LhospitalMinus, LhospitalPlus, DegenerateKEqNu };

std::string branch_name(Branch b);

/// n a_n -> a1 and sqrt(n)(b_n - 1) -> b1.
struct Prediction {
  Real nu, b, L;
  Real a1;
  /// Unset on the degenerate branch.
  std::optional<Real> b1;
  /// b1 through the Schlesinger-transformed solution (unset when u vanishes).
  std::optional<Real> b1_schlesinger;
  Branch branch = Branch::Generic;
  Real u, u_prime, K, K_prime;
  /// Explanation on the degenerate branch.
  std::string note;
};

/// b in {0, 1/2, 1}. Throws ExcludedNu, AtPoleOfU or UnsupportedB.
Prediction predict(const Real& nu, const Real& b, const Real& L, const PrecisionContext& ctx);

struct CompareRow {
  long n = 0;
  Bits bits = 0;
  Real a_n, b_n;
  Real e_a, e_b;
};

struct CompareReport {
  Prediction prediction;
  MomentMethod method = MomentMethod::ClosedForm;
  bool exact_laguerre = false;
  std::vector<CompareRow> rows;
  /// Least-squares slopes of log e against log n (unset with fewer than 3 rows).
  std::optional<double> slope_a, slope_b;
};

struct CompareOptions {
  /// Use the exact Laguerre coefficients instead of moments (b = 0 only).
  bool exact_laguerre = false;
  /// Moment method; closed form when 2b is a nonnegative integer by default.
  std::optional<MomentMethod> method;
  /// Bits kept after the moment-to-recurrence loss (ctx.bits when zero).
  Bits requested_bits = 0;
  const MomentCache* cache = nullptr;
};

CompareReport compare(const Real& nu, const Real& b, const Real& L, const std::vector<long>& ns,
                      const PrecisionContext& ctx, const CompareOptions& opts = {});

/// Slope of the least-squares line through (log n, log e). Throws DegenerateFit.
double order_estimate(const std::vector<double>& ns, const std::vector<double>& errors);

struct ZeroDistanceReport {
  long n = 0;
  Bits bits = 0;
  std::vector<Complex> zeros;
  std::vector<double> distances;
  double max_dist = 0;
  double mean_dist = 0;
  Real max_rel_residual;
};

/// Working precision used for the zeros of degree n.
Bits zero_bits(long n);

/// Zeros of pi_n and their distances to the Szego curve. Throws DegenerateKNu
/// when K(L) = nu.
ZeroDistanceReport zero_distance_report(const ModelParams& p, const PrecisionContext& ctx,
                                        const MomentCache* cache = nullptr);

}  // namespace pivlag
