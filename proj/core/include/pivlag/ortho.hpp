// Monic orthogonal polynomials from moments: recurrence coefficients, the
// Hankel-determinant cross-check, exact Laguerre coefficients, polynomial
// assembly and zeros.
#pragma once

#include <utility>
#include <vector>

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"
#include "pivlag/weight.hpp"

namespace pivlag {

/// pi_{k+1} = (z - b_k) pi_k - a_k pi_{k-1}.
struct RecurrenceTable {
  ModelParams params;
  /// a[k] for k = 0..n; a[0] is unused and zero.
  std::vector<Complex> a;
  /// b[k] for k = 0..n.
  std::vector<Complex> b;
  std::vector<bool> existence_ok;

  long degree() const { return static_cast<long>(b.size()) - 1; }
};

/// Chebyshev algorithm on mu_0..mu_{2n+1}. Throws ExistenceFailure at the
/// first degree whose leading Hankel ratio cancels below half precision.
RecurrenceTable recurrence_from_moments(const MomentTable& tbl, long n, const PrecisionContext& ctx);

/// (a_n, b_n) from Hankel determinants D_k = det[mu_{i+j}].
std::pair<Complex, Complex> hankel_ratio_oracle(const MomentTable& tbl, long n,
                                                const PrecisionContext& ctx);

/// Determinant by Gaussian elimination with partial pivoting.
Complex determinant(std::vector<std::vector<Complex>> m);

/// a_n = n(n + alpha)/N^2, b_n = (2n + alpha + 1)/N for degree p.n. Requires b = 0.
std::pair<Real, Real> laguerre_exact(const ModelParams& p);
/// Same, at degree k of the family with parameters p.
std::pair<Real, Real> laguerre_exact_at(const ModelParams& p, long k);

/// Coefficients c_0..c_n of pi_n, ascending, c_n = 1.
std::vector<Complex> poly_coeffs(const RecurrenceTable& rt, long n, const PrecisionContext& ctx);

struct ZeroSet {
  long degree = 0;
  std::vector<Complex> zeros;
  Real max_residual;
  /// max |p(z)| / sum |c_k||z|^k over the zeros.
  Real max_rel_residual;
};

struct AberthOptions {
  int max_iterations = 2000;
};

/// Aberth-Ehrlich iteration for a monic polynomial given ascending coefficients.
ZeroSet zeros(const std::vector<Complex>& coeffs, const PrecisionContext& ctx,
              const AberthOptions& opts = {});

}  // namespace pivlag
