// Complex Gamma function at arbitrary precision.
#pragma once

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"

namespace pivlag {

/// Gamma(z). Throws PoleOfGamma near nonpositive integers.
Complex gamma(const Complex& z, const PrecisionContext& ctx);
Real gamma(const Real& x, const PrecisionContext& ctx);

/// 1/Gamma(z), entire; exactly zero at the poles of Gamma.
Complex rgamma(const Complex& z, const PrecisionContext& ctx);

/// log Gamma(z) for Re z >= 1/2 (principal branch of the Stirling sum).
Complex lgamma_right(const Complex& z, const PrecisionContext& ctx);

/// Bernoulli number B_{2k} as an exact rational rounded to the working precision.
Real bernoulli_2k(int k);

}  // namespace pivlag
