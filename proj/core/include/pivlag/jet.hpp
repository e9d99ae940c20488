// Truncated Taylor series ("jets") with complex coefficients.
//
// A jet of order k holds coefficients c_0..c_k of f(s0 + h) in powers of h.
#pragma once

#include <vector>

#include "pivlag/mp.hpp"

namespace pivlag::jet {

using Series = std::vector<Complex>;

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
/// a / b; requires b[0] != 0.
Series div(const Series& a, const Series& b);
/// Derivative; the result has one order less.
Series deriv(const Series& a);
/// f' / f.
Series log_deriv(const Series& a);
/// Wronskian f g' - f' g.
Series wronskian(const Series& f, const Series& g);
/// k-th derivative value k! c_k.
Complex derivative_at(const Series& a, int k);

}  // namespace pivlag::jet
