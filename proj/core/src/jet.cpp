#include "pivlag/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace pivlag::jet {

namespace {
std::size_t common(const Series& a, const Series& b) { return std::min(a.size(), b.size()); }
}  // namespace

Series add(const Series& a, const Series& b) {
  Series r(common(a, b));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Series sub(const Series& a, const Series& b) {
  Series r(common(a, b));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Series mul(const Series& a, const Series& b) {
  Series r(common(a, b));
  for (std::size_t k = 0; k < r.size(); ++k) {
    Complex acc;
    for (std::size_t i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    r[k] = std::move(acc);
  }
  return r;
}

Series div(const Series& a, const Series& b) {
  if (b.empty() || b[0].is_zero()) throw std::domain_error("jet division by a series vanishing at 0");
  Series r(common(a, b));
  for (std::size_t k = 0; k < r.size(); ++k) {
    Complex acc = a[k];
    for (std::size_t i = 1; i <= k; ++i) acc -= b[i] * r[k - i];
    r[k] = acc / b[0];
  }
  return r;
}

Series deriv(const Series& a) {
  if (a.size() <= 1) return {};
  Series r(a.size() - 1);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k + 1] * static_cast<long>(k + 1);
  return r;
}

Series log_deriv(const Series& a) { return div(deriv(a), a); }

Series wronskian(const Series& f, const Series& g) {
  return sub(mul(f, deriv(g)), mul(deriv(f), g));
}

Complex derivative_at(const Series& a, int k) {
  Complex c = a.at(static_cast<std::size_t>(k));
  for (int i = 2; i <= k; ++i) c = c * static_cast<long>(i);
  return c;
}

}  // namespace pivlag::jet
