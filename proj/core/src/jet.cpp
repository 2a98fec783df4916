#include "dirichlet/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dirichlet {

Jet::Jet(std::vector<Complex> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) c_.emplace_back(0.0);
}

Jet Jet::variable(std::size_t order, Complex x0) {
  Jet j(order, x0);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::inverse_power(std::size_t order, double base, Complex s) {
  Jet j(order);
  const double lb = std::log(base);
  Complex term = std::exp(-s * lb);
  for (std::size_t k = 0; k <= order; ++k) {
    j.c_[k] = term;
    term *= -lb / static_cast<double>(k + 1);
  }
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  for (std::size_t k = 0; k < n; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  for (std::size_t k = 0; k < n; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(Complex a) {
  for (auto& c : c_) c *= a;
  return *this;
}

void Jet::add_scaled(const Jet& o, Complex a) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  for (std::size_t k = 0; k < n; ++k) c_[k] += a * o.c_[k];
}

Jet& Jet::operator*=(const Jet& o) {
  const std::size_t n = c_.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    const std::size_t top = std::min(k, o.c_.size() - 1);
    for (std::size_t i = 0; i <= top; ++i) acc += o.c_[i] * c_[k - i];
    out[k] = acc;
  }
  c_ = std::move(out);
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  const Complex b0 = o.c_[0];
  if (b0 == Complex{0.0, 0.0}) throw std::domain_error("Jet division by a series with zero constant term");
  const std::size_t n = c_.size();
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = c_[k];
    const std::size_t top = std::min(k, o.c_.size() - 1);
    for (std::size_t i = 1; i <= top; ++i) acc -= o.c_[i] * c_[k - i];
    c_[k] = acc / b0;
  }
  return *this;
}

Jet::Complex Jet::product_coefficient(const Jet& o, std::size_t k) const {
  Complex acc{0.0, 0.0};
  const std::size_t top = std::min({k, c_.size() - 1});
  for (std::size_t i = 0; i <= top; ++i) {
    if (k - i < o.c_.size()) acc += c_[i] * o.c_[k - i];
  }
  return acc;
}

double Jet::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

Jet exp(const Jet& a) {
  // b' = a' b
  const std::size_t n = a.order();
  Jet b(n);
  b[0] = std::exp(a[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 1; i <= k; ++i) acc += static_cast<double>(i) * a[i] * b[k - i];
    b[k] = acc / static_cast<double>(k);
  }
  return b;
}

Jet log_with_constant(const Jet& a, std::complex<double> log_a0) {
  // b' = a' / a
  const std::size_t n = a.order();
  const auto a0 = a[0];
  if (a0 == std::complex<double>{0.0, 0.0}) throw std::domain_error("log of a series with zero constant term");
  Jet b(n);
  b[0] = log_a0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::complex<double> acc = static_cast<double>(k) * a[k];
    for (std::size_t i = 1; i < k; ++i) acc -= static_cast<double>(i) * b[i] * a[k - i];
    b[k] = acc / (static_cast<double>(k) * a0);
  }
  return b;
}

Jet log(const Jet& a) { return log_with_constant(a, std::log(a[0])); }

}  // namespace dirichlet
