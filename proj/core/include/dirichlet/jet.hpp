#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dirichlet {

/// Truncated Taylor expansion c_0 + c_1 h + ... + c_K h^K of an analytic
/// function around a base point. Arithmetic discards every power above K.
class Jet {
 public:
  using Complex = std::complex<double>;

  explicit Jet(std::size_t order) : c_(order + 1) {}
  Jet(std::size_t order, Complex constant) : c_(order + 1) { c_[0] = constant; }
  explicit Jet(std::vector<Complex> coefficients);

  /// x0 + h
  static Jet variable(std::size_t order, Complex x0);
  /// base^(-(s + h)) = base^-s * exp(-h ln base) for real base > 0.
  static Jet inverse_power(std::size_t order, double base, Complex s);

  std::size_t order() const noexcept { return c_.size() - 1; }
  Complex operator[](std::size_t k) const noexcept { return c_[k]; }
  Complex& operator[](std::size_t k) noexcept { return c_[k]; }
  Complex value() const noexcept { return c_[0]; }
  std::span<const Complex> coefficients() const noexcept { return c_; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(Complex a);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  /// this += a * o, without a temporary.
  void add_scaled(const Jet& o, Complex a);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

  /// Coefficient of h^k in (*this) * o, in O(k).
  Complex product_coefficient(const Jet& o, std::size_t k) const;

  /// Largest |c_k|.
  double max_abs() const;

 private:
  std::vector<Complex> c_;
};

Jet exp(const Jet& a);
/// Principal branch at the constant term; the higher coefficients are exact.
Jet log(const Jet& a);
/// Shift the constant term: log(a) with a caller-chosen value of log(a_0).
Jet log_with_constant(const Jet& a, std::complex<double> log_a0);

}  // namespace dirichlet
