#include "dirichlet/hurwitz.hpp"

#include <array>
#include <cmath>

#include "dirichlet/errors.hpp"

namespace dirichlet {

namespace {

// B_{2k} / (2k)! for k = 1..14
constexpr std::array<double, 14> kBernoulliOverFactorial = {
    0.083333333333333333,
    -0.0013888888888888889,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
};

}  // namespace

TailJet hurwitz_tail(std::size_t order, std::complex<double> s, double x, int correction_terms,
                     bool with_integral) {
  if (s.real() <= 1.0) throw DomainError("hurwitz_tail: requires Re(s) > 1");
  if (correction_terms < 1 || correction_terms > static_cast<int>(kBernoulliOverFactorial.size())) {
    throw DomainError("hurwitz_tail: unsupported number of correction terms");
  }
  const Jet u = Jet::variable(order, s);
  const Jet x_pow = Jet::inverse_power(order, x, s);  // x^-u

  // integral_x^inf t^-u dt = x^(1-u) / (u - 1)
  Jet result(order);
  if (with_integral) result = x_pow * Jet(order, x) / (u - Jet(order, 1.0));
  result.add_scaled(x_pow, 0.5);

  // + sum_k B_2k/(2k)! (u)_(2k-1) x^(-u-2k+1)
  Jet rising = u;        // (u)_1
  Jet power = x_pow;     // x^-u * x^-(2k-1), updated below
  power *= 1.0 / x;
  double last = 0.0;
  for (int k = 1; k <= correction_terms; ++k) {
    Jet term = rising * power;
    term *= kBernoulliOverFactorial[k - 1];
    result += term;
    last = term.max_abs();
    // (u)_(2k+1) = (u)_(2k-1) (u + 2k - 1)(u + 2k)
    rising *= (u + Jet(order, static_cast<double>(2 * k - 1)));
    rising *= (u + Jet(order, static_cast<double>(2 * k)));
    power *= 1.0 / (x * x);
  }
  return {std::move(result), last};
}

}  // namespace dirichlet
