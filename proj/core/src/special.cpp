#include "whittaker/special.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

using cd = std::complex<double>;

// B_{2k} / (2k (2k-1))
constexpr double kStirling[] = {1.0 / 12,          -1.0 / 360,    1.0 / 1260,    -1.0 / 1680,
                                1.0 / 1188,        -691.0 / 360360, 1.0 / 156,   -3617.0 / 122400};

cd stirling(cd z) {
  cd iz = 1.0 / z, iz2 = iz * iz, term = iz, series = 0;
  for (double c : kStirling) {
    series += c * term;
    term *= iz2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi) + series;
}

void check_pole(cd z) {
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
    throw Error(ErrorKind::PoleHit, "Gamma pole at " + std::to_string(z.real()));
}

int shift_count(cd z) {
  double target = std::abs(z.imag()) >= 10 ? 0.0 : 10.0;
  return z.real() < target ? static_cast<int>(std::ceil(target - z.real())) : 0;
}

}  // namespace

cd log_gamma_complex(cd z) {
  check_pole(z);
  int shift = shift_count(z);
  cd acc = 0;
  for (int k = 0; k < shift; ++k) acc += std::log(z + double(k));
  return stirling(z + double(shift)) - acc;
}

cd log_gamma_wrapped(cd z) {
  check_pole(z);
  int shift = shift_count(z);
  if (shift == 0) return stirling(z);
  cd prod = 1, acc = 0;
  for (int k = 0; k < shift; ++k) {
    prod *= z + double(k);
    if (std::abs(prod) > 1e150) {
      acc += std::log(prod);
      prod = 1;
    }
  }
  return stirling(z + double(shift)) - acc - std::log(prod);
}

double bessel_k_imag_order(double nu, double z) {
  if (!(z > 0)) throw Error(ErrorKind::DomainViolation, "bessel_k_imag_order needs z > 0");
  double upper = std::acosh(std::max(2.0, 720.0 / z));
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double u) { return std::exp(-z * std::cosh(u)) * std::cos(nu * u); };
  return ts.integrate(f, 0.0, upper, 1e-15);
}

}  // namespace whittaker
