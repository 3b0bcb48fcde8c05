#pragma once

#include <complex>

namespace whittaker {

// Principal branch of log Gamma. Throws PoleHit at non-positive integers.
std::complex<double> log_gamma_complex(std::complex<double> z);

// Same real part; imaginary part only determined modulo 2 pi. Cheaper, for use inside exp().
std::complex<double> log_gamma_wrapped(std::complex<double> z);

// K_{i nu}(z) for z > 0 from the integral of exp(-z cosh u) cos(nu u) over u > 0.
double bessel_k_imag_order(double nu, double z);

}  // namespace whittaker
