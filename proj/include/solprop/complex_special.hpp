#ifndef SOLPROP_COMPLEX_SPECIAL_HPP
#define SOLPROP_COMPLEX_SPECIAL_HPP

#include <complex>

#include "solprop/scaled_real.hpp"

namespace solprop {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
//
// Region-split evaluation: a rational (Weideman-type) approximation on the
// disc |z| < 12 of the closed upper half-plane, the asymptotic expansion
// outside it, and the reflection w(-z) = 2 e^{-z^2} - w(z) for Im z < 0.
// Throws std::range_error when e^{-z^2} overflows in the reflection.
std::complex<double> faddeeva_w(std::complex<double> z);

// Scaled complementary error function erfcx(z) = e^{z^2} erfc(z).
// No overflow for Re z >= 0; may throw std::range_error for Re z < 0.
std::complex<double> erfc_scaled(std::complex<double> z);

// erfcx(z) with z^2 supplied analytically by the caller and the result kept
// in scaled form.  This is the building block for propagator terms whose
// exponential prefactors must be combined before exponentiation.
ScaledComplex erfc_scaled_arg(std::complex<double> z, std::complex<double> z_squared);

// Error function of a complex argument, odd by construction.
std::complex<double> erf_complex(std::complex<double> z);

// I(a,x) = Integral dp e^{-2p^2+4px} / (p^2+a^2), evaluated through the
// symmetric two-term form
//   (pi/2a) [ e^{2a^2+4ixa} erfc(sqrt2 (a+ix)) + e^{2a^2-4ixa} erfc(sqrt2 (a-ix)) ]
// which defines the analytic continuation for complex a, x.
// Throws std::domain_error for a = 0 and std::range_error on overflow.
std::complex<double> integral_I(std::complex<double> a, std::complex<double> x);

// Integral dp e^{-2p^2+4px} / (p+i alpha) for Re alpha > 0; for general alpha
// returns the same closed form -i pi e^{2 alpha(alpha-2ix)} erfc(sqrt2 (alpha-ix)).
std::complex<double> cauchy_gaussian(std::complex<double> alpha, std::complex<double> x);

} // namespace solprop

#endif
