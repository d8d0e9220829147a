#pragma once

// Special functions needed by the closed-form densities: Gamma, upper
// incomplete Gamma (including non-positive first argument), Kummer's
// confluent hypergeometric 1F1, the modified Bessel function K0, and erf.
// All functions are pure and thread-safe.

namespace etaens::specfun {

// Gamma(z). Throws std::domain_error at non-positive integers and
// std::overflow_error once Gamma(z) exceeds double range (z > ~171.6).
double gamma(double z);

// Upper incomplete Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt for
// a in (-1, 2], x >= 0 (x > 0 required when a <= 0).
// Relative error <= ~1e-12 over the supported range.
double upper_incomplete_gamma(double a, double x);

// Kummer 1F1(a, b, z) for z >= 0, b not a non-positive integer.
double kummer_1f1(double a, double b, double z);

// e^{-z} * 1F1(a, b, z); stays representable for arbitrarily large z >= 0.
double kummer_1f1_scaled(double a, double b, double z);

// Modified Bessel function K0(x), x > 0.
double bessel_k0(double x);

// e^{x} * K0(x); avoids underflow for large x.
double bessel_k0_scaled(double x);

// Error function; thin wrapper kept here so every special function used by
// the densities lives behind one interface.
double erf(double z);

}  // namespace etaens::specfun
