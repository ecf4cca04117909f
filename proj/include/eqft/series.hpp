// series.hpp
// Polynomial-time computation of the averaged success probability
//   pbar(p, N) = (1/p) sum_{k=0}^{p-1} f(k/p)^2,  f(z) = sin(pi z)/(N sin(pi z/N)),
// to d decimal digits: f^2 is expanded as a power series in w = (pi z)^2 with
// exact rational coefficients, each power of z is summed over k/p through the
// Faulhaber polynomials, and the truncated rational sum is evaluated with MPFR.
// A high-precision term-by-term reference sum provides the independent route.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "eqft/bigmath.hpp"

namespace eqft {

// Smallest truncation order M whose documented remainder bound is below
// 10^-(digits+1); grows linearly in `digits`.
unsigned series_truncation_order(int digits);

// Rational coefficients G[0..M] of f(z)^2 = sum_m G[m] (pi z)^{2m}, exact for
// the given N (a power of two in all callers, but any N >= 4 works).
std::vector<mpq_class> f_squared_series(const mpz_class& N, unsigned order);

// pbar to `digits` fractional digits via the series + Faulhaber route.
PrecisionDecimal avg_success_series(std::uint64_t p, std::uint64_t N, int digits);

// pbar to `digits` fractional digits by direct high-precision summation of the
// p closed-form terms (independent of the series route).
PrecisionDecimal avg_success_reference(std::uint64_t p, std::uint64_t N, int digits);

// Ancilla angle alpha = arcsin(sqrt(1 / (4 pbar))) to `digits` digits, with
// pbar taken from the series route at enough guard digits that the reported
// digits are stable.
PrecisionDecimal alpha_for(std::uint64_t p, std::uint64_t N, int digits);

} // namespace eqft
