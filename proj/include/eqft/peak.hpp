// peak.hpp
// The peak function f(z) = sin(pi z) / (N sin(pi z / N)) of size-N Fourier
// sampling, per-instance success probabilities and their brute-force average.

#pragma once

#include <cstdint>

#include "eqft/common.hpp"

namespace eqft {

// f(z) for finite N; the removable singularity at z = 0 returns 1.
// Requires |z| < N.
double f_eval(double z, std::uint64_t N);

// Large-N limit sin(pi z) / (pi z).
double f_limit(double z);

// Success probability of reading x from its Fourier state of order p with a
// size-N transform and the round-up estimate:  f((x N mod p) / p)^2.
double p_x(std::uint64_t x, std::uint64_t p, std::uint64_t N);

// (1/p) sum_{k=0}^{p-1} f(k/p)^2.  When gcd(N, p) = 1 this equals the average
// of p_x over all instances x; the reindexing identity is asserted in that
// case (both sums computed, compared to 1e-12).
double avg_success_bruteforce(std::uint64_t p, std::uint64_t N);

} // namespace eqft
