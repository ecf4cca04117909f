// dlog.hpp
// Discrete-logarithm circuits over a cyclic group of odd order q, simulated in
// exponent space: group elements are exponents mod q and the only thing an
// algorithm may query is the oracle map (x, y) -> exponent of alpha^x beta^y.
//
//   * dlog_state / dlog_run     — the two-register circuit and its exact
//                                 post-transform distribution;
//   * dlog_exact                — prime order, one tagged Grover iteration,
//                                 success probability exactly 1;
//   * dlog_composite            — known factorization, good set = coprime x;
//   * dlog_descent              — unknown factorization: iterated runs with
//                                 quarter retention by partial tagging, every
//                                 measurement branch enumerated exactly;
//   * uniformised_dlog_pow2     — the power-of-two-transform experiment with
//                                 an exactly averaged offset.

#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "eqft/exact_qft.hpp"

namespace eqft {

// --- small number theory helpers ---

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q);  // requires gcd(a,q)=1
bool is_prime(std::uint64_t n);

// Validates that `primes` (repetitions allowed) are the prime factors of q and
// returns Euler's phi(q).
std::uint64_t validate_factorization(std::uint64_t q, const std::vector<std::uint64_t>& primes);

// --- the problem oracle ---

class CyclicGroupOracle {
  public:
    CyclicGroupOracle(std::uint64_t q, std::uint64_t hidden_exponent);

    std::uint64_t order() const { return q_; }

    // Exponent of alpha^x beta^y, i.e. (x + a y) mod q.
    std::uint64_t exponent(std::uint64_t x, std::uint64_t y) const;

    // Exponent of alpha~^x beta~^y for the substituted generators
    // alpha~ = alpha^gen_power, beta~ = beta alpha^{-known_shift}.
    std::uint64_t exponent_substituted(std::uint64_t x, std::uint64_t y,
                                       std::uint64_t gen_power,
                                       std::uint64_t known_shift) const;

    // Whether alpha^candidate equals beta.
    bool verify(std::uint64_t candidate) const;

  private:
    std::uint64_t q_;
    std::uint64_t a_;
};

// --- circuits and distributions ---

enum class QftBackend {
    Direct,    // dense DFT_q register unitary (the verified-equal matrix)
    Pipeline,  // the full exact pipeline embedded per register
};

// Two uniform registers with the oracle exponent computed into "func".
StateVector dlog_state(std::uint64_t p, const CyclicGroupOracle& oracle);

// Exact projection onto func == value, renormalized.
StateVector condition_on_exponent(const StateVector& state, std::uint64_t value);

struct PairDistribution {
    std::uint64_t q = 0;
    unsigned width = 0;              // register width m
    std::vector<double> joint;       // joint[u * 2^m + v]
    double at(std::uint64_t u, std::uint64_t v) const {
        return joint[(u << width) | v];
    }
};

// Distribution over the two registers after transforming each with QFT_q.
PairDistribution dlog_run(std::uint64_t p, const CyclicGroupOracle& oracle,
                          QftBackend backend = QftBackend::Direct);

// --- outcomes ---

struct DescentStep {
    std::uint64_t order = 0;       // unresolved modulus D entering the round
    std::uint64_t known = 0;       // accumulated known part of the exponent
    std::uint64_t measured_u = 0;
    std::uint64_t measured_v = 0;
    std::uint64_t k = 0;           // measured_u / (q / D)
    std::uint64_t w = 0;           // measured_v / (q / D)
    std::uint64_t gcd = 0;         // gcd(k, D)
    double probability = 0.0;      // conditional probability of this outcome
};

struct DlogBranch {
    std::vector<DescentStep> steps;
    std::uint64_t recovered = 0;
    bool verified = false;
    double probability = 0.0;      // product over the path
};

struct DlogOutcome {
    std::uint64_t order = 0;
    std::string mode;
    std::uint64_t recovered = 0;   // from the most probable branch
    bool success = false;          // every branch verified
    double good_before = 0.0;      // good probability before amplification
    double good_after = 0.0;       // and after
    unsigned max_depth = 0;
    std::vector<DlogBranch> branches;
    std::vector<double> gate_angles;  // distinct continuous parameters used
    bool gate_ledger_ok = true;       // angles all from the setup set + tags
};

// Prime order: amplifies (x != 0 and tag) from exactly 1/4 to 1.
DlogOutcome dlog_exact(std::uint64_t p, const CyclicGroupOracle& oracle,
                       QftBackend backend = QftBackend::Direct);

// Composite order with known factorization: good set = x coprime to q.
DlogOutcome dlog_composite(std::uint64_t q, const std::vector<std::uint64_t>& prime_factors,
                           const CyclicGroupOracle& oracle,
                           QftBackend backend = QftBackend::Direct);

// Unknown factorization: O(log q) rounds; the first removes only x = 0, later
// rounds retain the last quarter of the subgroup index via partial tagging.
// All measurement branches are enumerated; no randomness anywhere.
DlogOutcome dlog_descent(std::uint64_t q, const CyclicGroupOracle& oracle);

// Exposes one round's pre-tag, post-transform state for inspection.
StateVector descent_round_state(std::uint64_t q, const CyclicGroupOracle& oracle,
                                std::uint64_t unresolved, std::uint64_t known);

// --- the power-of-two experiment ---

struct Pow2DlogResult {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::vector<double> per_offset;  // success probability for each offset r
    double average = 0.0;
};

// Success probability of the order-p dlog circuit run with QFT_{2^n} on the
// instance shifted by r (beta replaced by beta alpha^r).
double pow2_dlog_success(std::uint64_t p, unsigned n, const CyclicGroupOracle& oracle,
                         std::uint64_t r);

// Exact average of pow2_dlog_success over all offsets r in 0..p-1.
Pow2DlogResult uniformised_dlog_pow2(std::uint64_t p, unsigned n,
                                     const CyclicGroupOracle& oracle);

} // namespace eqft
