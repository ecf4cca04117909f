// estimation.hpp
// Reading x from the Fourier state Psi_x: phase kickback through a controlled
// modular addition, a size-2^n Fourier transform on the auxiliary register,
// the round-up estimate, the filter that discards ambiguous outcomes, and the
// uniformised variant whose success probability is instance independent.
//
// Register roles (fixed names, declaration order):
//   save  - output/copy register of the surrounding pipeline   (optional)
//   psi   - holds the Fourier state; left exactly unchanged
//   r     - uniformisation offset                              (optional,
//           only in the unfolded plan)
//   aux   - n-qubit phase-estimation register
//   est   - the estimate; in the folded plan this register first carries the
//           offset r and is rewritten in place to ceil(y p / N) - r mod p
//   flag  - 1 = outcome passed the filter
//   anc   - tuned ancilla of the amplification wrapper         (optional)

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqft/fourier_state.hpp"
#include "eqft/state_vector.hpp"

namespace eqft {

struct EstimationConfig {
    std::uint64_t p = 3;
    unsigned n = 3;  // N = 2^n auxiliary states

    bool uniformised = false;   // include an offset register
    bool folded = true;         // offset register doubles as the estimate
    bool with_ancilla = false;  // include the tuned ancilla qubit
    bool with_save = false;     // include the save register

    unsigned m() const { return bits_for(p); }
    std::uint64_t N() const { return std::uint64_t{1} << n; }

    // Register name that ends up holding the estimate.
    std::string estimate_register() const { return "est"; }

    RegisterLayout layout() const;
    void validate() const;
};

// --- basis-level helpers (exact integer arithmetic) ---

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
    return (a + b - 1) / b;
}

// Round-up estimate x' = ceil(y p / N) mod p.
inline std::uint64_t round_up_estimate(std::uint64_t y, std::uint64_t p, std::uint64_t N) {
    return ceil_div(y * p, N) % p;
}

// Filter "y > ceil(y p / N) N / p - 1", evaluated as p y + p > ceil(y p / N) N.
inline bool filter_passes(std::uint64_t y, std::uint64_t p, std::uint64_t N) {
    return p * y + p > ceil_div(y * p, N) * N;
}

// --- gates and circuits ---

// |a>|b> -> |a>|(a + b) mod p>, values b >= p fixed.
GateOp modular_add_gate(std::uint64_t p, const std::string& y_reg,
                        const std::string& target_reg);

StateVector controlled_modular_add(const StateVector& state, const std::string& y_reg,
                                   const std::string& target_reg, std::uint64_t p);

// Exact order-2^width Fourier transform on one register, standard
// Hadamard/controlled-phase network plus a bit reversal.
Circuit qft_pow2_circuit(const RegisterLayout& layout, const std::string& reg,
                         bool inverse = false);

StateVector qft_pow2(const StateVector& state, const std::string& reg, bool inverse = false);

// Plain estimation: aux superposition, kickback, transform, estimate, filter.
Circuit estimate_circuit(const RegisterLayout& layout, const EstimationConfig& cfg);

// Uniformised estimation: offset superposition and rephasing around the same
// core, offset subtracted from the estimate afterwards.
Circuit uniformise_circuit(const RegisterLayout& layout, const EstimationConfig& cfg);

// Ops with the documented preconditions (work registers must be |0>).
StateVector estimate(const StateVector& state, const EstimationConfig& cfg);
StateVector uniformise_estimate(const StateVector& state, const EstimationConfig& cfg);

// --- exact outcome accounting ---

struct EstimationOutcome {
    std::uint64_t p = 0;
    std::uint64_t N = 0;
    // joint[(y * 2^m + x') * 2 + flag]
    std::vector<double> joint;

    double probability(std::uint64_t y, std::uint64_t xprime, bool pass) const;
    double success_probability(std::uint64_t x_true) const;
    double total() const;
};

EstimationOutcome measure_outcome(const StateVector& state, const EstimationConfig& cfg);

} // namespace eqft
