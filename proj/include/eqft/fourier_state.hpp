// fourier_state.hpp
// Preparation and un-preparation of Fourier states of arbitrary order p:
//   * RotationCascade — SO(2) rotations taking |0> to the uniform
//     superposition of the first p basis states;
//   * rephasing circuits that turn the uniform state into Psi_x, where
//     Psi_x has amplitude e^{2 pi i x y / p} / sqrt(p) on |y> for y < p;
//   * the recognizer that maps |x', Psi_x> to |x', 0...0> exactly when x' = x
//     and to a state orthogonal to |0...0> otherwise.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqft/state_vector.hpp"

namespace eqft {

// One conditioned rotation of the cascade: rotate qubit `target` (0 = most
// significant of the register) by `angle`, conditioned on the previously
// processed qubits spelling `prefix`.
struct CascadeStep {
    unsigned target = 0;
    std::uint64_t prefix = 0;
    double angle = 0.0;
};

struct RotationCascade {
    std::uint64_t p = 1;
    unsigned width = 1;
    std::vector<CascadeStep> steps;
};

// Builds the cascade by recursive bisection: a node covering c remaining basis
// values across w remaining qubits splits into c0 = min(c, 2^(w-1)) and
// c1 = c - c0, with rotation angle theta satisfying cos(theta) = sqrt(c0/c).
// Branches with c1 = 0 need no rotation and are skipped.
RotationCascade build_cascade(std::uint64_t p, unsigned m);

// Gate sequence of a cascade acting on register `reg`.
Circuit cascade_circuit(const RegisterLayout& layout, const std::string& reg,
                        const RotationCascade& cascade);

// Uniform superposition (1/sqrt(p)) sum_{y<p} |y> on a single register "psi".
StateVector prepare_uniform(std::uint64_t p);

// Phase e^{2 pi i x y / p} on each |x>|y> component, decomposed into
// controlled-phase gates between qubit pairs; `sign` = -1 gives the inverse.
Circuit rephase_circuit(const RegisterLayout& layout, const std::string& x_reg,
                        const std::string& psi_reg, std::uint64_t p, int sign = 1);

StateVector rephase(const StateVector& state, const std::string& x_reg,
                    const std::string& psi_reg, std::uint64_t p);

// Psi_x on a single register "psi" (built by circuit, not by direct synthesis).
StateVector prepare_fourier_state(std::uint64_t x, std::uint64_t p);

// Dense amplitude vector of Psi_x embedded in 2^m entries.
std::vector<cplx> fourier_state_vector(std::uint64_t x, std::uint64_t p, unsigned m);

// Inverse rephasing controlled on x', then inverse cascade on the psi
// register.  `sign` = -1 applies the formal inverse (cascade then rephase).
Circuit recognize_circuit(const RegisterLayout& layout, const std::string& xprime_reg,
                          const std::string& psi_reg, std::uint64_t p, int sign = 1);

StateVector recognize(const StateVector& state, const std::string& xprime_reg,
                      const std::string& psi_reg, std::uint64_t p);

// Cyclic shift U: |y> -> |(y+1) mod p>, values >= p fixed.
GateOp shift_gate(std::uint64_t p, const std::string& reg);

// Dense DFT_p matrix with entries e^{2 pi i x y / p} / sqrt(p).
std::vector<cplx> dft_matrix(std::uint64_t p);

// DFT_p acting on the low p values of a 2^width-dimensional register,
// identity on values >= p, as a register unitary gate.
GateOp dft_register_gate(std::uint64_t p, unsigned width, const std::string& reg,
                         bool inverse = false);

} // namespace eqft
