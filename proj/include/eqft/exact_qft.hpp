// exact_qft.hpp
// Exact order-p Fourier transform for odd p >= 3, assembled from:
//   * the uniformised estimator wrapped with a tuned ancilla so its success
//     probability is exactly 1/4;
//   * one Grover iteration with pi phases, which lifts 1/4 to 1
//     (sin(theta) = 1/2 implies sin(3 theta) = 1);
//   * garbage removal by copying the recovered value into a save register and
//     running the recovery backwards.
//
// Register plan (the folded EstimationConfig layout):
//     [save(m)] [psi(m)] [aux(n)] [est(m)] [flag(1)] [anc(1)]
// The offset register of the uniformisation is the est register itself: after
// the aux transform the offset r is rewritten in place to the corrected
// estimate ceil(y p / N) - r mod p, which is a bijection for every fixed y.
// This keeps the whole pipeline at 3m + n + 2 qubits (19 for p = 13).  The
// unfolded plan (separate r register) is also supported and produces the same
// statistics; tests cross-check the two.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqft/estimation.hpp"

namespace eqft {

struct AmplificationSpec {
    double phi = kPi;      // phase of the reflection about |0>
    double varphi = kPi;   // phase of the reflection about the good subspace
    unsigned iterations = 1;
    double alpha = kPi / 2;  // ancilla rotation angle

    // Checks sin^2(alpha) * p_bar = 1/4 for the exact single-iteration mode.
    void validate(double p_bar) const;
};

// alpha = arcsin(sqrt(1 / (4 p_bar))); requires p_bar >= 1/4.
double tune_ancilla(double p_bar);

// Default spec for order p with N = 2^n: pi phases, one iteration, ancilla
// tuned to the brute-force average success probability.
AmplificationSpec make_amplification_spec(std::uint64_t p, std::uint64_t N);

// The wrapped estimator A': uniformised estimation plus the ancilla rotation.
Circuit wrapped_estimator_circuit(const RegisterLayout& layout, const EstimationConfig& cfg,
                                  double alpha);

// Applies A' (or its inverse) and records one application under label "A".
void run_wrapped_estimator(StateVector& state, const Circuit& a_circuit, bool inverse);

// Multiplies by e^{i phi} exactly the component where all scratch registers
// (offset, aux, est, flag, anc — never psi, never save) are zero.
Circuit reflect_zero_circuit(const RegisterLayout& layout, const EstimationConfig& cfg,
                             double phi);
StateVector reflect_zero(const StateVector& state, const EstimationConfig& cfg, double phi);

// Phases by e^{i varphi} exactly the good component (estimate correct, filter
// passed, ancilla 1), using the recognizer: un-prepare the psi register
// against the est register, phase on |0...0>, redo the preparation.  Needs no
// knowledge of the instance.
Circuit reflect_good_circuit(const RegisterLayout& layout, const EstimationConfig& cfg,
                             double varphi);
StateVector reflect_good(const StateVector& state, const EstimationConfig& cfg,
                         double varphi);

// Forward: A'. S_good. A'^-1. S_0. A'  — takes the good probability from 1/4
// to 1.  `inverse` runs the exact reverse.
void recover_sequence(StateVector& state, const EstimationConfig& cfg,
                      const AmplificationSpec& spec, bool inverse);

// |e>|s> -> |e>|(s + e) mod 2^m> between the est and save registers.
GateOp copy_to_save_gate(unsigned width, const std::string& est, const std::string& save);

// Recovery on a prepared state: psi holds some Psi_x, every scratch register
// |0>; afterwards est = x, flag = 1, anc = 1 with probability 1.
StateVector exact_recover(const StateVector& state, const EstimationConfig& cfg,
                          const AmplificationSpec& spec);

// Copies est into save, then runs the recovery backwards; all scratch
// registers return to |0>.  recover + cleanup applies A' exactly 6 times.
StateVector cleanup_garbage(const StateVector& state, const EstimationConfig& cfg,
                            const AmplificationSpec& spec);

// The exact QFT_p of a single-register state with support on 0..p-1.
// Default n = bits_for(p) + 1.
StateVector exact_qft_apply(const StateVector& input, std::uint64_t p);
StateVector exact_qft_apply(const StateVector& input, std::uint64_t p, unsigned n);

// In-layout form: transforms `data_reg` of a larger state, using scratch
// registers "psi", "aux", "est", "flag", "anc" (all |0> before and after).
void exact_qft_on_register(StateVector& state, const std::string& data_reg,
                           std::uint64_t p, unsigned n);

// The same transformation as a plain gate list, for embedding into larger
// circuits that need a formal inverse.
Circuit exact_qft_register_circuit(const RegisterLayout& layout, const std::string& data_reg,
                                   std::uint64_t p, unsigned n);

struct QftVerifyReport {
    std::uint64_t p = 0;
    unsigned n = 0;
    unsigned basis_inputs = 0;
    unsigned random_inputs = 0;
    double max_infidelity = 0.0;
    double max_scratch_residue = 0.0;
    std::uint64_t applications_of_a = 0;  // per run
    double seconds = 0.0;
};

// Runs exact_qft_apply on all p basis states plus `random_inputs` seeded
// random superpositions and compares against the dense DFT_p matrix.
QftVerifyReport verify_against_dft(std::uint64_t p, unsigned n, unsigned random_inputs = 10);

} // namespace eqft
