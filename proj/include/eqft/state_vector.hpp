// state_vector.hpp
// Dense complex state vector over a RegisterLayout, with gate application,
// exact marginal distributions, fidelities and a gate ledger.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eqft/common.hpp"
#include "eqft/gates.hpp"
#include "eqft/register_layout.hpp"

namespace eqft {

// Running account of applied gates: counts per label plus the set of distinct
// continuous angle parameters seen (angles closer than 1e-12 are identified).
class GateLedger {
  public:
    void record(const std::string& label, const std::vector<double>& angles);
    std::uint64_t count(const std::string& label) const;
    const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
    const std::vector<double>& angle_parameters() const { return angles_; }
    void clear();

  private:
    std::map<std::string, std::uint64_t> counts_;
    std::vector<double> angles_;  // sorted, deduplicated
};

class StateVector {
  public:
    // |0...0> on the given layout.
    explicit StateVector(RegisterLayout layout);

    // Basis state assigning one value per register (declaration order).
    StateVector(RegisterLayout layout, const std::vector<std::uint64_t>& values);

    const RegisterLayout& layout() const { return layout_; }
    std::uint64_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    std::vector<cplx>& amplitudes() { return amp_; }

    cplx amplitude(std::uint64_t index) const { return amp_[index]; }
    void set_amplitude(std::uint64_t index, cplx v) { amp_[index] = v; }

    // Applies `gate` linearly to all amplitudes and records it in the ledger.
    void apply(const GateOp& gate);
    void apply(const Circuit& circuit);
    void apply_inverse(const Circuit& circuit);

    double norm_squared() const;

    GateLedger& ledger() { return ledger_; }
    const GateLedger& ledger() const { return ledger_; }

  private:
    void apply_single_qubit(const GateOp& g);
    void apply_phase_pattern(const GateOp& g);
    void apply_register_permutation(const GateOp& g);
    void apply_register_unitary(const GateOp& g);

    std::uint64_t condition_mask(const std::vector<BitCondition>& conds) const;
    std::uint64_t condition_value(const std::vector<BitCondition>& conds) const;

    RegisterLayout layout_;
    std::vector<cplx> amp_;
    std::vector<cplx> scratch_;  // reused by permutation/unitary passes
    GateLedger ledger_;
};

// Value-semantics form of gate application.
StateVector apply_gate(const StateVector& state, const GateOp& gate);

cplx inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|^2; requires identical layouts.
double fidelity(const StateVector& a, const StateVector& b);

// Exact marginal probabilities of one register (sums of |amplitude|^2 over all
// other registers).
std::vector<double> distribution(const StateVector& state, const std::string& reg);

// Probability that every listed register holds the given value.
double probability_of(const StateVector& state,
                      const std::vector<std::pair<std::string, std::uint64_t>>& values);

// Fidelity of the reduced state of `reg` with the pure state `pure`
// (dimension 2^width): sum over environment of |<pure, env|state>|^2.
double register_fidelity(const StateVector& state, const std::string& reg,
                         const std::vector<cplx>& pure);

// Largest |amplitude| over components where `reg` holds a value >= p.
// The library keeps such components at exactly zero.
double support_leak(const StateVector& state, const std::string& reg, std::uint64_t p);

} // namespace eqft
