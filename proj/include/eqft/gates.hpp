// gates.hpp
// Gate descriptions applied by StateVector.  Four kinds cover everything the
// library needs:
//   * SingleQubit      — 2x2 unitary on one qubit, optionally conditioned on a
//                        bit pattern of other qubits (controls may require 0);
//   * PhasePattern     — multiply amplitudes matching a bit pattern by e^{i a}
//                        (controlled-phase gates are the all-ones special case);
//   * RegisterPermutation — bijection on the joint values of a register set
//                        (reversible arithmetic lives here);
//   * RegisterUnitary  — dense unitary on one register's value space.
//
// Every gate carries a label for the gate-count ledger and a list of the
// continuous angle parameters it uses (for the gate-parameter ledger).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "eqft/common.hpp"

namespace eqft {

enum class GateKind {
    SingleQubit,
    PhasePattern,
    RegisterPermutation,
    RegisterUnitary,
};

// A qubit required to hold a given bit value.
struct BitCondition {
    unsigned qubit = 0;
    bool value = true;
};

// Bijection on the packed values of the registers a permutation gate touches.
using PermutationFn =
    std::function<std::vector<std::uint64_t>(const std::vector<std::uint64_t>&)>;

class GateOp {
  public:
    GateKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::vector<double>& angle_params() const { return angle_params_; }

    // --- SingleQubit fields ---
    unsigned target() const { return target_; }
    const std::array<cplx, 4>& matrix() const { return mat_; }
    const std::vector<BitCondition>& controls() const { return controls_; }

    // --- PhasePattern fields ---
    double angle() const { return angle_; }
    const std::vector<BitCondition>& pattern() const { return pattern_; }

    // --- RegisterPermutation fields ---
    const std::vector<std::string>& permutation_registers() const { return perm_regs_; }
    const PermutationFn& permutation() const { return perm_fn_; }

    // --- RegisterUnitary fields ---
    const std::string& unitary_register() const { return unitary_reg_; }
    const std::vector<cplx>& unitary() const { return unitary_; }
    std::size_t unitary_dim() const { return unitary_dim_; }

    GateOp inverse() const;

    static GateOp single_qubit(std::string label, unsigned qubit,
                               const std::array<cplx, 4>& matrix,
                               std::vector<BitCondition> controls = {},
                               std::vector<double> angle_params = {});

    // SO(2) rotation |0> -> cos(theta)|0> + sin(theta)|1>.
    static GateOp rotation(std::string label, unsigned qubit, double theta,
                           std::vector<BitCondition> controls = {});

    static GateOp hadamard(unsigned qubit);

    // e^{i angle} on components where all `controls` are 1 and `target` is 1.
    static GateOp controlled_phase(std::string label, const std::vector<unsigned>& controls,
                                   unsigned target, double angle);

    // e^{i angle} on components matching an arbitrary bit pattern.
    static GateOp phase_on_pattern(std::string label, std::vector<BitCondition> pattern,
                                   double angle);

    static GateOp register_permutation(std::string label, std::vector<std::string> registers,
                                       PermutationFn fn);

    static GateOp register_unitary(std::string label, std::string reg,
                                   std::vector<cplx> matrix,
                                   std::vector<double> angle_params = {});

  private:
    GateOp() = default;

    GateKind kind_ = GateKind::SingleQubit;
    std::string label_;
    std::vector<double> angle_params_;

    unsigned target_ = 0;
    std::array<cplx, 4> mat_{};
    std::vector<BitCondition> controls_;

    double angle_ = 0.0;
    std::vector<BitCondition> pattern_;

    std::vector<std::string> perm_regs_;
    PermutationFn perm_fn_;
    bool perm_inverted_ = false;

    std::string unitary_reg_;
    std::vector<cplx> unitary_;
    std::size_t unitary_dim_ = 0;

    friend class StateVector;
};

namespace detail {

inline bool is_unitary_2x2(const std::array<cplx, 4>& u, double tol) {
    // U U^dagger = I
    const cplx a = u[0], b = u[1], c = u[2], d = u[3];
    const cplx r00 = a * std::conj(a) + b * std::conj(b);
    const cplx r01 = a * std::conj(c) + b * std::conj(d);
    const cplx r11 = c * std::conj(c) + d * std::conj(d);
    return std::abs(r00 - 1.0) < tol && std::abs(r01) < tol && std::abs(r11 - 1.0) < tol;
}

} // namespace detail

inline GateOp GateOp::single_qubit(std::string label, unsigned qubit,
                                   const std::array<cplx, 4>& matrix,
                                   std::vector<BitCondition> controls,
                                   std::vector<double> angle_params) {
    require(detail::is_unitary_2x2(matrix, kNormTol),
            "single_qubit: matrix is not unitary");
    GateOp g;
    g.kind_ = GateKind::SingleQubit;
    g.label_ = std::move(label);
    g.target_ = qubit;
    g.mat_ = matrix;
    g.controls_ = std::move(controls);
    g.angle_params_ = std::move(angle_params);
    return g;
}

inline GateOp GateOp::rotation(std::string label, unsigned qubit, double theta,
                               std::vector<BitCondition> controls) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return single_qubit(std::move(label), qubit, {cplx(c), cplx(-s), cplx(s), cplx(c)},
                        std::move(controls), {std::abs(theta)});
}

inline GateOp GateOp::hadamard(unsigned qubit) {
    const double h = 1.0 / std::sqrt(2.0);
    return single_qubit("H", qubit, {cplx(h), cplx(h), cplx(h), cplx(-h)});
}

inline GateOp GateOp::controlled_phase(std::string label, const std::vector<unsigned>& controls,
                                       unsigned target, double angle) {
    std::vector<BitCondition> pattern;
    pattern.reserve(controls.size() + 1);
    for (unsigned q : controls) {
        pattern.push_back(BitCondition{q, true});
    }
    pattern.push_back(BitCondition{target, true});
    return phase_on_pattern(std::move(label), std::move(pattern), angle);
}

inline GateOp GateOp::phase_on_pattern(std::string label, std::vector<BitCondition> pattern,
                                       double angle) {
    GateOp g;
    g.kind_ = GateKind::PhasePattern;
    g.label_ = std::move(label);
    g.pattern_ = std::move(pattern);
    g.angle_ = angle;
    g.angle_params_ = {std::abs(angle)};
    return g;
}

inline GateOp GateOp::register_permutation(std::string label,
                                           std::vector<std::string> registers,
                                           PermutationFn fn) {
    require(!registers.empty(), "register_permutation: no registers given");
    GateOp g;
    g.kind_ = GateKind::RegisterPermutation;
    g.label_ = std::move(label);
    g.perm_regs_ = std::move(registers);
    g.perm_fn_ = std::move(fn);
    return g;
}

inline GateOp GateOp::register_unitary(std::string label, std::string reg,
                                       std::vector<cplx> matrix,
                                       std::vector<double> angle_params) {
    std::size_t d = 1;
    while (d * d < matrix.size()) ++d;
    require(d * d == matrix.size(), "register_unitary: matrix must be square");
    // Unitarity: max |(U U^dagger - I)_{ij}| below tolerance.
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                acc += matrix[i * d + k] * std::conj(matrix[j * d + k]);
            }
            const cplx expect = (i == j) ? cplx(1.0) : cplx(0.0);
            require(std::abs(acc - expect) < 1e-11, "register_unitary: matrix is not unitary");
        }
    }
    GateOp g;
    g.kind_ = GateKind::RegisterUnitary;
    g.label_ = std::move(label);
    g.unitary_reg_ = std::move(reg);
    g.unitary_ = std::move(matrix);
    g.unitary_dim_ = d;
    g.angle_params_ = std::move(angle_params);
    return g;
}

inline GateOp GateOp::inverse() const {
    GateOp g = *this;
    switch (kind_) {
        case GateKind::SingleQubit:
            g.mat_ = {std::conj(mat_[0]), std::conj(mat_[2]), std::conj(mat_[1]),
                      std::conj(mat_[3])};
            break;
        case GateKind::PhasePattern:
            g.angle_ = -angle_;
            break;
        case GateKind::RegisterPermutation:
            g.perm_inverted_ = !perm_inverted_;
            break;
        case GateKind::RegisterUnitary: {
            const std::size_t d = unitary_dim_;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    g.unitary_[i * d + j] = std::conj(unitary_[j * d + i]);
                }
            }
            break;
        }
    }
    return g;
}

// A circuit is an ordered gate list; `inverted(c)` is its formal inverse.
using Circuit = std::vector<GateOp>;

inline Circuit inverted(const Circuit& c) {
    Circuit inv;
    inv.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        inv.push_back(it->inverse());
    }
    return inv;
}

inline void append(Circuit& dst, const Circuit& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

} // namespace eqft
