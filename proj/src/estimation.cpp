#include "eqft/estimation.hpp"

#include <numeric>

namespace eqft {

RegisterLayout EstimationConfig::layout() const {
    validate();
    RegisterLayout l;
    if (with_save) l.add("save", m());
    l.add("psi", m());
    if (uniformised && !folded) l.add("r", m());
    l.add("aux", n);
    l.add("est", m());
    l.add("flag", 1);
    if (with_ancilla) l.add("anc", 1);
    return l;
}

void EstimationConfig::validate() const {
    require(p >= 1, "EstimationConfig: p must be >= 1");
    require(n >= 1 && n < 32, "EstimationConfig: bad aux width");
    require(N() > p, "EstimationConfig: require N > p");
    if (p % 2 == 1) {
        check_state(std::gcd(N(), p) == 1, "EstimationConfig: gcd(N, p) != 1 for odd p");
    }
}

GateOp modular_add_gate(std::uint64_t p, const std::string& y_reg,
                        const std::string& target_reg) {
    return GateOp::register_permutation(
        "mod_add", {y_reg, target_reg}, [p](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[1] < p) {
                out[1] = (out[1] + out[0] % p) % p;
            }
            return out;
        });
}

StateVector controlled_modular_add(const StateVector& state, const std::string& y_reg,
                                   const std::string& target_reg, std::uint64_t p) {
    check_state(support_leak(state, target_reg, p) == 0.0,
                "controlled_modular_add: target register has support >= p");
    return apply_gate(state, modular_add_gate(p, y_reg, target_reg));
}

Circuit qft_pow2_circuit(const RegisterLayout& layout, const std::string& reg, bool inverse) {
    const Register& r = layout.reg(reg);
    const unsigned w = r.width;
    Circuit c;
    for (unsigned j = 0; j < w; ++j) {
        c.push_back(GateOp::hadamard(layout.qubit(r, j)));
        for (unsigned k = j + 1; k < w; ++k) {
            const double angle = kTwoPi / double(std::uint64_t{1} << (k - j + 1));
            c.push_back(GateOp::controlled_phase("qft_phase", {layout.qubit(r, k)},
                                                 layout.qubit(r, j), angle));
        }
    }
    c.push_back(GateOp::register_permutation(
        "bit_reverse", {reg}, [w](const std::vector<std::uint64_t>& v) {
            std::uint64_t x = v[0], y = 0;
            for (unsigned b = 0; b < w; ++b) {
                y = (y << 1) | (x & 1);
                x >>= 1;
            }
            return std::vector<std::uint64_t>{y};
        }));
    return inverse ? inverted(c) : c;
}

StateVector qft_pow2(const StateVector& state, const std::string& reg, bool inverse) {
    StateVector out = state;
    out.apply(qft_pow2_circuit(out.layout(), reg, inverse));
    return out;
}

namespace {

// Writes the round-up estimate into a zeroed register:
// (y, e) -> (y, (e + ceil(y p / N)) mod p) for e < p.
GateOp estimate_write_gate(std::uint64_t p, std::uint64_t N, const std::string& aux,
                           const std::string& est) {
    return GateOp::register_permutation(
        "estimate", {aux, est}, [p, N](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[1] < p) {
                out[1] = (out[1] + round_up_estimate(out[0], p, N)) % p;
            }
            return out;
        });
}

// Folded plan: the offset register is rewritten in place to the
// offset-corrected estimate, (y, r) -> (y, (ceil(y p / N) - r) mod p).
GateOp estimate_fold_gate(std::uint64_t p, std::uint64_t N, const std::string& aux,
                          const std::string& est) {
    return GateOp::register_permutation(
        "estimate_fold", {aux, est}, [p, N](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[1] < p) {
                out[1] = (round_up_estimate(out[0], p, N) + p - out[1]) % p;
            }
            return out;
        });
}

// (r, e) -> (r, (e - r) mod p) for e < p.
GateOp subtract_offset_gate(std::uint64_t p, const std::string& r_reg,
                            const std::string& est) {
    return GateOp::register_permutation(
        "subtract_offset", {r_reg, est}, [p](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[1] < p) {
                out[1] = (out[1] + p - out[0] % p) % p;
            }
            return out;
        });
}

GateOp filter_flag_gate(std::uint64_t p, std::uint64_t N, const std::string& aux,
                        const std::string& flag) {
    return GateOp::register_permutation(
        "filter", {aux, flag}, [p, N](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            out[1] ^= filter_passes(out[0], p, N) ? 1 : 0;
            return out;
        });
}

Circuit estimation_core(const RegisterLayout& layout, const EstimationConfig& cfg) {
    Circuit c;
    const Register& aux = layout.reg("aux");
    for (unsigned j = 0; j < aux.width; ++j) {
        c.push_back(GateOp::hadamard(layout.qubit(aux, j)));
    }
    c.push_back(modular_add_gate(cfg.p, "aux", "psi"));
    append(c, qft_pow2_circuit(layout, "aux", false));
    return c;
}

void check_zero_inputs(const StateVector& state, const std::vector<std::string>& regs,
                       const std::string& who) {
    std::vector<std::pair<std::string, std::uint64_t>> zeros;
    for (const auto& r : regs) {
        zeros.emplace_back(r, 0);
    }
    check_state(probability_of(state, zeros) > 1.0 - kNormTol,
                who + ": work registers must start in |0>");
}

} // namespace

Circuit estimate_circuit(const RegisterLayout& layout, const EstimationConfig& cfg) {
    Circuit c = estimation_core(layout, cfg);
    c.push_back(estimate_write_gate(cfg.p, cfg.N(), "aux", "est"));
    c.push_back(filter_flag_gate(cfg.p, cfg.N(), "aux", "flag"));
    return c;
}

Circuit uniformise_circuit(const RegisterLayout& layout, const EstimationConfig& cfg) {
    require(cfg.uniformised, "uniformise_circuit: config is not uniformised");
    const std::string offset_reg = cfg.folded ? "est" : "r";
    Circuit c;
    // Coherent offset: uniform superposition over r in 0..p-1, Fourier states
    // rephased to Psi_{x+r}.  The rephasing is undone after the kickback so
    // the psi register ends exactly where it started.
    append(c, cascade_circuit(layout, offset_reg, build_cascade(cfg.p, cfg.m())));
    append(c, rephase_circuit(layout, offset_reg, "psi", cfg.p, 1));
    append(c, estimation_core(layout, cfg));
    append(c, rephase_circuit(layout, offset_reg, "psi", cfg.p, -1));
    if (cfg.folded) {
        c.push_back(estimate_fold_gate(cfg.p, cfg.N(), "aux", "est"));
    } else {
        c.push_back(estimate_write_gate(cfg.p, cfg.N(), "aux", "est"));
        c.push_back(subtract_offset_gate(cfg.p, "r", "est"));
    }
    c.push_back(filter_flag_gate(cfg.p, cfg.N(), "aux", "flag"));
    return c;
}

StateVector estimate(const StateVector& state, const EstimationConfig& cfg) {
    cfg.validate();
    check_zero_inputs(state, {"aux", "est", "flag"}, "estimate");
    StateVector out = state;
    out.apply(estimate_circuit(out.layout(), cfg));
    return out;
}

StateVector uniformise_estimate(const StateVector& state, const EstimationConfig& cfg) {
    cfg.validate();
    if (cfg.folded) {
        check_zero_inputs(state, {"aux", "est", "flag"}, "uniformise_estimate");
    } else {
        check_zero_inputs(state, {"r", "aux", "est", "flag"}, "uniformise_estimate");
    }
    StateVector out = state;
    out.apply(uniformise_circuit(out.layout(), cfg));
    return out;
}

double EstimationOutcome::probability(std::uint64_t y, std::uint64_t xprime, bool pass) const {
    const std::uint64_t m_dim = joint.size() / (2 * N);
    return joint[(y * m_dim + xprime) * 2 + (pass ? 1 : 0)];
}

double EstimationOutcome::success_probability(std::uint64_t x_true) const {
    double s = 0.0;
    for (std::uint64_t y = 0; y < N; ++y) {
        s += probability(y, x_true, true);
    }
    return s;
}

double EstimationOutcome::total() const {
    double s = 0.0;
    for (double v : joint) {
        s += v;
    }
    return s;
}

EstimationOutcome measure_outcome(const StateVector& state, const EstimationConfig& cfg) {
    const auto& layout = state.layout();
    const Register& aux = layout.reg("aux");
    const Register& est = layout.reg("est");
    const Register& flag = layout.reg("flag");

    EstimationOutcome out;
    out.p = cfg.p;
    out.N = cfg.N();
    const std::uint64_t m_dim = std::uint64_t{1} << est.width;
    out.joint.assign(out.N * m_dim * 2, 0.0);
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const std::uint64_t y = layout.extract(aux, i);
        const std::uint64_t xp = layout.extract(est, i);
        const std::uint64_t f = layout.extract(flag, i);
        out.joint[(y * m_dim + xp) * 2 + f] += std::norm(state.amplitude(i));
    }
    return out;
}

} // namespace eqft
