#include "eqft/exact_qft.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "eqft/peak.hpp"

namespace eqft {

void AmplificationSpec::validate(double p_bar) const {
    const double s = std::sin(alpha);
    check_state(std::abs(s * s * p_bar - 0.25) < kNormTol,
                "AmplificationSpec: sin^2(alpha) * p_bar != 1/4");
}

double tune_ancilla(double p_bar) {
    require(p_bar <= 1.0 + kNormTol, "tune_ancilla: p_bar must be a probability");
    require(p_bar >= 0.25,
            "tune_ancilla: p_bar below 1/4 cannot be damped to 1/4 by an ancilla");
    return std::asin(std::sqrt(0.25 / p_bar));
}

AmplificationSpec make_amplification_spec(std::uint64_t p, std::uint64_t N) {
    AmplificationSpec spec;
    spec.alpha = tune_ancilla(avg_success_bruteforce(p, N));
    return spec;
}

Circuit wrapped_estimator_circuit(const RegisterLayout& layout, const EstimationConfig& cfg,
                                  double alpha) {
    Circuit c = uniformise_circuit(layout, cfg);
    c.push_back(GateOp::rotation("ancilla", layout.qubit(layout.reg("anc"), 0), alpha));
    return c;
}

void run_wrapped_estimator(StateVector& state, const Circuit& a_circuit, bool inverse) {
    if (inverse) {
        state.apply_inverse(a_circuit);
    } else {
        state.apply(a_circuit);
    }
    state.ledger().record("A", {});
}

namespace {

std::vector<BitCondition> zero_pattern(const RegisterLayout& layout,
                                       const std::vector<std::string>& regs) {
    std::vector<BitCondition> pattern;
    for (const auto& name : regs) {
        const Register& r = layout.reg(name);
        for (unsigned k = 0; k < r.width; ++k) {
            pattern.push_back(BitCondition{layout.qubit(r, k), false});
        }
    }
    return pattern;
}

std::vector<std::string> scratch_registers(const EstimationConfig& cfg) {
    std::vector<std::string> regs;
    if (cfg.uniformised && !cfg.folded) regs.push_back("r");
    regs.push_back("aux");
    regs.push_back("est");
    regs.push_back("flag");
    if (cfg.with_ancilla) regs.push_back("anc");
    return regs;
}

} // namespace

Circuit reflect_zero_circuit(const RegisterLayout& layout, const EstimationConfig& cfg,
                             double phi) {
    return {GateOp::phase_on_pattern("reflect_zero",
                                     zero_pattern(layout, scratch_registers(cfg)), phi)};
}

StateVector reflect_zero(const StateVector& state, const EstimationConfig& cfg, double phi) {
    StateVector out = state;
    out.apply(reflect_zero_circuit(out.layout(), cfg, phi));
    return out;
}

Circuit reflect_good_circuit(const RegisterLayout& layout, const EstimationConfig& cfg,
                             double varphi) {
    Circuit c = recognize_circuit(layout, "est", "psi", cfg.p, 1);
    std::vector<BitCondition> pattern = zero_pattern(layout, {"psi"});
    pattern.push_back(BitCondition{layout.qubit(layout.reg("flag"), 0), true});
    pattern.push_back(BitCondition{layout.qubit(layout.reg("anc"), 0), true});
    c.push_back(GateOp::phase_on_pattern("reflect_good", std::move(pattern), varphi));
    append(c, recognize_circuit(layout, "est", "psi", cfg.p, -1));
    return c;
}

StateVector reflect_good(const StateVector& state, const EstimationConfig& cfg,
                         double varphi) {
    StateVector out = state;
    out.apply(reflect_good_circuit(out.layout(), cfg, varphi));
    return out;
}

void recover_sequence(StateVector& state, const EstimationConfig& cfg,
                      const AmplificationSpec& spec, bool inverse) {
    const RegisterLayout& layout = state.layout();
    const Circuit a = wrapped_estimator_circuit(layout, cfg, spec.alpha);
    const Circuit s_good = reflect_good_circuit(layout, cfg, spec.varphi);
    const Circuit s_zero = reflect_zero_circuit(layout, cfg, spec.phi);
    if (!inverse) {
        run_wrapped_estimator(state, a, false);
        for (unsigned t = 0; t < spec.iterations; ++t) {
            state.apply(s_good);
            run_wrapped_estimator(state, a, true);
            state.apply(s_zero);
            run_wrapped_estimator(state, a, false);
        }
    } else {
        for (unsigned t = 0; t < spec.iterations; ++t) {
            run_wrapped_estimator(state, a, true);
            state.apply_inverse(s_zero);
            run_wrapped_estimator(state, a, false);
            state.apply_inverse(s_good);
        }
        run_wrapped_estimator(state, a, true);
    }
}

GateOp copy_to_save_gate(unsigned width, const std::string& est, const std::string& save) {
    const std::uint64_t wrap = std::uint64_t{1} << width;
    return GateOp::register_permutation(
        "copy_save", {est, save}, [wrap](const std::vector<std::uint64_t>& v) {
            return std::vector<std::uint64_t>{v[0], (v[1] + v[0]) % wrap};
        });
}

StateVector exact_recover(const StateVector& state, const EstimationConfig& cfg,
                          const AmplificationSpec& spec) {
    require(cfg.uniformised && cfg.with_ancilla, "exact_recover: config lacks offset/ancilla");
    spec.validate(avg_success_bruteforce(cfg.p, cfg.N()));
    StateVector out = state;
    recover_sequence(out, cfg, spec, false);
    return out;
}

StateVector cleanup_garbage(const StateVector& state, const EstimationConfig& cfg,
                            const AmplificationSpec& spec) {
    require(cfg.with_save, "cleanup_garbage: config lacks a save register");
    StateVector out = state;
    out.apply(copy_to_save_gate(cfg.m(), "est", "save"));
    recover_sequence(out, cfg, spec, true);
    return out;
}

namespace {

EstimationConfig pipeline_config(std::uint64_t p, unsigned n, bool with_save) {
    require(p >= 3 && p % 2 == 1, "exact QFT pipeline: p must be odd and >= 3");
    EstimationConfig cfg;
    cfg.p = p;
    cfg.n = n;
    cfg.uniformised = true;
    cfg.folded = true;
    cfg.with_ancilla = true;
    cfg.with_save = with_save;
    cfg.validate();
    return cfg;
}

// Temporal sequence shared by both entry points: with `data` playing the save
// register, |x>_data |0...> maps to |0>_data Psi_x |0...> on the psi register.
void run_pipeline(StateVector& state, const std::string& data_reg,
                  const EstimationConfig& cfg, const AmplificationSpec& spec) {
    const RegisterLayout& layout = state.layout();
    state.apply(cascade_circuit(layout, "psi", build_cascade(cfg.p, cfg.m())));
    state.apply(rephase_circuit(layout, data_reg, "psi", cfg.p, 1));
    recover_sequence(state, cfg, spec, false);
    state.apply(copy_to_save_gate(cfg.m(), "est", data_reg).inverse());
    recover_sequence(state, cfg, spec, true);
}

} // namespace

StateVector exact_qft_apply(const StateVector& input, std::uint64_t p) {
    return exact_qft_apply(input, p, bits_for(p) + 1);
}

StateVector exact_qft_apply(const StateVector& input, std::uint64_t p, unsigned n) {
    const EstimationConfig cfg = pipeline_config(p, n, true);
    const unsigned m = cfg.m();
    require(input.layout().registers().size() == 1 &&
                input.layout().registers()[0].width == m,
            "exact_qft_apply: input must be a single register of width bits_for(p)");
    check_state(support_leak(input, input.layout().registers()[0].name, p) < kNormTol,
                "exact_qft_apply: input has support on values >= p");

    const AmplificationSpec spec = make_amplification_spec(p, cfg.N());
    StateVector state(cfg.layout());
    const Register& save = state.layout().reg("save");
    for (std::uint64_t v = 0; v < input.dim(); ++v) {
        state.set_amplitude(state.layout().insert(save, 0, v), input.amplitude(v));
    }

    run_pipeline(state, "save", cfg, spec);

    // Read the result off the psi register; everything else is |0> again.
    const Register& psi = state.layout().reg("psi");
    RegisterLayout out_layout({{"psi", m}});
    StateVector out(out_layout);
    for (std::uint64_t v = 0; v < out.dim(); ++v) {
        out.set_amplitude(v, state.amplitude(state.layout().insert(psi, 0, v)));
    }
    out.ledger() = state.ledger();
    return out;
}

void exact_qft_on_register(StateVector& state, const std::string& data_reg,
                           std::uint64_t p, unsigned n) {
    const EstimationConfig cfg = pipeline_config(p, n, false);
    const AmplificationSpec spec = make_amplification_spec(p, cfg.N());
    run_pipeline(state, data_reg, cfg, spec);
    // Move the transformed value back onto the data register (psi returns
    // to |0>), so the scratch block can be reused for the next register.
    state.apply(GateOp::register_permutation(
        "swap", {data_reg, "psi"}, [](const std::vector<std::uint64_t>& v) {
            return std::vector<std::uint64_t>{v[1], v[0]};
        }));
}

Circuit exact_qft_register_circuit(const RegisterLayout& layout, const std::string& data_reg,
                                   std::uint64_t p, unsigned n) {
    const EstimationConfig cfg = pipeline_config(p, n, false);
    const AmplificationSpec spec = make_amplification_spec(p, cfg.N());

    Circuit recover = wrapped_estimator_circuit(layout, cfg, spec.alpha);
    append(recover, reflect_good_circuit(layout, cfg, spec.varphi));
    append(recover, inverted(wrapped_estimator_circuit(layout, cfg, spec.alpha)));
    append(recover, reflect_zero_circuit(layout, cfg, spec.phi));
    append(recover, wrapped_estimator_circuit(layout, cfg, spec.alpha));

    Circuit c = cascade_circuit(layout, "psi", build_cascade(cfg.p, cfg.m()));
    append(c, rephase_circuit(layout, data_reg, "psi", cfg.p, 1));
    append(c, recover);
    c.push_back(copy_to_save_gate(cfg.m(), "est", data_reg).inverse());
    append(c, inverted(recover));
    c.push_back(GateOp::register_permutation(
        "swap", {data_reg, "psi"}, [](const std::vector<std::uint64_t>& v) {
            return std::vector<std::uint64_t>{v[1], v[0]};
        }));
    return c;
}

QftVerifyReport verify_against_dft(std::uint64_t p, unsigned n, unsigned random_inputs) {
    const auto start = std::chrono::steady_clock::now();
    const unsigned m = bits_for(p);
    const std::vector<cplx> dft = dft_matrix(p);

    QftVerifyReport report;
    report.p = p;
    report.n = n;
    report.basis_inputs = unsigned(p);
    report.random_inputs = random_inputs;

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    auto random_input = [&]() {
        std::vector<cplx> v(std::size_t{1} << m, cplx(0.0));
        double norm = 0.0;
        for (std::uint64_t y = 0; y < p; ++y) {
            // Box-Muller from explicit 53-bit uniforms.
            const double u1 = double(rng() >> 11) * 0x1p-53 + 0x1p-54;
            const double u2 = double(rng() >> 11) * 0x1p-53;
            const double r = std::sqrt(-2.0 * std::log(u1));
            v[y] = cplx(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
            norm += std::norm(v[y]);
        }
        norm = std::sqrt(norm);
        for (std::uint64_t y = 0; y < p; ++y) {
            v[y] /= norm;
        }
        return v;
    };

    auto run_case = [&](const std::vector<cplx>& in) {
        RegisterLayout in_layout({{"psi", m}});
        StateVector input(in_layout);
        for (std::uint64_t v = 0; v < input.dim(); ++v) {
            input.set_amplitude(v, in[v]);
        }
        StateVector output = exact_qft_apply(input, p, n);

        // Oracle: the dense DFT applied to the input amplitudes.
        std::vector<cplx> expect(std::size_t{1} << m, cplx(0.0));
        for (std::uint64_t row = 0; row < p; ++row) {
            cplx acc = 0.0;
            for (std::uint64_t col = 0; col < p; ++col) {
                acc += dft[row * p + col] * in[col];
            }
            expect[row] = acc;
        }
        cplx overlap = 0.0;
        double residue = 1.0;
        for (std::uint64_t v = 0; v < output.dim(); ++v) {
            overlap += std::conj(expect[v]) * output.amplitude(v);
        }
        residue -= output.norm_squared();
        report.max_infidelity = std::max(report.max_infidelity, 1.0 - std::norm(overlap));
        // Amplitude lost to nonzero scratch shows up as missing norm here.
        report.max_scratch_residue = std::max(report.max_scratch_residue, std::abs(residue));
        report.applications_of_a = output.ledger().count("A");
    };

    for (std::uint64_t x = 0; x < p; ++x) {
        std::vector<cplx> in(std::size_t{1} << m, cplx(0.0));
        in[x] = 1.0;
        run_case(in);
    }
    for (unsigned k = 0; k < random_inputs; ++k) {
        run_case(random_input());
    }

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace eqft
