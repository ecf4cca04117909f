#include "eqft/dlog.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace eqft {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return std::uint64_t((unsigned __int128)(a % q) * (b % q) % q);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q) {
    require(q >= 1, "inverse_mod: bad modulus");
    a %= q;
    require(std::gcd(a, q) == 1, "inverse_mod: not invertible");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = std::int64_t(q), new_r = std::int64_t(a);
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        const std::int64_t tmp_t = t - quot * new_t;
        t = new_t;
        new_t = tmp_t;
        const std::int64_t tmp_r = r - quot * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    return std::uint64_t(t < 0 ? t + std::int64_t(q) : t);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t validate_factorization(std::uint64_t q,
                                     const std::vector<std::uint64_t>& primes) {
    require(!primes.empty(), "factorization: empty prime list");
    std::vector<std::uint64_t> distinct = primes;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::uint64_t rest = q;
    std::uint64_t phi = 1;
    for (std::uint64_t prime : distinct) {
        require(is_prime(prime), "factorization: " + std::to_string(prime) + " is not prime");
        require(rest % prime == 0,
                "factorization: " + std::to_string(prime) + " does not divide q");
        std::uint64_t power = 1;
        while (rest % prime == 0) {
            rest /= prime;
            power *= prime;
        }
        phi *= power - power / prime;
    }
    require(rest == 1, "factorization: prime list does not cover q");
    return phi;
}

CyclicGroupOracle::CyclicGroupOracle(std::uint64_t q, std::uint64_t hidden_exponent)
    : q_(q), a_(hidden_exponent % q) {
    require(q >= 1, "CyclicGroupOracle: order must be >= 1");
}

std::uint64_t CyclicGroupOracle::exponent(std::uint64_t x, std::uint64_t y) const {
    return (x % q_ + mul_mod(a_, y, q_)) % q_;
}

std::uint64_t CyclicGroupOracle::exponent_substituted(std::uint64_t x, std::uint64_t y,
                                                      std::uint64_t gen_power,
                                                      std::uint64_t known_shift) const {
    const std::uint64_t beta_exp = (a_ + q_ - known_shift % q_) % q_;
    return (mul_mod(gen_power, x, q_) + mul_mod(beta_exp, y, q_)) % q_;
}

bool CyclicGroupOracle::verify(std::uint64_t candidate) const {
    return candidate % q_ == a_;
}

namespace {

std::vector<BitCondition> value_pattern(const RegisterLayout& layout, const std::string& reg,
                                        std::uint64_t value) {
    const Register& r = layout.reg(reg);
    std::vector<BitCondition> pattern;
    pattern.reserve(r.width);
    for (unsigned k = 0; k < r.width; ++k) {
        const bool bit = (value >> (r.width - 1 - k)) & 1;
        pattern.push_back(BitCondition{layout.qubit(r, k), bit});
    }
    return pattern;
}

GateOp oracle_gate(const CyclicGroupOracle& oracle, std::uint64_t gen_power,
                   std::uint64_t known_shift) {
    const std::uint64_t q = oracle.order();
    return GateOp::register_permutation(
        "oracle", {"x", "y", "func"},
        [oracle, q, gen_power, known_shift](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[2] < q) {
                out[2] = (out[2] + oracle.exponent_substituted(v[0], v[1], gen_power,
                                                               known_shift)) % q;
            }
            return out;
        });
}

RegisterLayout dlog_layout(std::uint64_t q, bool with_tag, QftBackend backend, unsigned n) {
    const unsigned m = bits_for(q);
    RegisterLayout l;
    l.add("x", m);
    l.add("y", m);
    l.add("func", m);
    if (with_tag) l.add("tag", 1);
    if (backend == QftBackend::Pipeline) {
        l.add("psi", m);
        l.add("aux", n);
        l.add("est", m);
        l.add("flag", 1);
        l.add("anc", 1);
    }
    return l;
}

Circuit prep_circuit(const RegisterLayout& layout, std::uint64_t q,
                     const CyclicGroupOracle& oracle, std::uint64_t gen_power,
                     std::uint64_t known_shift) {
    const unsigned m = bits_for(q);
    const RotationCascade cascade = build_cascade(q, m);
    Circuit c;
    append(c, cascade_circuit(layout, "x", cascade));
    append(c, cascade_circuit(layout, "y", cascade));
    c.push_back(oracle_gate(oracle, gen_power, known_shift));
    return c;
}

Circuit qft_both_circuit(const RegisterLayout& layout, std::uint64_t q, QftBackend backend) {
    Circuit c;
    const unsigned m = bits_for(q);
    if (backend == QftBackend::Direct) {
        c.push_back(dft_register_gate(q, m, "x"));
        c.push_back(dft_register_gate(q, m, "y"));
    } else {
        append(c, exact_qft_register_circuit(layout, "x", q, m + 1));
        append(c, exact_qft_register_circuit(layout, "y", q, m + 1));
    }
    return c;
}

std::vector<BitCondition> all_zero_pattern(const RegisterLayout& layout) {
    std::vector<BitCondition> pattern;
    for (unsigned qb = 0; qb < layout.total_qubits(); ++qb) {
        pattern.push_back(BitCondition{qb, false});
    }
    return pattern;
}

struct AmplifiedRun {
    StateVector state;
    double good_before = 0.0;
    double good_after = 0.0;
};

// One pi-phase Grover iteration around A = prep . transforms . tags, with the
// good subspace marked by tag = 1.
AmplifiedRun run_amplified(const RegisterLayout& layout, const Circuit& a_circuit) {
    AmplifiedRun run{StateVector(layout), 0.0, 0.0};
    StateVector& s = run.state;
    s.apply(a_circuit);
    run.good_before = probability_of(s, {{"tag", 1}});

    const unsigned tag_qubit = layout.qubit(layout.reg("tag"), 0);
    s.apply(GateOp::phase_on_pattern("reflect_good", {BitCondition{tag_qubit, true}}, kPi));
    s.apply_inverse(a_circuit);
    s.apply(GateOp::phase_on_pattern("reflect_zero", all_zero_pattern(layout), kPi));
    s.apply(a_circuit);
    run.good_after = probability_of(s, {{"tag", 1}});
    return run;
}

// Measurement branches over the two registers, conditioned on tag = 1.
std::vector<std::pair<std::array<std::uint64_t, 2>, double>>
enumerate_pairs(const StateVector& s) {
    const auto& layout = s.layout();
    const Register& xr = layout.reg("x");
    const Register& yr = layout.reg("y");
    const Register& tr = layout.reg("tag");
    std::map<std::array<std::uint64_t, 2>, double> acc;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        if (layout.extract(tr, i) != 1) continue;
        const double w = std::norm(s.amplitude(i));
        if (w == 0.0) continue;
        acc[{layout.extract(xr, i), layout.extract(yr, i)}] += w;
    }
    std::vector<std::pair<std::array<std::uint64_t, 2>, double>> out;
    for (const auto& [pair, w] : acc) {
        if (w > 1e-12) {
            out.emplace_back(pair, w);
        }
    }
    return out;
}

} // namespace

StateVector dlog_state(std::uint64_t p, const CyclicGroupOracle& oracle) {
    require(is_prime(p), "dlog_state: order must be prime (composite orders use "
                         "dlog_composite / dlog_descent)");
    require(oracle.order() == p, "dlog_state: oracle order mismatch");
    const RegisterLayout layout = dlog_layout(p, false, QftBackend::Direct, 0);
    StateVector s(layout);
    s.apply(prep_circuit(layout, p, oracle, 1, 0));
    return s;
}

StateVector condition_on_exponent(const StateVector& state, std::uint64_t value) {
    const Register& f = state.layout().reg("func");
    StateVector out = state;
    double prob = 0.0;
    for (std::uint64_t i = 0; i < out.dim(); ++i) {
        if (out.layout().extract(f, i) == value) {
            prob += std::norm(out.amplitude(i));
        } else {
            out.set_amplitude(i, 0.0);
        }
    }
    check_state(prob > 1e-15, "condition_on_exponent: value has zero probability");
    const double scale = 1.0 / std::sqrt(prob);
    for (std::uint64_t i = 0; i < out.dim(); ++i) {
        out.set_amplitude(i, out.amplitude(i) * scale);
    }
    return out;
}

PairDistribution dlog_run(std::uint64_t p, const CyclicGroupOracle& oracle,
                          QftBackend backend) {
    require(is_prime(p), "dlog_run: order must be prime");
    require(oracle.order() == p, "dlog_run: oracle order mismatch");
    const unsigned m = bits_for(p);
    const RegisterLayout layout = dlog_layout(p, false, backend, m + 1);
    StateVector s(layout);
    s.apply(prep_circuit(layout, p, oracle, 1, 0));
    s.apply(qft_both_circuit(layout, p, backend));

    PairDistribution dist;
    dist.q = p;
    dist.width = m;
    dist.joint.assign(std::size_t{1} << (2 * m), 0.0);
    const Register& xr = layout.reg("x");
    const Register& yr = layout.reg("y");
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        dist.joint[(layout.extract(xr, i) << m) | layout.extract(yr, i)] +=
            std::norm(s.amplitude(i));
    }
    return dist;
}

namespace {

DlogOutcome finish_single_round(std::uint64_t q, const CyclicGroupOracle& oracle,
                                const AmplifiedRun& run, const std::string& mode) {
    DlogOutcome out;
    out.order = q;
    out.mode = mode;
    out.good_before = run.good_before;
    out.good_after = run.good_after;
    out.max_depth = 1;
    out.gate_angles = run.state.ledger().angle_parameters();

    double best = -1.0;
    out.success = true;
    for (const auto& [pair, w] : enumerate_pairs(run.state)) {
        const auto [u, v] = pair;
        DlogBranch branch;
        DescentStep step;
        step.order = q;
        step.known = 0;
        step.measured_u = u;
        step.measured_v = v;
        step.k = u;
        step.w = v;
        step.gcd = std::gcd(u, q);
        step.probability = w;
        branch.steps.push_back(step);
        branch.probability = w;
        check_state(step.gcd == 1, "dlog: non-coprime branch survived amplification");
        branch.recovered = mul_mod(v, inverse_mod(u, q), q);
        branch.verified = oracle.verify(branch.recovered);
        out.success = out.success && branch.verified;
        if (w > best) {
            best = w;
            out.recovered = branch.recovered;
        }
        out.branches.push_back(std::move(branch));
    }
    out.success = out.success && !out.branches.empty();
    return out;
}

} // namespace

DlogOutcome dlog_exact(std::uint64_t p, const CyclicGroupOracle& oracle,
                       QftBackend backend) {
    require(p != 2, "dlog_exact: p = 2 is answered classically, not by the circuit");
    require(is_prime(p) && p % 2 == 1, "dlog_exact: order must be an odd prime");
    require(oracle.order() == p, "dlog_exact: oracle order mismatch");

    const unsigned m = bits_for(p);
    const RegisterLayout layout = dlog_layout(p, true, backend, m + 1);
    const double alpha = tune_ancilla(1.0 - 1.0 / double(p));
    const unsigned tag_qubit = layout.qubit(layout.reg("tag"), 0);

    Circuit a = prep_circuit(layout, p, oracle, 1, 0);
    append(a, qft_both_circuit(layout, p, backend));
    // Damp the good set x != 0 to exactly 1/4: rotate the tag everywhere, then
    // rotate back on the single bad value.
    a.push_back(GateOp::rotation("tag", tag_qubit, alpha));
    a.push_back(GateOp::rotation("tag", tag_qubit, -alpha, value_pattern(layout, "x", 0)));

    return finish_single_round(p, oracle, run_amplified(layout, a), "prime");
}

DlogOutcome dlog_composite(std::uint64_t q, const std::vector<std::uint64_t>& prime_factors,
                           const CyclicGroupOracle& oracle, QftBackend backend) {
    require(q % 2 == 1 && q >= 3, "dlog_composite: order must be odd and >= 3");
    require(oracle.order() == q, "dlog_composite: oracle order mismatch");
    const std::uint64_t phi = validate_factorization(q, prime_factors);

    const unsigned m = bits_for(q);
    const RegisterLayout layout = dlog_layout(q, true, backend, m + 1);
    const double alpha = tune_ancilla(double(phi) / double(q));
    const unsigned tag_qubit = layout.qubit(layout.reg("tag"), 0);

    Circuit a = prep_circuit(layout, q, oracle, 1, 0);
    append(a, qft_both_circuit(layout, q, backend));
    a.push_back(GateOp::rotation("tag", tag_qubit, alpha));
    for (std::uint64_t v = 0; v < q; ++v) {
        if (std::gcd(v, q) != 1) {
            a.push_back(GateOp::rotation("tag", tag_qubit, -alpha,
                                         value_pattern(layout, "x", v)));
        }
    }

    DlogOutcome out = finish_single_round(q, oracle, run_amplified(layout, a), "composite");
    check_state(out.branches.size() == phi, "dlog_composite: expected one branch per "
                                            "residue coprime to q");
    return out;
}

StateVector descent_round_state(std::uint64_t q, const CyclicGroupOracle& oracle,
                                std::uint64_t unresolved, std::uint64_t known) {
    const RegisterLayout layout = dlog_layout(q, false, QftBackend::Direct, 0);
    StateVector s(layout);
    s.apply(prep_circuit(layout, q, oracle, q / unresolved, known));
    s.apply(qft_both_circuit(layout, q, QftBackend::Direct));
    return s;
}

DlogOutcome dlog_descent(std::uint64_t q, const CyclicGroupOracle& oracle) {
    require(q % 2 == 1 && q >= 3, "dlog_descent: order must be odd and >= 3");
    require(oracle.order() == q, "dlog_descent: oracle order mismatch");

    const unsigned m = bits_for(q);
    const RegisterLayout layout = dlog_layout(q, true, QftBackend::Direct, 0);
    const unsigned tag_qubit = layout.qubit(layout.reg("tag"), 0);

    // Angles fixed at setup, from q alone: the order-q cascade, the DFT_q unit
    // angle, the first-round tag, and the three partial-tag angles.
    const double alpha_first = tune_ancilla(1.0 - 1.0 / double(q));
    std::vector<double> allowed;
    for (const auto& step : build_cascade(q, m).steps) {
        allowed.push_back(std::abs(step.angle));
    }
    allowed.push_back(kTwoPi / double(q));
    allowed.push_back(alpha_first);
    allowed.push_back(kPi);  // the standard amplification phases
    const double tag_quarter = std::asin(std::sqrt(0.25));        // |s|^2 = 1/4
    const double tag_half = std::asin(std::sqrt(0.5));            // |s|^2 = 1/2
    const double tag_three_quarters = std::asin(std::sqrt(0.75)); // |s|^2 = 3/4
    allowed.push_back(tag_quarter);
    allowed.push_back(tag_half);
    allowed.push_back(tag_three_quarters);

    DlogOutcome out;
    out.order = q;
    out.mode = "descent";
    out.max_depth = 0;
    out.success = true;
    out.good_before = -1.0;
    out.good_after = -1.0;
    std::vector<double> seen_angles;

    struct Frame {
        std::uint64_t unresolved;  // D
        std::uint64_t known;       // A
        std::vector<DescentStep> path;
        double probability;
    };

    std::vector<Frame> stack;
    stack.push_back(Frame{q, 0, {}, 1.0});
    double best = -1.0;

    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();

        if (frame.unresolved == 1) {
            DlogBranch branch;
            branch.steps = frame.path;
            branch.probability = frame.probability;
            branch.recovered = frame.known;
            branch.verified = oracle.verify(branch.recovered);
            out.success = out.success && branch.verified;
            out.max_depth = std::max(out.max_depth, unsigned(branch.steps.size()));
            if (frame.probability > best) {
                best = frame.probability;
                out.recovered = branch.recovered;
            }
            out.branches.push_back(std::move(branch));
            continue;
        }

        const std::uint64_t D = frame.unresolved;
        const std::uint64_t stride = q / D;

        Circuit a = prep_circuit(layout, q, oracle, stride, frame.known);
        append(a, qft_both_circuit(layout, q, QftBackend::Direct));
        if (D == q) {
            // First round: only x = 0 must go.
            a.push_back(GateOp::rotation("tag", tag_qubit, alpha_first));
            a.push_back(GateOp::rotation("tag", tag_qubit, -alpha_first,
                                         value_pattern(layout, "x", 0)));
        } else {
            // Retain the last quarter of k = 0..D-1.  floor(D/4) values are
            // fully tagged; the boundary value absorbs the fractional part
            // with |s|^2 = (D mod 4)/4 so the retained probability is 1/4.
            const std::uint64_t full = D / 4;
            const std::uint64_t rem = D % 4;
            std::vector<std::uint64_t> fully_tagged;
            for (std::uint64_t k = D - full; k < D; ++k) {
                fully_tagged.push_back(k * stride);
            }
            if (!fully_tagged.empty()) {
                a.push_back(GateOp::register_permutation(
                    "tag_full", {"x", "tag"},
                    [fully_tagged](const std::vector<std::uint64_t>& v) {
                        std::vector<std::uint64_t> o = v;
                        if (std::find(fully_tagged.begin(), fully_tagged.end(), v[0]) !=
                            fully_tagged.end()) {
                            o[1] ^= 1;
                        }
                        return o;
                    }));
            }
            if (rem != 0) {
                const std::uint64_t boundary = (D - full - 1) * stride;
                const double angle = rem == 1   ? tag_quarter
                                     : rem == 2 ? tag_half
                                                : tag_three_quarters;
                a.push_back(GateOp::rotation("tag", tag_qubit, angle,
                                             value_pattern(layout, "x", boundary)));
            }
        }

        AmplifiedRun run = run_amplified(layout, a);
        if (out.good_before < 0.0) {
            out.good_before = run.good_before;
            out.good_after = run.good_after;
        }
        check_state(std::abs(run.good_before - 0.25) < kTightTol,
                    "dlog_descent: retained probability is not exactly 1/4");
        check_state(std::abs(run.good_after - 1.0) < kTightTol,
                    "dlog_descent: amplification did not reach probability 1");
        for (double angle : run.state.ledger().angle_parameters()) {
            seen_angles.push_back(angle);
        }

        for (const auto& [pair, w] : enumerate_pairs(run.state)) {
            const auto [u, v] = pair;
            check_state(u % stride == 0 && v % stride == 0,
                        "dlog_descent: measured pair outside the subgroup");
            const std::uint64_t k = u / stride;
            const std::uint64_t wk = v / stride;  // = h k mod D
            const std::uint64_t d = std::gcd(k, D);
            check_state(k != 0 && d < D, "dlog_descent: k = 0 survived tagging");
            check_state(wk % d == 0, "dlog_descent: inconsistent measured pair");

            const std::uint64_t sub = D / d;
            const std::uint64_t h_known =
                mul_mod(wk / d, inverse_mod((k / d) % sub, sub), sub);

            DescentStep step;
            step.order = D;
            step.known = frame.known;
            step.measured_u = u;
            step.measured_v = v;
            step.k = k;
            step.w = wk;
            step.gcd = d;
            step.probability = w;

            Frame next;
            next.unresolved = d;
            next.known = frame.known + h_known * stride;
            next.path = frame.path;
            next.path.push_back(step);
            next.probability = frame.probability * w;
            stack.push_back(std::move(next));
        }
    }

    // Gate-parameter closure: everything used must come from the setup set.
    std::sort(seen_angles.begin(), seen_angles.end());
    seen_angles.erase(std::unique(seen_angles.begin(), seen_angles.end(),
                                  [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                      seen_angles.end());
    out.gate_angles = seen_angles;
    out.gate_ledger_ok = true;
    for (double angle : seen_angles) {
        bool found = false;
        for (double ok : allowed) {
            if (std::abs(angle - ok) < 1e-12) {
                found = true;
                break;
            }
        }
        if (!found) {
            out.gate_ledger_ok = false;
        }
    }
    out.success = out.success && !out.branches.empty() && out.gate_ledger_ok;
    return out;
}

double pow2_dlog_success(std::uint64_t p, unsigned n, const CyclicGroupOracle& oracle,
                         std::uint64_t r) {
    require(is_prime(p) && p % 2 == 1 && p <= 31, "pow2_dlog_success: desk-scale odd prime");
    require(oracle.order() == p, "pow2_dlog_success: oracle order mismatch");
    const unsigned m = bits_for(p);
    const std::uint64_t N = std::uint64_t{1} << n;
    require(N > p, "pow2_dlog_success: require 2^n > p");

    RegisterLayout layout;
    layout.add("x", n);
    layout.add("y", n);
    layout.add("func", m);

    StateVector s(layout);
    const RotationCascade cascade = build_cascade(p, n);
    s.apply(cascade_circuit(layout, "x", cascade));
    s.apply(cascade_circuit(layout, "y", cascade));
    // beta replaced by beta alpha^r: the instance becomes a + r.
    const std::uint64_t q = oracle.order();
    s.apply(GateOp::register_permutation(
        "oracle", {"x", "y", "func"},
        [oracle, q, r](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[2] < q) {
                out[2] = (out[2] +
                          oracle.exponent_substituted(v[0], v[1], 1, (q - r % q) % q)) % q;
            }
            return out;
        }));
    s.apply(qft_pow2_circuit(layout, "x", false));
    s.apply(qft_pow2_circuit(layout, "y", false));

    // Round-up extraction on both registers, answer from the pair, offset
    // subtracted; success counts the probability of verified recovery.
    const Register& xr = layout.reg("x");
    const Register& yr = layout.reg("y");
    std::vector<double> joint(N * N, 0.0);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        joint[layout.extract(xr, i) * N + layout.extract(yr, i)] += std::norm(s.amplitude(i));
    }
    double success = 0.0;
    for (std::uint64_t u = 0; u < N; ++u) {
        const std::uint64_t k_hat = round_up_estimate(u, p, N);
        if (k_hat == 0) continue;
        const std::uint64_t k_inv = inverse_mod(k_hat, p);
        for (std::uint64_t v = 0; v < N; ++v) {
            const std::uint64_t w_hat = round_up_estimate(v, p, N);
            const std::uint64_t candidate = mul_mod(w_hat, k_inv, p);
            const std::uint64_t answer = (candidate + p - r % p) % p;
            if (oracle.verify(answer)) {
                success += joint[u * N + v];
            }
        }
    }
    return success;
}

Pow2DlogResult uniformised_dlog_pow2(std::uint64_t p, unsigned n,
                                     const CyclicGroupOracle& oracle) {
    Pow2DlogResult result;
    result.p = p;
    result.n = n;
    result.per_offset.reserve(p);
    double sum = 0.0;
    for (std::uint64_t r = 0; r < p; ++r) {
        const double s = pow2_dlog_success(p, n, oracle, r);
        result.per_offset.push_back(s);
        sum += s;
    }
    result.average = sum / double(p);
    return result;
}

} // namespace eqft
