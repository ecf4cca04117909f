#include "eqft/fourier_state.hpp"

#include <algorithm>
#include <cmath>

namespace eqft {

namespace {

void build_cascade_node(RotationCascade& out, unsigned level, std::uint64_t prefix,
                        std::uint64_t count) {
    if (count <= 1 || level == out.width) {
        return;
    }
    const unsigned w_rem = out.width - level;
    const std::uint64_t half = std::uint64_t{1} << (w_rem - 1);
    const std::uint64_t c0 = std::min(count, half);
    const std::uint64_t c1 = count - c0;
    if (c1 > 0) {
        const double angle = std::acos(std::sqrt(double(c0) / double(count)));
        out.steps.push_back(CascadeStep{level, prefix, angle});
        build_cascade_node(out, level + 1, (prefix << 1) | 1, c1);
    }
    build_cascade_node(out, level + 1, prefix << 1, c0);
}

} // namespace

RotationCascade build_cascade(std::uint64_t p, unsigned m) {
    require(p >= 1, "build_cascade: p must be >= 1");
    require(m >= 1 && m < 64, "build_cascade: bad qubit count");
    require((std::uint64_t{1} << m) >= p, "build_cascade: 2^m must be >= p");
    RotationCascade cascade;
    cascade.p = p;
    cascade.width = m;
    build_cascade_node(cascade, 0, 0, p);
    // Rotations are emitted root-first so that controls only ever touch
    // already-processed qubits; restore that order after the recursion.
    std::sort(cascade.steps.begin(), cascade.steps.end(),
              [](const CascadeStep& a, const CascadeStep& b) {
                  return a.target != b.target ? a.target < b.target : a.prefix < b.prefix;
              });
    return cascade;
}

Circuit cascade_circuit(const RegisterLayout& layout, const std::string& reg,
                        const RotationCascade& cascade) {
    const Register& r = layout.reg(reg);
    require(r.width == cascade.width, "cascade width does not match register");
    Circuit c;
    c.reserve(cascade.steps.size());
    for (const auto& step : cascade.steps) {
        std::vector<BitCondition> controls;
        controls.reserve(step.target);
        for (unsigned k = 0; k < step.target; ++k) {
            const bool bit = (step.prefix >> (step.target - 1 - k)) & 1;
            controls.push_back(BitCondition{layout.qubit(r, k), bit});
        }
        c.push_back(GateOp::rotation("cascade", layout.qubit(r, step.target), step.angle,
                                     std::move(controls)));
    }
    return c;
}

StateVector prepare_uniform(std::uint64_t p) {
    const unsigned m = bits_for(p);
    RegisterLayout layout({{"psi", m}});
    StateVector state(layout);
    state.apply(cascade_circuit(layout, "psi", build_cascade(p, m)));
    return state;
}

Circuit rephase_circuit(const RegisterLayout& layout, const std::string& x_reg,
                        const std::string& psi_reg, std::uint64_t p, int sign) {
    require(p >= 1, "rephase: p must be >= 1");
    const Register& xr = layout.reg(x_reg);
    const Register& pr = layout.reg(psi_reg);
    require((std::uint64_t{1} << pr.width) >= p && (std::uint64_t{1} << xr.width) >= p,
            "rephase: register too narrow for order p");
    Circuit c;
    for (unsigned i = 0; i < xr.width; ++i) {
        for (unsigned j = 0; j < pr.width; ++j) {
            // Qubit i has place value 2^(width-1-i); the pair contributes the
            // phase 2 pi 2^(a+b) / p, reduced mod 2 pi.
            const unsigned a = xr.width - 1 - i;
            const unsigned b = pr.width - 1 - j;
            // 2^(a+b) mod p keeps the angle reduced for any widths.
            std::uint64_t pow = 1;
            for (unsigned k = 0; k < a + b; ++k) {
                pow = (pow * 2) % p;
            }
            const double angle = sign * kTwoPi * double(pow) / double(p);
            c.push_back(GateOp::controlled_phase("rephase", {layout.qubit(xr, i)},
                                                 layout.qubit(pr, j), angle));
        }
    }
    return c;
}

StateVector rephase(const StateVector& state, const std::string& x_reg,
                    const std::string& psi_reg, std::uint64_t p) {
    StateVector out = state;
    out.apply(rephase_circuit(out.layout(), x_reg, psi_reg, p, 1));
    return out;
}

StateVector prepare_fourier_state(std::uint64_t x, std::uint64_t p) {
    require(x < p, "prepare_fourier_state: x out of range");
    StateVector state = prepare_uniform(p);
    const Register& r = state.layout().reg("psi");
    // Rephasing against a classical x: one phase gate per qubit, with angle
    // proportional to x and the qubit's place value.
    for (unsigned j = 0; j < r.width; ++j) {
        const unsigned place = r.width - 1 - j;
        const std::uint64_t units = ((std::uint64_t{1} << place) % p) * (x % p) % p;
        const double angle = kTwoPi * double(units) / double(p);
        state.apply(GateOp::phase_on_pattern(
            "rephase", {BitCondition{state.layout().qubit(r, j), true}}, angle));
    }
    return state;
}

std::vector<cplx> fourier_state_vector(std::uint64_t x, std::uint64_t p, unsigned m) {
    require(x < p, "fourier_state_vector: x out of range");
    require((std::uint64_t{1} << m) >= p, "fourier_state_vector: register too narrow");
    std::vector<cplx> v(std::size_t{1} << m, cplx(0.0));
    const double norm = 1.0 / std::sqrt(double(p));
    for (std::uint64_t y = 0; y < p; ++y) {
        v[y] = std::polar(norm, kTwoPi * double((x * y) % p) / double(p));
    }
    return v;
}

Circuit recognize_circuit(const RegisterLayout& layout, const std::string& xprime_reg,
                          const std::string& psi_reg, std::uint64_t p, int sign) {
    const Register& pr = layout.reg(psi_reg);
    Circuit c;
    if (sign >= 0) {
        append(c, rephase_circuit(layout, xprime_reg, psi_reg, p, -1));
        append(c, inverted(cascade_circuit(layout, psi_reg, build_cascade(p, pr.width))));
    } else {
        append(c, cascade_circuit(layout, psi_reg, build_cascade(p, pr.width)));
        append(c, rephase_circuit(layout, xprime_reg, psi_reg, p, 1));
    }
    return c;
}

StateVector recognize(const StateVector& state, const std::string& xprime_reg,
                      const std::string& psi_reg, std::uint64_t p) {
    StateVector out = state;
    out.apply(recognize_circuit(out.layout(), xprime_reg, psi_reg, p, 1));
    return out;
}

GateOp shift_gate(std::uint64_t p, const std::string& reg) {
    return GateOp::register_permutation(
        "shift", {reg}, [p](const std::vector<std::uint64_t>& v) {
            std::vector<std::uint64_t> out = v;
            if (out[0] < p) {
                out[0] = (out[0] + 1) % p;
            }
            return out;
        });
}

std::vector<cplx> dft_matrix(std::uint64_t p) {
    std::vector<cplx> m(p * p);
    const double norm = 1.0 / std::sqrt(double(p));
    for (std::uint64_t x = 0; x < p; ++x) {
        for (std::uint64_t y = 0; y < p; ++y) {
            m[x * p + y] = std::polar(norm, kTwoPi * double((x * y) % p) / double(p));
        }
    }
    return m;
}

GateOp dft_register_gate(std::uint64_t p, unsigned width, const std::string& reg,
                         bool inverse) {
    const std::size_t d = std::size_t{1} << width;
    require(d >= p, "dft_register_gate: register too narrow");
    std::vector<cplx> u(d * d, cplx(0.0));
    const std::vector<cplx> f = dft_matrix(p);
    for (std::size_t row = 0; row < d; ++row) {
        for (std::size_t col = 0; col < d; ++col) {
            if (row < p && col < p) {
                u[row * d + col] = inverse ? std::conj(f[col * p + row]) : f[row * p + col];
            } else if (row == col) {
                u[row * d + col] = 1.0;
            }
        }
    }
    // The only continuous parameter of this gate family is the unit angle
    // 2 pi / p; record it so gate-parameter ledgers stay meaningful.
    return GateOp::register_unitary(inverse ? "dft_inv" : "dft", reg, std::move(u),
                                    {kTwoPi / double(p)});
}

} // namespace eqft
