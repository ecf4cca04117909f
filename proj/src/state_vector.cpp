#include "eqft/state_vector.hpp"

#include <algorithm>
#include <cmath>

namespace eqft {

void GateLedger::record(const std::string& label, const std::vector<double>& angles) {
    ++counts_[label];
    for (double a : angles) {
        auto it = std::lower_bound(angles_.begin(), angles_.end(), a - 1e-12);
        if (it == angles_.end() || std::abs(*it - a) > 1e-12) {
            angles_.insert(std::upper_bound(angles_.begin(), angles_.end(), a), a);
        }
    }
}

std::uint64_t GateLedger::count(const std::string& label) const {
    auto it = counts_.find(label);
    return it == counts_.end() ? 0 : it->second;
}

void GateLedger::clear() {
    counts_.clear();
    angles_.clear();
}

StateVector::StateVector(RegisterLayout layout)
    : layout_(std::move(layout)), amp_(layout_.dim(), cplx(0.0)) {
    amp_[0] = 1.0;
}

StateVector::StateVector(RegisterLayout layout, const std::vector<std::uint64_t>& values)
    : layout_(std::move(layout)), amp_(layout_.dim(), cplx(0.0)) {
    amp_[layout_.index_of(values)] = 1.0;
}

std::uint64_t StateVector::condition_mask(const std::vector<BitCondition>& conds) const {
    std::uint64_t mask = 0;
    const unsigned total = layout_.total_qubits();
    for (const auto& c : conds) {
        require(c.qubit < total, "gate condition on out-of-range qubit");
        mask |= std::uint64_t{1} << (total - 1 - c.qubit);
    }
    return mask;
}

std::uint64_t StateVector::condition_value(const std::vector<BitCondition>& conds) const {
    std::uint64_t value = 0;
    const unsigned total = layout_.total_qubits();
    for (const auto& c : conds) {
        if (c.value) {
            value |= std::uint64_t{1} << (total - 1 - c.qubit);
        }
    }
    return value;
}

void StateVector::apply(const GateOp& gate) {
    switch (gate.kind()) {
        case GateKind::SingleQubit: apply_single_qubit(gate); break;
        case GateKind::PhasePattern: apply_phase_pattern(gate); break;
        case GateKind::RegisterPermutation: apply_register_permutation(gate); break;
        case GateKind::RegisterUnitary: apply_register_unitary(gate); break;
    }
    ledger_.record(gate.label(), gate.angle_params());
}

void StateVector::apply(const Circuit& circuit) {
    for (const auto& g : circuit) {
        apply(g);
    }
}

void StateVector::apply_inverse(const Circuit& circuit) {
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        apply(it->inverse());
    }
}

void StateVector::apply_single_qubit(const GateOp& g) {
    const unsigned total = layout_.total_qubits();
    require(g.target() < total, "gate targets out-of-range qubit");
    const std::uint64_t tbit = std::uint64_t{1} << (total - 1 - g.target());
    const std::uint64_t cmask = condition_mask(g.controls());
    const std::uint64_t cval = condition_value(g.controls());
    require((cmask & tbit) == 0, "gate control overlaps its target");

    const auto& u = g.matrix();
    const std::uint64_t n = amp_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & tbit) != 0 || (i & cmask) != cval) continue;
        const std::uint64_t j = i | tbit;
        const cplx a0 = amp_[i];
        const cplx a1 = amp_[j];
        amp_[i] = u[0] * a0 + u[1] * a1;
        amp_[j] = u[2] * a0 + u[3] * a1;
    }
}

void StateVector::apply_phase_pattern(const GateOp& g) {
    const std::uint64_t mask = condition_mask(g.pattern());
    const std::uint64_t value = condition_value(g.pattern());
    const cplx phase = std::polar(1.0, g.angle());
    const std::uint64_t n = amp_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & mask) == value) {
            amp_[i] *= phase;
        }
    }
}

void StateVector::apply_register_permutation(const GateOp& g) {
    const auto& names = g.permutation_registers();
    std::vector<Register> regs;
    regs.reserve(names.size());
    unsigned packed_width = 0;
    for (const auto& name : names) {
        regs.push_back(layout_.reg(name));
        packed_width += regs.back().width;
    }
    require(packed_width <= 26, "register permutation domain too large");

    // Tabulate the bijection over the packed product domain and verify that it
    // is total and invertible.
    const std::uint64_t domain = std::uint64_t{1} << packed_width;
    std::vector<std::uint64_t> table(domain);
    std::vector<bool> seen(domain, false);
    std::vector<std::uint64_t> vals(regs.size());
    for (std::uint64_t packed = 0; packed < domain; ++packed) {
        std::uint64_t rest = packed;
        for (std::size_t k = regs.size(); k-- > 0;) {
            vals[k] = rest & ((std::uint64_t{1} << regs[k].width) - 1);
            rest >>= regs[k].width;
        }
        std::vector<std::uint64_t> mapped = g.permutation()(vals);
        require(mapped.size() == regs.size(), "permutation must map value tuples to value tuples");
        std::uint64_t out = 0;
        for (std::size_t k = 0; k < regs.size(); ++k) {
            require(mapped[k] < (std::uint64_t{1} << regs[k].width),
                    "permutation value out of register range");
            out = (out << regs[k].width) | mapped[k];
        }
        require(!seen[out], "register permutation is not a bijection");
        seen[out] = true;
        table[packed] = out;
    }
    if (g.perm_inverted_) {
        std::vector<std::uint64_t> inv(domain);
        for (std::uint64_t i = 0; i < domain; ++i) {
            inv[table[i]] = i;
        }
        table.swap(inv);
    }

    struct Slice {
        unsigned shift;
        std::uint64_t mask;
    };
    std::vector<Slice> slices;
    std::uint64_t clear_mask = ~std::uint64_t{0};
    for (const auto& r : regs) {
        slices.push_back(Slice{layout_.shift(r), (std::uint64_t{1} << r.width) - 1});
        clear_mask &= ~layout_.mask(r);
    }

    scratch_.resize(amp_.size());  // every slot is written: the map is bijective
    const std::uint64_t n = amp_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t packed = 0;
        for (std::size_t k = 0; k < regs.size(); ++k) {
            packed = (packed << regs[k].width) | ((i >> slices[k].shift) & slices[k].mask);
        }
        std::uint64_t out_packed = table[packed];
        std::uint64_t j = i & clear_mask;
        for (std::size_t k = regs.size(); k-- > 0;) {
            j |= (out_packed & slices[k].mask) << slices[k].shift;
            out_packed >>= regs[k].width;
        }
        scratch_[j] = amp_[i];
    }
    amp_.swap(scratch_);
}

void StateVector::apply_register_unitary(const GateOp& g) {
    const Register& r = layout_.reg(g.unitary_register());
    const std::size_t d = std::size_t{1} << r.width;
    require(d == g.unitary_dim(), "register unitary dimension mismatch");
    const unsigned shift = layout_.shift(r);
    const std::uint64_t rmask = layout_.mask(r);
    const auto& u = g.unitary();

    std::vector<cplx> in(d), out(d);
    const std::uint64_t n = amp_.size();
    for (std::uint64_t base = 0; base < n; ++base) {
        if ((base & rmask) != 0) continue;
        for (std::size_t v = 0; v < d; ++v) {
            in[v] = amp_[base | (std::uint64_t{v} << shift)];
        }
        for (std::size_t row = 0; row < d; ++row) {
            cplx acc = 0.0;
            const cplx* urow = &u[row * d];
            for (std::size_t v = 0; v < d; ++v) {
                acc += urow[v] * in[v];
            }
            out[row] = acc;
        }
        for (std::size_t v = 0; v < d; ++v) {
            amp_[base | (std::uint64_t{v} << shift)] = out[v];
        }
    }
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const cplx& a : amp_) {
        s += std::norm(a);
    }
    return s;
}

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
    StateVector out = state;
    out.apply(gate);
    return out;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    require(a.layout() == b.layout(), "inner_product: layout mismatch");
    cplx acc = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

std::vector<double> distribution(const StateVector& state, const std::string& reg) {
    const Register& r = state.layout().reg(reg);
    std::vector<double> dist(std::size_t{1} << r.width, 0.0);
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        dist[state.layout().extract(r, i)] += std::norm(state.amplitude(i));
    }
    return dist;
}

double probability_of(const StateVector& state,
                      const std::vector<std::pair<std::string, std::uint64_t>>& values) {
    const auto& layout = state.layout();
    double p = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        bool match = true;
        for (const auto& [name, v] : values) {
            if (layout.extract(name, i) != v) {
                match = false;
                break;
            }
        }
        if (match) {
            p += std::norm(state.amplitude(i));
        }
    }
    return p;
}

double register_fidelity(const StateVector& state, const std::string& reg,
                         const std::vector<cplx>& pure) {
    const auto& layout = state.layout();
    const Register& r = layout.reg(reg);
    const std::size_t d = std::size_t{1} << r.width;
    require(pure.size() == d, "register_fidelity: pure state dimension mismatch");
    const unsigned shift = layout.shift(r);
    const std::uint64_t rmask = layout.mask(r);

    double total = 0.0;
    for (std::uint64_t base = 0; base < state.dim(); ++base) {
        if ((base & rmask) != 0) continue;
        cplx overlap = 0.0;
        for (std::size_t v = 0; v < d; ++v) {
            overlap += std::conj(pure[v]) * state.amplitude(base | (std::uint64_t{v} << shift));
        }
        total += std::norm(overlap);
    }
    return total;
}

double support_leak(const StateVector& state, const std::string& reg, std::uint64_t p) {
    const Register& r = state.layout().reg(reg);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (state.layout().extract(r, i) >= p) {
            worst = std::max(worst, std::abs(state.amplitude(i)));
        }
    }
    return worst;
}

} // namespace eqft
