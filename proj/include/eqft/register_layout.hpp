// register_layout.hpp
// Named quantum registers over a dense amplitude vector.
//
// Conventions, fixed project-wide:
//   * qubit 0 is the most significant bit of the amplitude index;
//   * within a register the first qubit is the most significant bit of the
//     register value;
//   * registers occupy consecutive qubits in declaration order.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eqft/common.hpp"

namespace eqft {

struct Register {
    std::string name;
    unsigned width = 0;   // qubit count
    unsigned offset = 0;  // index of the register's most significant qubit
};

class RegisterLayout {
  public:
    RegisterLayout() = default;

    explicit RegisterLayout(const std::vector<std::pair<std::string, unsigned>>& regs) {
        for (const auto& [name, width] : regs) {
            add(name, width);
        }
    }

    void add(const std::string& name, unsigned width) {
        require(width >= 1, "register width must be >= 1");
        require(!name.empty(), "register name must be non-empty");
        for (const auto& r : regs_) {
            require(r.name != name, "duplicate register name: " + name);
        }
        require(total_ + width <= kMaxQubits,
                "layout exceeds the " + std::to_string(kMaxQubits) + "-qubit cap");
        regs_.push_back(Register{name, width, total_});
        total_ += width;
    }

    unsigned total_qubits() const { return total_; }
    std::uint64_t dim() const { return std::uint64_t{1} << total_; }
    const std::vector<Register>& registers() const { return regs_; }

    bool has(const std::string& name) const {
        for (const auto& r : regs_) {
            if (r.name == name) return true;
        }
        return false;
    }

    const Register& reg(const std::string& name) const {
        for (const auto& r : regs_) {
            if (r.name == name) return r;
        }
        throw std::invalid_argument("unknown register: " + name);
    }

    // Bit arithmetic for a register's slice of the amplitude index.
    unsigned shift(const Register& r) const { return total_ - r.offset - r.width; }
    std::uint64_t mask(const Register& r) const {
        return ((std::uint64_t{1} << r.width) - 1) << shift(r);
    }

    std::uint64_t extract(const Register& r, std::uint64_t index) const {
        return (index >> shift(r)) & ((std::uint64_t{1} << r.width) - 1);
    }

    std::uint64_t insert(const Register& r, std::uint64_t index, std::uint64_t value) const {
        return (index & ~mask(r)) | (value << shift(r));
    }

    std::uint64_t extract(const std::string& name, std::uint64_t index) const {
        return extract(reg(name), index);
    }

    // Index of the basis state assigning `values[i]` to register i (declaration
    // order).  The mapping (value assignment) <-> index is bijective.
    std::uint64_t index_of(const std::vector<std::uint64_t>& values) const {
        require(values.size() == regs_.size(), "index_of: one value per register required");
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < regs_.size(); ++i) {
            require(values[i] < (std::uint64_t{1} << regs_[i].width),
                    "index_of: value out of range for register " + regs_[i].name);
            idx = insert(regs_[i], idx, values[i]);
        }
        return idx;
    }

    // Global index of qubit `k` (0 = most significant) inside register `r`.
    unsigned qubit(const Register& r, unsigned k) const {
        require(k < r.width, "qubit index out of range for register " + r.name);
        return r.offset + k;
    }

    friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
        if (a.total_ != b.total_ || a.regs_.size() != b.regs_.size()) return false;
        for (std::size_t i = 0; i < a.regs_.size(); ++i) {
            if (a.regs_[i].name != b.regs_[i].name || a.regs_[i].width != b.regs_[i].width) {
                return false;
            }
        }
        return true;
    }
    friend bool operator!=(const RegisterLayout& a, const RegisterLayout& b) {
        return !(a == b);
    }

  private:
    std::vector<Register> regs_;
    unsigned total_ = 0;
};

} // namespace eqft
