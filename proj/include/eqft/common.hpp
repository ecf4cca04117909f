// common.hpp
// Shared numeric constants, tolerances and error helpers.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eqft {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Global exactness tolerance: every "exact" claim of the library is asserted
// against this bound unless a caller specifies a tighter one.
inline constexpr double kExactTol = 1e-9;

// Tighter bounds used by individual contracts.
inline constexpr double kTightTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

// Hard cap on simulated qubits; beyond this the dense state vector stops
// being a desk-scale object.
inline constexpr unsigned kMaxQubits = 24;

inline void require(bool cond, const std::string& what) {
    if (!cond) {
        throw std::invalid_argument(what);
    }
}

inline void check_state(bool cond, const std::string& what) {
    if (!cond) {
        throw std::runtime_error(what);
    }
}

// Number of qubits needed to hold values 0..p-1 (at least one).
inline unsigned bits_for(std::uint64_t p) {
    require(p >= 1, "bits_for: p must be >= 1");
    unsigned m = 1;
    while ((std::uint64_t{1} << m) < p) {
        ++m;
    }
    return m;
}

} // namespace eqft
