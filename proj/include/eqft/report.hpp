// report.hpp
// Deterministic JSON run reports for the command-line front end.  Every
// floating result is serialized as a string together with the tolerance it is
// checked against; identical inputs produce byte-identical reports.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace eqft {

// Maximum total qubits a CLI-triggered simulation may allocate.
inline constexpr unsigned kCliQubitGuard = 22;

nlohmann::json run_qft_verify(std::uint64_t p, std::optional<unsigned> n);

nlohmann::json run_avg_success(std::uint64_t p, unsigned n, int digits,
                               const std::string& method);

nlohmann::json run_dlog(std::uint64_t q, std::optional<std::uint64_t> a,
                        const std::string& mode,
                        const std::vector<std::uint64_t>& factors,
                        std::optional<unsigned> n);

std::string run_sinc_data(double z_min, double z_max, unsigned steps,
                          std::optional<std::uint64_t> N);

inline bool report_passed(const nlohmann::json& report) {
    return report.at("status").get<std::string>() == "pass";
}

} // namespace eqft
