// eqft — command-line front end.
//
//   eqft qft-verify  --p 7 [--n 4]
//   eqft avg-success --p 101 --n 7 --digits 12 [--method sum|series|both]
//   eqft dlog        --q 15 [--a 7] --mode prime|composite|descent|pow2
//                    [--factors 3,5] [--n 4]
//   eqft sinc-data   --z-min -4 --z-max 4 --steps 401 [--N 16]
//
// JSON reports (CSV for sinc-data) go to stdout, diagnostics to stderr.
// Exit codes: 0 all checks passed, 1 a tolerance check failed, 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eqft/report.hpp"

namespace {

std::vector<std::uint64_t> parse_factors(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string item = csv.substr(pos, comma == std::string::npos ? csv.npos
                                                                            : comma - pos);
        if (!item.empty()) {
            out.push_back(std::stoull(item));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arbitrary-order quantum Fourier transform toolkit"};
    app.require_subcommand(1);

    // qft-verify
    auto* verify = app.add_subcommand("qft-verify", "verify the exact transform against the "
                                                    "dense DFT matrix");
    std::uint64_t verify_p = 0;
    unsigned verify_n = 0;
    verify->add_option("--p", verify_p, "order (odd, >= 3)")->required();
    verify->add_option("--n", verify_n, "auxiliary qubits (default: bits(p) + 1)");

    // avg-success
    auto* avg = app.add_subcommand("avg-success", "averaged success probability to d digits");
    std::uint64_t avg_p = 0;
    unsigned avg_n = 0;
    int avg_digits = 12;
    std::string avg_method = "both";
    avg->add_option("--p", avg_p, "order (odd)")->required();
    avg->add_option("--n", avg_n, "transform exponent, N = 2^n")->required();
    avg->add_option("--digits", avg_digits, "decimal digits to report (default 12)");
    avg->add_option("--method", avg_method, "sum | series | both (default both)");

    // dlog
    auto* dlog = app.add_subcommand("dlog", "discrete-logarithm experiments");
    std::uint64_t dlog_q = 0;
    std::int64_t dlog_a = -1;
    std::string dlog_mode = "prime";
    std::string dlog_factors;
    unsigned dlog_n = 0;
    dlog->add_option("--q", dlog_q, "group order (odd, >= 3)")->required();
    dlog->add_option("--a", dlog_a, "hidden exponent (default: seeded)");
    dlog->add_option("--mode", dlog_mode, "prime | composite | descent | pow2")->required();
    dlog->add_option("--factors", dlog_factors, "comma-separated prime factors of q");
    dlog->add_option("--n", dlog_n, "transform exponent for pow2 mode");

    // sinc-data
    auto* sinc = app.add_subcommand("sinc-data", "CSV samples of the peak function");
    double z_min = 0.0, z_max = 0.0;
    unsigned steps = 0;
    std::uint64_t sinc_N = 0;
    sinc->add_option("--z-min", z_min, "range start")->required();
    sinc->add_option("--z-max", z_max, "range end")->required();
    sinc->add_option("--steps", steps, "sample count (>= 2)")->required();
    sinc->add_option("--N", sinc_N, "finite transform size (default: limit curve)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            const auto report = eqft::run_qft_verify(
                verify_p, verify->count("--n") ? std::optional<unsigned>(verify_n)
                                               : std::nullopt);
            std::cout << report.dump(2) << "\n";
            return eqft::report_passed(report) ? 0 : 1;
        }
        if (*avg) {
            const auto report = eqft::run_avg_success(avg_p, avg_n, avg_digits, avg_method);
            std::cout << report.dump(2) << "\n";
            return eqft::report_passed(report) ? 0 : 1;
        }
        if (*dlog) {
            const auto report = eqft::run_dlog(
                dlog_q,
                dlog_a >= 0 ? std::optional<std::uint64_t>(std::uint64_t(dlog_a))
                            : std::nullopt,
                dlog_mode, parse_factors(dlog_factors),
                dlog->count("--n") ? std::optional<unsigned>(dlog_n) : std::nullopt);
            std::cout << report.dump(2) << "\n";
            return eqft::report_passed(report) ? 0 : 1;
        }
        if (*sinc) {
            std::cout << eqft::run_sinc_data(
                z_min, z_max, steps,
                sinc->count("--N") ? std::optional<std::uint64_t>(sinc_N) : std::nullopt);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
