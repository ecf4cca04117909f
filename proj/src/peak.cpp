#include "eqft/peak.hpp"

#include <cmath>
#include <numeric>

namespace eqft {

double f_eval(double z, std::uint64_t N) {
    require(N >= 1, "f_eval: N must be >= 1");
    require(std::abs(z) < double(N), "f_eval: |z| must be < N");
    if (z == 0.0) {
        return 1.0;
    }
    return std::sin(kPi * z) / (double(N) * std::sin(kPi * z / double(N)));
}

double f_limit(double z) {
    if (z == 0.0) {
        return 1.0;
    }
    return std::sin(kPi * z) / (kPi * z);
}

double p_x(std::uint64_t x, std::uint64_t p, std::uint64_t N) {
    require(p >= 1 && x < p, "p_x: require 0 <= x < p");
    require(N > p, "p_x: require N > p");
    const double f = f_eval(double((x * N) % p) / double(p), N);
    return f * f;
}

double avg_success_bruteforce(std::uint64_t p, std::uint64_t N) {
    require(p >= 1, "avg_success_bruteforce: p must be >= 1");
    require(N > p, "avg_success_bruteforce: require N > p");
    double k_sum = 0.0;
    for (std::uint64_t k = 0; k < p; ++k) {
        const double f = f_eval(double(k) / double(p), N);
        k_sum += f * f;
    }
    k_sum /= double(p);

    if (std::gcd(N, p) == 1) {
        // x -> (x N mod p) permutes 0..p-1, so the instance average must equal
        // the k-indexed sum.
        double x_sum = 0.0;
        for (std::uint64_t x = 0; x < p; ++x) {
            x_sum += p_x(x, p, N);
        }
        x_sum /= double(p);
        check_state(std::abs(x_sum - k_sum) < 1e-12,
                    "avg_success_bruteforce: reindexing identity violated");
    }
    return k_sum;
}

} // namespace eqft
