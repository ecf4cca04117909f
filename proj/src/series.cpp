#include "eqft/series.hpp"

#include <cmath>
#include <numeric>

#include "eqft/faulhaber.hpp"

namespace eqft {

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;

mpfr_prec_t bits_for_digits(int decimal_digits) {
    return mpfr_prec_t(std::ceil(double(decimal_digits) * kLog2Of10)) + 32;
}

// Guard digits carried through the floating evaluation.
int guard_digits(unsigned terms) {
    return 8 + int(std::ceil(std::log10(double(terms + 1))));
}

// "12.0345" with d fractional digits -> 120345 / 10^d.
mpq_class decimal_to_rational(const std::string& text, int digits) {
    std::string s = text;
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        s.erase(dot, 1);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, unsigned(digits));
    mpq_class q(mpz_class(s), den);
    q.canonicalize();
    return q;
}

std::vector<mpq_class> multiply_truncated(const std::vector<mpq_class>& a,
                                          const std::vector<mpq_class>& b,
                                          unsigned order) {
    std::vector<mpq_class> c(order + 1, mpq_class(0));
    for (unsigned i = 0; i <= order; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; i + j <= order; ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

} // namespace

unsigned series_truncation_order(int digits) {
    // Remainder bound, documented:
    //   f^2(u), u = pi z, is analytic in |u| < pi N.  On |u| = 2 pi (valid for
    //   every N >= 4): |sin u|^2 <= cosh^2(2 pi) and, using
    //   |sin w| >= (2/pi)|w| for |w| <= pi/2, |N sin(u/N)| >= 4.  Cauchy's
    //   estimate on the series in v = u^2 then gives |G_m| <= C (2 pi)^{-2m}
    //   with C = cosh^2(2 pi)/16 < 4481, so for 0 <= z < 1 the tail beyond
    //   order M is at most (4C/3) 4^{-(M+1)} < 6000 * 4^{-(M+1)}.
    require(digits >= 1, "series_truncation_order: digits must be >= 1");
    unsigned M = 0;
    double bound = 6000.0 / 4.0;
    const double target = std::pow(10.0, double(-digits - 1));
    while (bound > target) {
        bound /= 4.0;
        ++M;
    }
    return M;
}

std::vector<mpq_class> f_squared_series(const mpz_class& N, unsigned order) {
    require(N >= 4, "f_squared_series: requires N >= 4");
    // sin(u)/u           = sum_j (-1)^j u^{2j} / (2j+1)!
    // N sin(u/N)/u       = sum_j (-1)^j u^{2j} / ((2j+1)! N^{2j})
    // as series in w = u^2.
    std::vector<mpq_class> P(order + 1), Q(order + 1);
    mpz_class factorial(1);
    mpz_class n_pow(1);
    const mpz_class n_sq = N * N;
    for (unsigned j = 0; j <= order; ++j) {
        if (j > 0) {
            factorial *= mpz_class(2 * j) * mpz_class(2 * j + 1);
            n_pow *= n_sq;
        }
        mpq_class term(1, 1);
        term /= mpq_class(factorial);
        if (j % 2 == 1) {
            term = -term;
        }
        P[j] = term;
        Q[j] = term / mpq_class(n_pow);
    }

    // R = 1/Q by power-series division (Q starts at 1).
    std::vector<mpq_class> R(order + 1, mpq_class(0));
    R[0] = 1;
    for (unsigned k = 1; k <= order; ++k) {
        mpq_class acc(0);
        for (unsigned j = 1; j <= k; ++j) {
            acc += Q[j] * R[k - j];
        }
        R[k] = -acc;
    }

    const std::vector<mpq_class> F = multiply_truncated(P, R, order);
    return multiply_truncated(F, F, order);
}

PrecisionDecimal avg_success_series(std::uint64_t p, std::uint64_t N, int digits) {
    require(digits >= 1, "avg_success_series: digits must be >= 1");
    require(p >= 1, "avg_success_series: p must be >= 1");
    require(N > p, "avg_success_series: require N > p");
    require(std::gcd(N, p) == 1, "avg_success_series: require gcd(N, p) = 1");

    const unsigned M = series_truncation_order(digits);
    const std::vector<mpq_class> G = f_squared_series(mpz_class(static_cast<unsigned long>(N)), M);
    FaulhaberTable faulhaber(2 * M);
    const mpz_class pz(static_cast<unsigned long>(p));

    // pbar = sum_m G[m] pi^{2m} S_{2m}(p) / p^{2m+1}, truncated at M.
    std::vector<mpq_class> terms(M + 1);
    mpq_class p_pow(pz);  // p^{2m+1}
    const mpq_class p_sq(pz * pz);
    for (unsigned m = 0; m <= M; ++m) {
        if (m > 0) {
            p_pow *= p_sq;
        }
        terms[m] = G[m] * faulhaber.sum_of_powers(2 * m, pz) / p_pow;
    }

    const int guard = guard_digits(M + 1);
    const mpfr_prec_t prec = bits_for_digits(digits + guard);
    const BigFloat pi = BigFloat::pi(prec);
    const BigFloat pi_sq = sqr(pi);
    BigFloat sum(prec);
    BigFloat pi_pow = BigFloat::from_ui(1, prec);
    for (unsigned m = 0; m <= M; ++m) {
        if (m > 0) {
            pi_pow *= pi_sq;
        }
        sum += BigFloat::from_rational(terms[m], prec) * pi_pow;
    }

    PrecisionDecimal out;
    out.text = truncate_decimal(sum, digits);
    out.fractional_digits = digits;
    out.error_bound = std::pow(10.0, double(-digits - 1)) * 2.0;
    return out;
}

PrecisionDecimal avg_success_reference(std::uint64_t p, std::uint64_t N, int digits) {
    require(digits >= 1, "avg_success_reference: digits must be >= 1");
    require(p >= 1, "avg_success_reference: p must be >= 1");
    require(N > p, "avg_success_reference: require N > p");

    const int guard = guard_digits(unsigned(p));
    const mpfr_prec_t prec = bits_for_digits(digits + guard);
    const BigFloat pi = BigFloat::pi(prec);
    const BigFloat n = BigFloat::from_ui(N, prec);
    BigFloat sum = BigFloat::from_ui(1, prec);  // k = 0 term
    for (std::uint64_t k = 1; k < p; ++k) {
        const BigFloat z = BigFloat::from_rational(
            mpq_class(static_cast<unsigned long>(k), static_cast<unsigned long>(p)), prec);
        const BigFloat zn = BigFloat::from_rational(
            mpq_class(static_cast<unsigned long>(k),
                      static_cast<unsigned long>(p)) / mpq_class(static_cast<unsigned long>(N)),
            prec);
        const BigFloat f = sin(pi * z) / (n * sin(pi * zn));
        sum += sqr(f);
    }
    sum /= BigFloat::from_ui(p, prec);

    PrecisionDecimal out;
    out.text = truncate_decimal(sum, digits);
    out.fractional_digits = digits;
    out.error_bound = std::pow(10.0, double(-digits - 1)) * 2.0;
    return out;
}

PrecisionDecimal alpha_for(std::uint64_t p, std::uint64_t N, int digits) {
    require(digits >= 1, "alpha_for: digits must be >= 1");
    for (int guard = 12; guard <= 48; guard *= 2) {
        const PrecisionDecimal pbar = avg_success_series(p, N, digits + guard);
        const mpfr_prec_t prec = bits_for_digits(digits + guard + 16);

        // Bracket the true pbar: truncation plus the series remainder stay
        // within 2 units of the last reported digit on either side.
        const mpq_class mid = decimal_to_rational(pbar.text, digits + guard);
        mpz_class ulp;
        mpz_ui_pow_ui(ulp.get_mpz_t(), 10, unsigned(digits + guard));
        const mpq_class slack = mpq_class(2, 1) / mpq_class(ulp);
        const mpq_class lo = mid - slack;
        const mpq_class hi = mid + slack;

        require(lo >= mpq_class(1, 4), "alpha_for: pbar below 1/4 is untunable");

        // alpha is decreasing in pbar; evaluate at both interval ends and
        // accept once the truncations agree.
        auto alpha_of = [&](const mpq_class& pb) {
            const BigFloat quarter = BigFloat::from_rational(mpq_class(1, 4), prec);
            const BigFloat v = quarter / BigFloat::from_rational(pb, prec);
            return asin(sqrt(v));
        };
        const std::string a_hi = truncate_decimal(alpha_of(lo), digits);
        const std::string a_lo = truncate_decimal(alpha_of(hi), digits);
        if (a_hi == a_lo) {
            PrecisionDecimal out;
            out.text = a_lo;
            out.fractional_digits = digits;
            out.error_bound = std::pow(10.0, double(-digits));
            return out;
        }
    }
    throw std::runtime_error("alpha_for: failed to stabilise the requested digits");
}

} // namespace eqft
