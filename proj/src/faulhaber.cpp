#include "eqft/faulhaber.hpp"

namespace eqft {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

} // namespace

FaulhaberTable::FaulhaberTable(unsigned m_max) {
    rows_.reserve(m_max + 1);
    for (unsigned m = 0; m <= m_max; ++m) {
        // Matching the coefficient of p^t in S_m(p+1) - S_m(p) = p^m gives
        //   sum_{i=t+1}^{m+1} A[m][i] * C(i, t) = [t == m],
        // which solves top-down: A[m][m+1] = 1/(m+1), then each lower
        // coefficient from the ones above it.  A[m][0] = 0 from S_m(0) = 0.
        std::vector<mpq_class> a(m + 2, mpq_class(0));
        a[m + 1] = mpq_class(1, m + 1);
        for (int t = int(m) - 1; t >= 0; --t) {
            mpq_class acc(0);
            for (unsigned i = unsigned(t) + 2; i <= m + 1; ++i) {
                acc += a[i] * mpq_class(binomial(i, unsigned(t)));
            }
            a[unsigned(t) + 1] = -acc / mpq_class(unsigned(t) + 1);
        }
        rows_.push_back(std::move(a));
    }
}

const std::vector<mpq_class>& FaulhaberTable::row(unsigned m) const {
    require(m < rows_.size(), "FaulhaberTable: power not tabulated");
    return rows_[m];
}

mpq_class FaulhaberTable::sum_of_powers(unsigned m, const mpz_class& p) const {
    const auto& a = row(m);
    mpq_class acc(0);
    mpz_class power(1);
    for (unsigned i = 0; i <= m + 1; ++i) {
        acc += a[i] * mpq_class(power);
        power *= p;
    }
    return acc;
}

mpz_class FaulhaberTable::direct_sum(unsigned m, std::uint64_t p) {
    mpz_class acc(0);
    for (std::uint64_t k = 0; k < p; ++k) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), k, m);
        acc += t;
    }
    return acc;
}

} // namespace eqft
