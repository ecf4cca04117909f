// faulhaber.hpp
// Exact rational coefficients of the sum-of-powers polynomials
// S_m(p) = sum_{k=0}^{p-1} k^m = sum_{i=0}^{m+1} A[m][i] p^i,
// obtained by solving the coefficient equations of S_m(p+1) - S_m(p) = p^m
// with S_m(0) = 0.

#pragma once

#include <gmpxx.h>

#include <vector>

#include "eqft/common.hpp"

namespace eqft {

class FaulhaberTable {
  public:
    // Builds rows 0..m_max.
    explicit FaulhaberTable(unsigned m_max);

    unsigned max_power() const { return unsigned(rows_.size()) - 1; }

    // Coefficients A[m][0..m+1].
    const std::vector<mpq_class>& row(unsigned m) const;

    // S_m(p) evaluated exactly from the tabulated polynomial.
    mpq_class sum_of_powers(unsigned m, const mpz_class& p) const;

    // Independent oracle: sum_{k=0}^{p-1} k^m by direct summation.
    static mpz_class direct_sum(unsigned m, std::uint64_t p);

  private:
    std::vector<std::vector<mpq_class>> rows_;
};

} // namespace eqft
