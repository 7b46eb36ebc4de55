#ifndef VTHETA_COORDS_HPP
#define VTHETA_COORDS_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "vtheta/rational.hpp"

namespace vtheta {

/* Truncated one-variable polynomials over exact rationals, coefficient of
 * x^i at index i.  Everything here feeds operator identities where
 * cancellation must be exact, so no floating point enters. */
using RatPoly = std::vector<Rational>;

inline RatPoly ratpoly_mul(const RatPoly& a, const RatPoly& b, int n)
{
    RatPoly out(n + 1, Rational(0));
    for (int i = 0; i <= n && i < int(a.size()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n && j < int(b.size()); ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/* ln(1+x) = sum_{n>=1} -(-1)^n x^n / n, truncated at x^n_max. */
inline RatPoly log1p_series(int n_max)
{
    RatPoly out(n_max + 1, Rational(0));
    for (int n = 1; n <= n_max; ++n) out[n] = Rational((n % 2 == 1) ? 1 : -1, n);
    return out;
}

/* (1+x)^{wt-1} truncated; wt may be negative (generalized binomials). */
inline RatPoly binomial_series(long long wt_minus_1, int n_max)
{
    RatPoly out(n_max + 1, Rational(0));
    for (int i = 0; i <= n_max; ++i) out[i] = binom_general(wt_minus_1, i);
    return out;
}

/* c(wt, i, m): m! sum_i c(wt,i,m) x^i = (ln(1+x))^m (1+x)^{wt-1}. */
inline Rational bracket_coeff(long long wt, int i, int m)
{
    if (i < 0 || m < 0) return Rational(0);
    if (i < m) return Rational(0);
    RatPoly acc = binomial_series(wt - 1, i);
    const RatPoly lg = log1p_series(i);
    for (int t = 0; t < m; ++t) acc = ratpoly_mul(acc, lg, i);
    return acc[i] / Rational(factorial(m));
}

/* One row m of the change-of-coordinates table, c(wt, i, m) for i <= i_max. */
struct BracketCoeffRow {
    long long wt = 1;
    int m = 0;
    std::vector<Rational> c;  // index i, zero for i < m
};

inline BracketCoeffRow bracket_coeffs(long long wt, int m, int i_max)
{
    if (i_max < m) throw std::invalid_argument("bracket_coeffs: i_max must be >= m");
    BracketCoeffRow row;
    row.wt = wt;
    row.m = m;
    RatPoly acc = binomial_series(wt - 1, i_max);
    const RatPoly lg = log1p_series(i_max);
    for (int t = 0; t < m; ++t) acc = ratpoly_mul(acc, lg, i_max);
    const Rational mfac(factorial(m));
    row.c.resize(i_max + 1, Rational(0));
    for (int i = 0; i <= i_max; ++i) row.c[i] = acc[i] / mfac;
    return row;
}

/* Schur polynomial p_s: the degree-s component (deg t_n = n) of
 * exp(sum_{n>=1} a_n t_n) with a_n = -(-1)^n / n.  Monomials are keyed by
 * the partition of s they represent, t_{n1} t_{n2} ... with n1 >= n2 >= ... */
struct SchurPoly {
    int s = 0;
    std::map<std::vector<int>, Rational> monomials;
};

inline std::vector<SchurPoly> schur_polys(int s_max)
{
    if (s_max < 0) throw std::invalid_argument("schur_polys: s_max must be >= 0");
    // graded polynomial: map partition -> coefficient, built as prod_n exp(a_n t_n)
    std::map<std::vector<int>, Rational> acc;
    acc[{}] = Rational(1);
    for (int n = 1; n <= s_max; ++n) {
        const Rational a_n((n % 2 == 1) ? 1 : -1, n);
        std::map<std::vector<int>, Rational> next;
        for (const auto& [part, coef] : acc) {
            int used = 0;
            for (int p : part) used += p;
            Rational powc(1);
            for (int k = 0; used + k * n <= s_max; ++k) {
                std::vector<int> np = part;
                for (int t = 0; t < k; ++t) np.push_back(n);
                std::sort(np.begin(), np.end(), std::greater<int>());
                next[np] += coef * powc;
                powc *= a_n / Rational(k + 1);
            }
        }
        acc = std::move(next);
    }
    std::vector<SchurPoly> out(s_max + 1);
    for (int s = 0; s <= s_max; ++s) out[s].s = s;
    for (const auto& [part, coef] : acc) {
        int deg = 0;
        for (int p : part) deg += p;
        if (coef != 0) out[deg].monomials[part] = coef;
    }
    return out;
}

/* Defect of the mode-sum identity used in the recursion proof:
 *   binom(k, i) = sum_m (k + 1 - wt)^m c(wt, i, m),
 * which must vanish identically (both sides expand (1+x)^k).  Returns the
 * largest absolute defect over 0 <= i <= i_max as an exact rational. */
inline Rational mode_sum_identity_check(long long wt, long long k, int i_max)
{
    if (i_max < 0) throw std::invalid_argument("mode_sum_identity_check: i_max must be >= 0");
    RatPoly acc = binomial_series(wt - 1, i_max);
    const RatPoly lg = log1p_series(i_max);
    const Rational base(k + 1 - wt);
    Rational worst(0);
    Rational scale(1);  // base^m / m!
    RatPoly rhs(i_max + 1, Rational(0));
    for (int m = 0; m <= i_max; ++m) {
        for (int i = m; i <= i_max; ++i) rhs[i] += scale * acc[i];
        acc = ratpoly_mul(acc, lg, i_max);
        scale *= base / Rational(m + 1);
    }
    for (int i = 0; i <= i_max; ++i) {
        Rational defect = rhs[i] - binom_general(k, i);
        if (defect < 0) defect = -defect;
        if (defect > worst) worst = defect;
    }
    return worst;
}

}  // namespace vtheta

#endif
