#ifndef VTHETA_SPECIAL_HPP
#define VTHETA_SPECIAL_HPP

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "vtheta/series.hpp"

namespace vtheta {

/* Defaults from the artifact conventions: P_k mode cutoff 64, theta cutoff
 * from the |q|^{m^2/2} < 1e-16 rule. */
inline constexpr int kDefaultPkModes = 64;

inline bool in_pk_strip(const EvalPoint& p)
{
    return 0.0 < p.z.imag() && p.z.imag() < p.tau.imag();
}

/* P_k(tau, z) = (1/(k-1)!) sum_{n != 0} n^{k-1} q_z^n / (1 - q^n), summed
 * with the n < 0 half rewritten as -(-1)^{k-1} q_z^{-n} q^n / (1 - q^n) so
 * every term decays inside the strip 0 < Im z < Im tau.  The argument
 * order is P_k(tau, z) throughout, and the normalization carries no
 * (2 pi i)^k prefactor; multiply by (2 pi i)^k to match the convention
 * common in the VOA recursion literature. */
inline Complex eval_Pk(int k, const EvalPoint& p, int n_max = kDefaultPkModes)
{
    if (k < 1) throw std::invalid_argument("eval_Pk: k must be >= 1");
    if (n_max < 1) throw std::invalid_argument("eval_Pk: n_max must be >= 1");
    if (!in_pk_strip(p)) throw std::domain_error("eval_Pk: point outside the strip 0 < Im z < Im tau");
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // -(-1)^{k-1}
    Complex total(0, 0);
    double fact = 1.0;
    for (int i = 2; i < k; ++i) fact *= i;
    for (int n = 1; n <= n_max; ++n) {
        const Complex qn = cis2pi(double(n) * p.tau);
        const Complex t1 = cis2pi(double(n) * p.z) / (1.0 - qn);
        const Complex t2 = cis2pi(double(n) * (p.tau - p.z)) / (1.0 - qn);
        total += std::pow(double(n), k - 1) * (t1 + sign * t2);
    }
    return total / fact;
}

/* Geometric bound on the P_k tail beyond n_max. */
inline double pk_tail_estimate(int k, const EvalPoint& p, int n_max)
{
    const double r = std::max(std::exp(-2.0 * pi * p.z.imag()),
                              std::exp(-2.0 * pi * (p.tau.imag() - p.z.imag())));
    double fact = 1.0;
    for (int i = 2; i < k; ++i) fact *= i;
    const double head = 2.0 * std::pow(double(n_max + 1), k - 1) * std::pow(r, n_max + 1);
    return head / (fact * (1.0 - r) * (1.0 - std::exp(-2.0 * pi * p.tau.imag())));
}

/* q^{1/24} prod_{n=1}^{depth} (1 - q^n), truncated at q^{depth + 1 + 1/24}:
 * coefficients up to q-degree `depth` above the prefactor are exact. */
inline QZSeries eta_series(int depth)
{
    if (depth < 1) throw std::invalid_argument("eta_series: depth must be >= 1");
    QZSeries prod = QZSeries::one();
    prod.set_q_trunc(Rational(depth + 1));
    for (int n = 1; n <= depth; ++n) {
        QZSeries factor = QZSeries::one();
        factor.add_term(Rational(n), Rational(0), Complex(-1, 0));
        prod = prod * factor;
        prod.set_q_trunc(Rational(depth + 1));
    }
    QZSeries out;
    for (const auto& [r, lvl] : prod.terms())
        for (const auto& [zx, c] : lvl) out.add_term(r + Rational(1, 24), zx, c);
    out.set_q_floor(Rational(1, 24));
    out.set_q_trunc(Rational(depth + 1) + Rational(1, 24));
    return out;
}

inline int eta_depth_for(const EvalPoint& p, double eps = 1e-18)
{
    const double need = -std::log(eps) / (2.0 * pi * p.tau.imag());
    return std::max(8, int(need) + 4);
}

inline Complex eval_eta(const EvalPoint& p, int depth = 0)
{
    if (depth <= 0) depth = eta_depth_for(p);
    thread_local std::map<int, QZSeries> cache;
    auto it = cache.find(depth);
    if (it == cache.end()) it = cache.emplace(depth, eta_series(depth)).first;
    return series_eval(it->second, p).value;
}

namespace detail {

inline int theta_cutoff(const EvalPoint& p, double h_shift, double eps = 1e-16)
{
    /* |summand| = exp(-pi Im(tau) (n+h/2)^2 + ...); solve for the index where
     * the Gaussian beats the linear growth from Im z. */
    const double y = p.tau.imag();
    const double lin = std::abs(p.z.imag()) + std::abs(p.tau.real()) * (std::abs(h_shift) + 1.0);
    const double L = -std::log(eps) / pi;
    const double m = (lin + std::sqrt(lin * lin + y * L)) / y;
    return int(m + std::abs(h_shift)) + 3;
}

}  // namespace detail

/* Jacobi theta with characteristics h, k in {0, 1}:
 *   theta_{hk}(tau, z) = sum_n e^{pi i (n + h/2)^2 tau + 2 pi i (n + h/2)(z + k/2)}.
 * The prime variant carries the extra factor (n + h/2), i.e. the D_z image. */
inline Complex eval_theta(int h, int k, const EvalPoint& p, int m_max = 0)
{
    if ((h != 0 && h != 1) || (k != 0 && k != 1)) throw std::invalid_argument("eval_theta: h, k in {0,1}");
    if (m_max <= 0) m_max = detail::theta_cutoff(p, h / 2.0);
    Complex total(0, 0);
    for (int n = -m_max; n <= m_max; ++n) {
        const double nh = n + h / 2.0;
        total += cis2pi(p.tau * (nh * nh / 2.0) + nh * (p.z + k / 2.0));
    }
    return total;
}

inline Complex eval_theta_prime(int h, int k, const EvalPoint& p, int m_max = 0)
{
    if ((h != 0 && h != 1) || (k != 0 && k != 1)) throw std::invalid_argument("eval_theta_prime: h, k in {0,1}");
    if (m_max <= 0) m_max = detail::theta_cutoff(p, h / 2.0);
    Complex total(0, 0);
    for (int n = -m_max; n <= m_max; ++n) {
        const double nh = n + h / 2.0;
        total += nh * cis2pi(p.tau * (nh * nh / 2.0) + nh * (p.z + k / 2.0));
    }
    return total;
}

/* Principal square root of -i tau; for tau in the upper half-plane the real
 * part of -i tau is positive, so std::sqrt stays on the principal branch. */
inline Complex sqrt_minus_i_tau(Complex tau)
{
    return std::sqrt(Complex(0, -1) * tau);
}

}  // namespace vtheta

#endif
