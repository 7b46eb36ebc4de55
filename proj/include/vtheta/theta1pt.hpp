#ifndef VTHETA_THETA1PT_HPP
#define VTHETA_THETA1PT_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "vtheta/rational.hpp"
#include "vtheta/special.hpp"

namespace vtheta {

/* Element v = a*vac + b*alpha of the two-dimensional insertion space.  Both
 * components are killed by alpha(0), so the J(0)v = K(0)v = 0 hypothesis of
 * the transformation laws holds by construction.  vac has square-bracket
 * weight 0 and alpha has weight 1 (alpha is quasi-primary). */
struct InsertionVector {
    Complex a{0, 0};
    Complex b{0, 0};

    static InsertionVector vac() { return {Complex(1, 0), Complex(0, 0)}; }
    static InsertionVector alpha() { return {Complex(0, 0), Complex(1, 0)}; }

    bool is_homogeneous() const { return a == Complex(0, 0) || b == Complex(0, 0); }

    /* Square-bracket weight of a homogeneous element. */
    int weight() const
    {
        if (!is_homogeneous()) throw std::domain_error("InsertionVector: weight of a non-homogeneous element");
        return b == Complex(0, 0) ? 0 : 1;
    }

    InsertionVector operator*(Complex s) const { return {a * s, b * s}; }
    InsertionVector operator+(const InsertionVector& o) const { return {a + o.a, b + o.b}; }
};

/* (J, K) = (u alpha, w alpha); <J,K> = u w and <K,K> = w^2 since <a,a> = 1. */
struct PairJK {
    Complex u{0, 0};
    Complex w{0, 0};
};

/* Lattice-coset offsets of the four irreducible modules: the charge lattice
 * of M^j is delta_j + 2Z. */
inline Rational sector_offset(int j)
{
    switch (j) {
        case 0: return Rational(0);
        case 1: return Rational(1, 2);
        case 2: return Rational(1);
        case 3: return Rational(-1, 2);
        default: throw std::invalid_argument("sector_offset: module index must be 0..3");
    }
}

/* Smallest conformal weight m^2/2 over the coset. */
inline Rational sector_min_weight(int j)
{
    sector_offset(j);  // validates the index
    if (j == 0) return Rational(0);
    if (j == 2) return Rational(1, 2);
    return Rational(1, 8);
}

struct PhiCutoffs {
    int eta_depth = 0;   // 0: derived from |q| and eps
    double eps = 1e-18;  // charge terms below this magnitude are dropped
};

namespace detail {

/* Charge window: indices k with |(a + b m) q^{(m+w)^2/2} e^{2 pi i u m}|
 * possibly above eps, m = delta + 2k.  Solved from the dominating Gaussian. */
inline int charge_window(const EvalPoint& p, const PairJK& jk, double eps)
{
    const double y = p.tau.imag();
    const double L = -std::log(eps);
    const double iu = std::abs(jk.u.imag());
    const double drift = std::abs(jk.w.real()) + std::abs(jk.w.imag()) + std::abs(p.tau.real());
    const double m_bound = (2.0 * pi * iu + std::sqrt(4.0 * pi * pi * iu * iu + 4.0 * pi * y * L)) / (2.0 * pi * y);
    return int((m_bound + drift + 4.0) / 2.0) + 2;
}

}  // namespace detail

/* Phi_j(v:(J,K), tau): the one-point theta function of the module M^j,
 *
 *   (1/eta(tau)) e^{pi i u w} sum_{m in delta_j + 2Z}
 *       (a + b m) q^{(m+w)^2 / 2} e^{2 pi i u m},
 *
 * which is the lattice evaluation of
 * tr e^{2 pi i (o(J) + <J,K>/2)} o(v) q^{o(omega~) + o(K) + <K,K>/2}. */
inline Complex phi(int j, const InsertionVector& v, const PairJK& jk, const EvalPoint& p,
                   const PhiCutoffs& cut = {})
{
    const double delta = to_double(sector_offset(j));
    const int K = detail::charge_window(p, jk, cut.eps);
    Complex total(0, 0);
    for (int k = -K; k <= K; ++k) {
        const double m = delta + 2.0 * k;
        const Complex exponent = p.tau * ((m + jk.w) * (m + jk.w) / 2.0) + jk.u * m;
        total += (v.a + v.b * m) * cis2pi(exponent);
    }
    const int depth = cut.eta_depth > 0 ? cut.eta_depth : eta_depth_for(p, cut.eps);
    return std::exp(Complex(0, pi) * jk.u * jk.w) * total / eval_eta(p, depth);
}

/* e^{c1 alpha[1]} on the insertion space: alpha[1] alpha = vac and
 * alpha[1] vac = 0, so the exponential is the exact two-term sum
 * a vac + b (alpha + c1 vac). */
inline InsertionVector bracket_exp(const InsertionVector& v, Complex c1)
{
    return {v.a + c1 * v.b, v.b};
}

/* Phi_{j,l}(v:(J,K), tau) = (1/l!) Phi_j((J + tau K)[1]^l v:(J,K), tau).
 * On the insertion space the bracket operator is nilpotent: l = 0 is phi
 * itself, l = 1 inserts (u + tau w) b vac, and l >= 2 vanishes. */
inline Complex phi_ell(int j, int ell, const InsertionVector& v, const PairJK& jk, const EvalPoint& p,
                       const PhiCutoffs& cut = {})
{
    if (ell < 0) throw std::invalid_argument("phi_ell: ell must be >= 0");
    if (ell == 0) return phi(j, v, jk, p, cut);
    if (ell == 1) {
        const Complex scale = (jk.u + p.tau * jk.w) * v.b;
        if (scale == Complex(0, 0)) return Complex(0, 0);
        return scale * phi(j, InsertionVector::vac(), jk, p, cut);
    }
    return Complex(0, 0);
}

/* Psi_j(v:(J,K), tau) = Phi_j(e^{K[1]} v:(J,K), tau). */
inline Complex psi(int j, const InsertionVector& v, const PairJK& jk, const EvalPoint& p,
                   const PhiCutoffs& cut = {})
{
    return phi(j, bracket_exp(v, jk.w), jk, p, cut);
}

}  // namespace vtheta

#endif
