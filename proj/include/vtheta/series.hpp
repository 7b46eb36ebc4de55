#ifndef VTHETA_SERIES_HPP
#define VTHETA_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>

#include "vtheta/rational.hpp"

namespace vtheta {

inline constexpr double pi = 3.14159265358979323846;

/* e^{2 pi i x}, computed from the combined exponent so that products like
 * q_z^{-n} q^n never overflow when the combination decays. */
inline Complex cis2pi(const Complex& x)
{
    const Complex ex = Complex(0.0, 2.0 * pi) * x;
    if (ex.real() > 690.0) throw std::overflow_error("cis2pi: exponent overflow");
    return std::exp(ex);
}

/* A point (tau, z) with tau in the upper half-plane. */
struct EvalPoint {
    Complex tau;
    Complex z;

    EvalPoint(Complex tau_, Complex z_ = Complex(0, 0)) : tau(tau_), z(z_)
    {
        if (!(tau.imag() > 0)) throw std::domain_error("EvalPoint: Im(tau) must be positive");
    }

    /* |q| = |e^{2 pi i tau}| */
    double abs_q() const { return std::exp(-2.0 * pi * tau.imag()); }
};

struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

struct EvalResult {
    Complex value;
    double tail_bound;
};

/* Truncated two-variable series sum c * q^r zeta^s with exact rational
 * exponents r, s and complex coefficients.  q = e^{2 pi i tau},
 * zeta = e^{2 pi i z}.  Every stored q-exponent lies in [q_floor, q_trunc);
 * an absent q_trunc means the series is exact (a finite sum with no
 * discarded tail). */
class QZSeries {
public:
    using ZLevel = std::map<Rational, Complex>;
    using Terms = std::map<Rational, ZLevel>;

    QZSeries() : q_floor_(0) {}

    static QZSeries zero() { return QZSeries(); }

    static QZSeries monomial(const Rational& q_exp, const Rational& z_exp, Complex c)
    {
        QZSeries s;
        s.q_floor_ = q_exp;
        s.add_term(q_exp, z_exp, c);
        return s;
    }

    static QZSeries one() { return monomial(0, 0, Complex(1, 0)); }

    const Terms& terms() const { return terms_; }
    const Rational& q_floor() const { return q_floor_; }
    const std::optional<Rational>& q_trunc() const { return q_trunc_; }
    bool empty() const { return terms_.empty(); }

    void set_q_floor(const Rational& f)
    {
        if (!terms_.empty() && terms_.begin()->first < f)
            throw std::invalid_argument("QZSeries: floor above existing terms");
        q_floor_ = f;
    }

    void set_q_trunc(const Rational& t)
    {
        q_trunc_ = t;
        drop_beyond_trunc();
    }

    void clear_q_trunc() { q_trunc_.reset(); }

    Complex coeff(const Rational& q_exp, const Rational& z_exp) const
    {
        auto it = terms_.find(q_exp);
        if (it == terms_.end()) return Complex(0, 0);
        auto jt = it->second.find(z_exp);
        return jt == it->second.end() ? Complex(0, 0) : jt->second;
    }

    /* Accumulates c at (q_exp, z_exp); exact zeros are not stored. */
    void add_term(const Rational& q_exp, const Rational& z_exp, Complex c)
    {
        if (q_exp < q_floor_) q_floor_ = q_exp;
        if (q_trunc_ && q_exp >= *q_trunc_) return;
        Complex& slot = terms_[q_exp][z_exp];
        slot += c;
        if (slot == Complex(0, 0)) {
            terms_[q_exp].erase(z_exp);
            if (terms_[q_exp].empty()) terms_.erase(q_exp);
        }
    }

    std::size_t term_count() const
    {
        std::size_t n = 0;
        for (const auto& [r, lvl] : terms_) n += lvl.size();
        return n;
    }

    QZSeries scaled(Complex s) const
    {
        QZSeries out;
        out.q_floor_ = q_floor_;
        out.q_trunc_ = q_trunc_;
        if (s == Complex(0, 0)) return out;
        for (const auto& [r, lvl] : terms_)
            for (const auto& [zx, c] : lvl) out.terms_[r][zx] = c * s;
        return out;
    }

private:
    void drop_beyond_trunc()
    {
        if (!q_trunc_) return;
        auto it = terms_.lower_bound(*q_trunc_);
        terms_.erase(it, terms_.end());
    }

    Terms terms_;
    Rational q_floor_;
    std::optional<Rational> q_trunc_;

    friend QZSeries series_add(const QZSeries&, const QZSeries&);
    friend QZSeries series_mul(const QZSeries&, const QZSeries&);
};

namespace detail {

inline std::optional<Rational> min_trunc(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

}  // namespace detail

/* Coefficientwise sum.  The result is truncated at the tighter of the two
 * cutoffs.  Adding series whose determined q-ranges do not overlap would
 * silently discard one operand wholesale, so that case is rejected. */
inline QZSeries series_add(const QZSeries& a, const QZSeries& b)
{
    const Rational floor = std::min(a.q_floor(), b.q_floor());
    const auto trunc = detail::min_trunc(a.q_trunc(), b.q_trunc());
    if (trunc && !a.empty() && !b.empty()) {
        const Rational hi_floor = std::max(a.q_floor(), b.q_floor());
        if (hi_floor >= *trunc)
            throw truncation_error("series_add: truncation windows are disjoint");
    }
    QZSeries out;
    out.q_floor_ = floor;
    out.q_trunc_ = trunc;
    for (const QZSeries* src : {&a, &b})
        for (const auto& [r, lvl] : src->terms())
            for (const auto& [zx, c] : lvl) out.add_term(r, zx, c);
    return out;
}

/* Convolution product.  Retains exactly the q-exponents every one of whose
 * contributions is determined by both inputs: the cutoff is
 * min(a.floor + b.trunc, b.floor + a.trunc). */
inline QZSeries series_mul(const QZSeries& a, const QZSeries& b)
{
    QZSeries out;
    out.q_floor_ = a.q_floor() + b.q_floor();
    std::optional<Rational> t1, t2;
    if (b.q_trunc()) t1 = a.q_floor() + *b.q_trunc();
    if (a.q_trunc()) t2 = b.q_floor() + *a.q_trunc();
    out.q_trunc_ = detail::min_trunc(t1, t2);
    for (const auto& [ra, la] : a.terms())
        for (const auto& [rb, lb] : b.terms()) {
            const Rational rq = ra + rb;
            if (out.q_trunc_ && rq >= *out.q_trunc_) continue;
            for (const auto& [za, ca] : la)
                for (const auto& [zb, cb] : lb) out.add_term(rq, za + zb, ca * cb);
        }
    return out;
}

enum class SeriesOp { add, mul };

/* The spec-level entry point: op(a, b) with every coefficient of the result
 * multiplied by `scalar`. */
inline QZSeries series_arith(const QZSeries& a, const QZSeries& b, SeriesOp op, Complex scalar = Complex(1, 0))
{
    QZSeries r = (op == SeriesOp::add) ? series_add(a, b) : series_mul(a, b);
    return scalar == Complex(1, 0) ? r : r.scaled(scalar);
}

inline QZSeries operator+(const QZSeries& a, const QZSeries& b) { return series_add(a, b); }
inline QZSeries operator*(const QZSeries& a, const QZSeries& b) { return series_mul(a, b); }
inline QZSeries operator*(const QZSeries& a, Complex s) { return a.scaled(s); }
inline QZSeries operator-(const QZSeries& a, const QZSeries& b) { return series_add(a, b.scaled(Complex(-1, 0))); }

/* D_z = (2 pi i)^{-1} d/dz: multiplies the (q^r zeta^s)-coefficient by s. */
inline QZSeries dz_operator(const QZSeries& s)
{
    QZSeries out;
    out = s.scaled(Complex(0, 0));  // copies floor/trunc
    for (const auto& [r, lvl] : s.terms())
        for (const auto& [zx, c] : lvl) out.add_term(r, zx, c * to_double(zx));
    return out;
}

/* Evaluates sum c e^{2 pi i (r tau + s z)}.  The tail bound is the crude
 * geometric estimate |q|^{q_trunc} * M / (1 - |q|), where M is the largest
 * per-q-level sum of |c| |zeta^s| seen among the stored terms; an exact
 * series (no cutoff) reports 0. */
inline EvalResult series_eval(const QZSeries& s, const EvalPoint& p)
{
    Complex total(0, 0);
    double level_max = 0.0;
    for (const auto& [r, lvl] : s.terms()) {
        double level_abs = 0.0;
        for (const auto& [zx, c] : lvl) {
            const Complex term = c * cis2pi(p.tau * to_double(r) + p.z * to_double(zx));
            total += term;
            level_abs += std::abs(c) * std::exp(-2.0 * pi * p.z.imag() * to_double(zx));
        }
        level_max = std::max(level_max, level_abs);
    }
    double tail = 0.0;
    if (s.q_trunc()) {
        const double absq = p.abs_q();
        tail = std::pow(absq, to_double(*s.q_trunc())) * level_max / (1.0 - absq);
    }
    return {total, tail};
}

}  // namespace vtheta

#endif
