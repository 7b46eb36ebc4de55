#ifndef VTHETA_FOCK_HPP
#define VTHETA_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

#include "vtheta/coords.hpp"
#include "vtheta/involutions.hpp"
#include "vtheta/rational.hpp"
#include "vtheta/report.hpp"
#include "vtheta/special.hpp"
#include "vtheta/theta1pt.hpp"

namespace vtheta {

/* Module label j in {0..3} with its lattice-coset offset. */
struct SectorLabel {
    int j = 0;
    explicit SectorLabel(int j_) : j(j_) { sector_offset(j_); }
    Rational offset() const { return sector_offset(j); }
    Rational min_weight() const { return sector_min_weight(j); }
};

/* Basis state of a lattice-module Fock space: the alpha(0)-charge m (stored
 * doubled, since m lives in (1/2)Z) and the oscillator content as a
 * partition with descending parts.  L(0)-weight is m^2/2 + |parts|. */
struct FockBasisState {
    int twice_charge = 0;
    std::vector<int> parts;  // descending

    Rational charge() const { return Rational(twice_charge, 2); }

    int osc_degree() const
    {
        int d = 0;
        for (int p : parts) d += p;
        return d;
    }

    Rational weight() const { return Rational(twice_charge * twice_charge, 8) + osc_degree(); }

    int multiplicity(int p) const { return int(std::count(parts.begin(), parts.end(), p)); }

    FockBasisState with_part(int p) const
    {
        FockBasisState s = *this;
        s.parts.insert(std::upper_bound(s.parts.begin(), s.parts.end(), p, std::greater<int>()), p);
        return s;
    }

    FockBasisState without_part(int p) const
    {
        FockBasisState s = *this;
        auto it = std::find(s.parts.begin(), s.parts.end(), p);
        s.parts.erase(it);
        return s;
    }

    auto operator<=>(const FockBasisState&) const = default;
};

template <class Scalar>
using LinearCombo = std::map<FockBasisState, Scalar>;

namespace detail {

template <class Scalar>
Scalar scalar_cast(const Rational& r)
{
    if constexpr (std::is_same_v<Scalar, Rational>)
        return r;
    else
        return Scalar(to_double(r));
}

template <class Scalar>
void accumulate(LinearCombo<Scalar>& out, const FockBasisState& s, const Scalar& c)
{
    auto [it, fresh] = out.try_emplace(s, c);
    if (!fresh) {
        it->second += c;
        if (it->second == Scalar(0)) out.erase(it);
    } else if (c == Scalar(0)) {
        out.erase(it);
    }
}

}  // namespace detail

/* Heisenberg action: alpha(-n) adds a part n, alpha(n) removes one with the
 * combinatorial factor n * multiplicity, alpha(0) multiplies by the charge. */
template <class Scalar>
LinearCombo<Scalar> apply_mode(int n, const FockBasisState& state, Scalar coeff = Scalar(1))
{
    LinearCombo<Scalar> out;
    if (n == 0) {
        detail::accumulate(out, state, Scalar(coeff * detail::scalar_cast<Scalar>(state.charge())));
        return out;
    }
    if (n < 0) {
        detail::accumulate(out, state.with_part(-n), coeff);
        return out;
    }
    const int mult = state.multiplicity(n);
    if (mult > 0) detail::accumulate(out, state.without_part(n), Scalar(coeff * Scalar(n * mult)));
    return out;
}

template <class Scalar>
LinearCombo<Scalar> apply_mode(int n, const LinearCombo<Scalar>& combo)
{
    LinearCombo<Scalar> out;
    for (const auto& [s, c] : combo)
        for (const auto& [s2, c2] : apply_mode(n, s, c)) detail::accumulate(out, s2, c2);
    return out;
}

/* Square-bracket mode of the weight-1 current, alpha[m] = m! sum_{i >= m}
 * c(1, i, m) alpha(i).  Modes alpha(i) with i beyond the state degree
 * annihilate, so the sum is finite. */
template <class Scalar>
LinearCombo<Scalar> apply_bracket_mode(int m, Scalar u_coeff, const LinearCombo<Scalar>& combo)
{
    if (m < 0) throw std::invalid_argument("apply_bracket_mode: m must be >= 0");
    int deg_max = 0;
    for (const auto& [s, c] : combo) deg_max = std::max(deg_max, s.osc_degree());
    const BracketCoeffRow row = bracket_coeffs(1, m, std::max(m, deg_max));
    const Rational mfac(factorial(m));
    LinearCombo<Scalar> out;
    for (const auto& [s, c] : combo) {
        for (int i = m; i <= s.osc_degree() && i < int(row.c.size()); ++i) {
            if (row.c[i] == 0) continue;
            const Scalar f = Scalar(c * u_coeff * detail::scalar_cast<Scalar>(mfac * row.c[i]));
            for (const auto& [s2, c2] : apply_mode(i, s, f)) detail::accumulate(out, s2, c2);
        }
    }
    return out;
}

template <class Scalar>
LinearCombo<Scalar> apply_bracket_mode(int m, Scalar u_coeff, const FockBasisState& state)
{
    LinearCombo<Scalar> combo;
    combo[state] = Scalar(1);
    return apply_bracket_mode(m, u_coeff, combo);
}

/* e^{c alpha[1]} as the finite sum sum_k (c alpha[1])^k / k!; alpha[1]
 * strictly lowers oscillator degree, so the series terminates exactly. */
template <class Scalar>
LinearCombo<Scalar> apply_exp_bracket1(Scalar c, const LinearCombo<Scalar>& combo)
{
    int deg_max = 0;
    for (const auto& [s, cc] : combo) deg_max = std::max(deg_max, s.osc_degree());
    LinearCombo<Scalar> out = combo;
    LinearCombo<Scalar> power = combo;
    Rational kfac(1);
    for (int k = 1; k <= deg_max; ++k) {
        power = apply_bracket_mode(1, c, power);
        kfac *= k;
        for (const auto& [s, cc] : power)
            detail::accumulate(out, s, Scalar(cc * detail::scalar_cast<Scalar>(Rational(1) / kfac)));
        if (power.empty()) break;
    }
    return out;
}

/* sum_s p_s(alpha(1), alpha(2), ...) applied to a combo; the p_s are the
 * Schur polynomials of the shifted-module expansion, and the alpha(i) with
 * i >= 1 commute so monomials can be applied in any order. */
template <class Scalar>
LinearCombo<Scalar> apply_schur_sum(const LinearCombo<Scalar>& combo)
{
    int deg_max = 0;
    for (const auto& [s, cc] : combo) deg_max = std::max(deg_max, s.osc_degree());
    const std::vector<SchurPoly> ps = schur_polys(deg_max);
    LinearCombo<Scalar> out;
    for (const SchurPoly& poly : ps) {
        for (const auto& [part, coef] : poly.monomials) {
            LinearCombo<Scalar> cur = combo;
            for (int n : part) cur = apply_mode(n, cur);
            for (const auto& [s, cc] : cur)
                detail::accumulate(out, s, Scalar(cc * detail::scalar_cast<Scalar>(coef)));
        }
    }
    return out;
}

/* All states of M^j whose level (L(0)-weight minus the sector minimum) is
 * at most max_degree. */
inline std::vector<FockBasisState> enumerate_basis(const SectorLabel& sector, const Rational& max_degree)
{
    if (max_degree < 0) return {};
    const Rational lam_min = sector.min_weight();
    const Rational off = sector.offset();
    std::vector<FockBasisState> out;
    // charges: m = off + 2k while m^2/2 - lam_min <= max_degree
    for (int k = -64; k <= 64; ++k) {
        const Rational m = off + 2 * k;
        const Rational lvl0 = m * m / 2 - lam_min;
        if (lvl0 > max_degree) continue;
        const int room = int(to_double(max_degree - lvl0) + 1e-9);
        const int tc = int(to_long(m * 2));
        // partitions of degree 0..room, generated descending
        std::vector<int> stack;
        std::function<void(int, int)> gen = [&](int remaining, int max_part) {
            FockBasisState s;
            s.twice_charge = tc;
            s.parts = stack;
            out.push_back(s);
            for (int p = std::min(remaining, max_part); p >= 1; --p) {
                stack.push_back(p);
                gen(remaining - p, p);
                stack.pop_back();
            }
        };
        gen(room, room);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/* ----- operator words and graded traces ----- */

struct OscMode {
    int n = 0;
};
struct DiagExp {
    Complex u{0, 0};
    Complex w{0, 0};
};  // e^{2 pi i u alpha(0)} q^{w alpha(0)}
struct ZeroModeOp {
    InsertionVector v;
};  // o(v) = a + b alpha(0)
struct VertexOp {
    InsertionVector v;
    Complex x{0, 0};
};  // Y(q_x^{L(0)} v, q_x) = a + b sum_m alpha(m) q_x^{-m}
struct ChargeShiftOp {
    Rational delta;
};  // |m, parts> -> |m + delta, parts>; exercises the vanishing-trace mechanism

using WordFactor = std::variant<OscMode, DiagExp, ZeroModeOp, VertexOp, ChargeShiftOp>;

struct OperatorWord {
    std::vector<WordFactor> factors;  // leftmost first

    OperatorWord& mode(int n)
    {
        factors.push_back(OscMode{n});
        return *this;
    }
    OperatorWord& diag(Complex u, Complex w)
    {
        factors.push_back(DiagExp{u, w});
        return *this;
    }
    OperatorWord& zero_mode(const InsertionVector& v)
    {
        factors.push_back(ZeroModeOp{v});
        return *this;
    }
    OperatorWord& vertex(const InsertionVector& v, Complex x)
    {
        factors.push_back(VertexOp{v, x});
        return *this;
    }
    OperatorWord& charge_shift(const Rational& d)
    {
        factors.push_back(ChargeShiftOp{d});
        return *this;
    }
};

struct TraceResult {
    Complex value{0, 0};
    double tail_bound = 0.0;
};

namespace detail {

inline bool is_diagonal(const WordFactor& f)
{
    return std::holds_alternative<DiagExp>(f) || std::holds_alternative<ZeroModeOp>(f);
}

inline Complex diagonal_scalar(const WordFactor& f, const FockBasisState& s, Complex tau)
{
    const double m = to_double(s.charge());
    if (const auto* d = std::get_if<DiagExp>(&f)) return cis2pi(d->u * m + tau * d->w * m);
    const auto& z = std::get<ZeroModeOp>(f);
    return z.v.a + z.v.b * m;
}

inline LinearCombo<Complex> apply_factor(const WordFactor& f, const LinearCombo<Complex>& vec, Complex tau,
                                         int osc_cap)
{
    LinearCombo<Complex> out;
    if (const auto* mo = std::get_if<OscMode>(&f)) {
        return apply_mode(mo->n, vec);
    }
    if (const auto* cs = std::get_if<ChargeShiftOp>(&f)) {
        const long long tshift = to_long(cs->delta * 2);
        for (const auto& [s, c] : vec) {
            FockBasisState s2 = s;
            s2.twice_charge += int(tshift);
            accumulate(out, s2, c);
        }
        return out;
    }
    if (is_diagonal(f)) {
        for (const auto& [s, c] : vec) {
            const Complex d = diagonal_scalar(f, s, tau);
            if (d != Complex(0, 0)) accumulate(out, s, c * d);
        }
        return out;
    }
    const auto& vx = std::get<VertexOp>(f);
    for (const auto& [s, c] : vec) {
        if (vx.v.a != Complex(0, 0)) accumulate(out, s, c * vx.v.a);
        if (vx.v.b == Complex(0, 0)) continue;
        const Complex b = c * vx.v.b;
        // alpha(0)
        accumulate(out, s, b * to_double(s.charge()));
        // lowering alpha(p), weight q_x^{-p}
        int last = -1;
        for (int p : s.parts) {
            if (p == last) continue;
            last = p;
            accumulate(out, s.without_part(p), b * double(p * s.multiplicity(p)) * cis2pi(-vx.x * double(p)));
        }
        // raising alpha(-p), weight q_x^{+p}, capped by the degree budget
        for (int p = 1; s.osc_degree() + p <= osc_cap; ++p)
            accumulate(out, s.with_part(p), b * cis2pi(vx.x * double(p)));
    }
    return out;
}

/* <target| f |vec> for the final (leftmost non-diagonal) factor. */
inline Complex project_factor(const WordFactor& f, const LinearCombo<Complex>& vec,
                              const FockBasisState& target, Complex tau)
{
    Complex total(0, 0);
    if (const auto* mo = std::get_if<OscMode>(&f)) {
        for (const auto& [s, c] : vec)
            for (const auto& [s2, c2] : apply_mode(mo->n, s, c))
                if (s2 == target) total += c2;
        return total;
    }
    if (const auto* cs = std::get_if<ChargeShiftOp>(&f)) {
        const long long tshift = to_long(cs->delta * 2);
        for (const auto& [s, c] : vec)
            if (s.twice_charge + tshift == target.twice_charge && s.parts == target.parts) total += c;
        return total;
    }
    if (is_diagonal(f)) {
        auto it = vec.find(target);
        return it == vec.end() ? Complex(0, 0) : it->second * diagonal_scalar(f, target, tau);
    }
    const auto& vx = std::get<VertexOp>(f);
    for (const auto& [s, c] : vec) {
        if (s.twice_charge != target.twice_charge) continue;
        const int dd = s.osc_degree() - target.osc_degree();
        if (dd == 0 && s.parts == target.parts) {
            total += c * (vx.v.a + vx.v.b * to_double(s.charge()));
        } else if (dd > 0) {
            // need alpha(p) with p = dd removing one part
            if (s.multiplicity(dd) > 0 && s.without_part(dd).parts == target.parts)
                total += c * vx.v.b * double(dd * s.multiplicity(dd)) * cis2pi(-vx.x * double(dd));
        } else {
            const int p = -dd;
            if (target.multiplicity(p) > 0 && target.without_part(p).parts == s.parts)
                total += c * vx.v.b * cis2pi(vx.x * double(p));
        }
    }
    return total;
}

}  // namespace detail

struct TraceOptions {
    int charge_bound = 0;  // 0: from the degree cutoff (covers the |q|^{m^2/2} rule)
};

/* tr_{M^j} word q^{L(0) - 1/24} evaluated at tau, summed over the basis up
 * to `depth` levels with a raise budget of `depth` on intermediate states.
 * Vertex positions must respect 1 > |q_{x_left}| > ... > |q_{x_right}| > |q|,
 * i.e. increasing imaginary parts from left to right inside (0, Im tau). */
inline TraceResult graded_trace(const SectorLabel& sector, const OperatorWord& word, Complex tau, int depth,
                                const TraceOptions& opts = {})
{
    if (!(tau.imag() > 0)) throw std::domain_error("graded_trace: Im(tau) must be positive");
    if (depth < 0) throw std::invalid_argument("graded_trace: depth must be >= 0");
    double prev_im = 0.0;
    for (const auto& f : word.factors)
        if (const auto* vx = std::get_if<VertexOp>(&f)) {
            if (vx->v.b == Complex(0, 0)) continue;  // pure identity insertion has no modes
            if (!(vx->x.imag() > prev_im) || !(vx->x.imag() < tau.imag()))
                throw std::domain_error("graded_trace: vertex positions violate 1 > |q_z1| > ... > |q_x| > |q|");
            prev_im = vx->x.imag();
        }

    int leftmost_nondiag = -1;
    for (int i = 0; i < int(word.factors.size()); ++i)
        if (!detail::is_diagonal(word.factors[i])) {
            leftmost_nondiag = i;
            break;
        }

    std::vector<FockBasisState> basis = enumerate_basis(sector, Rational(depth));
    if (opts.charge_bound > 0) {
        std::erase_if(basis, [&](const FockBasisState& s) {
            return std::abs(s.twice_charge) > 2 * opts.charge_bound;
        });
    }

    const double absq = std::exp(-2.0 * pi * tau.imag());
    std::vector<double> level_abs(std::size_t(depth) + 1, 0.0);
    Complex total(0, 0);
    const Rational lam_min = sector.min_weight();
    for (const FockBasisState& s : basis) {
        const int osc_cap = s.osc_degree() + depth;
        LinearCombo<Complex> vec;
        vec[s] = cis2pi(tau * to_double(s.weight() - Rational(1, 24)));
        Complex contrib(0, 0);
        bool projected = false;
        for (int i = int(word.factors.size()) - 1; i >= 0; --i) {
            if (i == leftmost_nondiag) {
                Complex val = detail::project_factor(word.factors[i], vec, s, tau);
                for (int k = i - 1; k >= 0; --k) val *= detail::diagonal_scalar(word.factors[k], s, tau);
                contrib = val;
                projected = true;
                break;
            }
            vec = detail::apply_factor(word.factors[i], vec, tau, osc_cap);
            if (vec.empty()) break;
        }
        if (!projected) {
            auto it = vec.find(s);
            contrib = it == vec.end() ? Complex(0, 0) : it->second;
        }
        total += contrib;
        const int lvl = int(to_double(s.weight() - lam_min) + 1e-9);
        level_abs[std::size_t(std::min(lvl, depth))] += std::abs(contrib);
    }

    // crude geometric tail: the last level's mass decayed by r/(1-r)
    const double r = std::sqrt(absq);
    double top = depth >= 0 ? level_abs[std::size_t(depth)] : 0.0;
    if (top == 0.0 && depth >= 1) top = level_abs[std::size_t(depth - 1)] * r;
    if (top == 0.0) {
        double peak = 0.0;
        for (double v : level_abs) peak = std::max(peak, v);
        top = peak * std::pow(r, depth + 1);
    }
    return {total, top * r / (1.0 - r)};
}

/* S^nu(psi; z_1..z_n, {v, x}, tau) with psi = e^{2 pi i u alpha(0)}
 * q^{w alpha(0)}: the graded trace of the diagonal exponential, one
 * alpha-current per z_i, and the top insertion at x. */
inline Complex npoint_eval(const SectorLabel& sector, Complex u, Complex w, const std::vector<Complex>& zs,
                           const InsertionVector& top, Complex x, Complex tau, int depth,
                           const TraceOptions& opts = {})
{
    OperatorWord word;
    word.diag(u, w);
    for (Complex z : zs) word.vertex(InsertionVector::alpha(), z);
    word.vertex(top, x);
    return graded_trace(sector, word, tau, depth, opts).value;
}

namespace detail {

/* S^nu(psi o(alpha)^npow; {v, x}, tau) used on the recursion's right side. */
inline Complex zero_mode_trace(const SectorLabel& sector, Complex u, Complex w, int npow,
                               const InsertionVector& v, Complex x, Complex tau, int depth)
{
    OperatorWord word;
    word.diag(u, w);
    for (int i = 0; i < npow; ++i) word.zero_mode(InsertionVector::alpha());
    word.vertex(v, x);
    return graded_trace(sector, word, tau, depth).value;
}

}  // namespace detail

/* Residual of the n-point recursion for n <= 2: the (n+1)-point function
 * against its expansion into P_2 pairings, zero-mode traces, and the
 * phi(v_s)-image of the top insertion.  On the insertion space phi(alpha)
 * truncates to P_1 alpha[0] + P_2 alpha[1], and alpha[0] kills both vac and
 * alpha, so each surviving term carries one P_2 factor. */
inline TransformReport prop1_residual(const SectorLabel& sector, Complex u, Complex w,
                                      const std::vector<Complex>& zs, const InsertionVector& top, Complex x,
                                      Complex tau, int depth)
{
    const int n = int(zs.size());
    if (n < 1 || n > 2) throw std::invalid_argument("prop1_residual: n must be 1 or 2");
    auto evaluate = [&](int d) -> std::pair<Complex, Complex> {
        const Complex lhs = npoint_eval(sector, u, w, zs, top, x, tau, d);
        Complex rhs(0, 0);
        const int pk_modes = 3 * kDefaultPkModes;
        for (const Involution& sig : enumerate_involutions(n)) {
            Complex pairing(1, 0);
            for (auto [a, b] : sig.pairs)
                pairing *= eval_Pk(2, EvalPoint(tau, zs[std::size_t(b - 1)] - zs[std::size_t(a - 1)]), pk_modes);
            const std::vector<int> fixed = sig.fixed();
            const int fcount = int(fixed.size());
            for (int mask = 0; mask < (1 << fcount); ++mask) {
                std::vector<int> outside;  // f(sigma) \ U
                int ucount = 0;
                for (int t = 0; t < fcount; ++t)
                    if (mask & (1 << t))
                        ++ucount;
                    else
                        outside.push_back(fixed[std::size_t(t)]);
                InsertionVector ins = top;
                bool zero = false;
                for (int s_idx : outside) {
                    // phi(alpha) ins = P_2(tau, x - z_s) * (ins.b) * vac
                    if (ins.b == Complex(0, 0)) {
                        zero = true;
                        break;
                    }
                    const Complex p2 = eval_Pk(2, EvalPoint(tau, x - zs[std::size_t(s_idx - 1)]), pk_modes);
                    ins = InsertionVector{p2 * ins.b, Complex(0, 0)};
                }
                if (zero) continue;
                rhs += pairing * detail::zero_mode_trace(sector, u, w, ucount, ins, x, tau, d);
            }
        }
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = "prop1";
    rep.j = sector.j;
    rep.v = (top.b == Complex(0, 0)) ? "one" : "alpha";
    rep.u = u;
    rep.w = w;
    rep.tau = tau;
    rep.z = zs[0];
    rep.depth = depth;
    auto [lhs, rhs] = evaluate(depth);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [lhs2, rhs2] = evaluate(2 * depth);
    rep.depth_doubled_err = std::abs(lhs2 - rhs2);
    return rep;
}

}  // namespace vtheta

#endif
