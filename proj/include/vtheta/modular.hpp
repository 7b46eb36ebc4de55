#ifndef VTHETA_MODULAR_HPP
#define VTHETA_MODULAR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "vtheta/fock.hpp"
#include "vtheta/involutions.hpp"
#include "vtheta/report.hpp"
#include "vtheta/sl2.hpp"
#include "vtheta/special.hpp"
#include "vtheta/theta1pt.hpp"

namespace vtheta {

using Mat4 = std::array<std::array<Complex, 4>, 4>;

inline Mat4 mat4_identity()
{
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = Complex(1, 0);
    return m;
}

inline Mat4 mat4_mul(const Mat4& a, const Mat4& b)
{
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline double mat4_max_diff(const Mat4& a, const Mat4& b)
{
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

/* Modular data of V_{2Z alpha} on the ordered modules (M^0..M^3):
 *   S_{h,j} = (1/2) e^{-pi i h j / 2},   T = diag e^{pi i h^2/4 - pi i/12}.
 * The S entries use the lattice pairing convention e^{-2 pi i <l_h, l_j>};
 * with this sign every transformation check in this library closes, and
 * S^2 is the charge-conjugation permutation delta_{(h+j) mod 4, 0}. */
struct ModularData {
    Mat4 S{};
    Mat4 T{};
    Mat4 Tinv{};

    static ModularData standard()
    {
        ModularData d;
        for (int h = 0; h < 4; ++h)
            for (int j = 0; j < 4; ++j) d.S[h][j] = 0.5 * cis2pi(to_double(Rational(-h * j, 4)));
        for (int h = 0; h < 4; ++h) {
            const double e = to_double(Rational(h * h, 8) - Rational(1, 24));
            d.T[h][h] = cis2pi(e);
            d.Tinv[h][h] = cis2pi(-e);
        }
        return d;
    }
};

/* A^gamma as the ordered product of generator matrices along the word
 * (leftmost generator acts last on tau, leftmost matrix first in the
 * product).  A^S = data.S and A^T = data.T by construction. */
inline Mat4 a_gamma(const SL2Word& gamma, const ModularData& data = ModularData::standard())
{
    Mat4 out = mat4_identity();
    for (Gen g : gamma.word) {
        const Mat4& f = (g == Gen::S) ? data.S : (g == Gen::T ? data.T : data.Tinv);
        out = mat4_mul(out, f);
    }
    return out;
}

/* ----- exact arithmetic on the S matrix (entries in (1/2) Z[i]) ----- */

struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational operator*(const GaussianRational& o) const
    {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
};

using GMat4 = std::array<std::array<GaussianRational, 4>, 4>;

inline GMat4 s_matrix_exact()
{
    // i^{-hj} cycles 1, -i, -1, i
    const GaussianRational units[4] = {{Rational(1), Rational(0)},
                                       {Rational(0), Rational(-1)},
                                       {Rational(-1), Rational(0)},
                                       {Rational(0), Rational(1)}};
    GMat4 s{};
    for (int h = 0; h < 4; ++h)
        for (int j = 0; j < 4; ++j) {
            GaussianRational u = units[(h * j) % 4];
            s[h][j] = {u.re / 2, u.im / 2};
        }
    return s;
}

inline GMat4 gmat4_mul(const GMat4& a, const GMat4& b)
{
    GMat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    return out;
}

/* S^4 = I in exact Gaussian-rational arithmetic. */
inline bool s_fourth_power_is_identity()
{
    const GMat4 s = s_matrix_exact();
    const GMat4 s4 = gmat4_mul(gmat4_mul(s, s), gmat4_mul(s, s));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const GaussianRational want{Rational(i == j ? 1 : 0), Rational(0)};
            if (!(s4[i][j] == want)) return false;
        }
    return true;
}

/* ----- sample points ----- */

/* A tau from which both tau and gamma tau are comfortably evaluable: on the
 * isometric circle |c tau + d| = 1 the two imaginary parts agree and equal
 * 1/|c|, the best possible (Im gamma tau <= 1/(c^2 Im tau) for c != 0).
 * A small real offset avoids special symmetric points. */
inline Complex tau_for_gamma(const SL2Matrix& m, double height = 0.95, double offset = 0.0312)
{
    if (m.c == 0) return Complex(0.21 + offset, 1.07);
    const double s = m.c > 0 ? 1.0 : -1.0;
    return Complex((-double(m.d)) / double(m.c) + offset, height * s / double(m.c));
}

inline std::vector<Gen> random_word(std::mt19937_64& rng, int max_len = 6)
{
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> gen_dist(0, 2);
    std::vector<Gen> w(std::size_t(len_dist(rng)));
    for (auto& g : w) g = static_cast<Gen>(gen_dist(rng));
    return w;
}

/* ----- verifiers ----- */

namespace detail {

inline PhiCutoffs cutoffs_for_depth(int depth)
{
    PhiCutoffs c;
    c.eps = std::max(1e-26, std::pow(10.0, -1.5 * double(depth)));
    return c;
}

inline std::string v_name(const InsertionVector& v)
{
    if (v.b == Complex(0, 0)) return "one";
    if (v.a == Complex(0, 0)) return "alpha";
    return "mixed";
}

}  // namespace detail

/* P_k transformation law under gamma, including the k = 1, 2 anomalies:
 *   k >= 3:  P_k(g tau, z/(c tau+d)) = (c tau+d)^k P_k(tau, z)
 *   k = 2 :  ... - c (c tau+d) / (2 pi i)
 *   k = 1 :  ... + (c tau+d)/2 - c z - 1/2
 * Both the point and its gamma image must lie in the convergence strip. */
inline TransformReport check_Pk_transform(int k, const SL2Word& gamma, const EvalPoint& p,
                                          int n_max = kDefaultPkModes)
{
    const SL2Matrix& m = gamma.matrix;
    const Complex cd = m.cz_d(p.tau);
    const EvalPoint image(m.act(p.tau), p.z / cd);
    if (!in_pk_strip(p) || !in_pk_strip(image))
        throw std::domain_error("check_Pk_transform: point or image outside the convergence strip");
    auto evaluate = [&](int nm) -> std::pair<Complex, Complex> {
        const Complex lhs = eval_Pk(k, image, nm);
        Complex rhs;
        if (k >= 3) {
            rhs = std::pow(cd, k) * eval_Pk(k, p, nm);
        } else if (k == 2) {
            rhs = cd * cd * eval_Pk(2, p, nm) - double(m.c) * cd / Complex(0, 2 * pi);
        } else {
            rhs = cd * eval_Pk(1, p, nm) + cd / 2.0 - double(m.c) * p.z - 0.5;
        }
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = "pk";
    rep.gamma = m;
    rep.j = k;
    rep.tau = p.tau;
    rep.z = p.z;
    rep.depth = n_max;
    auto [lhs, rhs] = evaluate(n_max);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [l2, r2] = evaluate(2 * n_max);
    rep.depth_doubled_err = std::abs(l2 - r2);
    return rep;
}

/* Transformation law of the one-point theta functions (the automorphy
 * factor (c tau+d)^{wt[v]}, the A^gamma mixing, the bracket exponential
 * e^{(cu + (g tau) c w) alpha[1]}, and the pair map (u,w) -> (bw+du, aw+cu)). */
inline TransformReport verify_theorem1(const SL2Word& gamma, int j, const InsertionVector& v,
                                       const PairJK& jk, Complex tau, int depth,
                                       const ModularData& data = ModularData::standard())
{
    if (!v.is_homogeneous()) throw std::invalid_argument("verify_theorem1: v must be homogeneous");
    const SL2Matrix& m = gamma.matrix;
    const Complex gt = m.act(tau);
    const Complex cd = m.cz_d(tau);
    const Mat4 A = a_gamma(gamma, data);
    const int wt = v.weight();
    const PairJK jk2{double(m.b) * jk.w + double(m.d) * jk.u, double(m.a) * jk.w + double(m.c) * jk.u};
    const InsertionVector v2 = bracket_exp(v, double(m.c) * jk.u + gt * double(m.c) * jk.w);
    auto evaluate = [&](int d) -> std::pair<Complex, Complex> {
        const PhiCutoffs cut = detail::cutoffs_for_depth(d);
        const Complex lhs = phi(j, v, jk, EvalPoint(gt), cut);
        Complex rhs(0, 0);
        for (int k = 0; k < 4; ++k) rhs += A[j][k] * phi(k, v2, jk2, EvalPoint(tau), cut);
        rhs *= std::pow(cd, wt);
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = "theorem1";
    rep.gamma = m;
    rep.j = j;
    rep.v = detail::v_name(v);
    rep.u = jk.u;
    rep.w = jk.w;
    rep.tau = tau;
    rep.depth = depth;
    auto [lhs, rhs] = evaluate(depth);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [l2, r2] = evaluate(2 * depth);
    rep.depth_doubled_err = std::abs(l2 - r2);
    return rep;
}

/* Same law assembled from the Phi_{k,l} expansion with (c/(c tau+d))^l
 * weights; internal_err records the direct agreement between the two
 * right-hand sides. */
inline TransformReport verify_theorem1_expanded(const SL2Word& gamma, int j, const InsertionVector& v,
                                                const PairJK& jk, Complex tau, int depth,
                                                const ModularData& data = ModularData::standard())
{
    if (!v.is_homogeneous()) throw std::invalid_argument("verify_theorem1_expanded: v must be homogeneous");
    const SL2Matrix& m = gamma.matrix;
    const Complex gt = m.act(tau);
    const Complex cd = m.cz_d(tau);
    const Mat4 A = a_gamma(gamma, data);
    const int wt = v.weight();
    const PairJK jk2{double(m.b) * jk.w + double(m.d) * jk.u, double(m.a) * jk.w + double(m.c) * jk.u};
    auto rhs_expanded = [&](int d) -> Complex {
        const PhiCutoffs cut = detail::cutoffs_for_depth(d);
        Complex rhs(0, 0);
        for (int k = 0; k < 4; ++k) {
            Complex ell_sum(0, 0);
            Complex weight(1, 0);
            for (int ell = 0; ell <= wt; ++ell) {
                ell_sum += phi_ell(k, ell, v, jk2, EvalPoint(tau), cut) * weight;
                weight *= double(m.c) / cd;
            }
            rhs += A[j][k] * ell_sum;
        }
        return std::pow(cd, wt) * rhs;
    };
    auto lhs_at = [&](int d) { return phi(j, v, jk, EvalPoint(gt), detail::cutoffs_for_depth(d)); };
    TransformReport rep;
    rep.check = "theorem1_expanded";
    rep.gamma = m;
    rep.j = j;
    rep.v = detail::v_name(v);
    rep.u = jk.u;
    rep.w = jk.w;
    rep.tau = tau;
    rep.depth = depth;
    rep.lhs = lhs_at(depth);
    rep.rhs = rhs_expanded(depth);
    rep.finalize();
    rep.depth_doubled_err = std::abs(lhs_at(2 * depth) - rhs_expanded(2 * depth));
    const TransformReport direct = verify_theorem1(gamma, j, v, jk, tau, depth, data);
    rep.internal_err = std::abs(direct.rhs - rep.rhs);
    return rep;
}

/* Psi picks up no bracket exponential: the K[1]-dressing commutes with the
 * whole transformation. */
inline TransformReport verify_corollary(const SL2Word& gamma, int j, const InsertionVector& v,
                                        const PairJK& jk, Complex tau, int depth,
                                        const ModularData& data = ModularData::standard())
{
    if (!v.is_homogeneous()) throw std::invalid_argument("verify_corollary: v must be homogeneous");
    const SL2Matrix& m = gamma.matrix;
    const Complex gt = m.act(tau);
    const Complex cd = m.cz_d(tau);
    const Mat4 A = a_gamma(gamma, data);
    const int wt = v.weight();
    const PairJK jk2{double(m.b) * jk.w + double(m.d) * jk.u, double(m.a) * jk.w + double(m.c) * jk.u};
    auto evaluate = [&](int d) -> std::pair<Complex, Complex> {
        const PhiCutoffs cut = detail::cutoffs_for_depth(d);
        const Complex lhs = psi(j, v, jk, EvalPoint(gt), cut);
        Complex rhs(0, 0);
        for (int k = 0; k < 4; ++k) rhs += A[j][k] * psi(k, v, jk2, EvalPoint(tau), cut);
        rhs *= std::pow(cd, wt);
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = "corollary";
    rep.gamma = m;
    rep.j = j;
    rep.v = detail::v_name(v);
    rep.u = jk.u;
    rep.w = jk.w;
    rep.tau = tau;
    rep.depth = depth;
    auto [lhs, rhs] = evaluate(depth);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [l2, r2] = evaluate(2 * depth);
    rep.depth_doubled_err = std::abs(l2 - r2);
    return rep;
}

/* Zero-mode recursion under gamma (n <= 2 zero modes o(alpha), one vertex
 * insertion).  LHS is the first-principles trace at gamma tau with the
 * insertion at x/(c tau+d); RHS expands over involutions with the
 * (c (c tau+d) / 2 pi i) pairing weights, (c tau+d)-scaled zero modes, and
 * ((c/2 pi i) alpha[1])-images of the insertion. */
inline TransformReport verify_prop_zero_modes(int n, const SL2Word& gamma, int j, const InsertionVector& v,
                                              Complex x, Complex tau, int depth,
                                              const ModularData& data = ModularData::standard())
{
    if (n < 1 || n > 2) throw std::invalid_argument("verify_prop_zero_modes: n must be 1 or 2");
    if (!v.is_homogeneous()) throw std::invalid_argument("verify_prop_zero_modes: v must be homogeneous");
    const SL2Matrix& m = gamma.matrix;
    const Complex gt = m.act(tau);
    const Complex cd = m.cz_d(tau);
    const Mat4 A = a_gamma(gamma, data);
    const int wt = v.weight();
    const Complex c_2pii = double(m.c) / Complex(0, 2.0 * pi);
    auto evaluate = [&](int d) -> std::pair<Complex, Complex> {
        OperatorWord lhs_word;
        for (int i = 0; i < n; ++i) lhs_word.zero_mode(InsertionVector::alpha());
        lhs_word.vertex(v, x / cd);
        const Complex lhs = graded_trace(SectorLabel(j), lhs_word, gt, d).value;
        Complex rhs(0, 0);
        for (int k = 0; k < 4; ++k) {
            Complex acc(0, 0);
            for (const Involution& sig : enumerate_involutions(n)) {
                Complex pairing(1, 0);
                for (std::size_t t = 0; t < sig.pairs.size(); ++t) pairing *= c_2pii * cd;  // <alpha,alpha> = 1
                const std::vector<int> fixed = sig.fixed();
                const int fcount = int(fixed.size());
                for (int mask = 0; mask < (1 << fcount); ++mask) {
                    int ucount = 0, outside = 0;
                    for (int t = 0; t < fcount; ++t) {
                        if (mask & (1 << t))
                            ++ucount;
                        else
                            ++outside;
                    }
                    InsertionVector ins = v;
                    bool zero = false;
                    for (int t = 0; t < outside; ++t) {
                        if (ins.b == Complex(0, 0)) {
                            zero = true;
                            break;
                        }
                        ins = InsertionVector{c_2pii * ins.b, Complex(0, 0)};  // (c/2pi i) alpha[1] ins
                    }
                    if (zero) continue;
                    OperatorWord word;
                    for (int i = 0; i < ucount; ++i) word.zero_mode(InsertionVector::alpha());
                    word.vertex(ins, x);
                    acc += pairing * std::pow(cd, ucount) * graded_trace(SectorLabel(k), word, tau, d).value;
                }
            }
            rhs += A[j][k] * acc;
        }
        rhs *= std::pow(cd, wt);
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = "prop_zero_modes";
    rep.gamma = m;
    rep.j = j;
    rep.v = detail::v_name(v);
    rep.tau = tau;
    rep.z = x;
    rep.depth = depth;
    auto [lhs, rhs] = evaluate(depth);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [l2, r2] = evaluate(2 * depth);
    rep.depth_doubled_err = std::abs(l2 - r2);
    return rep;
}

enum class Section4Check { SPrime, TPrime, STheta };

/* The lattice application identities: the classical theta S-law, its
 * D_z-derivative, and the T-shift law for the derivative.  The S cases use
 * the principal branch of (-i tau)^{1/2}; their root of unity is i^{-hk},
 * matching the lattice S-matrix convention above. */
inline TransformReport verify_section4(int h, int k, Section4Check which, Complex tau, Complex z, int depth)
{
    if ((h != 0 && h != 1) || (k != 0 && k != 1)) throw std::invalid_argument("verify_section4: h, k in {0,1}");
    auto evaluate = [&](int d) -> std::pair<Complex, Complex> {
        const double eps = std::max(1e-24, std::pow(10.0, -1.5 * double(d)));
        const Complex i_mhk = (h * k == 1) ? Complex(0, -1) : Complex(1, 0);
        if (which == Section4Check::TPrime) {
            const EvalPoint p(tau, z);
            const EvalPoint ps(tau + 1.0, z);
            const int mm = detail::theta_cutoff(ps, h / 2.0, eps);
            const Complex lhs = eval_theta_prime(h, k, ps, mm);
            const Complex rhs = (h == 0) ? eval_theta_prime(0, 1 - k, p, mm)
                                         : std::exp(Complex(0, pi / 4.0)) * eval_theta_prime(1, k, p, mm);
            return {lhs, rhs};
        }
        const EvalPoint p(tau, z);
        const EvalPoint image(-1.0 / tau, z / tau);
        const int mm = detail::theta_cutoff(image, h / 2.0, eps);
        const Complex pref = sqrt_minus_i_tau(tau) * std::exp(Complex(0, pi) * z * z / tau);
        if (which == Section4Check::STheta) {
            const Complex lhs = eval_theta(h, k, image, mm);
            const Complex rhs = i_mhk * pref * eval_theta(k, h, p, mm);
            return {lhs, rhs};
        }
        const Complex lhs = eval_theta_prime(h, k, image, mm);
        const Complex rhs =
            i_mhk * tau * pref * (eval_theta_prime(k, h, p, mm) + eval_theta(k, h, p, mm) * (z / tau));
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = which == Section4Check::SPrime ? "section4_s_prime"
                : which == Section4Check::TPrime ? "section4_t_prime"
                                                 : "section4_s_theta";
    rep.gamma = which == Section4Check::TPrime ? kT : kS;
    rep.j = 2 * h + k;  // packs (h, k) for reporting
    rep.tau = tau;
    rep.z = z;
    rep.depth = depth;
    auto [lhs, rhs] = evaluate(depth);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [l2, r2] = evaluate(2 * depth);
    rep.depth_doubled_err = std::abs(l2 - r2);
    return rep;
}

/* The artifact's core cross-validation: the closed-form phi against the
 * first-principles graded trace, Phi = e^{pi i u w} q^{w^2/2} tr psi o(v)
 * q^{L(0)-1/24} with psi = e^{2 pi i u alpha(0)} q^{w alpha(0)}. */
inline TransformReport verify_cross_oracle(int j, const InsertionVector& v, const PairJK& jk, Complex tau,
                                           int depth)
{
    auto evaluate = [&](int d) -> std::pair<Complex, Complex> {
        const Complex lhs = phi(j, v, jk, EvalPoint(tau), detail::cutoffs_for_depth(d));
        OperatorWord word;
        word.diag(jk.u, jk.w);
        word.zero_mode(v);
        const Complex scale = std::exp(Complex(0, pi) * jk.u * jk.w) * cis2pi(tau * jk.w * jk.w / 2.0);
        const Complex rhs = scale * graded_trace(SectorLabel(j), word, tau, d).value;
        return {lhs, rhs};
    };
    TransformReport rep;
    rep.check = "cross_oracle";
    rep.j = j;
    rep.v = detail::v_name(v);
    rep.u = jk.u;
    rep.w = jk.w;
    rep.tau = tau;
    rep.depth = depth;
    auto [lhs, rhs] = evaluate(depth);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.finalize();
    auto [l2, r2] = evaluate(2 * depth);
    rep.depth_doubled_err = std::abs(l2 - r2);
    return rep;
}

}  // namespace vtheta

#endif
