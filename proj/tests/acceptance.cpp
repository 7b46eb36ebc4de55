/* Acceptance suite: every transformation law and combinatorial identity the
 * library claims, checked end to end at pinned tolerances.  Prints one
 * PASS/FAIL line per criterion; the exit code is the number of failures. */

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "vtheta/vtheta.hpp"

using namespace vtheta;

namespace {

int g_failures = 0;

void report(int number, const char* label, bool ok, double worst)
{
    std::printf("[%s] criterion %2d: %-46s worst=%.3e\n", ok ? "PASS" : "FAIL", number, label, worst);
    if (!ok) ++g_failures;
}

void c1_cross_oracle()
{
    const std::vector<PairJK> pairs = {{Complex(0, 0), Complex(0, 0)},
                                       {Complex(0.3, 0.1), Complex(0, 0)},
                                       {Complex(0, 0), Complex(0.2, 0)},
                                       {Complex(0.3, 0.1), Complex(0.2, 0)}};
    const std::vector<Complex> taus = {Complex(0, 1.0), Complex(0.6, 1.2)};
    double worst12 = 0, worst16 = 0;
    for (int j = 0; j < 4; ++j)
        for (const InsertionVector& v : {InsertionVector::vac(), InsertionVector::alpha()})
            for (const PairJK& jk : pairs)
                for (Complex tau : taus) {
                    worst12 = std::max(worst12, verify_cross_oracle(j, v, jk, tau, 12).abs_err);
                    worst16 = std::max(worst16, verify_cross_oracle(j, v, jk, tau, 16).abs_err);
                }
    report(1, "cross-oracle phi vs graded trace (depth 12)", worst12 < 1e-9, worst12);
    report(1, "cross-oracle phi vs graded trace (depth 16)", worst16 < 1e-11, worst16);
}

void c2_pk_laws()
{
    double worst = 0;
    for (const SL2Matrix& m : {kS, kT, SL2Matrix{2, 1, 1, 1}}) {
        const SL2Word g = decompose(m);
        const auto pts = pk_sample_points(m);
        for (int k = 1; k <= 4; ++k)
            for (const EvalPoint& p : pts) worst = std::max(worst, check_Pk_transform(k, g, p).abs_err);
    }
    report(2, "P_k laws, k in 1..4, gamma in {S,T,(2,1;1,1)}", worst < 1e-8, worst);
}

void c3_recursion()
{
    double worst1 = 0, worst2 = 0;
    for (const NPointConfig& cfg : prop1_sample_configs(1))
        for (const InsertionVector& v : {InsertionVector::vac(), InsertionVector::alpha()})
            for (int j : {0, 1})
                worst1 = std::max(worst1, prop1_residual(SectorLabel(j), Complex(0.11, 0), Complex(0.07, 0),
                                                         cfg.zs, v, cfg.x, cfg.tau, 10)
                                              .abs_err);
    for (const NPointConfig& cfg : prop1_sample_configs(2)) {
        worst2 = std::max(worst2, prop1_residual(SectorLabel(0), Complex(0.11, 0), Complex(0.07, 0), cfg.zs,
                                                 InsertionVector::alpha(), cfg.x, cfg.tau, 10)
                                      .abs_err);
        worst2 = std::max(worst2, prop1_residual(SectorLabel(3), Complex(0.2, 0), Complex(0.1, 0), cfg.zs,
                                                 InsertionVector::vac(), cfg.x, cfg.tau, 10)
                                      .abs_err);
    }
    report(3, "n-point recursion, n = 1", worst1 < 1e-8, worst1);
    report(3, "n-point recursion, n = 2", worst2 < 1e-7, worst2);
}

std::vector<SL2Word> theorem_gammas()
{
    std::vector<SL2Word> out = {decompose(kS), decompose(kT), decompose(kT * kS),
                                decompose(kS * kTinv * kS)};
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 10; ++i) out.push_back(word_of(random_word(rng, 6)));
    return out;
}

const std::vector<PairJK>& theorem_pairs()
{
    static const std::vector<PairJK> pairs = {{Complex(0, 0), Complex(0, 0)},
                                              {Complex(0.3, 0.1), Complex(0, 0)},
                                              {Complex(0, 0), Complex(0.2, 0)},
                                              {Complex(0.3, 0.1), Complex(0.2, 0)}};
    return pairs;
}

void c4_theorem1()
{
    double worst = 0, worst_internal = 0;
    for (const SL2Word& g : theorem_gammas()) {
        const Complex tau = tau_for_gamma(g.matrix);
        for (int j = 0; j < 4; ++j)
            for (const InsertionVector& v : {InsertionVector::vac(), InsertionVector::alpha()})
                for (const PairJK& jk : theorem_pairs()) {
                    const TransformReport direct = verify_theorem1(g, j, v, jk, tau, 12);
                    const TransformReport expanded = verify_theorem1_expanded(g, j, v, jk, tau, 12);
                    worst = std::max({worst, direct.abs_err, expanded.abs_err});
                    worst_internal = std::max(worst_internal, expanded.internal_err);
                }
    }
    report(4, "theorem transformation law (both forms)", worst < 1e-8, worst);
    report(4, "eq-(5) vs eq-(6) internal agreement", worst_internal < 1e-10, worst_internal);
}

void c5_corollary()
{
    double worst = 0;
    for (const SL2Word& g : theorem_gammas()) {
        const Complex tau = tau_for_gamma(g.matrix);
        for (int j = 0; j < 4; ++j)
            for (const InsertionVector& v : {InsertionVector::vac(), InsertionVector::alpha()})
                for (const PairJK& jk : theorem_pairs())
                    worst = std::max(worst, verify_corollary(g, j, v, jk, tau, 12).abs_err);
    }
    report(5, "dressed (Psi) transformation law", worst < 1e-8, worst);
}

void c6_section4()
{
    double worst = 0;
    for (const auto& [tau, z] : section4_sample_points())
        for (int h = 0; h <= 1; ++h)
            for (int k = 0; k <= 1; ++k)
                for (auto which : {Section4Check::SPrime, Section4Check::TPrime, Section4Check::STheta})
                    worst = std::max(worst, verify_section4(h, k, which, tau, z, 12).abs_err);
    report(6, "lattice theta S/T endpoint identities", worst < 1e-9, worst);
}

void c7_exact_combinatorics()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst_rel = 0;
    for (int n = 2; n <= 6; ++n)
        for (const Involution& sig : enumerate_involutions(n)) {
            if (sig.pairs.empty()) continue;
            TranspositionWeights w;
            for (auto pr : sig.pairs) w[pr] = Complex(dist(rng), dist(rng));
            auto [lhs, rhs] = lemma_c_check(sig, w);
            worst_rel = std::max(worst_rel, std::abs(lhs - rhs) / std::max(1e-30, std::abs(rhs)));
            TranspositionWeights unit;
            for (auto pr : sig.pairs) unit[pr] = Complex(1, 0);
            auto [lu, ru] = lemma_c_check(sig, unit);
            worst_rel = std::max(worst_rel, std::abs(lu - ru));
        }
    report(7, "alternating decomposition identity (n <= 6)", worst_rel <= 1e-13, worst_rel);

    std::uint64_t count_defect = 0;
    for (int s = 0; s <= 8; ++s)
        for (int t = 0; s + t <= 8; ++t) {
            if (s + t < 1) continue;
            for (const auto& c : count_partition_check(s, t))
                count_defect += (c.enumerated > c.formula ? c.enumerated - c.formula : c.formula - c.enumerated);
        }
    report(7, "involution class counting formula (s+t <= 8)", count_defect == 0, double(count_defect));

    Rational worst_defect(0);
    for (long long wt : {1LL, 2LL, 3LL})
        for (long long k = -3; k <= 4; ++k) {
            const Rational d = mode_sum_identity_check(wt, k, 12);
            if (d > worst_defect) worst_defect = d;
        }
    report(7, "mode-sum identity defect", worst_defect == Rational(0), to_double(worst_defect));
}

void c8_operator_identities()
{
    Rational worst(0);
    for (const FockBasisState& s : enumerate_basis(SectorLabel(0), 6)) {
        LinearCombo<Rational> start;
        start[s] = Rational(1);
        const auto lhs = apply_exp_bracket1(Rational(1), start);
        const auto rhs = apply_schur_sum(start);
        LinearCombo<Rational> diff = lhs;
        for (const auto& [st, c] : rhs) diff[st] -= c;
        for (const auto& [st, c] : diff) {
            Rational a = c < 0 ? Rational(-c) : c;
            if (a > worst) worst = a;
        }
    }
    report(8, "exp(alpha[1]) vs Schur-polynomial sum (deg <= 6)", worst == Rational(0), to_double(worst));

    bool commute = true;
    for (const FockBasisState& s : enumerate_basis(SectorLabel(0), 6)) {
        LinearCombo<Rational> start;
        start[s] = Rational(1);
        for (int a = 0; a <= 3 && commute; ++a)
            for (int b = a; b <= 3 && commute; ++b) {
                const auto ab = apply_bracket_mode(a, Rational(1), apply_bracket_mode(b, Rational(1), start));
                const auto ba = apply_bracket_mode(b, Rational(1), apply_bracket_mode(a, Rational(1), start));
                if (!(ab == ba)) commute = false;
            }
    }
    report(8, "bracket-mode commutation (exact)", commute, commute ? 0.0 : 1.0);

    double worst_shift = 0;
    for (int j = 0; j < 4; ++j)
        for (const Rational& d : {Rational(2), Rational(-2), Rational(1, 2)}) {
            OperatorWord w;
            w.diag(Complex(0.1, 0), Complex(0.05, 0));
            w.charge_shift(d);
            worst_shift = std::max(worst_shift, std::abs(graded_trace(SectorLabel(j), w, Complex(0, 1.1), 8).value));
        }
    report(8, "charge-shift traces vanish identically", worst_shift == 0.0, worst_shift);
}

void c9_zero_mode_transform()
{
    double worst = 0;
    for (const SL2Matrix& m : {kS, kT}) {
        const SL2Word g = decompose(m);
        const Complex tau = (m.c == 0) ? Complex(0, 1.1) : Complex(0, 1.0);
        const auto x = prop_zero_modes_x(m, tau);
        if (!x) {
            report(9, "zero-mode transformation (no valid point)", false, 1.0);
            return;
        }
        for (int n : {1, 2})
            for (int j = 0; j < 4; ++j)
                for (const InsertionVector& v : {InsertionVector::vac(), InsertionVector::alpha()})
                    worst = std::max(worst, verify_prop_zero_modes(n, g, j, v, *x, tau, 10).abs_err);
    }
    report(9, "zero-mode transformation, n in {1,2}, S and T", worst < 1e-7, worst);
}

void c10_modular_data()
{
    const bool s4 = s_fourth_power_is_identity();
    report(10, "S^4 = I in exact arithmetic", s4, s4 ? 0.0 : 1.0);

    const ModularData d = ModularData::standard();
    const Mat4 st = mat4_mul(d.S, d.T);
    const Mat4 st3 = mat4_mul(mat4_mul(st, st), st);
    const double braid = mat4_max_diff(st3, mat4_mul(d.S, d.S));
    report(10, "(ST)^3 = S^2", braid < 1e-12, braid);

    std::mt19937_64 rng(55);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const SL2Matrix m1 = word_matrix(random_word(rng));
        const SL2Matrix m2 = word_matrix(random_word(rng));
        const Mat4 lhs = a_gamma(decompose(m1 * m2));
        const Mat4 rhs = mat4_mul(a_gamma(decompose(m1)), a_gamma(decompose(m2)));
        worst = std::max(worst, mat4_max_diff(lhs, rhs));
    }
    report(10, "A^{g1 g2} = A^{g1} A^{g2} over 20 random pairs", worst < 1e-12, worst);
}

}  // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    c1_cross_oracle();
    c2_pk_laws();
    c3_recursion();
    c4_theorem1();
    c5_corollary();
    c6_section4();
    c7_exact_combinatorics();
    c8_operator_identities();
    c9_zero_mode_transform();
    c10_modular_data();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s (%d failure%s, %.1f s)\n", g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
                g_failures, g_failures == 1 ? "" : "s", secs);
    return g_failures;
}
