#include <catch2/catch_amalgamated.hpp>

#include "vtheta/modular.hpp"
#include "vtheta/samples.hpp"
#include "vtheta/special.hpp"

using namespace vtheta;

namespace {

/* Independent double-sum oracle: P_1 = sum_{n>=1} sum_{j>=0}
 * (q_z^n q^{nj} - q_z^{-n} q^{n(j+1)}), i.e. the geometric expansion of
 * every 1/(1-q^n) factor. */
Complex p1_double_sum(Complex tau, Complex z, int N = 300, int J = 300)
{
    Complex s(0, 0);
    for (int n = 1; n <= N; ++n)
        for (int j = 0; j < J; ++j)
            s += cis2pi(double(n) * z + double(n * j) * tau) -
                 cis2pi(-double(n) * z + double(n * (j + 1)) * tau);
    return s;
}

/* Pentagonal-number expansion of eta: q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}. */
Complex eta_pentagonal(Complex tau, int K = 40)
{
    Complex s(0, 0);
    for (int k = -K; k <= K; ++k)
        s += double((k % 2 == 0) ? 1 : -1) * cis2pi(tau * (double(k) * (3.0 * k - 1.0) / 2.0));
    return s * cis2pi(tau / 24.0);
}

/* Direct theta sum, coded separately from eval_theta. */
Complex theta_direct(int h, int k, Complex tau, Complex z, int N = 40)
{
    Complex s(0, 0);
    for (int n = -N; n <= N; ++n) {
        const double nh = n + h / 2.0;
        s += std::exp(Complex(0, pi) * (nh * nh) * tau + Complex(0, 2 * pi) * nh * (z + k / 2.0));
    }
    return s;
}

}  // namespace

TEST_CASE("P_k is periodic in z")
{
    for (int k = 1; k <= 4; ++k) {
        const Complex a = eval_Pk(k, EvalPoint(Complex(0, 1.4), Complex(0.07, 0.5)));
        const Complex b = eval_Pk(k, EvalPoint(Complex(0, 1.4), Complex(1.07, 0.5)));
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("P_1 matches the brute-force double sum")
{
    const Complex val = eval_Pk(1, EvalPoint(Complex(0, 1), Complex(0, 0.4)), 300);
    const Complex oracle = p1_double_sum(Complex(0, 1), Complex(0, 0.4));
    CHECK(std::abs(val - oracle) < 1e-10);
    CHECK(std::abs(val - Complex(0.0646526450283569, 0)) < 1e-13);
}

TEST_CASE("P_3 weight-3 law under S")
{
    // 0.3i maps to a real point under z -> z/tau at purely imaginary tau, so
    // shift the sample into the strip on both sides
    const TransformReport r = check_Pk_transform(3, decompose(kS), EvalPoint(Complex(0, 1.2), Complex(-0.25, 0.3)));
    CHECK(r.abs_err < 1e-9);
}

TEST_CASE("P_2 anomaly under S")
{
    const TransformReport r = check_Pk_transform(2, decompose(kS), EvalPoint(Complex(0, 1.5), Complex(-0.3, 0.5)));
    CHECK(r.abs_err < 1e-9);
}

TEST_CASE("P_1 under T is invariant")
{
    // c = 0, d = 1: the anomaly (c tau + d)/2 - c z - 1/2 vanishes
    const TransformReport r = check_Pk_transform(1, decompose(kT), EvalPoint(Complex(0, 1.5), Complex(0.2, 0.5)));
    CHECK(r.abs_err < 1e-12);
}

TEST_CASE("P_4 under (2,1;1,1)")
{
    const SL2Word g = decompose(SL2Matrix{2, 1, 1, 1});
    const TransformReport r = check_Pk_transform(4, g, EvalPoint(Complex(-0.45, 0.9), Complex(-0.3, 0.2)));
    CHECK(r.abs_err < 1e-9);
}

TEST_CASE("P_k laws across k, gamma, and sample points")
{
    for (const SL2Matrix& m : {kS, kT, SL2Matrix{2, 1, 1, 1}}) {
        const SL2Word g = decompose(m);
        const auto pts = pk_sample_points(m);
        REQUIRE(pts.size() == 5);
        for (int k = 1; k <= 4; ++k)
            for (const EvalPoint& p : pts) {
                const TransformReport r = check_Pk_transform(k, g, p);
                CHECK(r.abs_err < 1e-8);
                CHECK(r.depth_doubled_err < r.abs_err + 1e-12);
            }
    }
}

TEST_CASE("P_k outside the strip is a domain error")
{
    CHECK_THROWS_AS(eval_Pk(2, EvalPoint(Complex(0, 1), Complex(0.3, 0))), std::domain_error);
    CHECK_THROWS_AS(eval_Pk(2, EvalPoint(Complex(0, 1), Complex(0, 1.2))), std::domain_error);
    // spec sample (tau, z) = (1.5i, 0.5i) maps to real z/tau under S
    CHECK_THROWS_AS(check_Pk_transform(2, decompose(kS), EvalPoint(Complex(0, 1.5), Complex(0, 0.5))),
                    std::domain_error);
}

TEST_CASE("eta series coefficients")
{
    const QZSeries e = eta_series(12);
    CHECK(e.coeff(Rational(1, 24), 0) == Complex(1, 0));
    CHECK(e.coeff(Rational(5) + Rational(1, 24), 0) == Complex(1, 0));
    CHECK(e.coeff(Rational(1) + Rational(1, 24), 0) == Complex(-1, 0));
    CHECK(e.coeff(Rational(3) + Rational(1, 24), 0) == Complex(0, 0));
}

TEST_CASE("eta against the pentagonal-number oracle")
{
    const Complex v = eval_eta(EvalPoint(Complex(0, 2)));
    CHECK(std::abs(v - eta_pentagonal(Complex(0, 2))) < 1e-12);
    CHECK(std::abs(v - Complex(0.5923827813324158, 0)) < 1e-13);
}

TEST_CASE("eta at the S fixed point")
{
    // S fixes tau = i and (-i tau)^{1/2} = 1 there
    const Complex at_i = eval_eta(EvalPoint(Complex(0, 1)));
    const Complex transformed = sqrt_minus_i_tau(Complex(0, 1)) * at_i;
    CHECK(std::abs(std::abs(transformed) - std::abs(at_i)) < 1e-13);
}

TEST_CASE("theta_11 vanishes at z = 0")
{
    CHECK(std::abs(eval_theta(1, 1, EvalPoint(Complex(0.2, 1.1), Complex(0, 0)))) < 1e-14);
}

TEST_CASE("theta_00 at (i, 0) against the direct sum")
{
    const Complex v = eval_theta(0, 0, EvalPoint(Complex(0, 1), Complex(0, 0)));
    CHECK(std::abs(v - theta_direct(0, 0, Complex(0, 1), Complex(0, 0))) < 1e-14);
    CHECK(std::abs(v - Complex(1.0864348112133082, 0)) < 1e-12);
}

TEST_CASE("theta quasi-periodicity in z")
{
    const Complex tau(0.1, 1.2);
    const Complex z(0.21, 0.13);
    for (int h = 0; h <= 1; ++h)
        for (int k = 0; k <= 1; ++k) {
            const Complex a = eval_theta(h, k, EvalPoint(tau, z + 1.0));
            const Complex b = double(h == 0 ? 1 : -1) * eval_theta(h, k, EvalPoint(tau, z));
            CHECK(std::abs(a - b) < 1e-12);
        }
}

TEST_CASE("theta S-law with the principal branch")
{
    const Complex tau(0.3, 1.1);
    const Complex z(0.23, 0.11);
    for (int h = 0; h <= 1; ++h)
        for (int k = 0; k <= 1; ++k) {
            const Complex lhs = eval_theta(h, k, EvalPoint(-1.0 / tau, z / tau));
            const Complex root = (h * k == 1) ? Complex(0, -1) : Complex(1, 0);
            const Complex rhs = root * sqrt_minus_i_tau(tau) * std::exp(Complex(0, pi) * z * z / tau) *
                                eval_theta(k, h, EvalPoint(tau, z));
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
}

TEST_CASE("theta prime is the D_z image")
{
    // finite differences in z
    const EvalPoint p(Complex(0, 1.1), Complex(0.2, 0.1));
    const double eps = 1e-6;
    for (int h = 0; h <= 1; ++h)
        for (int k = 0; k <= 1; ++k) {
            const Complex up = eval_theta(h, k, EvalPoint(p.tau, p.z + eps));
            const Complex dn = eval_theta(h, k, EvalPoint(p.tau, p.z - eps));
            const Complex fd = (up - dn) / (2.0 * eps) / Complex(0, 2 * pi);
            CHECK(std::abs(fd - eval_theta_prime(h, k, p)) < 1e-6);
        }
}
