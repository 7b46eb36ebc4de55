#ifndef VTHETA_SAMPLES_HPP
#define VTHETA_SAMPLES_HPP

#include <optional>
#include <vector>

#include "vtheta/modular.hpp"

namespace vtheta {

/* Valid P_k sample points: both (tau, z) and the gamma image must sit in
 * their strips.  For S and purely imaginary tau, z/tau is real, so the z
 * samples need a real part of the right sign; these sets were chosen for
 * comfortable margins on both sides. */
inline std::vector<EvalPoint> pk_sample_points(const SL2Matrix& m, int count = 5)
{
    std::vector<EvalPoint> out;
    auto valid = [&](const EvalPoint& p) {
        const Complex cd = m.cz_d(p.tau);
        if (!(p.tau.imag() > 0)) return false;
        const Complex gt = m.act(p.tau);
        if (!(gt.imag() > 0)) return false;
        // margins keep the strip sums fast to converge on both sides
        const Complex zi = p.z / cd;
        const double m1 = 0.08 * p.tau.imag();
        const double m2 = 0.08 * gt.imag();
        return p.z.imag() > m1 && p.z.imag() < p.tau.imag() - m1 && zi.imag() > m2 &&
               zi.imag() < gt.imag() - m2;
    };
    if (m == kS) {
        out = {EvalPoint(Complex(0, 1.5), Complex(-0.3, 0.5)), EvalPoint(Complex(0, 1.2), Complex(-0.25, 0.45)),
               EvalPoint(Complex(0.1, 1.3), Complex(-0.2, 0.5)), EvalPoint(Complex(0, 1.1), Complex(-0.35, 0.3)),
               EvalPoint(Complex(-0.15, 1.4), Complex(-0.3, 0.62))};
    } else if (m == kT || m == kTinv) {
        out = {EvalPoint(Complex(0, 1.5), Complex(0.2, 0.5)), EvalPoint(Complex(0, 1.1), Complex(0, 0.3)),
               EvalPoint(Complex(0.2, 1.2), Complex(0.1, 0.4)), EvalPoint(Complex(0, 1.3), Complex(-0.2, 0.7)),
               EvalPoint(Complex(0, 0.9), Complex(0, 0.25))};
    } else if (m == SL2Matrix{2, 1, 1, 1}) {
        for (Complex tau : {Complex(-0.45, 0.9), Complex(-0.5, 1.0), Complex(-0.55, 0.85), Complex(-0.4, 1.1),
                            Complex(-0.5, 1.2)})
            out.emplace_back(tau, Complex(-0.3, 0.2));
    } else {
        // generic gamma: scan for strip-valid points around tau_for_gamma
        const Complex tau = tau_for_gamma(m);
        for (double t = 0.15; t <= 0.85 && int(out.size()) < count; t += 0.1)
            for (double s = -0.6; s <= 0.6 && int(out.size()) < count; s += 0.05) {
                const Complex z = Complex(s, t * tau.imag());
                EvalPoint p(tau, z);
                if (valid(p)) out.push_back(p);
            }
    }
    std::vector<EvalPoint> checked;
    for (const auto& p : out)
        if (valid(p)) checked.push_back(p);
    if (int(checked.size()) > count) checked.erase(checked.begin() + count, checked.end());
    return checked;
}

/* Mode count for the P_k sums at p: enough that the geometric tails on both
 * the point and its gamma image drop below eps. */
inline int pk_modes_for(const SL2Matrix& m, const EvalPoint& p, double eps = 1e-20)
{
    const Complex gt = m.act(p.tau);
    const Complex zi = p.z / m.cz_d(p.tau);
    const double g1 = std::min(p.z.imag(), p.tau.imag() - p.z.imag());
    const double g2 = std::min(zi.imag(), gt.imag() - zi.imag());
    const double gap = std::min(g1, g2);
    if (!(gap > 0)) return kDefaultPkModes;
    return std::max(kDefaultPkModes, int(-std::log(eps) / (2.0 * pi * gap)) + 8);
}

/* Ordered point configurations for the n-point recursion checks, inside
 * 0 < Im z_1 < ... < Im x < Im tau with comfortable gaps. */
struct NPointConfig {
    Complex tau;
    std::vector<Complex> zs;
    Complex x;
};

inline std::vector<NPointConfig> prop1_sample_configs(int n)
{
    if (n == 1)
        return {{Complex(0, 1.2), {Complex(0, 0.2)}, Complex(0, 0.6)},
                {Complex(0.1, 1.25), {Complex(0.03, 0.22)}, Complex(0.01, 0.64)},
                {Complex(0, 1.15), {Complex(0.02, 0.18)}, Complex(0, 0.62)}};
    return {{Complex(0, 1.3), {Complex(0, 0.15), Complex(0, 0.47)}, Complex(0, 0.85)},
            {Complex(0.1, 1.35), {Complex(0.02, 0.16), Complex(0, 0.5)}, Complex(0.01, 0.88)},
            {Complex(0, 1.25), {Complex(-0.02, 0.14), Complex(0.03, 0.46)}, Complex(0, 0.8)}};
}

/* (tau, z) samples for the lattice theta identities; any upper half-plane
 * point works, these stay away from the real axis and from z = 0. */
inline std::vector<std::pair<Complex, Complex>> section4_sample_points(int count = 5)
{
    std::vector<std::pair<Complex, Complex>> out = {{Complex(0.3, 1.1), Complex(0.23, 0.11)},
                                                    {Complex(0, 1.1), Complex(0.2, 0.1)},
                                                    {Complex(-0.2, 0.9), Complex(0.15, -0.08)},
                                                    {Complex(0.1, 1.4), Complex(-0.3, 0.2)},
                                                    {Complex(0, 0.8), Complex(0.4, 0.05)}};
    if (int(out.size()) > count) out.resize(std::size_t(count));
    return out;
}

/* x insertion positions valid for both tau and the gamma image in the
 * zero-mode checks. */
inline std::optional<Complex> prop_zero_modes_x(const SL2Matrix& m, Complex tau)
{
    const Complex gt = m.act(tau);
    const Complex cd = m.cz_d(tau);
    for (double t = 0.2; t <= 0.8; t += 0.06)
        for (double s = -0.6; s <= 0.6; s += 0.06) {
            const Complex x(s, t * tau.imag());
            const Complex xi = x / cd;
            if (x.imag() > 0.1 && x.imag() < tau.imag() - 0.1 && xi.imag() > 0.1 && xi.imag() < gt.imag() - 0.1)
                return x;
        }
    return std::nullopt;
}

}  // namespace vtheta

#endif
