#ifndef VTHETA_INVOLUTIONS_HPP
#define VTHETA_INVOLUTIONS_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "vtheta/rational.hpp"

namespace vtheta {

/* An involution of {1..n}, stored as its disjoint transpositions (j, s(j))
 * with j < s(j); fixed points are everything not mentioned. */
struct Involution {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;

    std::vector<int> moved() const
    {
        std::vector<int> out;
        for (auto [a, b] : pairs) {
            out.push_back(a);
            out.push_back(b);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<int> fixed() const
    {
        std::vector<bool> hit(n + 1, false);
        for (auto [a, b] : pairs) hit[a] = hit[b] = true;
        std::vector<int> out;
        for (int i = 1; i <= n; ++i)
            if (!hit[i]) out.push_back(i);
        return out;
    }

    int apply(int i) const
    {
        for (auto [a, b] : pairs) {
            if (i == a) return b;
            if (i == b) return a;
        }
        return i;
    }
};

inline constexpr int kMaxInvolutionN = 12;

/* All of I(n), each involution exactly once.  |I(n)| follows the telephone
 * numbers 1, 2, 4, 10, 26, 76, ... */
inline std::vector<Involution> enumerate_involutions(int n)
{
    if (n < 1) throw std::invalid_argument("enumerate_involutions: n must be >= 1");
    if (n > kMaxInvolutionN) throw std::length_error("enumerate_involutions: n > 12 enumeration bound");
    std::vector<Involution> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& elems) {
        if (elems.empty()) {
            out.push_back(Involution{n, cur});
            return;
        }
        const int e = elems.front();
        std::vector<int> rest(elems.begin() + 1, elems.end());
        rec(rest);  // e fixed
        for (std::size_t i = 0; i < rest.size(); ++i) {
            std::vector<int> rest2 = rest;
            rest2.erase(rest2.begin() + i);
            cur.emplace_back(e, rest[i]);
            rec(rest2);
            cur.pop_back();
        }
    };
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    rec(all);
    return out;
}

using TranspositionWeights = std::map<std::pair<int, int>, Complex>;

/* Product of the supplied per-transposition weights over sigma's pairs. */
inline Complex involution_weight(const Involution& sigma, const TranspositionWeights& w)
{
    Complex e(1, 0);
    for (auto pr : sigma.pairs) {
        auto it = w.find(pr);
        if (it == w.end()) throw std::invalid_argument("involution_weight: missing weight for a transposition");
        e *= it->second;
    }
    return e;
}

/* The alternating decomposition identity: with |m(sigma)| = 2p,
 *   sum over ordered tuples (s_1, ..., s_t) of nonidentity involutions with
 *   pairwise disjoint moved sets and s_1 + ... + s_t = sigma of
 *   (-1)^t E_{s_1} ... E_{s_t}  =  (-1)^p E_sigma.
 * Decompositions are enumerated as ordered set partitions of sigma's
 * transpositions; identity summands are excluded (they would make the sum
 * infinite).  Returns {lhs, rhs} for exact comparison by the caller. */
inline std::pair<Complex, Complex> lemma_c_check(const Involution& sigma, const TranspositionWeights& w)
{
    const int p = int(sigma.pairs.size());
    if (p < 1) throw std::invalid_argument("lemma_c_check: |m(sigma)| must be >= 2");
    std::vector<Complex> wv(p);
    for (int i = 0; i < p; ++i) {
        auto it = w.find(sigma.pairs[i]);
        if (it == w.end()) throw std::invalid_argument("lemma_c_check: missing weight for a transposition");
        wv[i] = it->second;
    }
    /* Unordered set partitions via restricted growth strings; each partition
     * into t blocks accounts for t! ordered tuples. */
    Complex lhs(0, 0);
    std::vector<int> rgs(p, 0);
    std::function<void(int, int)> rec = [&](int idx, int nblocks) {
        if (idx == p) {
            std::vector<Complex> eb(nblocks, Complex(1, 0));
            for (int i = 0; i < p; ++i) eb[rgs[i]] *= wv[i];
            Complex prod(1, 0);
            for (int bk = 0; bk < nblocks; ++bk) prod *= eb[bk];
            double orderings = 1.0;
            for (int f = 2; f <= nblocks; ++f) orderings *= f;
            lhs += ((nblocks % 2 == 0) ? 1.0 : -1.0) * orderings * prod;
            return;
        }
        for (int bk = 0; bk <= nblocks; ++bk) {
            rgs[idx] = bk;
            rec(idx + 1, std::max(nblocks, bk + 1));
        }
    };
    rec(0, 0);
    const Complex rhs = ((p % 2 == 0) ? 1.0 : -1.0) * involution_weight(sigma, w);
    return {lhs, rhs};
}

/* One conjugacy-style class of I(s + t) under the split {1..s} | {s+1..n}:
 * p pairs inside the first block, q inside the second, r crossing pairs,
 * m1 and m2 fixed points on each side. */
struct InvolutionClassCount {
    int p = 0, q = 0, r = 0, m1 = 0, m2 = 0;
    std::uint64_t enumerated = 0;
    std::uint64_t formula = 0;
};

inline std::uint64_t u64_factorial(int n)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= std::uint64_t(i);
    return f;
}

/* Classifies all of I(s+t) and compares each class count against the closed
 * formula (2p+r+m1)! (2q+r+m2)! / (m1! m2! r! p! q! 2^{p+q}). */
inline std::vector<InvolutionClassCount> count_partition_check(int s, int t)
{
    if (s < 0 || t < 0 || s + t < 1) throw std::invalid_argument("count_partition_check: need s, t >= 0, s + t >= 1");
    if (s + t > 10) throw std::length_error("count_partition_check: s + t > 10 enumeration bound");
    const int n = s + t;
    std::map<std::tuple<int, int, int, int, int>, std::uint64_t> classes;
    for (const Involution& sig : enumerate_involutions(n)) {
        int p = 0, q = 0, r = 0;
        for (auto [a, b] : sig.pairs) {
            if (b <= s) ++p;
            else if (a > s) ++q;
            else ++r;
        }
        int m1 = 0, m2 = 0;
        for (int f : sig.fixed()) (f <= s ? m1 : m2)++;
        classes[{p, q, r, m1, m2}]++;
    }
    std::vector<InvolutionClassCount> out;
    for (const auto& [key, cnt] : classes) {
        auto [p, q, r, m1, m2] = key;
        InvolutionClassCount c;
        c.p = p;
        c.q = q;
        c.r = r;
        c.m1 = m1;
        c.m2 = m2;
        c.enumerated = cnt;
        c.formula = u64_factorial(2 * p + r + m1) * u64_factorial(2 * q + r + m2) /
                    (u64_factorial(m1) * u64_factorial(m2) * u64_factorial(r) * u64_factorial(p) *
                     u64_factorial(q) * (std::uint64_t(1) << (p + q)));
        out.push_back(c);
    }
    return out;
}

}  // namespace vtheta

#endif
