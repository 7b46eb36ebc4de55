#ifndef VTHETA_SL2_HPP
#define VTHETA_SL2_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vtheta {

struct SL2Matrix {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }

    SL2Matrix operator*(const SL2Matrix& o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    bool operator==(const SL2Matrix& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    std::complex<double> act(std::complex<double> tau) const
    {
        return (double(a) * tau + double(b)) / (double(c) * tau + double(d));
    }

    std::complex<double> cz_d(std::complex<double> tau) const { return double(c) * tau + double(d); }

    std::string str() const
    {
        std::ostringstream os;
        os << a << "," << b << "," << c << "," << d;
        return os.str();
    }
};

inline const SL2Matrix kIdentity{1, 0, 0, 1};
inline const SL2Matrix kS{0, -1, 1, 0};
inline const SL2Matrix kT{1, 1, 0, 1};
inline const SL2Matrix kTinv{1, -1, 0, 1};

enum class Gen : std::uint8_t { S, T, Tinv };

inline SL2Matrix gen_matrix(Gen g)
{
    switch (g) {
        case Gen::S: return kS;
        case Gen::T: return kT;
        default: return kTinv;
    }
}

/* A matrix together with a word over {S, T, T^{-1}} whose ordinary matrix
 * product (leftmost generator acting last on tau) reproduces it exactly.
 * -I is rendered as S^2, and sign_absorbed records when that happened. */
struct SL2Word {
    SL2Matrix matrix;
    std::vector<Gen> word;
    bool sign_absorbed = false;

    std::string word_str() const
    {
        std::string out;
        for (Gen g : word) {
            if (!out.empty()) out += ' ';
            out += (g == Gen::S ? "S" : (g == Gen::T ? "T" : "T^-1"));
        }
        return out.empty() ? "1" : out;
    }
};

inline SL2Matrix word_matrix(const std::vector<Gen>& word)
{
    SL2Matrix m = kIdentity;
    for (Gen g : word) m = m * gen_matrix(g);
    return m;
}

/* Euclidean reduction on the bottom row: while c != 0 split off T^n S with
 * n = round(a/c), then absorb the remaining +-T^b.  The emitted word
 * reproduces the input matrix exactly. */
inline SL2Word decompose(const SL2Matrix& m_in)
{
    if (m_in.det() != 1) throw std::invalid_argument("decompose: determinant must be 1");
    SL2Word out;
    out.matrix = m_in;
    long long a = m_in.a, b = m_in.b, c = m_in.c, d = m_in.d;
    auto push_T = [&](long long n) {
        for (long long i = 0; i < n; ++i) out.word.push_back(Gen::T);
        for (long long i = 0; i > n; --i) out.word.push_back(Gen::Tinv);
    };
    while (c != 0) {
        const long long n = std::llround(double(a) / double(c));
        // a,b,c,d <- S^{-1} T^{-n} (a,b;c,d) = (c, d; -(a-nc), -(b-nd))
        const long long a1 = a - n * c, b1 = b - n * d;
        push_T(n);
        out.word.push_back(Gen::S);
        a = c;
        b = d;
        c = -a1;
        d = -b1;
    }
    if (a == 1) {
        push_T(b);
    } else {
        // (a,d) = (-1,-1): remainder is -T^{-b}, and -I = S^2
        out.word.push_back(Gen::S);
        out.word.push_back(Gen::S);
        push_T(-b);
        out.sign_absorbed = true;
    }
    if (!(word_matrix(out.word) == m_in)) throw std::logic_error("decompose: reconstruction failed");
    return out;
}

inline SL2Word word_of(const std::vector<Gen>& gens)
{
    SL2Word w;
    w.word = gens;
    w.matrix = word_matrix(gens);
    return w;
}

}  // namespace vtheta

#endif
