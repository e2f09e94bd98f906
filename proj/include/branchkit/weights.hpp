#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace branchkit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat parse_rat(const std::string& s0)
{
    std::string s;
    for (char ch : s0)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        fail(ErrorKind::parse, "empty number");
    auto is_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-')
        fail(ErrorKind::parse, "bad number '" + s0 + "'");
    if (num[0] == '+')
        num = num.substr(1);
    if (den[0] == '+')
        den = den.substr(1);
    BigInt d(den);
    if (d == 0)
        fail(ErrorKind::parse, "zero denominator in '" + s0 + "'");
    return Rat(BigInt(num), d);
}

inline std::string format_rat(const Rat& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << '/' << denominator(r);
    return os.str();
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b)
{
    if (a == 0 || b == 0)
        return a == 0 ? b : a;
    return boost::multiprecision::lcm(a, b);
}

// Coordinates ε_1..ε_m followed by δ_1..δ_n, orthonormal.
struct Basis {
    int eps = 0;
    int delta = 0;
    std::string label;

    int rank() const { return eps + delta; }
    bool same_shape(const Basis& o) const { return eps == o.eps && delta == o.delta; }
};

class Weight {
public:
    Basis basis;
    std::vector<Rat> c;

    Weight() = default;
    explicit Weight(const Basis& b) : basis(b), c(static_cast<std::size_t>(b.rank())) {}
    Weight(const Basis& b, std::vector<Rat> v) : basis(b), c(std::move(v))
    {
        if (static_cast<int>(c.size()) != b.rank())
            fail(ErrorKind::basis_mismatch, "coordinate count does not match basis rank");
    }

    static Weight unit(const Basis& b, int i, const Rat& s = 1)
    {
        Weight w(b);
        w.c.at(static_cast<std::size_t>(i)) = s;
        return w;
    }

    int size() const { return static_cast<int>(c.size()); }
    const Rat& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    Rat& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    bool is_zero() const
    {
        return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
    }

    Weight& operator+=(const Weight& o)
    {
        same(o);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += o.c[i];
        return *this;
    }
    Weight& operator-=(const Weight& o)
    {
        same(o);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] -= o.c[i];
        return *this;
    }
    Weight& operator*=(const Rat& s)
    {
        for (auto& x : c)
            x *= s;
        return *this;
    }

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(Weight a, const Rat& s) { return a *= s; }
    friend Weight operator*(const Rat& s, Weight a) { return a *= s; }
    friend Weight operator-(Weight a)
    {
        for (auto& x : a.c)
            x = -x;
        return a;
    }

    friend bool operator==(const Weight& a, const Weight& b)
    {
        return a.basis.same_shape(b.basis) && a.c == b.c;
    }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b)
    {
        if (a.c.size() != b.c.size())
            return a.c.size() < b.c.size();
        return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
    }

    void same(const Weight& o) const
    {
        if (!basis.same_shape(o.basis))
            fail(ErrorKind::basis_mismatch,
                 "basis (" + std::to_string(basis.eps) + "|" + std::to_string(basis.delta) + ") vs (" +
                     std::to_string(o.basis.eps) + "|" + std::to_string(o.basis.delta) + ")");
    }
};

inline Rat inner(const Weight& a, const Weight& b)
{
    a.same(b);
    Rat s = 0;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        s += a.c[i] * b.c[i];
    return s;
}

inline Weight zero_like(const Weight& w) { return Weight(w.basis); }

inline bool is_regular(const Weight& lam, const std::vector<Weight>& roots)
{
    for (const auto& a : roots)
        if (inner(lam, a) == 0)
            return false;
    return true;
}

// "a1,...,am | b1,...,bn"
inline std::string to_text(const Weight& w)
{
    std::string s;
    for (int i = 0; i < w.size(); ++i) {
        if (i == w.basis.eps)
            s += '|';
        else if (i > 0)
            s += ',';
        s += format_rat(w[i]);
    }
    if (w.basis.delta == 0)
        s += '|';
    return s;
}

inline Weight parse_weight(const std::string& text)
{
    auto bar = text.find('|');
    if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos)
        fail(ErrorKind::parse, "weight text needs exactly one '|': '" + text + "'");
    auto split = [](const std::string& part) {
        std::vector<Rat> out;
        std::string trimmed;
        for (char ch : part)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                trimmed += ch;
        if (trimmed.empty())
            return out;
        std::size_t start = 0;
        while (true) {
            auto comma = trimmed.find(',', start);
            out.push_back(parse_rat(trimmed.substr(start, comma - start)));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return out;
    };
    auto a = split(text.substr(0, bar));
    auto b = split(text.substr(bar + 1));
    Basis basis{static_cast<int>(a.size()), static_cast<int>(b.size()), ""};
    a.insert(a.end(), b.begin(), b.end());
    return Weight(basis, a);
}

inline Weight parse_weight(const std::string& text, const Basis& basis)
{
    Weight w = parse_weight(text);
    if (!w.basis.same_shape(basis))
        fail(ErrorKind::basis_mismatch, "'" + text + "' does not have shape (" + std::to_string(basis.eps) +
                                            "|" + std::to_string(basis.delta) + ")");
    w.basis = basis;
    return w;
}

// ---- integer images for the kernels ----

using IVec = std::vector<std::int64_t>;

struct IVecHash {
    std::size_t operator()(const IVec& v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::int64_t to_i64(const BigInt& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        fail(ErrorKind::invalid_input, "coordinate does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

inline BigInt denominator_lcm(const Weight& w)
{
    BigInt d = 1;
    for (const auto& x : w.c)
        d = lcm_big(d, denominator(x));
    return d;
}

inline std::int64_t common_denominator(const std::vector<Weight>& ws)
{
    BigInt d = 1;
    for (const auto& w : ws)
        d = lcm_big(d, denominator_lcm(w));
    return to_i64(d);
}

inline IVec scaled(const Weight& w, std::int64_t D)
{
    IVec out(w.c.size());
    for (std::size_t i = 0; i < w.c.size(); ++i) {
        Rat s = w.c[i] * D;
        if (denominator(s) != 1)
            fail(ErrorKind::consistency, "weight " + to_text(w) + " is not on the scaled lattice 1/" +
                                             std::to_string(D));
        out[i] = to_i64(numerator(s));
    }
    return out;
}

inline Weight unscaled(const IVec& v, std::int64_t D, const Basis& b)
{
    Weight w(b);
    for (std::size_t i = 0; i < v.size(); ++i)
        w.c[i] = Rat(v[i], D);
    return w;
}

inline std::int64_t dot(const IVec& a, const IVec& b)
{
    __int128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += static_cast<__int128>(a[i]) * b[i];
    if (s > std::numeric_limits<std::int64_t>::max() || s < std::numeric_limits<std::int64_t>::min())
        fail(ErrorKind::invalid_input, "integer overflow in pairing");
    return static_cast<std::int64_t>(s);
}

inline IVec add(IVec a, const IVec& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

inline IVec sub(IVec a, const IVec& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

// ---- integrality ----

// Either the coroot rule 2(λ+ρ,α)/(α,α) ∈ Z over a root list, or an explicit
// affine lattice offset + Z-span(generators).
struct IntegralityLattice {
    Basis basis;
    std::vector<Weight> generators;
    Weight offset;
    std::vector<Weight> roots;
    Weight rho;
    bool coroot_rule = true;
};

inline bool in_z_span(const Weight& v, const std::vector<Weight>& gens)
{
    // v = Σ x_i g_i, x_i ∈ Z, generators assumed independent
    const int n = static_cast<int>(gens.size());
    const int r = v.size();
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(r), std::vector<Rat>(static_cast<std::size_t>(n + 1)));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j)
            m[i][j] = gens[j][i];
        m[i][n] = v[i];
    }
    int row = 0;
    std::vector<int> pivcol;
    for (int col = 0; col < n && row < r; ++col) {
        int p = row;
        while (p < r && m[p][col] == 0)
            ++p;
        if (p == r)
            continue;
        std::swap(m[p], m[row]);
        for (int i = 0; i < r; ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            Rat f = m[i][col] / m[row][col];
            for (int j = col; j <= n; ++j)
                m[i][j] -= f * m[row][j];
        }
        pivcol.push_back(col);
        ++row;
    }
    for (int i = row; i < r; ++i)
        if (m[i][n] != 0)
            return false;
    for (int i = 0; i < row; ++i) {
        Rat x = m[i][n] / m[i][pivcol[i]];
        if (denominator(x) != 1)
            return false;
    }
    return true;
}

inline bool is_integral(const Weight& lam, const IntegralityLattice& lat)
{
    if (lat.coroot_rule) {
        Weight s = lam + lat.rho;
        for (const auto& a : lat.roots) {
            Rat c = 2 * inner(s, a) / inner(a, a);
            if (denominator(c) != 1)
                return false;
        }
        return true;
    }
    return in_z_span(lam - lat.offset, lat.generators);
}

}
