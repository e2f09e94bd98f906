#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "weights.hpp"

namespace branchkit {

struct ColoredRoot {
    Weight v;
    bool compact = true;
};

class RootSystem {
public:
    std::string name;
    Basis basis;
    std::vector<ColoredRoot> roots;

    RootSystem() = default;
    RootSystem(std::string nm, Basis b, std::vector<ColoredRoot> rs, bool validate_now = true)
        : name(std::move(nm)), basis(std::move(b)), roots(std::move(rs))
    {
        std::sort(roots.begin(), roots.end(), [](const ColoredRoot& a, const ColoredRoot& b) { return a.v < b.v; });
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [](const ColoredRoot& a, const ColoredRoot& b) { return a.v == b.v; }),
                    roots.end());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            roots[i].v.basis = basis;
            index_[roots[i].v] = static_cast<int>(i);
        }
        if (validate_now)
            validate();
    }

    int size() const { return static_cast<int>(roots.size()); }

    int index_of(const Weight& v) const
    {
        auto it = index_.find(v);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(const Weight& v) const { return index_of(v) >= 0; }
    bool is_compact(const Weight& v) const
    {
        int i = index_of(v);
        check(i >= 0, "not a root: " + to_text(v));
        return roots[static_cast<std::size_t>(i)].compact;
    }

    std::vector<Weight> vectors() const
    {
        std::vector<Weight> out;
        for (const auto& r : roots)
            out.push_back(r.v);
        return out;
    }

    std::vector<Weight> compact_vectors() const
    {
        std::vector<Weight> out;
        for (const auto& r : roots)
            if (r.compact)
                out.push_back(r.v);
        return out;
    }

    void validate() const
    {
        for (const auto& r : roots) {
            if (r.v.is_zero())
                fail(ErrorKind::consistency, name + ": zero root");
            int j = index_of(-r.v);
            if (j < 0)
                fail(ErrorKind::consistency, name + ": not closed under negation at " + to_text(r.v));
            if (roots[static_cast<std::size_t>(j)].compact != r.compact)
                fail(ErrorKind::consistency, name + ": color of " + to_text(r.v) + " differs from its negative");
        }
        for (const auto& a : roots) {
            Rat aa = inner(a.v, a.v);
            for (const auto& b : roots) {
                Rat c = 2 * inner(b.v, a.v) / aa;
                if (denominator(c) != 1)
                    fail(ErrorKind::consistency, name + ": non-integral Cartan integer");
                if (!contains(b.v - a.v * c))
                    fail(ErrorKind::consistency, name + ": reflection does not permute roots");
            }
        }
    }

private:
    std::map<Weight, int> index_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

struct PositiveSystem {
    RootSystemPtr system;
    std::string name;
    std::vector<ColoredRoot> positives;
    std::vector<ColoredRoot> simple_roots;
    Weight rho, rho_c, rho_n;

    std::vector<Weight> positive_vectors(std::optional<bool> compact = std::nullopt) const
    {
        std::vector<Weight> out;
        for (const auto& r : positives)
            if (!compact || r.compact == *compact)
                out.push_back(r.v);
        return out;
    }
    std::vector<Weight> simple_vectors(std::optional<bool> compact = std::nullopt) const
    {
        std::vector<Weight> out;
        for (const auto& r : simple_roots)
            if (!compact || r.compact == *compact)
                out.push_back(r.v);
        return out;
    }
    bool is_positive(const Weight& v) const
    {
        for (const auto& r : positives)
            if (r.v == v)
                return true;
        return false;
    }
    // same positive set, regardless of name
    bool same_roots(const PositiveSystem& o) const
    {
        if (positives.size() != o.positives.size())
            return false;
        std::set<Weight> a, b;
        for (const auto& r : positives)
            a.insert(r.v);
        for (const auto& r : o.positives)
            b.insert(r.v);
        return a == b;
    }
};

inline PositiveSystem make_positive_system(RootSystemPtr sys, std::vector<ColoredRoot> pos, std::string name)
{
    PositiveSystem ps;
    ps.system = sys;
    ps.name = std::move(name);
    std::sort(pos.begin(), pos.end(), [](const ColoredRoot& a, const ColoredRoot& b) { return a.v < b.v; });
    ps.positives = std::move(pos);
    check(2 * ps.positives.size() == sys->roots.size(), sys->name + ": positive system has wrong size");
    std::set<Weight> posset;
    for (const auto& r : ps.positives)
        posset.insert(r.v);
    for (const auto& r : ps.positives)
        check(!posset.count(-r.v), sys->name + ": positive system contains a root and its negative");
    for (const auto& r : ps.positives) {
        bool decomposable = false;
        for (const auto& s : ps.positives) {
            if (s.v == r.v)
                continue;
            if (posset.count(r.v - s.v)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable)
            ps.simple_roots.push_back(r);
    }
    ps.rho = Weight(sys->basis);
    ps.rho_c = Weight(sys->basis);
    ps.rho_n = Weight(sys->basis);
    for (const auto& r : ps.positives) {
        ps.rho += r.v * Rat(1, 2);
        if (r.compact)
            ps.rho_c += r.v * Rat(1, 2);
        else
            ps.rho_n += r.v * Rat(1, 2);
    }
    check(ps.rho == ps.rho_c + ps.rho_n, "rho != rho_c + rho_n");
    return ps;
}

// roots pairing positively with a functional; the functional must be regular
inline PositiveSystem positive_system_from(RootSystemPtr sys, const Weight& functional, std::string name)
{
    std::vector<ColoredRoot> pos;
    for (const auto& r : sys->roots) {
        Rat p = inner(functional, r.v);
        if (p == 0)
            fail(ErrorKind::singular, to_text(functional) + " is orthogonal to root " + to_text(r.v));
        if (p > 0)
            pos.push_back(r);
    }
    return make_positive_system(sys, std::move(pos), std::move(name));
}

inline PositiveSystem chamber_system(const Weight& lam, RootSystemPtr sys)
{
    return positive_system_from(sys, lam, "Psi_lambda");
}

inline std::tuple<Weight, Weight, Weight> rho_vectors(const PositiveSystem& psi)
{
    return {psi.rho, psi.rho_c, psi.rho_n};
}

inline bool is_dominant(const Weight& lam, const std::vector<Weight>& positives, bool strict)
{
    for (const auto& a : positives) {
        Rat p = inner(lam, a);
        if (p < 0 || (strict && p == 0))
            return false;
    }
    return true;
}

inline bool is_dominant(const Weight& lam, const PositiveSystem& psi, bool strict)
{
    return is_dominant(lam, psi.positive_vectors(), strict);
}

// ---- subsystem structure ----

inline int rank_of(const std::vector<Weight>& vs)
{
    if (vs.empty())
        return 0;
    const int r = vs[0].size();
    std::vector<std::vector<Rat>> m;
    for (const auto& v : vs)
        m.push_back(v.c);
    int row = 0;
    for (int col = 0; col < r && row < static_cast<int>(m.size()); ++col) {
        std::size_t p = static_cast<std::size_t>(row);
        while (p < m.size() && m[p][col] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) == row || m[i][col] == 0)
                continue;
            Rat f = m[i][col] / m[row][col];
            for (int j = col; j < r; ++j)
                m[i][j] -= f * m[row][j];
        }
        ++row;
    }
    return row;
}

inline Weight reflect(const Weight& v, const Weight& a)
{
    return v - a * (2 * inner(v, a) / inner(a, a));
}

// closure of a set of roots under the reflections they generate
inline std::vector<Weight> reflection_closure(const std::vector<Weight>& gens)
{
    std::set<Weight> seen;
    std::vector<Weight> queue;
    for (const auto& g : gens) {
        for (const auto& x : {g, -g})
            if (seen.insert(x).second)
                queue.push_back(x);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& g : gens) {
            Weight w = reflect(queue[i], g);
            if (seen.insert(w).second)
                queue.push_back(w);
        }
    }
    return {seen.begin(), seen.end()};
}

// connected components under non-orthogonality
inline std::vector<std::vector<Weight>> irreducible_components(const std::vector<Weight>& roots)
{
    const std::size_t n = roots.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            auto i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j)
                if (comp[j] < 0 && inner(roots[i], roots[j]) != 0) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
        }
        ++ncomp;
    }
    std::vector<std::vector<Weight>> out(static_cast<std::size_t>(ncomp));
    for (std::size_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(comp[i])].push_back(roots[i]);
    return out;
}

struct ComponentType {
    char series = 'A';
    int rank = 0;
    std::string text() const { return std::string(1, series) + std::to_string(rank); }
};

inline ComponentType classify_component(const std::vector<Weight>& comp)
{
    const int r = rank_of(comp);
    const long n = static_cast<long>(comp.size());
    std::set<Rat> lengths;
    for (const auto& a : comp)
        lengths.insert(inner(a, a));
    if (lengths.size() == 1) {
        if (n == static_cast<long>(r) * (r + 1))
            return {'A', r};
        if (r >= 4 && n == 2L * r * (r - 1))
            return {'D', r};
        if (r == 6 && n == 72)
            return {'E', 6};
        if (r == 7 && n == 126)
            return {'E', 7};
        if (r == 8 && n == 240)
            return {'E', 8};
    } else if (lengths.size() == 2) {
        if (n == 2L * r * r) {
            // B has more long roots than short ones for r > 2; C the opposite
            Rat big = *lengths.rbegin();
            long nlong = std::count_if(comp.begin(), comp.end(), [&](const Weight& a) { return inner(a, a) == big; });
            return {nlong > n / 2 || r == 2 ? 'B' : 'C', r};
        }
        if (r == 4 && n == 48)
            return {'F', 4};
        if (r == 2 && n == 12)
            return {'G', 2};
    }
    fail(ErrorKind::consistency, "unrecognized root system component with rank " + std::to_string(r) + " and " +
                                     std::to_string(n) + " roots");
}

inline double weyl_order_estimate(const ComponentType& t)
{
    auto fact = [](int k) {
        double f = 1;
        for (int i = 2; i <= k; ++i)
            f *= i;
        return f;
    };
    switch (t.series) {
    case 'A': return fact(t.rank + 1);
    case 'B':
    case 'C': return std::ldexp(fact(t.rank), t.rank);
    case 'D': return std::ldexp(fact(t.rank), t.rank - 1);
    case 'E': return t.rank == 6 ? 51840.0 : t.rank == 7 ? 2903040.0 : 696729600.0;
    case 'F': return 1152.0;
    case 'G': return 12.0;
    }
    return 0;
}

inline std::string type_text(const std::vector<Weight>& roots)
{
    if (roots.empty())
        return "0";
    std::vector<std::string> parts;
    for (const auto& c : irreducible_components(roots))
        parts.push_back(classify_component(c).text());
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts)
        s += (s.empty() ? "" : "+") + p;
    return s;
}

// ---- Weyl groups ----

inline constexpr std::size_t default_weyl_ceiling = 1000000;

class WeylGroup {
public:
    WeylGroup() = default;

    // generated by the reflections in `gens`; elements stored in length-lexicographic order
    WeylGroup(const Basis& basis, std::vector<Weight> gens, std::size_t ceiling = default_weyl_ceiling)
        : basis_(basis), gens_(std::move(gens))
    {
        rank_ = basis.rank();
        auto closure = reflection_closure(gens_);
        double order = 1;
        for (const auto& c : irreducible_components(closure))
            order *= weyl_order_estimate(classify_component(c));
        expected_ = static_cast<std::size_t>(order);
        if (order > static_cast<double>(ceiling))
            fail(ErrorKind::ceiling, "Weyl group of type " + type_text(closure) + " has order " +
                                         std::to_string(static_cast<long long>(order)) + " > " +
                                         std::to_string(ceiling));
        build(closure);
    }

    std::size_t size() const { return sign_.size(); }
    int sign(std::size_t i) const { return sign_[i]; }
    int length(std::size_t i) const { return length_[i]; }
    std::size_t expected_order() const { return expected_; }
    const std::vector<Weight>& generators() const { return gens_; }
    const Basis& basis() const { return basis_; }
    std::int64_t denominator() const { return D_; }

    Weight apply(std::size_t i, const Weight& v) const
    {
        Weight out(v.basis);
        const std::int32_t* m = &mat_[i * static_cast<std::size_t>(rank_ * rank_)];
        for (int r = 0; r < rank_; ++r) {
            Rat s = 0;
            for (int c = 0; c < rank_; ++c)
                if (m[r * rank_ + c] != 0)
                    s += v[c] * m[r * rank_ + c];
            out[r] = s / D_;
        }
        return out;
    }

    // v is an integer vector on some scaled lattice; result on the same lattice
    IVec apply(std::size_t i, const IVec& v) const
    {
        IVec out(static_cast<std::size_t>(rank_));
        const std::int32_t* m = &mat_[i * static_cast<std::size_t>(rank_ * rank_)];
        for (int r = 0; r < rank_; ++r) {
            std::int64_t s = 0;
            for (int c = 0; c < rank_; ++c)
                s += static_cast<std::int64_t>(m[r * rank_ + c]) * v[static_cast<std::size_t>(c)];
            if (s % D_ != 0)
                fail(ErrorKind::consistency, "Weyl image leaves the scaled lattice");
            out[static_cast<std::size_t>(r)] = s / D_;
        }
        return out;
    }

    // index of the element w with w·regular() = image, if any
    std::optional<std::size_t> find(const Weight& image_of_regular) const
    {
        IVec key;
        for (const auto& x : image_of_regular.c) {
            Rat y = x * Dr_;
            if (boost::multiprecision::denominator(y) != 1)
                return std::nullopt;
            key.push_back(to_i64(boost::multiprecision::numerator(y)));
        }
        auto it = index_.find(key);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }
    const Weight& regular() const { return regular_; }

private:
    Basis basis_;
    std::vector<Weight> gens_;
    int rank_ = 0;
    std::int64_t D_ = 1;
    std::size_t expected_ = 1;
    std::vector<std::int32_t> mat_;
    std::vector<std::int8_t> sign_;
    std::vector<std::int32_t> length_;
    std::unordered_map<IVec, std::size_t, IVecHash> index_;
    Weight regular_;
    IVec regular_scaled_;
    std::int64_t Dr_ = 1;

    void build(const std::vector<Weight>& closure)
    {
        // generic functional, then 2ρ of the resulting positive system is regular for the closure
        Weight f(basis_);
        for (int tries = 0;; ++tries) {
            for (int i = 0; i < rank_; ++i)
                f[i] = Rat(1, (i + 2 + tries) * (i + 3) * (i + 5 + 2 * tries));
            bool ok = true;
            for (const auto& a : closure)
                if (inner(f, a) == 0)
                    ok = false;
            if (ok)
                break;
            check(tries < 50, "no generic functional found");
        }
        regular_ = Weight(basis_);
        for (const auto& a : closure)
            if (inner(f, a) > 0)
                regular_ += a;
        Dr_ = common_denominator({regular_});
        regular_scaled_ = scaled(regular_, Dr_);

        // generator reflection matrices as exact rationals
        std::vector<std::vector<Rat>> refl;
        BigInt d = 1;
        for (const auto& a : gens_) {
            std::vector<Rat> m(static_cast<std::size_t>(rank_ * rank_));
            Rat aa = inner(a, a);
            for (int r = 0; r < rank_; ++r)
                for (int c = 0; c < rank_; ++c) {
                    m[r * rank_ + c] = (r == c ? Rat(1) : Rat(0)) - 2 * a[r] * a[c] / aa;
                    d = lcm_big(d, boost::multiprecision::denominator(m[r * rank_ + c]));
                }
            refl.push_back(std::move(m));
        }
        for (int attempt = 0; attempt < 4; ++attempt) {
            D_ = to_i64(d);
            if (try_build(refl))
                return;
            d *= d;
        }
        fail(ErrorKind::consistency, "Weyl group matrices do not fit a bounded denominator");
    }

    bool try_build(const std::vector<std::vector<Rat>>& refl)
    {
        const std::size_t rr = static_cast<std::size_t>(rank_ * rank_);
        mat_.clear();
        sign_.clear();
        length_.clear();
        index_.clear();
        std::vector<std::vector<std::int64_t>> gi;
        for (const auto& m : refl) {
            std::vector<std::int64_t> g(rr);
            for (std::size_t k = 0; k < rr; ++k) {
                Rat s = m[k] * D_;
                if (boost::multiprecision::denominator(s) != 1)
                    return false;
                g[k] = to_i64(boost::multiprecision::numerator(s));
            }
            gi.push_back(std::move(g));
        }
        // identity
        for (int r = 0; r < rank_; ++r)
            for (int c = 0; c < rank_; ++c)
                mat_.push_back(r == c ? static_cast<std::int32_t>(D_) : 0);
        sign_.push_back(1);
        length_.push_back(0);
        index_[regular_scaled_] = 0;
        std::vector<std::int64_t> prod(rr);
        for (std::size_t i = 0; i < sign_.size(); ++i) {
            for (std::size_t g = 0; g < gi.size(); ++g) {
                // child = s_g * element_i
                for (int r = 0; r < rank_; ++r)
                    for (int c = 0; c < rank_; ++c) {
                        std::int64_t s = 0;
                        for (int k = 0; k < rank_; ++k)
                            s += gi[g][r * rank_ + k] * static_cast<std::int64_t>(mat_[i * rr + k * rank_ + c]);
                        if (s % D_ != 0)
                            return false;
                        prod[r * rank_ + c] = s / D_;
                    }
                IVec img(static_cast<std::size_t>(rank_));
                for (int r = 0; r < rank_; ++r) {
                    std::int64_t acc = 0;
                    for (int c = 0; c < rank_; ++c)
                        acc += prod[r * rank_ + c] * regular_scaled_[static_cast<std::size_t>(c)];
                    if (acc % D_ != 0)
                        return false;
                    img[static_cast<std::size_t>(r)] = acc / D_;
                }
                if (index_.count(img))
                    continue;
                if (sign_.size() >= expected_)
                    fail(ErrorKind::consistency, "Weyl group larger than its order formula");
                index_[img] = sign_.size();
                for (auto x : prod)
                    mat_.push_back(static_cast<std::int32_t>(x));
                sign_.push_back(static_cast<std::int8_t>(-sign_[i]));
                length_.push_back(length_[i] + 1);
            }
        }
        check(sign_.size() == expected_, "Weyl group order " + std::to_string(sign_.size()) +
                                             " differs from the order formula " + std::to_string(expected_));
        return true;
    }
};

inline WeylGroup weyl_group_of(const std::vector<Weight>& simple, const Basis& b,
                               std::size_t ceiling = default_weyl_ceiling)
{
    return WeylGroup(b, simple, ceiling);
}

// reflections in the compact simple roots
inline WeylGroup w_u_subgroup(const PositiveSystem& psi, std::size_t ceiling = default_weyl_ceiling)
{
    return WeylGroup(psi.system->basis, psi.simple_vectors(true), ceiling);
}

// compact Weyl group, generated by the simple roots of Ψ ∩ Φ_c
inline std::vector<Weight> simple_roots_of(const std::vector<Weight>& positives)
{
    std::set<Weight> posset(positives.begin(), positives.end());
    std::vector<Weight> out;
    for (const auto& r : positives) {
        bool dec = false;
        for (const auto& s : positives)
            if (s != r && posset.count(r - s)) {
                dec = true;
                break;
            }
        if (!dec)
            out.push_back(r);
    }
    return out;
}

inline WeylGroup compact_weyl_group(const PositiveSystem& psi, std::size_t ceiling = default_weyl_ceiling)
{
    return WeylGroup(psi.system->basis, simple_roots_of(psi.positive_vectors(true)), ceiling);
}

// coordinates of v in the basis `simple` (must lie in their span)
inline std::vector<Rat> simple_coordinates(const Weight& v, const std::vector<Weight>& simple)
{
    const int n = static_cast<int>(simple.size());
    // Gram system: G x = (v, α_j)
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n + 1)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            m[i][j] = inner(simple[i], simple[j]);
        m[i][n] = inner(v, simple[i]);
    }
    for (int col = 0; col < n; ++col) {
        int p = col;
        while (p < n && m[p][col] == 0)
            ++p;
        check(p < n, "simple roots are dependent");
        std::swap(m[p], m[col]);
        for (int i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0)
                continue;
            Rat f = m[i][col] / m[col][col];
            for (int j = col; j <= n; ++j)
                m[i][j] -= f * m[col][j];
        }
    }
    std::vector<Rat> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        x[i] = m[i][n] / m[i][i];
    return x;
}

// highest root of the irreducible component containing `simple_root`
inline Weight highest_root_of_component(const PositiveSystem& psi, const Weight& simple_root)
{
    std::vector<Weight> comp_simple;
    for (const auto& c : irreducible_components(psi.simple_vectors()))
        if (std::find(c.begin(), c.end(), simple_root) != c.end())
            comp_simple = c;
    check(!comp_simple.empty(), "root is not simple");
    Weight best;
    Rat best_h = -1;
    for (const auto& r : psi.positives) {
        auto x = simple_coordinates(r.v, comp_simple);
        Weight back(r.v.basis);
        Rat h = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            back += comp_simple[i] * x[i];
            h += x[i];
        }
        if (back != r.v)
            continue;
        if (h > best_h) {
            best_h = h;
            best = r.v;
        }
    }
    return best;
}

inline Rat highest_root_coefficient(const PositiveSystem& psi, const Weight& simple_root)
{
    std::vector<Weight> comp_simple;
    for (const auto& c : irreducible_components(psi.simple_vectors()))
        if (std::find(c.begin(), c.end(), simple_root) != c.end())
            comp_simple = c;
    auto x = simple_coordinates(highest_root_of_component(psi, simple_root), comp_simple);
    for (std::size_t i = 0; i < comp_simple.size(); ++i)
        if (comp_simple[i] == simple_root)
            return x[i];
    return 0;
}

// exactly one noncompact simple root
inline bool is_borel_de_siebenthal(const PositiveSystem& psi)
{
    return psi.simple_vectors(false).size() == 1;
}

// coefficient of the noncompact simple root in its highest root, 0 when not Borel–de Siebenthal
inline int bds_coefficient(const PositiveSystem& psi)
{
    auto nc = psi.simple_vectors(false);
    if (nc.size() != 1)
        return 0;
    Rat c = highest_root_coefficient(psi, nc[0]);
    return static_cast<int>(boost::multiprecision::numerator(c));
}

// dominant conjugate by simple reflections; returns (conjugate, sign of the word, singular?)
inline std::tuple<Weight, int, bool> dominant_conjugate(Weight v, const std::vector<Weight>& simple)
{
    int sgn = 1;
    bool moved = true;
    while (moved) {
        moved = false;
        for (const auto& a : simple) {
            Rat p = inner(v, a);
            if (p < 0) {
                v = reflect(v, a);
                sgn = -sgn;
                moved = true;
            }
        }
    }
    bool singular = false;
    for (const auto& a : simple)
        if (inner(v, a) == 0)
            singular = true;
    return {v, sgn, singular};
}

// support of the irreducible representation with highest weight hw (dominant integral
// for `positives`): all μ with dominant conjugate ≼ hw
inline std::vector<Weight> weight_support(const Weight& hw, const std::vector<Weight>& positives)
{
    auto simple = simple_roots_of(positives);
    std::set<Weight> seen{hw};
    std::vector<Weight> queue{hw};
    auto below = [&](const Weight& mu) {
        auto [d, s, sing] = dominant_conjugate(mu, simple);
        (void)s;
        (void)sing;
        if (simple.empty())
            return d == hw;
        Weight diff = hw - d;
        auto x = simple_coordinates(diff, simple);
        Weight back(hw.basis);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < 0 || boost::multiprecision::denominator(x[i]) != 1)
                return false;
            back += simple[i] * x[i];
        }
        return back == diff;
    };
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& a : simple) {
            Weight nu = queue[i] - a;
            if (seen.count(nu))
                continue;
            if (below(nu)) {
                seen.insert(nu);
                queue.push_back(nu);
            }
        }
    return {seen.begin(), seen.end()};
}

}
