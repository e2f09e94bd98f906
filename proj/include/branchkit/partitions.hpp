#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "weights.hpp"

namespace branchkit {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        fail(ErrorKind::invalid_input, "integer overflow in coefficient sum");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        fail(ErrorKind::invalid_input, "integer overflow in coefficient product");
    return r;
}

class WeightMultiset {
public:
    std::vector<std::pair<Weight, int>> items;

    WeightMultiset() = default;
    explicit WeightMultiset(const std::vector<Weight>& ws)
    {
        for (const auto& w : ws)
            add(w);
    }

    void add(const Weight& w, int reps = 1)
    {
        if (reps < 1)
            fail(ErrorKind::invalid_input, "repetitions must be positive");
        if (!items.empty())
            items.front().first.same(w);
        for (auto& [v, r] : items)
            if (v == w) {
                r += reps;
                return;
            }
        items.emplace_back(w, reps);
    }

    int size() const
    {
        int s = 0;
        for (const auto& it : items)
            s += it.second;
        return s;
    }
    bool empty() const { return items.empty(); }

    std::vector<Weight> expanded() const
    {
        std::vector<Weight> out;
        for (const auto& [w, r] : items)
            for (int i = 0; i < r; ++i)
                out.push_back(w);
        return out;
    }

    int count(const Weight& w) const
    {
        for (const auto& [v, r] : items)
            if (v == w)
                return r;
        return 0;
    }

    // A \ B; B must be contained in A
    WeightMultiset difference(const WeightMultiset& b) const
    {
        WeightMultiset out = *this;
        for (const auto& [w, r] : b.items) {
            auto it = std::find_if(out.items.begin(), out.items.end(), [&](const auto& p) { return p.first == w; });
            if (it == out.items.end() || it->second < r)
                fail(ErrorKind::invalid_input, "multiset difference: " + to_text(w) + " not contained");
            it->second -= r;
            if (it->second == 0)
                out.items.erase(it);
        }
        return out;
    }

    Weight sum(const Basis& b) const
    {
        Weight s(b);
        for (const auto& [w, r] : items)
            s += w * Rat(r);
        return s;
    }

    // canonical form, usable as a cache key
    WeightMultiset sorted() const
    {
        WeightMultiset out = *this;
        std::sort(out.items.begin(), out.items.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    friend bool operator==(const WeightMultiset& a, const WeightMultiset& b) { return a.items == b.items; }
    friend bool operator<(const WeightMultiset& a, const WeightMultiset& b)
    {
        return std::lexicographical_compare(a.items.begin(), a.items.end(), b.items.begin(), b.items.end());
    }
};

struct TruncationWindow {
    Weight functional;
    Rat bound;
};

// A functional pairing strictly positively with every element, preferring the candidates in order.
inline std::optional<Weight> acyclic_functional(const std::vector<Weight>& S, const std::vector<Weight>& candidates = {})
{
    if (S.empty())
        return candidates.empty() ? std::nullopt : std::optional<Weight>(candidates.front());
    auto ok = [&](const Weight& f) {
        for (const auto& g : S)
            if (inner(f, g) <= 0)
                return false;
        return true;
    };
    for (const auto& c : candidates)
        if (ok(c))
            return c;
    for (const auto& g : S)
        if (g.is_zero())
            return std::nullopt;
    Weight f = zero_like(S.front());
    for (int iter = 0; iter < 10000; ++iter) {
        bool clean = true;
        for (const auto& g : S)
            if (inner(f, g) <= 0) {
                f += g;
                clean = false;
            }
        if (clean)
            return f;
    }
    return std::nullopt;
}

// Kostant partition counts for a fixed multiset, memoized across targets.
class PartitionCounter {
public:
    PartitionCounter(const WeightMultiset& S, const Weight& xi) : basis_(xi.basis)
    {
        auto gens = S.expanded();
        for (const auto& g : gens)
            if (inner(xi, g) <= 0)
                fail(ErrorKind::acyclicity, "generator " + to_text(g) + " does not pair positively with " + to_text(xi));
        std::vector<Weight> all = gens;
        all.push_back(xi);
        D_ = common_denominator(all);
        Dxi_ = common_denominator({xi});
        xi_ = scaled(xi, Dxi_);
        for (const auto& g : gens) {
            gens_.push_back(scaled(g, D_));
            height_.push_back(dot(xi_, gens_.back()));
        }
        memo_.resize(gens_.size() + 1);
    }

    // number of ways target = Σ n_i γ_i, n_i ≥ 0
    std::int64_t count(const Weight& target)
    {
        IVec t;
        for (const auto& x : target.c) {
            Rat s = x * D_;
            if (boost::multiprecision::denominator(s) != 1)
                return 0;
            t.push_back(to_i64(boost::multiprecision::numerator(s)));
        }
        return rec(0, t);
    }

    std::int64_t scale() const { return D_; }

    // target given on the lattice (1/scale())ℤ^n
    std::int64_t count_scaled(const IVec& t) { return rec(0, t); }

private:
    Basis basis_;
    std::int64_t D_ = 1, Dxi_ = 1;
    IVec xi_;
    std::vector<IVec> gens_;
    std::vector<std::int64_t> height_;
    std::vector<std::unordered_map<IVec, std::int64_t, IVecHash>> memo_;

    std::int64_t rec(std::size_t i, const IVec& t)
    {
        std::int64_t h = dot(xi_, t);
        if (h < 0)
            return 0;
        if (i == gens_.size())
            return std::all_of(t.begin(), t.end(), [](std::int64_t x) { return x == 0; }) ? 1 : 0;
        if (h == 0)
            return std::all_of(t.begin(), t.end(), [](std::int64_t x) { return x == 0; }) ? 1 : 0;
        auto& m = memo_[i];
        if (auto it = m.find(t); it != m.end())
            return it->second;
        // f(i,t) = f(i+1,t) + f(i,t-γ_i)
        std::int64_t r = rec(i + 1, t);
        if (h >= height_[i])
            r = checked_add(r, rec(i, sub(t, gens_[i])));
        m.emplace(t, r);
        return r;
    }
};

inline std::int64_t kostant_partition(const WeightMultiset& S, const Weight& target,
                                      const std::optional<Weight>& xi = std::nullopt)
{
    if (S.empty())
        return target.is_zero() ? 1 : 0;
    auto f = xi ? xi : acyclic_functional(S.expanded());
    if (!f)
        fail(ErrorKind::acyclicity, "no functional is positive on the whole multiset");
    PartitionCounter pc(S, *f);
    return pc.count(target);
}

// coefficient of y_S at μ: partitions of μ − ½ΣS
inline std::int64_t shifted_partition(const WeightMultiset& S, const Weight& target,
                                      const std::optional<Weight>& xi = std::nullopt)
{
    return kostant_partition(S, target - S.sum(target.basis) * Rat(1, 2), xi);
}

class WeightDistribution {
public:
    std::map<Weight, std::int64_t> coeffs;
    TruncationWindow window;
    // every support point μ has (ξ, μ) ≥ floor
    Rat floor;

    WeightDistribution() = default;
    WeightDistribution(TruncationWindow w, Rat fl) : window(std::move(w)), floor(std::move(fl)) {}

    static WeightDistribution delta(const Weight& at, const TruncationWindow& w)
    {
        WeightDistribution d(w, inner(w.functional, at));
        d.coeffs[at] = 1;
        return d;
    }

    Rat height(const Weight& mu) const { return inner(window.functional, mu); }
    bool in_window(const Weight& mu) const { return height(mu) <= window.bound; }

    std::int64_t at(const Weight& mu) const
    {
        auto it = coeffs.find(mu);
        return it == coeffs.end() ? 0 : it->second;
    }

    void add(const Weight& mu, std::int64_t c)
    {
        if (c == 0)
            return;
        auto& x = coeffs[mu];
        x = checked_add(x, c);
        if (x == 0)
            coeffs.erase(mu);
    }

    void prune()
    {
        for (auto it = coeffs.begin(); it != coeffs.end();)
            it = in_window(it->first) && it->second != 0 ? std::next(it) : coeffs.erase(it);
    }

    WeightDistribution translated(const Weight& by) const
    {
        WeightDistribution out(TruncationWindow{window.functional, window.bound + height(by)}, floor + height(by));
        for (const auto& [mu, c] : coeffs)
            out.coeffs[mu + by] = c;
        return out;
    }

    // sorted by (ξ, μ) and then lexicographically
    std::string dump() const
    {
        std::vector<std::pair<Rat, Weight>> keys;
        for (const auto& [mu, c] : coeffs)
            keys.emplace_back(height(mu), mu);
        std::sort(keys.begin(), keys.end());
        std::string s;
        for (const auto& [h, mu] : keys)
            s += to_text(mu) + "\t" + std::to_string(coeffs.at(mu)) + "\n";
        return s;
    }
};

inline void check_window_compatible(const std::vector<Weight>& gens, const TruncationWindow& w)
{
    for (const auto& g : gens)
        if (inner(w.functional, g) <= 0)
            fail(ErrorKind::window, "generator " + to_text(g) + " does not pair positively with the window functional");
}

// y_S = y_{γ1} ⋆ … ⋆ y_{γr}, y_γ = Σ_{n≥0} δ_{γ/2 + nγ}, truncated to the window
inline WeightDistribution heaviside(const WeightMultiset& S, const TruncationWindow& w)
{
    auto gens = S.expanded();
    check_window_compatible(gens, w);
    Weight start = S.sum(w.functional.basis) * Rat(1, 2);
    WeightDistribution out(w, inner(w.functional, start));
    if (out.floor > w.bound)
        return out;
    // one generator at a time: next(μ) = cur(μ) + next(μ − γ), swept in increasing height
    std::map<std::pair<Rat, Weight>, std::int64_t> cur{{{out.floor, start}, 1}};
    for (const auto& g : gens) {
        Rat hg = inner(w.functional, g);
        for (auto it = cur.begin(); it != cur.end(); ++it) {
            Rat h = it->first.first + hg;
            if (h > w.bound)
                continue;
            auto& x = cur[{h, it->first.second + g}];
            x = checked_add(x, it->second);
        }
    }
    for (const auto& [k, c] : cur)
        out.add(k.second, c);
    return out;
}

inline WeightDistribution convolve(const WeightDistribution& a, const WeightDistribution& b)
{
    a.window.functional.same(b.window.functional);
    if (a.window.functional != b.window.functional)
        fail(ErrorKind::window, "convolution of distributions with different window functionals");
    Rat bound = std::min(a.window.bound + b.floor, b.window.bound + a.floor);
    Rat fl = a.floor + b.floor;
    if (bound < fl)
        fail(ErrorKind::window, "convolution window is empty");
    WeightDistribution out(TruncationWindow{a.window.functional, bound}, fl);
    for (const auto& [x, cx] : a.coeffs) {
        Rat hx = a.height(x);
        if (hx + b.floor > bound)
            continue;
        for (const auto& [y, cy] : b.coeffs) {
            if (hx + b.height(y) > bound)
                continue;
            out.add(x + y, checked_mul(cx, cy));
        }
    }
    return out;
}

// coefficients at strictly dominant (hence regular) points for the given positive roots
inline std::map<Weight, std::int64_t> skew_project(const WeightDistribution& D, const std::vector<Weight>& positives)
{
    std::map<Weight, std::int64_t> out;
    for (const auto& [mu, c] : D.coeffs) {
        if (!D.in_window(mu) || c == 0)
            continue;
        bool dom = true;
        for (const auto& a : positives)
            if (inner(mu, a) <= 0) {
                dom = false;
                break;
            }
        if (dom)
            out[mu] = c;
    }
    return out;
}

}
