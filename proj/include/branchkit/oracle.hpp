#pragma once

// Slow reference implementations. Nothing here uses partitions.hpp.

#include <functional>
#include <map>
#include <numeric>
#include <optional>

#include "roots.hpp"

namespace branchkit::oracle {

struct WeightSpaceTable {
    Weight highest_weight;
    std::map<Weight, std::int64_t> multiplicities;

    std::int64_t dimension() const
    {
        std::int64_t d = 0;
        for (const auto& [w, m] : multiplicities)
            d += m;
        return d;
    }
};

inline Weight half_sum(const std::vector<Weight>& positives, const Basis& b)
{
    Weight r(b);
    for (const auto& a : positives)
        r += a * Rat(1, 2);
    return r;
}

inline BigInt weyl_dimension(const std::vector<Weight>& positives, const Weight& hw)
{
    Weight rho = half_sum(positives, hw.basis);
    Rat d = 1;
    for (const auto& a : positives)
        d *= inner(hw + rho, a) / inner(rho, a);
    if (denominator(d) != 1)
        fail(ErrorKind::consistency, "Weyl dimension is not an integer");
    return numerator(d);
}

inline WeightSpaceTable freudenthal(const std::vector<Weight>& positives, const Weight& hw)
{
    for (const auto& a : positives) {
        Rat c = 2 * inner(hw, a) / inner(a, a);
        if (c < 0 || denominator(c) != 1)
            fail(ErrorKind::invalid_input, "highest weight " + to_text(hw) + " is not dominant integral");
    }
    Weight rho = half_sum(positives, hw.basis);
    auto support = weight_support(hw, positives);
    std::sort(support.begin(), support.end(), [&](const Weight& x, const Weight& y) {
        Rat hx = inner(rho, x), hy = inner(rho, y);
        if (hx != hy)
            return hx > hy;
        return x < y;
    });
    WeightSpaceTable t;
    t.highest_weight = hw;
    Rat top = inner(hw + rho, hw + rho);
    std::map<Weight, std::int64_t> m;
    for (const auto& mu : support) {
        if (mu == hw) {
            m[mu] = 1;
            continue;
        }
        Rat num = 0;
        for (const auto& a : positives) {
            for (int k = 1;; ++k) {
                Weight nu = mu + a * Rat(k);
                auto it = m.find(nu);
                if (it == m.end())
                    break;
                num += Rat(it->second) * inner(nu, a);
            }
        }
        Rat den = top - inner(mu + rho, mu + rho);
        if (den == 0)
            fail(ErrorKind::consistency, "Freudenthal denominator vanishes");
        Rat v = 2 * num / den;
        if (denominator(v) != 1 || v < 0)
            fail(ErrorKind::consistency, "Freudenthal produced a non-integral multiplicity");
        if (v != 0)
            m[mu] = static_cast<std::int64_t>(numerator(v));
    }
    t.multiplicities = std::move(m);
    BigInt wd = weyl_dimension(positives, hw);
    if (BigInt(t.dimension()) != wd)
        fail(ErrorKind::consistency, "Freudenthal total differs from the Weyl dimension formula");
    return t;
}

// Decompose the restriction by peeling off leading characters.
// Keys are highest weights of the small group.
inline std::map<Weight, std::int64_t> brute_branch(const std::vector<Weight>& big_positives, const Weight& hw,
                                                   const std::vector<Weight>& small_positives,
                                                   const std::function<Weight(const Weight&)>& project)
{
    auto table = freudenthal(big_positives, hw);
    std::map<Weight, std::int64_t> rest;
    for (const auto& [w, m] : table.multiplicities)
        rest[project(w)] += m;
    if (rest.empty())
        return {};
    Basis sb = rest.begin()->first.basis;
    Weight rho_s = half_sum(small_positives, sb);
    std::map<Weight, std::int64_t> out;
    while (!rest.empty()) {
        auto best = rest.begin();
        for (auto it = rest.begin(); it != rest.end(); ++it)
            if (inner(rho_s, it->first) > inner(rho_s, best->first))
                best = it;
        Weight lead = best->first;
        std::int64_t c = best->second;
        if (c < 0)
            fail(ErrorKind::consistency, "negative leading multiplicity at " + to_text(lead));
        auto ch = freudenthal(small_positives, lead);
        out[lead] += c;
        for (const auto& [w, m] : ch.multiplicities) {
            auto& x = rest[w];
            x -= c * m;
            if (x == 0)
                rest.erase(w);
        }
    }
    std::int64_t total = 0;
    for (const auto& [w, c] : out)
        total += c * static_cast<std::int64_t>(weyl_dimension(small_positives, w));
    if (total != table.dimension())
        fail(ErrorKind::consistency, "branching dimensions do not add up");
    return out;
}

// Exhaustive backtracking over coefficient vectors; no memo.
inline std::int64_t enumerate_partitions(const std::vector<Weight>& S, const Weight& target, bool shifted)
{
    Weight goal = target;
    if (shifted)
        for (const auto& g : S)
            goal -= g * Rat(1, 2);
    if (S.empty())
        return goal.is_zero() ? 1 : 0;
    // a direction positive on S: the sum of S, else a few rounds of adjustments
    Weight xi = zero_like(goal);
    for (const auto& g : S)
        xi += g;
    for (int round = 0; round < 1000; ++round) {
        auto bad = std::find_if(S.begin(), S.end(), [&](const Weight& g) { return inner(xi, g) <= 0; });
        if (bad == S.end())
            break;
        if (bad->is_zero() || round == 999)
            fail(ErrorKind::acyclicity, "no functional is positive on the whole multiset");
        xi += *bad;
    }
    // integer coordinates and heights
    std::vector<Weight> all = S;
    all.push_back(goal);
    std::int64_t D = common_denominator(all);
    auto ints = [&](const Weight& w) {
        std::vector<std::int64_t> v;
        for (const auto& x : w.c) {
            Rat y = x * D;
            if (boost::multiprecision::denominator(y) != 1)
                return std::optional<std::vector<std::int64_t>>();
            v.push_back(to_i64(boost::multiprecision::numerator(y)));
        }
        return std::optional<std::vector<std::int64_t>>(v);
    };
    std::vector<Rat> hr{inner(xi, goal)};
    for (const auto& g : S)
        hr.push_back(inner(xi, g));
    std::int64_t H = 1;
    for (const auto& x : hr)
        H = std::lcm(H, to_i64(boost::multiprecision::denominator(x)));
    std::vector<std::vector<std::int64_t>> gi;
    std::vector<std::int64_t> hi;
    for (std::size_t i = 0; i < S.size(); ++i) {
        gi.push_back(*ints(S[i]));
        hi.push_back(to_i64(boost::multiprecision::numerator(Rat(hr[i + 1] * H))));
    }
    auto g0 = ints(goal);
    if (!g0)
        return 0;
    std::int64_t n = 0;
    std::function<void(std::size_t, std::vector<std::int64_t>&, std::int64_t)> go =
        [&](std::size_t i, std::vector<std::int64_t>& rem, std::int64_t h) {
            if (h < 0)
                return;
            if (i + 1 == S.size()) {
                // rem must be a nonnegative integer multiple of the last element
                if (h % hi[i] != 0)
                    return;
                std::int64_t t = h / hi[i];
                for (std::size_t k = 0; k < rem.size(); ++k)
                    if (rem[k] != t * gi[i][k])
                        return;
                ++n;
                return;
            }
            std::vector<std::int64_t> cur = rem;
            for (std::int64_t hc = h; hc >= 0; hc -= hi[i]) {
                go(i + 1, cur, hc);
                for (std::size_t k = 0; k < cur.size(); ++k)
                    cur[k] -= gi[i][k];
            }
        };
    go(0, *g0, to_i64(boost::multiprecision::numerator(Rat(hr[0] * H))));
    return n;
}

}
