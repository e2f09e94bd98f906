#pragma once

// Randomized and catalog-wide checks shared by the unit tests and the acceptance run.

#include <algorithm>
#include <random>
#include <sstream>

#include <branchkit/branchkit.hpp>
#include <branchkit/oracle.hpp>

namespace suite {

using namespace branchkit;

struct Tally {
    int cases = 0;
    int failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what)
    {
        ++cases;
        if (!ok && failures++ == 0)
            first = what;
    }
    bool ok() const { return failures == 0 && cases > 0; }
    std::string summary() const
    {
        std::string s = std::to_string(cases - failures) + "/" + std::to_string(cases);
        if (failures)
            s += "  first failure: " + first;
        return s;
    }
};

// ---- random multisets ----

struct RandomSet {
    WeightMultiset S;
    Weight xi;
};

inline RandomSet random_set(std::mt19937& rng, int max_size = 6)
{
    std::uniform_int_distribution<int> rank_d(2, 3), size_d(1, max_size), coord(-2, 2), fcoord(-3, 3), coin(0, 3);
    int r = rank_d(rng);
    Basis b{r, 0, ""};
    Weight xi(b);
    while (xi.is_zero())
        for (int i = 0; i < r; ++i)
            xi[i] = fcoord(rng);
    RandomSet out{WeightMultiset(), xi};
    int n = size_d(rng);
    while (out.S.size() < n) {
        Weight g(b);
        for (int i = 0; i < r; ++i)
            g[i] = coord(rng);
        Rat h = inner(xi, g);
        if (h == 0 || h > 6 || h < -6)
            continue;
        if (h < 0)
            g = -g;
        out.S.add(g, coin(rng) == 0 && out.S.size() + 2 <= n ? 2 : 1);
    }
    return out;
}

inline Weight random_combination(std::mt19937& rng, const std::vector<Weight>& gens, int maxc)
{
    std::uniform_int_distribution<int> c(0, maxc);
    Weight t = zero_like(gens.front());
    for (const auto& g : gens)
        t += g * Rat(c(rng));
    return t;
}

inline std::string set_text(const WeightMultiset& S)
{
    std::string s;
    for (const auto& w : S.expanded())
        s += (s.empty() ? "" : ";") + to_text(w);
    return s;
}

// kostant_partition, shifted_partition and heaviside against exhaustive enumeration
inline Tally partition_oracle(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> wd(0, 20), pick(0, 2);
    Tally t;
    for (int k = 0; k < n; ++k) {
        auto [S, xi] = random_set(rng);
        auto gens = S.expanded();
        std::string tag = "S = " + set_text(S) + "  xi = " + to_text(xi);
        switch (k % 3) {
        case 0: {
            Weight target = random_combination(rng, gens, 2);
            if (pick(rng) == 0)
                target += gens.front() * Rat(1, 2);
            t.expect(kostant_partition(S, target, xi) == oracle::enumerate_partitions(gens, target, false),
                     "kostant " + tag + "  target " + to_text(target));
            break;
        }
        case 1: {
            Weight target = random_combination(rng, gens, 2) + S.sum(xi.basis) * Rat(1, 2);
            t.expect(shifted_partition(S, target, xi) == oracle::enumerate_partitions(gens, target, true),
                     "shifted " + tag + "  target " + to_text(target));
            break;
        }
        default: {
            Weight start = S.sum(xi.basis) * Rat(1, 2);
            TruncationWindow w{xi, inner(xi, start) + wd(rng)};
            auto y = heaviside(S, w);
            bool ok = true;
            std::string where;
            if (y.at(start) != 1) {
                ok = false;
                where = to_text(start);
            }
            for (const auto& [mu, c] : y.coeffs)
                if (ok && c != oracle::enumerate_partitions(gens, mu, true)) {
                    ok = false;
                    where = to_text(mu);
                    break;
                }
            // points of the window missing from y have no partitions
            for (int j = 0; j < 4 && ok; ++j) {
                Weight mu = start + random_combination(rng, gens, 3);
                if (y.in_window(mu) && y.at(mu) != oracle::enumerate_partitions(gens, mu, true)) {
                    ok = false;
                    where = to_text(mu);
                }
            }
            t.expect(ok, "heaviside " + tag + " at " + where);
        }
        }
    }
    return t;
}

inline bool agree_below(const WeightDistribution& a, const WeightDistribution& b, const Rat& bound)
{
    for (const auto* d : {&a, &b})
        for (const auto& [mu, c] : d->coeffs)
            if (d->height(mu) <= bound && a.at(mu) != b.at(mu))
                return false;
    return true;
}

// y_S built from deltas and Heaviside factors with one shared functional
inline WeightDistribution random_distribution(std::mt19937& rng, const Weight& xi, const Rat& bound)
{
    std::uniform_int_distribution<int> kind(0, 2), coord(-2, 2), coeff(-3, 3);
    const Basis& b = xi.basis;
    if (kind(rng) == 0) {
        WeightDistribution d(TruncationWindow{xi, bound}, 0);
        Rat fl;
        bool first = true;
        for (int j = 0; j < 4; ++j) {
            Weight at(b);
            for (int i = 0; i < b.rank(); ++i)
                at[i] = coord(rng);
            if (inner(xi, at) < 0)
                at = -at;
            if (first || inner(xi, at) < fl)
                fl = inner(xi, at);
            first = false;
            d.add(at, coeff(rng));
        }
        d.floor = fl;
        d.window.bound = std::max(bound, fl);
        d.prune();
        return d;
    }
    WeightMultiset S;
    std::uniform_int_distribution<int> size_d(1, 3);
    int n = size_d(rng);
    while (S.size() < n) {
        Weight g(b);
        for (int i = 0; i < b.rank(); ++i)
            g[i] = coord(rng);
        Rat h = inner(xi, g);
        if (h == 0)
            continue;
        S.add(h < 0 ? -g : g);
    }
    Rat fl = inner(xi, S.sum(b)) * Rat(1, 2);
    return heaviside(S, TruncationWindow{xi, std::max(bound, fl)});
}

inline Tally convolution_laws(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> fcoord(1, 3), bd(4, 14);
    Tally t;
    for (int k = 0; k < n; ++k) {
        Basis b{2, 0, ""};
        Weight xi(b);
        xi[0] = fcoord(rng);
        xi[1] = fcoord(rng) - 2;
        if (xi.is_zero())
            xi[1] = 1;
        Rat bound = bd(rng);
        auto a = random_distribution(rng, xi, bound), c = random_distribution(rng, xi, bound),
             d = random_distribution(rng, xi, bound);
        auto ab = convolve(a, c), ba = convolve(c, a);
        t.expect(agree_below(ab, ba, std::min(ab.window.bound, ba.window.bound)),
                 "commutativity, xi " + to_text(xi));
        auto l = convolve(convolve(a, c), d), r = convolve(a, convolve(c, d));
        t.expect(agree_below(l, r, std::min(l.window.bound, r.window.bound)), "associativity, xi " + to_text(xi));
    }
    return t;
}

// enlarging the window leaves coefficients inside the smaller window unchanged
inline Tally truncation_refinement(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> wd(0, 12), extra(1, 8);
    Tally t;
    for (int k = 0; k < n; ++k) {
        auto [S, xi] = random_set(rng, 5);
        Rat floor = inner(xi, S.sum(xi.basis)) * Rat(1, 2);
        Rat small = floor + wd(rng), large = small + extra(rng);
        auto ys = heaviside(S, TruncationWindow{xi, small});
        auto yl = heaviside(S, TruncationWindow{xi, large});
        bool ok = agree_below(ys, yl, small);
        if (k % 2) {
            // the same for a product of two factors
            auto gens = S.expanded();
            WeightMultiset A, B;
            for (std::size_t i = 0; i < gens.size(); ++i)
                (i % 2 ? B : A).add(gens[i]);
            if (!B.empty()) {
                auto fa = inner(xi, A.sum(xi.basis)) * Rat(1, 2), fb = inner(xi, B.sum(xi.basis)) * Rat(1, 2);
                auto cs = convolve(heaviside(A, {xi, small - fb}), heaviside(B, {xi, small - fa}));
                auto cl = convolve(heaviside(A, {xi, large - fb}), heaviside(B, {xi, large - fa}));
                ok = ok && agree_below(cs, cl, small) && agree_below(cs, ys, small);
            }
        }
        t.expect(ok, "refinement S = " + set_text(S) + "  xi = " + to_text(xi));
    }
    return t;
}

// ---- branching instances ----

struct Instance {
    std::string pair;
    std::string lambda; // empty: twice ρ of the first family member
};

inline std::pair<SymmetricPairEntry, HCParameter> resolve(const Instance& in)
{
    auto es = lookup_pair_all(in.pair);
    Weight lam = in.lambda.empty() ? es.front().family.front().rho * Rat(2) : parse_weight(in.lambda);
    return resolve_parameter(es, lam);
}

// rank ≤ 5, equal rank unless noted
inline const std::vector<Instance>& cross_method_instances()
{
    static const std::vector<Instance> v{
        {"su(2,2)/su(2,1)+u(1)", ""},
        {"so(4,4)/so(4,2)+so(2)", ""},
        {"so(4,3)/so(4,1)+so(2)", ""},
        {"sp(1,2)/sp(1,1)+sp(1)", "2,1|4"},
        {"sp(1,3)/sp(1,1)+sp(2)", "3,2,1|5"},
        {"so(4,3)/so(4,2)", "7/2,3/2|1/2"},
        {"so(2,4)/so(2,2)+so(2)", ""},
        {"su(2,2)/su(1,1)+su(1,1)+u(1)", ""},
        {"so*(6)/u(1,2)", ""},
        {"sp(3,R)/u(1,2)", ""},
        {"su(3,1)/su(2,1)+u(1)", ""},
        {"sp(2,R)/u(1,1)", "5,1|"},
        {"so(4,2)/so(4,1)", "4,2|1"}, // unequal rank
    };
    return v;
}

// every implemented catalog instance with parameters ≤ maxv and rank ≤ max_rank
inline std::vector<SymmetricPairEntry> catalog_instances(int max_rank, int maxv = 4)
{
    std::vector<SymmetricPairEntry> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& row : Catalog::active().rows) {
        if (!row.flag("implemented"))
            continue;
        auto vars = detail::row_variables(row);
        Params p;
        detail::for_each_assignment(vars, 0, p, maxv, [&](const Params& pp) {
            try {
                if (!eval_cond(row.get("where"), pp))
                    return false;
                std::string g = instantiate_name(row.get("g"), pp);
                if (g.rfind("e7", 0) == 0 || g.rfind("e8", 0) == 0)
                    return false;
                // classical ambient: rank p + q, known without building the pair
                auto amb = parse_ambient(row.get("type"), pp);
                if (amb.series.size() == 1 && amb.p + amb.q > max_rank)
                    return false;
                if (!seen.insert({g, instantiate_name(row.get("h"), pp)}).second)
                    return false;
                auto e = instantiate(row, pp);
                if (e.g->basis.rank() <= max_rank)
                    out.push_back(std::move(e));
            } catch (const Error&) {
            }
            return false;
        });
    }
    return out;
}

inline BranchContext context_at(const SymmetricPairEntry& e, std::size_t member, int scale)
{
    return make_context(e, admissible_parameter(e, e.family[member].rho * Rat(scale)));
}

// blattner(Ξ + ρ_n^H, μ + ρ_n^H) = blattner(Ξ, μ) on sampled points near the bottom of each H0 spectrum
inline Tally translation_invariance(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    struct Sample {
        std::string tag;
        const BranchContext* c;
        Weight Xi, mu;
    };
    static const std::vector<BranchContext> ctxs = [] {
        std::vector<BranchContext> v;
        for (const auto& in : cross_method_instances()) {
            auto [e, hc] = resolve(in);
            v.push_back(make_context(e, hc));
        }
        return v;
    }();
    std::vector<Sample> pool;
    for (const auto& c : ctxs) {
        auto cb = compact_branch_at(c.entry, c.lam.psi, c.split, c.lam2);
        for (const auto& [nu, m] : cb.entries) {
            Weight Xi = c.entry.q(c.lam1) + nu;
            std::set<Weight> pts;
            Weight base = Xi + c.psi_h0.rho_n;
            detail::cone_walk(base, c.n_h0, TruncationWindow{c.xi, inner(c.xi, base) + 6}, pts);
            for (const auto& mu : pts)
                if (detail::strictly_dominant(mu, c.l_pos))
                    pool.push_back({c.entry.pair_text() + " " + to_text(c.lam.weight), &c, Xi, mu});
        }
    }
    Tally t;
    if (pool.empty())
        return t;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int nonzero = 0;
    for (int k = 0; k < n; ++k) {
        const auto& s = pool[pick(rng)];
        BlattnerEvaluator ev(s.c->psi_h0, BlattnerMode::full);
        const Weight& sh = s.c->psi_h.rho_n;
        auto a = ev(s.Xi, s.mu), b = ev(s.Xi + sh, s.mu + sh);
        nonzero += a != 0;
        t.expect(a == b, s.tag + "  Xi " + to_text(s.Xi) + "  mu " + to_text(s.mu));
    }
    t.expect(nonzero > 0, "all sampled multiplicities vanish");
    return t;
}

struct ModeCase {
    std::string label;
    PositiveSystem psi;
    Weight Xi;
};

// Borel–de Siebenthal G-systems of the catalog, the H0-systems met by the small instances,
// and the su(m,n) Ψ_a / so(2m,2n) H0-systems
inline std::vector<ModeCase> mode_cases(int max_rank)
{
    std::vector<ModeCase> out;
    std::set<std::string> seen;
    for (const auto& e : catalog_instances(max_rank, 3)) {
        if (!e.equal_rank)
            continue;
        for (std::size_t i = 0; i < e.family.size(); ++i) {
            const auto& psi = e.family[i];
            if (is_borel_de_siebenthal(psi) && seen.insert(e.family_ids[i]).second)
                out.push_back({e.family_ids[i], psi, psi.rho * Rat(2)});
            if (e.g->basis.rank() > 4)
                continue;
            auto c = context_at(e, i, 2);
            std::string fam = e.family_ids[i].substr(e.family_ids[i].find(':') + 1);
            bool exceptional = fam.rfind("Psi_a", 0) == 0 || fam.rfind("Psi_tilde_b", 0) == 0 ||
                               e.row->get("type").rfind("D(", 0) == 0;
            if (!is_borel_de_siebenthal(c.psi_h0) && !exceptional)
                continue;
            auto cb = compact_branch_at(e, c.lam.psi, c.split, c.lam2);
            std::string label = e.pair_text() + " H0 of " + e.family_ids[i];
            if (!seen.insert(label).second)
                continue;
            out.push_back({label, c.psi_h0, e.q(c.lam1) + cb.entries.begin()->first});
        }
    }
    return out;
}

inline Tally mode_equivalence(int max_rank, std::vector<std::string>* labels = nullptr)
{
    Tally t;
    for (const auto& mc : mode_cases(max_rank)) {
        if (labels)
            labels->push_back(mc.label);
        auto nc = mc.psi.positive_vectors(false);
        Rat step = 0;
        for (const auto& b : nc)
            step = std::max(step, inner(mc.psi.rho, b));
        TruncationWindow w{mc.psi.rho, inner(mc.psi.rho, mc.Xi + mc.psi.rho_n) + step * 2};
        auto full = blattner_spectrum(mc.psi, mc.Xi, w, BlattnerMode::full);
        auto restricted = blattner_spectrum(mc.psi, mc.Xi, w, BlattnerMode::restricted);
        t.expect(!full.empty() && full == restricted, mc.label + "  Xi " + to_text(mc.Xi));
    }
    return t;
}

// compact_branch on Λ2 = λ2 + (ρ_n)_2 is compact_branch on λ2 shifted by q((ρ_n)_2)
inline Tally central_shift_translation(std::vector<std::string>* labels = nullptr)
{
    Tally t;
    int nonzero = 0;
    for (const auto& e : catalog_instances(5, 4)) {
        if (e.g_name.rfind("su(", 0) != 0)
            continue;
        for (std::size_t i = 0; i < e.family.size(); ++i) {
            for (int scale : {2, 3}) {
                auto hc = admissible_parameter(e, e.family[i].rho * Rat(scale));
                auto split = k1_split(e, hc.psi);
                Weight shift = central_shift(e, hc);
                Weight lam2 = split.part2(hc.weight);
                auto a = compact_branch_at(e, hc.psi, split, lam2 + shift);
                auto b = compact_branch_at(e, hc.psi, split, lam2);
                std::map<Weight, std::int64_t> moved;
                for (const auto& [nu, m] : b.entries)
                    moved[nu + e.q(shift)] = m;
                nonzero += !shift.is_zero();
                std::string label = e.pair_text() + " " + e.family_ids[i] + " x" + std::to_string(scale);
                if (labels)
                    labels->push_back(label + "  shift " + to_text(shift));
                t.expect(a.entries == moved, label);
            }
        }
    }
    t.expect(nonzero > 0, "no instance with a nonzero central shift");
    return t;
}

}
