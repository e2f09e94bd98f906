#pragma once

#include <exception>
#include <numeric>
#include <thread>
#include <tuple>

#include "catalog.hpp"
#include "partitions.hpp"

namespace branchkit {

enum class Method { duality, duflo_vargas };

inline const char* method_name(Method m) { return m == Method::duality ? "duality" : "duflo_vargas"; }

enum class BlattnerMode { full, restricted };

struct BranchOptions {
    Rat window = 20;      // on (ξ, μ − μ_min)
    unsigned threads = 0; // 0: hardware concurrency
    bool shifted_check = false;
};

inline unsigned resolve_threads(unsigned t)
{
    if (t > 0)
        return t;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

// fn(worker, begin, end) on contiguous blocks; exceptions are rethrown after the join
template <class Fn>
void parallel_blocks(std::size_t n, unsigned threads, Fn fn)
{
    unsigned t = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (t == 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errs(t);
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k) {
        std::size_t b = n * k / t, e = n * (k + 1) / t;
        pool.emplace_back([&, k, b, e] {
            try {
                fn(k, b, e);
            } catch (...) {
                errs[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
}

struct LowestKType {
    Weight hc;             // λ + ρ_n
    Weight highest_weight; // λ + ρ_n − ρ_c
    Weight Lambda1, Lambda2;
};

inline LowestKType lowest_k_type(const HCParameter& lam)
{
    LowestKType t;
    t.hc = lam.weight + lam.psi.rho_n;
    t.highest_weight = t.hc - lam.psi.rho_c;
    return t;
}

inline LowestKType lowest_k_type(const SymmetricPairEntry& e, const HCParameter& lam)
{
    LowestKType t = lowest_k_type(lam);
    auto s = k1_split(e, lam.psi);
    t.Lambda1 = s.part1(t.hc);
    t.Lambda2 = s.part2(t.hc);
    return t;
}

// everything the engines need about (pair, λ)
struct BranchContext {
    SymmetricPairEntry entry;
    HCParameter lam;
    PositiveSystem psi_h, psi_h0;
    K1Split split;
    Weight lam1, lam2;
    Weight xi; // window functional on u*
    std::vector<Weight> l_pos;
    std::vector<Weight> n_h0; // Ψ_{H0,λ} ∩ Φ_n
};

inline BranchContext make_context(const SymmetricPairEntry& e, const HCParameter& lam)
{
    e.require_implemented();
    BranchContext c{e, lam, {}, {}, {}, {}, {}, {}, {}, {}};
    if (!admissible(e, lam))
        fail(ErrorKind::non_admissible, to_text(lam.weight) + " for " + e.pair_text());
    std::tie(c.psi_h, c.psi_h0) = induced_systems(e, lam);
    c.split = k1_split(e, lam.psi);
    c.lam1 = c.split.part1(lam.weight);
    c.lam2 = c.split.part2(lam.weight);
    c.l_pos = c.psi_h.positive_vectors(true);
    check(std::set<Weight>(c.l_pos.begin(), c.l_pos.end()) ==
              [&] {
                  auto v = c.psi_h0.positive_vectors(true);
                  return std::set<Weight>(v.begin(), v.end());
              }(),
          "Psi_H and Psi_H0 induce different systems on l");
    c.n_h0 = c.psi_h0.positive_vectors(false);
    // q(ρ_n) splits as ρ_n^H + ρ_n^{H0}
    check(e.q(lam.psi.rho_n) == c.psi_h.rho_n + c.psi_h0.rho_n, "q(rho_n) != rho_n^H + rho_n^H0");
    auto positive_on = [&](const Weight& f) {
        for (const auto& g : c.n_h0)
            if (inner(f, g) <= 0)
                return false;
        for (const auto& g : c.l_pos)
            if (inner(f, g) <= 0)
                return false;
        return true;
    };
    if (positive_on(c.psi_h.rho))
        c.xi = c.psi_h.rho;
    else if (positive_on(e.q(lam.psi.rho)))
        c.xi = e.q(lam.psi.rho);
    else
        fail(ErrorKind::window, "no window functional is positive on the noncompact roots of h0");
    return c;
}

inline Weight central_shift(const SymmetricPairEntry& e, const HCParameter& lam)
{
    auto s = k1_split(e, lam.psi);
    Weight shift = s.part2(lam.psi.rho_n);
    if (!shift.is_zero()) {
        for (const auto& a : e.g->compact_vectors())
            check(inner(shift, a) == 0, "(rho_n)_2 is not central in k");
        std::string fam = lam.psi.name.substr(lam.psi.name.find(':') + 1);
        check(fam.rfind("Psi_a", 0) == 0 || fam.rfind("Psi_tilde_b", 0) == 0,
              "nonzero (rho_n)_2 outside the su(m,n) systems: " + lam.psi.name);
    }
    return shift;
}

// ---- compact branching K2 ↓ L∩K2 ----

struct CompactBranching {
    std::map<Weight, std::int64_t> entries; // ν2′ ↦ multiplicity
};

inline Rat weyl_dimension_ratio(const Weight& nu, const Weight& rho, const std::vector<Weight>& positives)
{
    Rat d = 1;
    for (const auto& a : positives)
        d *= inner(nu, a) / inner(rho, a);
    return d;
}

namespace detail {

inline std::int64_t floor_i64(const Rat& x)
{
    BigInt n = numerator(x), d = denominator(x);
    BigInt q = n / d;
    if (n < 0 && q * d != n)
        q -= 1;
    return to_i64(q);
}

inline Weight half_sum(const std::vector<Weight>& v, const Basis& b)
{
    Weight r(b);
    for (const auto& a : v)
        r += a * Rat(1, 2);
    return r;
}

}

// λ2 is the K2 Harish-Chandra parameter (on t*)
inline CompactBranching compact_branch_at(const SymmetricPairEntry& e, const PositiveSystem& psi, const K1Split& split,
                                          const Weight& lam2)
{
    std::vector<Weight> k2_pos;
    for (const auto& a : psi.positive_vectors(true))
        if (std::find(split.k2_roots.begin(), split.k2_roots.end(), a) != split.k2_roots.end())
            k2_pos.push_back(a);
    std::set<Weight> qpos;
    for (const auto& r : psi.positives)
        qpos.insert(e.q(r.v));
    std::vector<Weight> lk2_pos;
    for (const auto& a : split.lk2_roots)
        if (qpos.count(a))
            lk2_pos.push_back(a);
    const Basis& ub = e.h->basis;
    Weight rho_k2 = detail::half_sum(k2_pos, e.g->basis);
    Weight rho_lk2 = detail::half_sum(lk2_pos, ub);
    for (const auto& a : k2_pos)
        if (inner(lam2, a) <= 0)
            fail(ErrorKind::invalid_input, "K2 parameter " + to_text(lam2) + " is not regular dominant");
    CompactBranching out;
    if (lam2 - rho_k2 == zero_like(lam2) || k2_pos.empty()) {
        // one-dimensional K2-type: restricts to a single character
        out.entries[e.q(lam2 - rho_k2) + rho_lk2] = 1;
        return out;
    }
    // S = q(Δ⁺(k2)) \ Δ⁺(l∩k2)
    WeightMultiset S;
    for (const auto& a : k2_pos) {
        Weight qa = e.q(a);
        if (!qa.is_zero())
            S.add(qa);
    }
    WeightMultiset lk2;
    for (const auto& a : lk2_pos)
        lk2.add(a);
    S = S.difference(lk2);
    Weight xi_c = e.q(rho_k2);
    WeylGroup W = weyl_group_of(simple_roots_of(k2_pos), e.g->basis);
    Rat top = inner(xi_c, e.q(lam2 - rho_k2)) + inner(xi_c, rho_lk2);
    Rat lowest = top;
    std::vector<Weight> images;
    for (std::size_t i = 0; i < W.size(); ++i) {
        images.push_back(e.q(W.apply(i, lam2)));
        lowest = std::min(lowest, inner(xi_c, images.back()));
    }
    std::int64_t parity = S.size() % 2 ? -1 : 1;
    auto y = heaviside(S, TruncationWindow{xi_c, top - lowest});
    // only strictly L∩K2-dominant points survive the skew projection; sum those on the scaled lattice
    std::vector<Weight> all = images;
    for (const auto& [mu, c] : y.coeffs)
        all.push_back(mu);
    all.push_back(xi_c);
    all.insert(all.end(), lk2_pos.begin(), lk2_pos.end());
    std::int64_t Dn = common_denominator(all);
    IVec xs = scaled(xi_c, Dn);
    std::int64_t cap = detail::floor_i64(top * Dn * Dn);
    std::vector<std::tuple<std::int64_t, IVec, std::int64_t>> ys;
    for (const auto& [mu, c] : y.coeffs) {
        IVec v = scaled(mu, Dn);
        ys.emplace_back(dot(xs, v), v, c);
    }
    std::sort(ys.begin(), ys.end());
    std::vector<IVec> lk;
    for (const auto& a : lk2_pos)
        lk.push_back(scaled(a, Dn));
    std::unordered_map<IVec, std::int64_t, IVecHash> acc;
    for (std::size_t i = 0; i < W.size(); ++i) {
        IVec im = scaled(images[i], Dn);
        std::int64_t h0 = dot(xs, im);
        for (const auto& [h, v, c] : ys) {
            if (h0 + h > cap)
                break;
            IVec pt = add(im, v);
            if (std::all_of(lk.begin(), lk.end(), [&](const IVec& a) { return dot(pt, a) > 0; })) {
                auto& x = acc[pt];
                x = checked_add(x, checked_mul(c, W.sign(i) * parity));
            }
        }
    }
    for (const auto& [v, c] : acc)
        if (c != 0)
            out.entries[unscaled(v, Dn, ub)] = c;
    Rat total = 0;
    for (const auto& [nu, c] : out.entries) {
        if (c <= 0)
            fail(ErrorKind::consistency, "compact branching produced multiplicity " + std::to_string(c));
        total += Rat(c) * weyl_dimension_ratio(nu, rho_lk2, lk2_pos);
    }
    check(total == weyl_dimension_ratio(lam2, rho_k2, k2_pos), "compact branching dimensions do not add up");
    return out;
}

inline CompactBranching compact_branch(const SymmetricPairEntry& e, const HCParameter& lam)
{
    auto split = k1_split(e, lam.psi);
    return compact_branch_at(e, lam.psi, split, split.part2(lam.weight));
}

// ---- Blattner ----

class BlattnerEvaluator {
public:
    BlattnerEvaluator(const PositiveSystem& h0_psi, BlattnerMode mode)
        : W_(mode == BlattnerMode::full ? compact_weyl_group(h0_psi) : w_u_subgroup(h0_psi)),
          rho_n_(h0_psi.rho_n), l_pos_(h0_psi.positive_vectors(true))
    {
        auto nc = h0_psi.positive_vectors(false);
        if (!nc.empty())
            counter_.emplace(WeightMultiset(nc), h0_psi.rho);
    }

    std::int64_t operator()(const Weight& Xi, const Weight& mu)
    {
        Weight base = Xi + rho_n_;
        std::int64_t m = 0;
        if (!counter_) {
            for (std::size_t s = 0; s < W_.size(); ++s)
                if (W_.apply(s, mu) == base)
                    m += W_.sign(s);
        } else {
            // W acts on (1/L)ℤ^n inside (1/(L·D_W))ℤ^n; targets off the counter's lattice have no partitions
            std::int64_t D = counter_->scale();
            std::int64_t L = std::lcm(D, common_denominator({base, mu})) * W_.denominator();
            std::int64_t r = L / D;
            IVec ms = scaled(mu, L), bs = scaled(base, L);
            for (std::size_t s = 0; s < W_.size(); ++s) {
                IVec t = W_.apply(s, ms);
                bool on = true;
                for (std::size_t k = 0; k < t.size() && on; ++k) {
                    t[k] -= bs[k];
                    on = t[k] % r == 0;
                    t[k] /= r;
                }
                if (!on)
                    continue;
                std::int64_t q = counter_->count_scaled(t);
                if (q)
                    m = checked_add(m, W_.sign(s) > 0 ? q : -q);
            }
        }
        if (m < 0)
            fail(ErrorKind::consistency, "negative Blattner multiplicity at " + to_text(mu));
        return m;
    }

    const Weight& rho_n() const { return rho_n_; }
    const std::vector<Weight>& l_positive() const { return l_pos_; }

private:
    WeylGroup W_;
    Weight rho_n_;
    std::vector<Weight> l_pos_;
    std::optional<PartitionCounter> counter_;
};

inline std::int64_t blattner(const PositiveSystem& h0_psi, const Weight& Xi, const Weight& mu, BlattnerMode mode)
{
    BlattnerEvaluator ev(h0_psi, mode);
    return ev(Xi, mu);
}

namespace detail {

// base + ℕ-span(gens) with (ξ, ·) ≤ bound; gens must pair positively with ξ
inline void cone_walk(const Weight& base, const std::vector<Weight>& gens, const TruncationWindow& w,
                      std::set<Weight>& out)
{
    check_window_compatible(gens, w);
    if (inner(w.functional, base) > w.bound)
        return;
    std::vector<Weight> queue{base};
    if (!out.insert(base).second)
        return;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& g : gens) {
            Weight n = queue[i] + g;
            if (inner(w.functional, n) > w.bound || out.count(n))
                continue;
            out.insert(n);
            queue.push_back(n);
        }
}

inline bool strictly_dominant(const Weight& mu, const std::vector<Weight>& pos)
{
    for (const auto& a : pos)
        if (inner(mu, a) <= 0)
            return false;
    return true;
}

inline std::vector<Weight> sorted_by_height(const std::set<Weight>& pts, const Weight& xi)
{
    std::vector<Weight> v(pts.begin(), pts.end());
    std::stable_sort(v.begin(), v.end(), [&](const Weight& a, const Weight& b) { return inner(xi, a) < inner(xi, b); });
    return v;
}

}

// L-types of the H0 discrete series with parameter Xi, inside the window
inline std::map<Weight, std::int64_t> blattner_spectrum(const PositiveSystem& h0_psi, const Weight& Xi,
                                                        const TruncationWindow& window,
                                                        BlattnerMode mode = BlattnerMode::full)
{
    BlattnerEvaluator ev(h0_psi, mode);
    std::set<Weight> pts;
    detail::cone_walk(Xi + h0_psi.rho_n, h0_psi.positive_vectors(false), window, pts);
    std::map<Weight, std::int64_t> out;
    for (const auto& mu : pts) {
        if (!detail::strictly_dominant(mu, ev.l_positive()))
            continue;
        if (auto m = ev(Xi, mu))
            out[mu] = m;
    }
    return out;
}

// ---- results ----

struct BranchingResult {
    std::string pair;
    HCParameter lambda;
    Method method = Method::duality;
    std::map<Weight, std::int64_t> entries;
    TruncationWindow window; // absolute: (ξ, μ) ≤ bound
    Rat window_relative = 20;
    Weight mu_min;
    int sign = 1;
    bool multiplicity_free = true;

    std::vector<std::pair<Weight, std::int64_t>> sorted() const
    {
        std::vector<std::pair<Weight, std::int64_t>> v(entries.begin(), entries.end());
        std::stable_sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
            return inner(window.functional, a.first) < inner(window.functional, b.first);
        });
        return v;
    }
};

inline bool multiplicity_free(const BranchingResult& r)
{
    for (const auto& [mu, m] : r.entries)
        if (m != 1)
            return false;
    return true;
}

namespace detail {

// Evaluate `eval` on the strictly L-dominant points of the walks from `bases`, keeping the
// window anchored at the lowest nonzero key.
template <class MakeWorker>
std::map<Weight, std::int64_t> windowed_spectrum(const BranchContext& c, const std::vector<Weight>& bases,
                                                 const Rat& rel, unsigned threads, MakeWorker make_worker,
                                                 Weight& mu_min, Rat& abs_bound)
{
    check(!bases.empty(), "no starting points for the spectrum walk");
    Rat level = inner(c.xi, bases.front());
    for (const auto& b : bases)
        level = std::min(level, inner(c.xi, b));
    std::map<Weight, std::int64_t> done;
    for (int round = 0; round < 64; ++round) {
        TruncationWindow w{c.xi, level + rel};
        std::set<Weight> pts;
        for (const auto& b : bases)
            cone_walk(b, c.n_h0, w, pts);
        std::vector<Weight> todo;
        for (const auto& p : sorted_by_height(pts, c.xi))
            if (strictly_dominant(p, c.l_pos) && !done.count(p))
                todo.push_back(p);
        std::vector<std::int64_t> vals(todo.size());
        parallel_blocks(todo.size(), threads, [&](unsigned, std::size_t b, std::size_t e) {
            auto worker = make_worker();
            for (std::size_t i = b; i < e; ++i)
                vals[i] = worker(todo[i]);
        });
        for (std::size_t i = 0; i < todo.size(); ++i)
            done[todo[i]] = vals[i];
        // lowest key: least height, then lexicographic
        std::optional<Weight> low;
        for (const auto& [p, v] : done)
            if (v != 0 && (!low || inner(c.xi, p) < inner(c.xi, *low)))
                low = p;
        if (!low) {
            mu_min = bases.front();
            abs_bound = level + rel;
            return {};
        }
        Rat lowh = inner(c.xi, *low);
        if (lowh <= level) {
            mu_min = *low;
            abs_bound = lowh + rel;
            std::map<Weight, std::int64_t> out;
            for (const auto& [p, v] : done)
                if (v != 0 && inner(c.xi, p) <= abs_bound)
                    out[p] = v;
            return out;
        }
        level = lowh;
    }
    fail(ErrorKind::consistency, "window anchor did not settle");
}

inline BranchingResult finish(const BranchContext& c, Method m, std::map<Weight, std::int64_t> entries,
                              const Weight& mu_min, const Rat& abs_bound, const Rat& rel, int sign)
{
    BranchingResult r;
    r.pair = c.entry.pair_text();
    r.lambda = c.lam;
    r.method = m;
    r.window = TruncationWindow{c.xi, abs_bound};
    r.window_relative = rel;
    r.mu_min = mu_min;
    r.sign = sign;
    for (const auto& [mu, v] : entries) {
        if (v < 0)
            fail(ErrorKind::consistency, std::string(method_name(m)) + ": negative multiplicity at " + to_text(mu));
        for (const auto& a : c.l_pos)
            check(inner(mu, a) > 0, "key " + to_text(mu) + " is not strictly dominant");
        r.entries[mu] = v;
    }
    r.multiplicity_free = multiplicity_free(r);
    return r;
}

}

// m(λ, μ) = Σ_{ν2′} m^{K2}(λ2, ν2′) · [V^L_μ : V^{H0}_{(λ1, ν2′)}]
inline BranchingResult duality_branch(const BranchContext& c, const BranchOptions& opt = {})
{
    auto cb = compact_branch_at(c.entry, c.lam.psi, c.split, c.lam2);
    Weight ql1 = c.entry.q(c.lam1);
    std::vector<std::pair<Weight, std::int64_t>> xis;
    std::vector<Weight> bases;
    for (const auto& [nu, m] : cb.entries) {
        xis.emplace_back(ql1 + nu, m);
        bases.push_back(ql1 + nu + c.psi_h0.rho_n);
    }
    auto make_worker = [&] {
        auto ev = std::make_shared<BlattnerEvaluator>(c.psi_h0, BlattnerMode::full);
        return [ev, &xis](const Weight& mu) {
            std::int64_t s = 0;
            for (const auto& [Xi, m] : xis)
                s = checked_add(s, checked_mul(m, (*ev)(Xi, mu)));
            return s;
        };
    };
    Weight mu_min;
    Rat abs_bound;
    auto entries = detail::windowed_spectrum(c, bases, opt.window, opt.threads, make_worker, mu_min, abs_bound);
    if (opt.shifted_check) {
        // the ρ_n^H-shifted form gives the same numbers
        BlattnerEvaluator ev(c.psi_h0, BlattnerMode::full);
        for (const auto& [mu, v] : entries) {
            std::int64_t s = 0;
            for (const auto& [Xi, m] : xis)
                s += m * ev(Xi + c.psi_h.rho_n, mu + c.psi_h.rho_n);
            check(s == v, "shifted duality form differs at " + to_text(mu));
        }
    }
    return detail::finish(c, Method::duality, std::move(entries), mu_min, abs_bound, opt.window, 1);
}

inline BranchingResult duality_branch(const SymmetricPairEntry& e, const HCParameter& lam, const BranchOptions& opt = {})
{
    return duality_branch(make_context(e, lam), opt);
}

// m(λ, μ) = ± Σ_{w∈W_K} ε(w) p_{S_w^H}(μ − q(wλ))
inline BranchingResult duflo_vargas(const BranchContext& c, const BranchOptions& opt = {})
{
    const auto& e = c.entry;
    const Basis& ub = e.h->basis;
    WeylGroup WK = compact_weyl_group(c.lam.psi);

    WeightMultiset dkl;
    for (const auto& a : c.lam.psi.positive_vectors(true)) {
        Weight qa = e.q(a);
        if (!qa.is_zero())
            dkl.add(qa);
    }
    WeightMultiset lpos(c.l_pos);
    dkl = dkl.difference(lpos);
    std::vector<Weight> h_nc;
    for (const auto& r : e.h->roots)
        if (!r.compact)
            h_nc.push_back(r.v);
    auto nc_pos = c.lam.psi.positive_vectors(false);

    struct Term {
        int sign;
        Weight shift; // q(wλ) + ½ΣS
        std::size_t key;
    };
    std::vector<Term> terms;
    std::vector<WeightMultiset> keys;
    std::vector<Weight> key_xi;
    std::map<WeightMultiset, std::size_t> key_index;
    Weight qrho = e.q(c.lam.psi.rho);
    for (std::size_t i = 0; i < WK.size(); ++i) {
        WeightMultiset S = dkl;
        for (const auto& b : nc_pos) {
            Weight qb = e.q(WK.apply(i, b));
            if (!qb.is_zero())
                S.add(qb);
        }
        for (const auto& b : h_nc)
            if (S.count(b) > 0)
                S = S.difference(WeightMultiset(std::vector<Weight>{b}));
        S = S.sorted();
        auto it = key_index.find(S);
        if (it == key_index.end()) {
            auto f = acyclic_functional(S.expanded(), {e.q(WK.apply(i, c.lam.psi.rho)), qrho, c.xi});
            if (!f)
                fail(ErrorKind::acyclicity, "S_w is not acyclic for w #" + std::to_string(i));
            it = key_index.emplace(S, keys.size()).first;
            keys.push_back(S);
            key_xi.push_back(*f);
        }
        terms.push_back({WK.sign(i), e.q(WK.apply(i, c.lam.weight)) + S.sum(ub) * Rat(1, 2), it->second});
    }

    // starting points: q(λ1) + q(weights of the K2-type) + ρ_{L∩K2} + ρ_n^{H0}
    std::vector<Weight> k2_pos;
    for (const auto& a : c.lam.psi.positive_vectors(true))
        if (std::find(c.split.k2_roots.begin(), c.split.k2_roots.end(), a) != c.split.k2_roots.end())
            k2_pos.push_back(a);
    std::set<Weight> qpos;
    for (const auto& r : c.lam.psi.positives)
        qpos.insert(e.q(r.v));
    std::vector<Weight> lk2_pos;
    for (const auto& a : c.split.lk2_roots)
        if (qpos.count(a))
            lk2_pos.push_back(a);
    Weight rho_k2 = detail::half_sum(k2_pos, e.g->basis);
    Weight rho_lk2 = detail::half_sum(lk2_pos, ub);
    std::set<Weight> base_set;
    Weight ql1 = e.q(c.lam1);
    for (const auto& om : weight_support(c.lam2 - rho_k2, k2_pos))
        base_set.insert(ql1 + e.q(om) + rho_lk2 + c.psi_h0.rho_n);
    std::vector<Weight> bases(base_set.begin(), base_set.end());

    auto make_worker = [&] {
        auto counters = std::make_shared<std::vector<std::optional<PartitionCounter>>>(keys.size());
        return [counters, &terms, &keys, &key_xi](const Weight& mu) {
            std::int64_t s = 0;
            for (const auto& t : terms) {
                auto& pc = (*counters)[t.key];
                if (keys[t.key].empty()) {
                    if (mu == t.shift)
                        s += t.sign;
                    continue;
                }
                if (!pc)
                    pc.emplace(keys[t.key], key_xi[t.key]);
                if (auto v = pc->count(mu - t.shift))
                    s = checked_add(s, t.sign > 0 ? v : -v);
            }
            return s;
        };
    };
    Weight mu_min;
    Rat abs_bound;
    auto raw = detail::windowed_spectrum(c, bases, opt.window, opt.threads, make_worker, mu_min, abs_bound);
    int sign = 1;
    if (!raw.empty() && raw.at(mu_min) < 0)
        sign = -1;
    std::map<Weight, std::int64_t> entries;
    for (const auto& [mu, v] : raw) {
        std::int64_t m = sign * v;
        if (m <= 0)
            fail(ErrorKind::consistency, "duflo_vargas: multiplicity " + std::to_string(m) + " at " + to_text(mu) +
                                             " after sign calibration");
        entries[mu] = m;
    }
    return detail::finish(c, Method::duflo_vargas, std::move(entries), mu_min, abs_bound, opt.window, sign);
}

inline BranchingResult duflo_vargas(const SymmetricPairEntry& e, const HCParameter& lam, const BranchOptions& opt = {})
{
    return duflo_vargas(make_context(e, lam), opt);
}

// ---- parameter constructors ----

// η = ν − ρ_n^{H0}
inline HCParameter h0_parameter(const BranchContext& c, const Weight& nu)
{
    if (!detail::strictly_dominant(nu, c.l_pos))
        fail(ErrorKind::invalid_input, to_text(nu) + " is not strictly dominant for l");
    Weight eta = nu - c.psi_h0.rho_n;
    if (!is_regular(eta, c.entry.h0->vectors()))
        fail(ErrorKind::singular, "h0 parameter " + to_text(eta));
    return HCParameter{eta, chamber_system(eta, c.entry.h0)};
}

// λ = Σ a_j e_j + ρ_{K2}, with e_j spanning t1*
inline HCParameter construct_k2_trivial_parameter(const SymmetricPairEntry& e, const PositiveSystem& psi,
                                                  const std::vector<Rat>& heights)
{
    e.require_implemented();
    if (heights.empty())
        fail(ErrorKind::invalid_input, "no heights given");
    for (std::size_t i = 1; i < heights.size(); ++i)
        if (!(heights[i - 1] > heights[i]))
            fail(ErrorKind::invalid_input, "heights must be strictly decreasing");
    auto split = k1_split(e, psi);
    std::vector<Weight> dirs;
    if (split.k1_coords.size() == heights.size()) {
        for (int i : split.k1_coords)
            dirs.push_back(Weight::unit(e.g->basis, i));
    } else if (split.t1.size() == 1 && heights.size() == 1) {
        Weight d = split.t1.front();
        if (e.k1 == K1Kind::amax)
            d = split.k1_roots.front() * Rat(1, 2);
        if (inner(d, psi.rho) < 0)
            d = -d;
        dirs.push_back(d);
    } else {
        fail(ErrorKind::invalid_input, "expected " + std::to_string(split.k1_coords.size()) + " heights");
    }
    Weight lam(e.g->basis);
    for (std::size_t i = 0; i < dirs.size(); ++i)
        lam += dirs[i] * heights[i];
    std::vector<Weight> k2_pos;
    for (const auto& a : psi.positive_vectors(true))
        if (std::find(split.k2_roots.begin(), split.k2_roots.end(), a) != split.k2_roots.end())
            k2_pos.push_back(a);
    lam += detail::half_sum(k2_pos, e.g->basis);
    if (!is_regular(lam, e.g->vectors()))
        fail(ErrorKind::singular, to_text(lam));
    if (!chamber_system(lam, e.g).same_roots(psi))
        fail(ErrorKind::non_admissible, "heights too small: " + to_text(lam) + " is not dominant for " + psi.name);
    HCParameter hc{lam, psi};
    auto lk = lowest_k_type(e, hc);
    check(lk.Lambda2 == detail::half_sum(k2_pos, e.g->basis) + central_shift(e, hc), "lowest K2-type is not trivial");
    return hc;
}

}
