#pragma once

// Closed-form ladders for the worked examples, compared against the engines.

#include "branching.hpp"

namespace branchkit {

struct VerifyReport {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;
    std::string first_mismatch;

    void note(const std::string& s) { lines.push_back(s); }
    void mismatch(const std::string& s)
    {
        if (pass)
            first_mismatch = s;
        pass = false;
        lines.push_back("MISMATCH " + s);
    }
};

namespace detail {

// expected: μ ↦ multiplicity, inside the result's window
inline void compare_spectrum(VerifyReport& rep, const std::map<Weight, std::int64_t>& got,
                             const std::map<Weight, std::int64_t>& expected, const Weight& xi)
{
    std::set<Weight> keys;
    for (const auto& [k, v] : got)
        keys.insert(k);
    for (const auto& [k, v] : expected)
        keys.insert(k);
    std::vector<Weight> order(keys.begin(), keys.end());
    std::stable_sort(order.begin(), order.end(),
                     [&](const Weight& a, const Weight& b) { return inner(xi, a) < inner(xi, b); });
    for (const auto& mu : order) {
        auto g = got.count(mu) ? got.at(mu) : 0;
        auto e = expected.count(mu) ? expected.at(mu) : 0;
        std::string line = to_text(mu) + "  expected " + std::to_string(e) + "  got " + std::to_string(g);
        if (g == e)
            rep.note("ok " + line);
        else
            rep.mismatch(line);
    }
    if (expected.empty())
        rep.mismatch("empty expectation");
}

inline std::vector<Weight> positive_in(const std::vector<Weight>& roots, const std::vector<Weight>& positives)
{
    std::vector<Weight> out;
    for (const auto& a : roots)
        if (std::find(positives.begin(), positives.end(), a) != positives.end())
            out.push_back(a);
    return out;
}

// fundamental weight of the short simple root at an end of a type C diagram
inline Weight type_c_first_fundamental(const std::vector<Weight>& positives)
{
    auto simple = simple_roots_of(positives);
    Rat short_len = inner(simple.front(), simple.front());
    for (const auto& s : simple)
        short_len = std::min(short_len, inner(s, s));
    auto cow = fundamental_coweights(simple);
    for (std::size_t i = 0; i < simple.size(); ++i) {
        if (inner(simple[i], simple[i]) != short_len)
            continue;
        int nb = 0;
        for (std::size_t j = 0; j < simple.size(); ++j)
            if (j != i && inner(simple[i], simple[j]) != 0)
                ++nb;
        if (nb <= 1)
            return cow[i] * (short_len / 2);
    }
    fail(ErrorKind::consistency, "no short end node");
}

}

// sp(1,d) ↓ sp(1,k)+sp(d−k): μ_m = (n+d+m−k)δ + mε_{k+1} + ρ_{Sp(k)} + ρ_{Sp(d−k)}
inline VerifyReport verify_example_I(int d, int k, int n, const Rat& window, Method method, unsigned threads = 0)
{
    VerifyReport rep;
    rep.name = "I";
    std::string pair = "sp(1," + std::to_string(d) + ")/sp(1," + std::to_string(k) + ")+sp(" + std::to_string(d - k) + ")";
    auto es = lookup_pair_all(pair);
    const auto& e = es.front();
    auto hc = construct_k2_trivial_parameter(e, e.family.front(), {Rat(n)});
    rep.note(pair + "  lambda " + to_text(hc.weight));
    BranchOptions o;
    o.window = window;
    o.threads = threads;
    auto c = make_context(e, hc);
    auto r = method == Method::duality ? duality_branch(c, o) : duflo_vargas(c, o);
    const Basis& ub = e.h->basis;
    std::map<Weight, std::int64_t> expected;
    for (int m = 0;; ++m) {
        Weight mu(ub);
        for (int i = 0; i < k; ++i)
            mu[i] = k - i;
        for (int i = k; i < d; ++i)
            mu[i] = d - i;
        mu[k] += m;
        mu[d] = n + d + m - k;
        if (inner(r.window.functional, mu) > r.window.bound)
            break;
        expected[mu] = 1;
    }
    detail::compare_spectrum(rep, r.entries, expected, r.window.functional);
    return rep;
}

// Spin(2m,2) ↓ Spin(2m,1): every multiplicity in the window is 1
inline VerifyReport verify_example_II(int m, const Weight& lam, const Rat& window, unsigned threads = 0)
{
    VerifyReport rep;
    rep.name = "II";
    std::string pair = "so(" + std::to_string(2 * m) + ",2)/so(" + std::to_string(2 * m) + ",1)";
    auto [e, hc] = resolve_parameter(lookup_pair_all(pair), lam);
    BranchOptions o;
    o.window = window;
    o.threads = threads;
    auto r = duality_branch(e, hc, o);
    rep.note(pair + "  lambda " + to_text(hc.weight) + "  keys " + std::to_string(r.entries.size()));
    if (r.entries.empty())
        rep.mismatch("empty spectrum");
    for (const auto& [mu, v] : r.entries)
        if (v != 1)
            rep.mismatch(to_text(mu) + " has multiplicity " + std::to_string(v));
    return rep;
}

// e6(2) ↓ f4(4), λ = (n−10)α_max/2 + ρ_{SU(6)}: μ_m = (n−7+m)α_max/2 + mΛ̃₁ + ρ_{Sp(3)}
inline VerifyReport verify_example_III(int n, const Rat& window, Method method, unsigned threads = 0)
{
    VerifyReport rep;
    rep.name = "III";
    auto e = lookup_pair_all("e6(2)/f4(4)").front();
    const auto& psi = e.family.front();
    auto hc = construct_k2_trivial_parameter(e, psi, {Rat(n - 10)});
    rep.note("e6(2)/f4(4)  n " + std::to_string(n) + "  lambda " + to_text(hc.weight));
    BranchOptions o;
    o.window = window;
    o.threads = threads;
    auto c = make_context(e, hc);
    auto r = method == Method::duality ? duality_branch(c, o) : duflo_vargas(c, o);
    Weight half_amax = e.q(c.split.k1_roots.front()) * Rat(1, 2);
    if (inner(half_amax, c.psi_h.rho) < 0)
        half_amax = -half_amax;
    auto sp3 = detail::positive_in(c.split.lk2_roots, c.l_pos);
    Weight rho_sp3 = detail::half_sum(sp3, e.h->basis);
    Weight lam1 = detail::type_c_first_fundamental(sp3);
    std::map<Weight, std::int64_t> expected;
    for (int m = 0;; ++m) {
        Weight mu = half_amax * Rat(n - 7 + m) + lam1 * Rat(m) + rho_sp3;
        if (inner(r.window.functional, mu) > r.window.bound)
            break;
        expected[mu] = 1;
    }
    detail::compare_spectrum(rep, r.entries, expected, r.window.functional);
    return rep;
}

// so(4,3) ↓ so(4,2): μ in the spectrum iff μ₁ > λ₁ > μ₂ > λ₂ and λ₃ > |μ₃|
inline VerifyReport verify_example_IV(const Weight& lam, const Rat& window, Method method, unsigned threads = 0)
{
    VerifyReport rep;
    rep.name = "IV";
    auto [e, hc] = resolve_parameter(lookup_pair_all("so(4,3)/so(4,2)"), lam);
    rep.note("so(4,3)/so(4,2)  lambda " + to_text(hc.weight));
    BranchOptions o;
    o.window = window;
    o.threads = threads;
    auto c = make_context(e, hc);
    auto r = method == Method::duality ? duality_branch(c, o) : duflo_vargas(c, o);
    const Basis& ub = e.h->basis;
    // H-parameters of so(4,2) are integral
    std::map<Weight, std::int64_t> expected;
    Rat l1 = lam[0], l2 = lam[1], l3 = lam[2];
    auto floor_int = [](const Rat& x) {
        BigInt q = numerator(x) / denominator(x);
        if (x < 0 && Rat(q) != x)
            q -= 1;
        return static_cast<long>(q);
    };
    long m3max = floor_int(l3);
    if (Rat(m3max) == l3)
        --m3max;
    for (long mu2 = floor_int(l2) + 1; Rat(mu2) < l1; ++mu2)
        for (long mu3 = -m3max; mu3 <= m3max; ++mu3)
            for (long mu1 = floor_int(l1) + 1;; ++mu1) {
                Weight mu(ub);
                mu[0] = mu1;
                mu[1] = mu2;
                mu[2] = mu3;
                if (inner(r.window.functional, mu) > r.window.bound)
                    break;
                expected[mu] = 1;
            }
    detail::compare_spectrum(rep, r.entries, expected, r.window.functional);
    return rep;
}

// quaternionic Sp(1,b) with lowest L-type S^{n−1}(C²)⊠C: types S^{n−1+m}(C²)⊠S^m(C^{2b})
inline VerifyReport verify_sp1b_types(int b, int n, const Rat& window, BlattnerMode mode = BlattnerMode::full)
{
    VerifyReport rep;
    rep.name = "sp1b_types";
    auto psi = named_system("sp(1," + std::to_string(b) + "):Psi_plus");
    const Basis& gb = psi.system->basis;
    Weight base(gb); // nδ + ρ_{Sp(b)}
    for (int i = 0; i < b; ++i)
        base[i] = b - i;
    base[b] = n;
    Weight Xi = base - psi.rho_n;
    std::string kind = "regular";
    if (!is_regular(Xi, psi.system->vectors()))
        kind = is_regular(Xi, psi.system->compact_vectors()) ? "limit of discrete series" : "singular on a compact root";
    rep.note("Sp(1," + std::to_string(b) + ")  n " + std::to_string(n) + "  Xi " + to_text(Xi) + "  " + kind);
    TruncationWindow w{psi.rho, inner(psi.rho, base) + window};
    auto got = blattner_spectrum(psi, Xi, w, mode);
    std::map<Weight, std::int64_t> expected;
    for (int m = 0;; ++m) {
        Weight mu = base;
        mu[0] += m;
        mu[b] += m;
        if (inner(psi.rho, mu) > w.bound)
            break;
        expected[mu] = 1;
    }
    detail::compare_spectrum(rep, got, expected, psi.rho);
    return rep;
}

}
