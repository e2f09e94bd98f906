#include <catch_amalgamated.hpp>

#include <branchkit/io.hpp>
#include <branchkit/verify.hpp>

#include "support.hpp"

using namespace branchkit;

namespace {

std::vector<Weight> positive_among(const std::vector<Weight>& roots, const PositiveSystem& psi)
{
    std::vector<Weight> out;
    for (const auto& a : roots)
        if (psi.is_positive(a))
            out.push_back(a);
    return out;
}

// K2 ↓ L∩K2 against the Freudenthal peeling oracle; keys of the oracle are highest weights
void compare_compact_branch(const SymmetricPairEntry& e, const HCParameter& hc, const Weight& hw)
{
    auto split = k1_split(e, hc.psi);
    auto k2_pos = positive_among(split.k2_roots, hc.psi);
    std::vector<Weight> lk2_pos;
    for (const auto& a : split.lk2_roots) {
        bool pos = false;
        for (const auto& r : hc.psi.positives)
            pos = pos || e.q(r.v) == a;
        if (pos)
            lk2_pos.push_back(a);
    }
    Weight rho_k2 = oracle::half_sum(k2_pos, e.g->basis), rho_lk2 = oracle::half_sum(lk2_pos, e.h->basis);
    auto ours = compact_branch_at(e, hc.psi, split, hw + rho_k2);
    auto ref = oracle::brute_branch(k2_pos, hw, lk2_pos, [&](const Weight& w) { return e.q(w); });
    std::map<Weight, std::int64_t> shifted;
    for (const auto& [mu, m] : ref)
        shifted[mu + rho_lk2] = m;
    INFO(e.pair_text() << "  hw " << to_text(hw));
    CHECK(ours.entries == shifted);
}

BranchOptions opts(const Rat& window, unsigned threads = 1)
{
    BranchOptions o;
    o.window = window;
    o.threads = threads;
    return o;
}

}

TEST_CASE("compact branching matches the Freudenthal oracle", "[branching]")
{
    // Sp(2) ↓ Sp(1) × Sp(1)
    auto sp12 = lookup_pair("sp(1,2)/sp(1,1)+sp(1)");
    auto hc = make_parameter(sp12, parse_weight("2,1|4"));
    for (std::string hw : {"0,0|0", "1,0|0", "1,1|0", "2,0|0", "2,1|0", "3,1|0", "4,2|0"})
        compare_compact_branch(sp12, hc, parse_weight(hw));

    // Sp(3) ↓ Sp(1) × Sp(2)
    auto sp13 = lookup_pair("sp(1,3)/sp(1,1)+sp(2)");
    auto hc3 = make_parameter(sp13, parse_weight("3,2,1|5"));
    for (std::string hw : {"1,0,0|0", "1,1,0|0", "2,1,0|0", "1,1,1|0"})
        compare_compact_branch(sp13, hc3, parse_weight(hw));

    // SU(6) ↓ Sp(3) through the e6(2)/f4(4) fold: adjoint = adjoint + Λ²₀
    auto e6 = lookup_pair("e6(2)/f4(4)");
    auto hc6 = make_parameter(e6, e6.family.front().rho);
    auto split = k1_split(e6, hc6.psi);
    auto k2_pos = positive_among(split.k2_roots, hc6.psi);
    Weight top = k2_pos.front();
    Weight rho_k2 = oracle::half_sum(k2_pos, e6.g->basis);
    for (const auto& a : k2_pos)
        if (inner(a, rho_k2) > inner(top, rho_k2))
            top = a;
    compare_compact_branch(e6, hc6, top);
    auto cb = compact_branch_at(e6, hc6.psi, split, top + rho_k2);
    CHECK(cb.entries.size() == 2);
}

TEST_CASE("lowest K-type and the K2-trivial construction", "[branching]")
{
    auto es = lookup_pair_all("sp(1,3)/sp(1,1)+sp(2)");
    const auto& e = es.front();
    auto hc = construct_k2_trivial_parameter(e, e.family.front(), {Rat(5)});
    CHECK(hc.weight == parse_weight("3,2,1|5"));
    auto lk = lowest_k_type(e, hc);
    CHECK(lk.hc == parse_weight("3,2,1|8"));
    CHECK(lk.highest_weight == parse_weight("0,0,0|7"));
    CHECK(lk.Lambda2 == parse_weight("3,2,1|0"));
    CHECK(central_shift(e, hc).is_zero());

    auto kind = [&](std::vector<Rat> h) {
        try {
            construct_k2_trivial_parameter(e, e.family.front(), h);
        } catch (const Error& x) {
            return x.kind();
        }
        return ErrorKind::consistency;
    };
    CHECK(kind({Rat(2)}) == ErrorKind::singular);
    CHECK(kind({Rat(-5)}) == ErrorKind::non_admissible);
    CHECK(kind({}) == ErrorKind::invalid_input);

    // e6(2)/f4(4) at n = 10 lands on a wall of the compact chamber
    auto e6 = lookup_pair("e6(2)/f4(4)");
    try {
        construct_k2_trivial_parameter(e6, e6.family.front(), {Rat(0)});
        FAIL("expected a singular parameter");
    } catch (const Error& x) {
        CHECK(x.kind() == ErrorKind::singular);
    }
    CHECK_NOTHROW(construct_k2_trivial_parameter(e6, e6.family.front(), {Rat(10)}));
}

TEST_CASE("worked examples", "[branching]")
{
    for (auto m : {Method::duality, Method::duflo_vargas}) {
        auto one = verify_example_I(3, 1, 5, 15, m, 1);
        INFO(one.first_mismatch);
        CHECK(one.pass);
        auto four = verify_example_IV(parse_weight("7/2,3/2|1/2"), 12, m, 1);
        INFO(four.first_mismatch);
        CHECK(four.pass);
    }
    auto four_b = verify_example_IV(parse_weight("9/2,3/2|1/2"), 8, Method::duality, 1);
    CHECK(four_b.pass);
    auto two = verify_example_II(2, parse_weight("4,2|1"), 12, 1);
    CHECK(two.pass);
    auto three = verify_example_III(20, 12, Method::duality, 1);
    INFO(three.first_mismatch);
    CHECK(three.pass);
    for (auto mode : {BlattnerMode::full, BlattnerMode::restricted}) {
        CHECK(verify_sp1b_types(2, 4, 12, mode).pass);
        CHECK(verify_sp1b_types(2, 3, 12, mode).pass);
        CHECK(verify_sp1b_types(3, 7, 8, mode).pass);
    }
}

TEST_CASE("Example I ladder", "[branching]")
{
    auto [e, hc] = suite::resolve({"sp(1,3)/sp(1,1)+sp(2)", "3,2,1|5"});
    auto r = duality_branch(e, hc, opts(15));
    REQUIRE(r.entries.size() == 3);
    auto rows = r.sorted();
    CHECK(to_text(rows[0].first) == "1,2,1|7");
    CHECK(to_text(rows[1].first) == "1,3,1|8");
    CHECK(to_text(rows[2].first) == "1,4,1|9");
    CHECK(r.multiplicity_free);
    CHECK(r.mu_min == rows[0].first);
}

TEST_CASE("duality and Duflo-Vargas agree", "[branching]")
{
    for (const auto& in : std::vector<suite::Instance>{{"su(2,2)/su(2,1)+u(1)", ""},
                                                        {"sp(1,2)/sp(1,1)+sp(1)", "2,1|4"},
                                                        {"so(2,4)/so(2,2)+so(2)", ""},
                                                        {"su(3,1)/su(2,1)+u(1)", ""},
                                                        {"sp(2,R)/u(1,1)", "5,1|"},
                                                        {"so(4,2)/so(4,1)", "4,2|1"}}) {
        auto [e, hc] = suite::resolve(in);
        auto c = make_context(e, hc);
        auto d = duality_branch(c, opts(10));
        auto v = duflo_vargas(c, opts(10));
        INFO(in.pair << "  " << to_text(hc.weight));
        CHECK_FALSE(d.entries.empty());
        CHECK(d.entries == v.entries);
        CHECK(diff_lines(d, v).empty());
    }
}

TEST_CASE("multiplicity-free predicates", "[branching]")
{
    auto [e, hc] = suite::resolve({"sp(2,R)/u(1,1)", "5,1|"});
    auto r = duality_branch(e, hc, opts(12));
    CHECK_FALSE(r.multiplicity_free);
    CHECK_FALSE(multiplicity_free(r));
    auto [f, hf] = suite::resolve({"so(4,2)/so(4,1)", "4,2|1"});
    CHECK(duality_branch(f, hf, opts(8)).multiplicity_free);
}

TEST_CASE("engine errors", "[branching]")
{
    auto u = lookup_pair_all("so(4,4)/u(2,2)_11");
    try {
        resolve_parameter(u, parse_weight("3,1|2,1"));
        FAIL("expected an error");
    } catch (const Error& x) {
        CHECK(x.kind() == ErrorKind::unimplemented_pair);
        CHECK(x.exit_code() == 1);
    }
    auto iv = lookup_pair("so(4,3)/so(4,2)");
    auto hol = make_parameter(iv, parse_weight("1/2,3/2|7/2"));
    CHECK_THROWS_AS(make_context(iv, hol), Error);
    CHECK(Error(ErrorKind::consistency, "x").exit_code() == 2);
}

TEST_CASE("translation by rho_n^H", "[lemmas]")
{
    auto t = suite::translation_invariance(20, 3);
    INFO(t.summary());
    CHECK(t.ok());
    auto [e, hc] = suite::resolve({"sp(1,3)/sp(1,1)+sp(2)", "3,2,1|5"});
    BranchOptions o = opts(15);
    o.shifted_check = true;
    CHECK_NOTHROW(duality_branch(e, hc, o));
}

TEST_CASE("full and W_U-restricted Blattner sums agree", "[lemmas]")
{
    std::vector<std::string> labels;
    auto t = suite::mode_equivalence(4, &labels);
    INFO(t.summary());
    CHECK(t.ok());
    CHECK(labels.size() > 10);
}

TEST_CASE("central shift on the su(m,n) rows", "[lemmas]")
{
    auto t = suite::central_shift_translation();
    INFO(t.summary());
    CHECK(t.ok());
    // holomorphic and so(2m,2) systems carry no shift
    for (const auto& in : std::vector<suite::Instance>{{"sp(2,R)/u(1,1)", "5,1|"}, {"so(6,2)/so(6,1)", ""}}) {
        auto [e, hc] = suite::resolve(in);
        CHECK(central_shift(e, hc).is_zero());
    }
}

TEST_CASE("JSON round trip", "[io]")
{
    auto [e, hc] = suite::resolve({"so(4,3)/so(4,2)", "7/2,3/2|1/2"});
    auto r = duflo_vargas(e, hc, opts(12));
    auto text = json_text(r);
    auto back = report_from_json(nlohmann::json::parse(text));
    CHECK(back == report_of(r));
    CHECK(to_json(back).dump(2) + "\n" == text);
    auto j = nlohmann::json::parse(text);
    CHECK(j["method"] == "duflo_vargas");
    CHECK(j["sign"] == -1);
    CHECK(j["window"] == "12");
    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{\"pair\": 3}")), Error);

    std::ostringstream table, tsv;
    write_table(table, r);
    write_tsv(tsv, r);
    CHECK(table.str().find("multiplicity free in window: yes") != std::string::npos);
    CHECK(tsv.str().rfind("mu\theight\tmult\n", 0) == 0);
}

TEST_CASE("results do not depend on the thread count", "[io]")
{
    for (const auto& in : std::vector<suite::Instance>{{"sp(1,3)/sp(1,1)+sp(2)", "3,2,1|5"},
                                                        {"so(4,3)/so(4,2)", "7/2,3/2|1/2"},
                                                        {"su(2,2)/su(2,1)+u(1)", ""}}) {
        auto [e, hc] = suite::resolve(in);
        auto c = make_context(e, hc);
        for (auto m : {Method::duality, Method::duflo_vargas}) {
            auto run = [&](unsigned t) {
                return json_text(m == Method::duality ? duality_branch(c, opts(12, t)) : duflo_vargas(c, opts(12, t)));
            };
            CHECK(run(1) == run(4));
        }
    }
    std::vector<int> hits(100, 0);
    parallel_blocks(hits.size(), 4, [&](unsigned, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            ++hits[i];
    });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_blocks(8, 4, [](unsigned w, std::size_t, std::size_t) {
                        if (w == 2)
                            fail(ErrorKind::invalid_input, "worker");
                    }),
                    Error);
}
