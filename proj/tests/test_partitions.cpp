#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace branchkit;

namespace {

std::vector<Weight> ws(std::initializer_list<const char*> xs)
{
    std::vector<Weight> out;
    for (const char* x : xs)
        out.push_back(parse_weight(x));
    return out;
}

}

TEST_CASE("Kostant partition counts", "[partitions]")
{
    // A2 positive roots α, β, α+β
    WeightMultiset a2(ws({"1,-1,0|", "0,1,-1|", "1,0,-1|"}));
    CHECK(kostant_partition(a2, parse_weight("1,0,-1|")) == 2);
    CHECK(kostant_partition(a2, parse_weight("0,0,0|")) == 1);
    CHECK(kostant_partition(a2, parse_weight("-1,0,1|")) == 0);
    CHECK(kostant_partition(a2, parse_weight("2,0,-2|")) == 3);
    CHECK(kostant_partition(a2, parse_weight("1/2,0,-1/2|")) == 0);

    // order of S does not matter
    WeightMultiset rev(ws({"1,0,-1|", "0,1,-1|", "1,-1,0|"}));
    for (std::string t : {"3,-1,-2|", "2,1,-3|", "4,0,-4|"})
        CHECK(kostant_partition(a2, parse_weight(t)) == kostant_partition(rev, parse_weight(t)));

    // shifted convention starts at half the sum
    CHECK(shifted_partition(a2, parse_weight("1,0,-1|")) == 1);
    CHECK(shifted_partition(a2, parse_weight("2,0,-2|")) == 2);
    CHECK(shifted_partition(a2, parse_weight("0,0,0|")) == 0);
}

TEST_CASE("cyclic multisets are rejected", "[partitions]")
{
    WeightMultiset cyc(ws({"1,0|", "-1,0|"}));
    CHECK_THROWS_AS(kostant_partition(cyc, parse_weight("0,0|")), Error);
    CHECK_FALSE(acyclic_functional(cyc.expanded()).has_value());
    WeightMultiset with_zero(ws({"1,0|", "0,0|"}));
    CHECK_FALSE(acyclic_functional(with_zero.expanded()).has_value());
    auto f = acyclic_functional(ws({"1,-1|", "0,1|"}));
    REQUIRE(f.has_value());
    CHECK(inner(*f, parse_weight("1,-1|")) > 0);
    CHECK(inner(*f, parse_weight("0,1|")) > 0);
}

TEST_CASE("Heaviside distributions", "[partitions]")
{
    Weight g = parse_weight("1,0|");
    Weight xi = parse_weight("1,0|");
    auto y = heaviside(WeightMultiset({g}), TruncationWindow{xi, 5});
    CHECK(y.at(g * Rat(1, 2)) == 1);
    CHECK(y.at(g) == 0);
    CHECK(y.at(g * Rat(3, 2)) == 1);
    CHECK(y.at(g * Rat(9, 2)) == 1);
    CHECK(y.coeffs.size() == 5);

    auto yy = heaviside(WeightMultiset({g, g}), TruncationWindow{xi, 5});
    CHECK(yy.at(g) == 1);
    CHECK(yy.at(g * Rat(2)) == 2);
    CHECK(yy.at(g * Rat(3)) == 3);

    auto unit = heaviside(WeightMultiset(), TruncationWindow{xi, 5});
    CHECK(unit.coeffs.size() == 1);
    CHECK(unit.at(zero_like(xi)) == 1);

    CHECK_THROWS_AS(heaviside(WeightMultiset({g}), TruncationWindow{parse_weight("-1,0|"), 5}), Error);
}

TEST_CASE("convolution", "[partitions]")
{
    Weight g = parse_weight("1,0|"), xi = parse_weight("2,1|");
    TruncationWindow w{xi, 10};
    auto y = heaviside(WeightMultiset({g}), w);
    auto yy = heaviside(WeightMultiset({g, g}), w);
    auto c = convolve(y, y);
    CHECK(suite::agree_below(c, yy, c.window.bound));

    Weight lam = parse_weight("1,3|");
    auto d = WeightDistribution::delta(lam, TruncationWindow{xi, 12});
    auto shifted = convolve(d, yy);
    auto moved = yy.translated(lam);
    CHECK(suite::agree_below(shifted, moved, std::min(shifted.window.bound, moved.window.bound)));

    CHECK_THROWS_AS(convolve(y, heaviside(WeightMultiset({g}), TruncationWindow{parse_weight("1,0|"), 10})), Error);
}

TEST_CASE("skew projection", "[partitions]")
{
    // Weyl antisymmetrization of one regular orbit of A1 × A1
    std::vector<Weight> pos = ws({"1,0|", "0,1|"});
    Weight nu = parse_weight("2,3|"), xi = parse_weight("1,1|");
    WeightDistribution D(TruncationWindow{xi, 10}, -10);
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            Weight w = nu;
            w[0] *= a;
            w[1] *= b;
            D.add(w, a * b);
        }
    auto p = skew_project(D, pos);
    CHECK(p == std::map<Weight, std::int64_t>{{nu, 1}});

    WeightDistribution sing(TruncationWindow{xi, 10}, -10);
    sing.add(parse_weight("0,3|"), 4);
    sing.add(parse_weight("2,0|"), -1);
    CHECK(skew_project(sing, pos).empty());
}

TEST_CASE("multiset difference", "[partitions]")
{
    WeightMultiset a(ws({"1,0|", "1,0|", "0,1|"}));
    auto d = a.difference(WeightMultiset(ws({"1,0|"})));
    CHECK(d.size() == 2);
    CHECK(d.count(parse_weight("1,0|")) == 1);
    CHECK_THROWS_AS(a.difference(WeightMultiset(ws({"1,1|"}))), Error);
}

TEST_CASE("randomized agreement with exhaustive enumeration", "[partitions]")
{
    auto t = suite::partition_oracle(150, 7);
    INFO(t.summary());
    CHECK(t.ok());
    auto c = suite::convolution_laws(40, 11);
    INFO(c.summary());
    CHECK(c.ok());
    auto r = suite::truncation_refinement(30, 13);
    INFO(r.summary());
    CHECK(r.ok());
}
