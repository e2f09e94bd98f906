#include <chrono>
#include <functional>
#include <iostream>

#include <branchkit/io.hpp>
#include <branchkit/verify.hpp>

#include "support.hpp"

using namespace branchkit;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::vector<std::string> notes;
};

BranchOptions opts(const Rat& window, unsigned threads)
{
    BranchOptions o;
    o.window = window;
    o.threads = threads;
    return o;
}

// JSON of every engine run made by criteria 1-5, replayed at 4 threads by criterion 9
struct Replay {
    std::string label;
    std::function<BranchingResult(unsigned)> run;
    std::string json1;
};
std::vector<Replay> replays;

BranchingResult recorded(const std::string& label, std::function<BranchingResult(unsigned)> run)
{
    auto r = run(1);
    replays.push_back({label, std::move(run), json_text(r)});
    return r;
}

std::function<BranchingResult(unsigned)> engine(const BranchContext& c, Method m, const Rat& window)
{
    return [c, m, window](unsigned t) {
        return m == Method::duality ? duality_branch(c, opts(window, t)) : duflo_vargas(c, opts(window, t));
    };
}

void report_lines(Outcome& o, const VerifyReport& r, std::size_t keep = 6)
{
    for (std::size_t i = 0; i < r.lines.size() && i < keep; ++i)
        o.notes.push_back(r.lines[i]);
    if (r.lines.size() > keep)
        o.notes.push_back("... " + std::to_string(r.lines.size() - keep) + " more lines");
    if (!r.pass)
        o.notes.push_back("first difference: " + r.first_mismatch);
}

Outcome example_one()
{
    Outcome o;
    auto rep = verify_example_I(3, 1, 5, 15, Method::duality, 1);
    report_lines(o, rep);
    auto e = lookup_pair("sp(1,3)/sp(1,1)+sp(2)");
    auto c = make_context(e, construct_k2_trivial_parameter(e, e.family.front(), {Rat(5)}));
    auto r = recorded("Example I duality", engine(c, Method::duality, 15));
    o.pass = rep.pass && r.multiplicity_free && r.entries.size() == 3;
    return o;
}

std::string spectrum_text(const std::map<Weight, std::int64_t>& m)
{
    std::string s;
    for (const auto& [mu, v] : m)
        s += to_text(mu) + "\t" + std::to_string(v) + "\n";
    return s;
}

std::string sp12_text;

Outcome sp1b()
{
    Outcome o;
    auto full = verify_sp1b_types(2, 4, 12, BlattnerMode::full);
    auto restricted = verify_sp1b_types(2, 4, 12, BlattnerMode::restricted);
    report_lines(o, full);
    o.notes.push_back(std::string("restricted W_U sum: ") + (restricted.pass ? "same ladder" : "differs"));
    auto psi = named_system("sp(1,2):Psi_plus");
    Weight Xi = parse_weight("2,1|4") - psi.rho_n;
    sp12_text = spectrum_text(blattner_spectrum(psi, Xi, {psi.rho, inner(psi.rho, parse_weight("2,1|4")) + 12}));
    o.pass = full.pass && restricted.pass;
    return o;
}

Outcome example_four()
{
    Outcome o;
    auto d = verify_example_IV(parse_weight("7/2,3/2|1/2"), 12, Method::duality, 1);
    auto v = verify_example_IV(parse_weight("7/2,3/2|1/2"), 12, Method::duflo_vargas, 1);
    report_lines(o, d);
    o.notes.push_back(std::string("duflo_vargas: ") + (v.pass ? "same set" : "differs: " + v.first_mismatch));
    auto [e, hc] = resolve_parameter(lookup_pair_all("so(4,3)/so(4,2)"), parse_weight("7/2,3/2|1/2"));
    auto c = make_context(e, hc);
    recorded("Example IV duality", engine(c, Method::duality, 12));
    recorded("Example IV duflo_vargas", engine(c, Method::duflo_vargas, 12));
    o.pass = d.pass && v.pass;
    return o;
}

Outcome example_three()
{
    Outcome o;
    try {
        auto rep = verify_example_III(10, 12, Method::duality, 1);
        report_lines(o, rep);
        o.pass = rep.pass;
    } catch (const Error& x) {
        o.notes.push_back(std::string("n = 10: ") + x.what());
        o.notes.push_back("lambda = rho of SU(6) is orthogonal to the compact root alpha_max: no discrete series at n = 10");
        o.notes.push_back("n = 11..19 are singular or not Psi_BS-dominant; n = 20 is the first admissible value");
        o.pass = false;
    }
    // the same ladder at n = 20, where the parameter is regular
    auto d = verify_example_III(20, 12, Method::duality, 1);
    auto v = verify_example_III(20, 12, Method::duflo_vargas, 1);
    o.notes.push_back(std::string("n = 20 duality: ") + (d.pass ? "ladder reproduced" : d.first_mismatch));
    o.notes.push_back(std::string("n = 20 duflo_vargas: ") + (v.pass ? "ladder reproduced" : v.first_mismatch));
    for (std::size_t i = 0; i + 1 < d.lines.size() && i < 4; ++i)
        o.notes.push_back(d.lines[i + 1]);
    auto e = lookup_pair("e6(2)/f4(4)");
    auto c = make_context(e, construct_k2_trivial_parameter(e, e.family.front(), {Rat(10)}));
    recorded("Example III n=20 duality", engine(c, Method::duality, 12));
    return o;
}

Outcome cross_method()
{
    Outcome o;
    int equal_rank = 0, agree = 0;
    std::set<std::string> tables;
    for (const auto& in : suite::cross_method_instances()) {
        auto [e, hc] = suite::resolve(in);
        auto c = make_context(e, hc);
        auto d = recorded(in.pair + " duality", engine(c, Method::duality, 12));
        auto v = recorded(in.pair + " duflo_vargas", engine(c, Method::duflo_vargas, 12));
        bool same = !d.entries.empty() && d.entries == v.entries;
        agree += same;
        if (same && e.equal_rank && e.g->basis.rank() <= 5) {
            ++equal_rank;
            tables.insert(e.row->get("table"));
        }
        std::string line = (same ? "agree  " : "DIFFER ") + in.pair + "  lambda " + to_text(hc.weight) + "  keys " +
                           std::to_string(d.entries.size());
        if (!same)
            for (const auto& l : diff_lines(d, v))
                line += "\n      " + l;
        o.notes.push_back(line);
    }
    std::string ts;
    for (const auto& t : tables)
        ts += (ts.empty() ? "" : ",") + t;
    o.notes.push_back(std::to_string(equal_rank) + " equal-rank instances agree, tables " + ts);
    o.pass = agree == static_cast<int>(suite::cross_method_instances().size()) && equal_rank >= 8 &&
             tables.count("1") && tables.count("3");
    return o;
}

Outcome lemmas()
{
    Outcome o;
    auto a = suite::translation_invariance(50, 2024);
    std::vector<std::string> mode_labels, shift_labels;
    auto b = suite::mode_equivalence(6, &mode_labels);
    auto c = suite::central_shift_translation(&shift_labels);
    o.notes.push_back("(a) translation by rho_n^H: " + a.summary());
    o.notes.push_back("(b) full = W_U-restricted Blattner: " + b.summary() + " systems");
    o.notes.push_back("(c) central shift on su(m,n): " + c.summary());
    int nonzero = 0;
    for (const auto& l : shift_labels)
        nonzero += l.find("shift 0") == std::string::npos;
    o.notes.push_back("    " + std::to_string(nonzero) + " of " + std::to_string(shift_labels.size()) +
                      " su(m,n) instances have a nonzero shift");
    o.pass = a.ok() && b.ok() && c.ok();
    return o;
}

Outcome partitions()
{
    Outcome o;
    auto a = suite::partition_oracle(1000, 1);
    auto b = suite::convolution_laws(200, 2);
    auto c = suite::truncation_refinement(100, 3);
    o.notes.push_back("kostant/heaviside vs enumeration: " + a.summary());
    o.notes.push_back("convolution laws: " + b.summary());
    o.notes.push_back("truncation refinement: " + c.summary());
    o.pass = a.ok() && a.cases == 1000 && b.ok() && b.cases == 400 && c.ok() && c.cases == 100;
    return o;
}

Outcome multiplicity_free_lists()
{
    Outcome o;
    auto mf = [&](const std::string& label, const BranchingResult& r) {
        std::int64_t top = 0;
        for (const auto& [mu, m] : r.entries)
            top = std::max(top, m);
        o.notes.push_back(label + ": " + (r.multiplicity_free ? "multiplicity free" : "not multiplicity free") +
                          " within min + " + format_rat(r.window_relative) + "  (" + std::to_string(r.entries.size()) +
                          " keys, max " + std::to_string(top) + ")");
        return r.multiplicity_free && !r.entries.empty();
    };
    auto e1 = lookup_pair("sp(1,3)/sp(1,1)+sp(2)");
    bool one = mf("Example I", duality_branch(e1, construct_k2_trivial_parameter(e1, e1.family.front(), {Rat(5)}), opts(15, 1)));
    auto [e2, h2] = resolve_parameter(lookup_pair_all("so(4,2)/so(4,1)"), parse_weight("4,2|1"));
    bool two = mf("Spin(4,2) -> Spin(4,1)", duality_branch(e2, h2, opts(12, 1)));
    auto e3 = lookup_pair("f4(4)/so(5,4)");
    auto h3 = construct_k2_trivial_parameter(e3, e3.family.front(), {Rat(8)});
    bool three = mf("f4(4) -> so(5,4) at " + to_text(h3.weight), duality_branch(e3, h3, opts(12, 1)));
    auto [e4, h4] = resolve_parameter(lookup_pair_all("sp(2,R)/u(1,1)"), parse_weight("5,1|"));
    auto r4 = duality_branch(e4, h4, opts(12, 1));
    bool four = !mf("sp(2,R) -> u(1,1) at 5,1|", r4) && !r4.entries.empty();
    o.pass = one && two && three && four;
    return o;
}

Outcome determinism()
{
    Outcome o;
    int same = 0;
    for (const auto& r : replays) {
        bool eq = json_text(r.run(4)) == r.json1;
        same += eq;
        if (!eq)
            o.notes.push_back("differs at 4 threads: " + r.label);
    }
    auto psi = named_system("sp(1,2):Psi_plus");
    Weight Xi = parse_weight("2,1|4") - psi.rho_n;
    bool sp = spectrum_text(blattner_spectrum(psi, Xi, {psi.rho, inner(psi.rho, parse_weight("2,1|4")) + 12})) ==
              sp12_text;
    o.notes.push_back(std::to_string(same) + "/" + std::to_string(replays.size()) +
                      " engine runs byte-identical at 1 and 4 threads; Sp(1,2) spectrum " +
                      (sp ? "identical" : "differs"));
    o.pass = same == static_cast<int>(replays.size()) && sp && !replays.empty();
    return o;
}

}

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        Outcome (*run)();
    };
    const std::vector<Criterion> all{
        {1, "Example I ladder, sp(1,3) -> sp(1,1)+sp(2), n = 5, window 15", 5, example_one},
        {2, "Sp(1,2) quaternionic L-types, n = 4, window 12", 5, sp1b},
        {3, "Example IV interlacing, so(4,3) -> so(4,2), window 12", 30, example_four},
        {4, "Example III ladder, e6(2) -> f4(4), n = 10", 600, example_three},
        {5, "duality vs Duflo-Vargas on small instances, window 12", 120, cross_method},
        {6, "lemma suite: translation, W_U restriction, central shift", 120, lemmas},
        {7, "partition and distribution suite", 60, partitions},
        {8, "multiplicity-free predicates", 300, multiplicity_free_lists},
        {9, "determinism at 1 and 4 threads", 600, determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& x) {
            o.pass = false;
            o.notes.push_back(std::string("error: ") + x.what());
        }
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        bool in_time = s <= c.budget_s;
        if (!in_time)
            o.notes.push_back("over the time budget of " + std::to_string(static_cast<int>(c.budget_s)) + " s");
        bool pass = o.pass && in_time;
        failed += !pass;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2fs", s);
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << secs
                  << "]\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : std::string("all criteria passed\n"));
    return failed ? 1 : 0;
}
