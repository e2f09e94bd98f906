#include <iostream>

#include <CLI11.hpp>

#include <branchkit/branchkit.hpp>
#include <branchkit/io.hpp>
#include <branchkit/verify.hpp>

using namespace branchkit;

namespace {

struct ComputeArgs {
    std::string pair, lambda, window = "20", method = "duality", format = "table";
    unsigned threads = 0;
    bool shifted_check = false;
};

void render(const BranchingResult& r, const std::string& format)
{
    if (format == "json")
        std::cout << json_text(r);
    else if (format == "tsv")
        write_tsv(std::cout, r);
    else
        write_table(std::cout, r);
}

int cmd_compute(const ComputeArgs& a)
{
    Rat window = parse_rat(a.window);
    if (window <= 0)
        fail(ErrorKind::invalid_input, "window must be positive");
    auto [e, hc] = resolve_parameter(lookup_pair_all(a.pair), parse_weight(a.lambda));
    BranchOptions o;
    o.window = window;
    o.threads = a.threads;
    o.shifted_check = a.shifted_check;
    auto c = make_context(e, hc);
    if (a.method == "duality") {
        render(duality_branch(c, o), a.format);
        return 0;
    }
    if (a.method == "duflo_vargas") {
        render(duflo_vargas(c, o), a.format);
        return 0;
    }
    auto d = duality_branch(c, o);
    auto v = duflo_vargas(c, o);
    auto diff = diff_lines(d, v);
    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["duality"] = to_json(report_of(d));
        j["duflo_vargas"] = to_json(report_of(v));
        j["diff"] = diff;
        std::cout << j.dump(2) << "\n";
    } else {
        render(d, a.format);
        std::cout << "\n";
        render(v, a.format);
        std::cout << "\nDIFF\n";
        for (const auto& l : diff)
            std::cout << l << "\n";
    }
    return diff.empty() ? 0 : 2;
}

int cmd_catalog(const std::string& needle)
{
    for (const auto* r : Catalog::active().filter(needle)) {
        std::cout << r->get("g") << "\t" << r->get("h") << "\t" << r->get("h0") << "\t" << r->get("psi") << "\t"
                  << r->get("k1") << "\t" << (r->flag("equal_rank") ? "equal_rank" : "unequal_rank") << "\t"
                  << (r->flag("implemented") ? "implemented" : "unimplemented") << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string example;
    int n = 0;
    std::string window;
    std::string method = "duality";
    unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a)
{
    Method m = a.method == "duflo_vargas" ? Method::duflo_vargas : Method::duality;
    auto win = [&](const char* d) { return parse_rat(a.window.empty() ? d : a.window); };
    VerifyReport rep;
    if (a.example == "I")
        rep = verify_example_I(3, 1, a.n ? a.n : 5, win("15"), m, a.threads);
    else if (a.example == "II")
        rep = verify_example_II(2, parse_weight("4,2|1"), win("12"), a.threads);
    else if (a.example == "III")
        rep = verify_example_III(a.n ? a.n : 20, win("12"), m, a.threads);
    else if (a.example == "IV")
        rep = verify_example_IV(parse_weight("7/2,3/2|1/2"), win("12"), m, a.threads);
    else
        rep = verify_sp1b_types(2, a.n ? a.n : 3, win("12"));
    for (const auto& l : rep.lines)
        std::cout << l << "\n";
    std::cout << "verify " << a.example << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    if (!rep.pass) {
        std::cerr << "first difference: " << rep.first_mismatch << "\n";
        return 2;
    }
    return 0;
}

struct PartitionArgs {
    std::string set, target, functional;
    bool shifted = false;
    std::string heaviside_window;
};

std::vector<Weight> parse_weight_list(const std::string& s)
{
    std::vector<Weight> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos)
            out.push_back(parse_weight(item));
    if (out.empty())
        fail(ErrorKind::parse, "empty weight list");
    for (const auto& w : out)
        out.front().same(w);
    return out;
}

int cmd_partition(const PartitionArgs& a)
{
    WeightMultiset S(parse_weight_list(a.set));
    std::optional<Weight> xi;
    if (!a.functional.empty())
        xi = parse_weight(a.functional);
    if (!a.heaviside_window.empty()) {
        if (!xi)
            xi = acyclic_functional(S.expanded());
        if (!xi)
            fail(ErrorKind::acyclicity, "no functional is positive on the whole multiset");
        std::cout << heaviside(S, TruncationWindow{*xi, parse_rat(a.heaviside_window)}).dump();
        return 0;
    }
    if (a.target.empty())
        fail(ErrorKind::invalid_input, "--target or --heaviside-window is required");
    Weight t = parse_weight(a.target);
    std::cout << (a.shifted ? shifted_partition(S, t, xi) : kostant_partition(S, t, xi)) << "\n";
    return 0;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"branchkit: discrete series branching for symmetric pairs"};
    app.require_subcommand(1);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "spectrum of a discrete series restricted to H");
    compute->add_option("--pair", ca.pair, "symmetric pair, e.g. \"sp(1,3)/sp(1,1)+sp(2)\"")->required();
    compute->add_option("--lambda", ca.lambda, "Harish-Chandra parameter, e.g. \"3,2,1|5\"")->required();
    compute->add_option("--window", ca.window, "bound on (xi, mu - mu_min)")->capture_default_str();
    compute->add_option("--method", ca.method)
        ->check(CLI::IsMember({"duality", "duflo_vargas", "both"}))
        ->capture_default_str();
    compute->add_option("--format", ca.format)->check(CLI::IsMember({"table", "json", "tsv"}))->capture_default_str();
    compute->add_option("--threads", ca.threads, "worker threads (0: available parallelism)")->capture_default_str();
    compute->add_flag("--shifted-check", ca.shifted_check, "also evaluate the rho_n^H-shifted form");

    std::string needle;
    auto* catalog = app.add_subcommand("catalog", "list catalog rows");
    catalog->add_option("filter", needle, "substring to match");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "replay a worked example against its closed form");
    verify->add_option("example", va.example)
        ->required()
        ->check(CLI::IsMember({"I", "II", "III", "IV", "sp1b_types"}));
    verify->add_option("--n", va.n, "ladder parameter n");
    verify->add_option("--window", va.window);
    verify->add_option("--method", va.method)->check(CLI::IsMember({"duality", "duflo_vargas"}))->capture_default_str();
    verify->add_option("--threads", va.threads);

    PartitionArgs pa;
    auto* partition = app.add_subcommand("partition", "Kostant partition counts and Heaviside distributions");
    partition->add_option("--set", pa.set, "weights separated by ';'")->required();
    partition->add_option("--target", pa.target);
    partition->add_option("--functional", pa.functional);
    partition->add_flag("--shifted", pa.shifted, "count partitions of target - (sum S)/2");
    partition->add_option("--heaviside-window", pa.heaviside_window, "print y_S up to this height");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*compute)
            return cmd_compute(ca);
        if (*catalog)
            return cmd_catalog(needle);
        if (*verify)
            return cmd_verify(va);
        return cmd_partition(pa);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }
}
