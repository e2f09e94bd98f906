#pragma once

#include <ostream>

#include <json.hpp>

#include "branching.hpp"

namespace branchkit {

// Plain-text view of a result; what the JSON form carries.
struct SpectrumReport {
    std::string pair, lambda, method, window;
    int sign = 1;
    bool multiplicity_free = true;
    std::vector<std::pair<std::string, std::int64_t>> spectrum;

    friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

inline SpectrumReport report_of(const BranchingResult& r)
{
    SpectrumReport s;
    s.pair = r.pair;
    s.lambda = to_text(r.lambda.weight);
    s.method = method_name(r.method);
    s.window = format_rat(r.window_relative);
    s.sign = r.sign;
    s.multiplicity_free = r.multiplicity_free;
    for (const auto& [mu, m] : r.sorted())
        s.spectrum.emplace_back(to_text(mu), m);
    return s;
}

inline nlohmann::ordered_json to_json(const SpectrumReport& s)
{
    nlohmann::ordered_json j;
    j["pair"] = s.pair;
    j["lambda"] = s.lambda;
    j["method"] = s.method;
    j["sign"] = s.sign;
    j["window"] = s.window;
    j["multiplicity_free"] = s.multiplicity_free;
    j["spectrum"] = nlohmann::ordered_json::array();
    for (const auto& [mu, m] : s.spectrum)
        j["spectrum"].push_back({{"mu", mu}, {"mult", m}});
    return j;
}

inline SpectrumReport report_from_json(const nlohmann::json& j)
{
    try {
        SpectrumReport s;
        s.pair = j.at("pair").get<std::string>();
        s.lambda = j.at("lambda").get<std::string>();
        s.method = j.at("method").get<std::string>();
        s.sign = j.at("sign").get<int>();
        s.window = j.at("window").get<std::string>();
        s.multiplicity_free = j.at("multiplicity_free").get<bool>();
        for (const auto& e : j.at("spectrum"))
            s.spectrum.emplace_back(e.at("mu").get<std::string>(), e.at("mult").get<std::int64_t>());
        return s;
    } catch (const nlohmann::json::exception& x) {
        fail(ErrorKind::parse, std::string("result JSON: ") + x.what());
    }
}

inline std::string json_text(const BranchingResult& r) { return to_json(report_of(r)).dump(2) + "\n"; }

inline void write_table(std::ostream& os, const BranchingResult& r)
{
    os << "pair    " << r.pair << "\n"
       << "lambda  " << to_text(r.lambda.weight) << "  (" << r.lambda.psi.name << ")\n"
       << "method  " << method_name(r.method) << "  sign " << (r.sign > 0 ? "+1" : "-1") << "\n"
       << "window  (" << to_text(r.window.functional) << ", mu) <= " << format_rat(r.window.bound) << "  [min + "
       << format_rat(r.window_relative) << "]\n"
       << "multiplicity free in window: " << (r.multiplicity_free ? "yes" : "no") << "\n";
    std::size_t w = 2;
    auto rows = r.sorted();
    for (const auto& [mu, m] : rows)
        w = std::max(w, to_text(mu).size());
    os << "  " << std::string("mu") << std::string(w - 2, ' ') << "  height  mult\n";
    for (const auto& [mu, m] : rows) {
        std::string t = to_text(mu), h = format_rat(inner(r.window.functional, mu));
        os << "  " << t << std::string(w - t.size(), ' ') << "  " << h << std::string(h.size() < 6 ? 6 - h.size() : 0, ' ')
           << "  " << m << "\n";
    }
}

inline void write_tsv(std::ostream& os, const BranchingResult& r)
{
    os << "mu\theight\tmult\n";
    for (const auto& [mu, m] : r.sorted())
        os << to_text(mu) << "\t" << format_rat(inner(r.window.functional, mu)) << "\t" << m << "\n";
}

// entries present in one result and not the other, or with different values
inline std::vector<std::string> diff_lines(const BranchingResult& a, const BranchingResult& b)
{
    std::vector<std::string> out;
    std::set<Weight> keys;
    for (const auto& [mu, m] : a.entries)
        keys.insert(mu);
    for (const auto& [mu, m] : b.entries)
        keys.insert(mu);
    for (const auto& mu : keys) {
        auto x = a.entries.count(mu) ? a.entries.at(mu) : 0;
        auto y = b.entries.count(mu) ? b.entries.at(mu) : 0;
        if (x != y)
            out.push_back(to_text(mu) + "\t" + method_name(a.method) + "=" + std::to_string(x) + "\t" +
                          method_name(b.method) + "=" + std::to_string(y));
    }
    return out;
}

}
