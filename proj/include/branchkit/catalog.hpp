#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "roots.hpp"

namespace branchkit {

// ---- small template language for the schematic rows ----

using Params = std::map<std::string, int>;

namespace detail {

class ExprParser {
public:
    ExprParser(const std::string& s, const Params& p) : s_(s), p_(p) {}

    int parse()
    {
        int v = sum();
        skip();
        if (i_ != s_.size())
            fail(ErrorKind::parse, "trailing characters in expression '" + s_ + "'");
        return v;
    }

private:
    const std::string& s_;
    const Params& p_;
    std::size_t i_ = 0;

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool at(char c)
    {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    int sum()
    {
        int v = product();
        while (true) {
            if (at('+')) {
                ++i_;
                v += product();
            } else if (at('-')) {
                ++i_;
                v -= product();
            } else
                return v;
        }
    }
    int product()
    {
        int v = unary();
        while (true) {
            skip();
            if (at('*')) {
                ++i_;
                v *= unary();
            } else if (at('/')) {
                ++i_;
                int d = unary();
                if (d == 0 || v % d != 0)
                    fail(ErrorKind::parse, "inexact division in '" + s_ + "'");
                v /= d;
            } else if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '(')) {
                v *= unary(); // implicit product, as in 2m
            } else
                return v;
        }
    }
    int unary()
    {
        if (at('-')) {
            ++i_;
            return -unary();
        }
        return atom();
    }
    int atom()
    {
        skip();
        if (i_ >= s_.size())
            fail(ErrorKind::parse, "unexpected end of expression '" + s_ + "'");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            int v = sum();
            if (!at(')'))
                fail(ErrorKind::parse, "missing ')' in '" + s_ + "'");
            ++i_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int v = 0;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                v = v * 10 + (s_[i_++] - '0');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name(1, c);
            ++i_;
            auto it = p_.find(name);
            if (it == p_.end())
                fail(ErrorKind::parse, "unbound variable '" + name + "' in '" + s_ + "'");
            return it->second;
        }
        fail(ErrorKind::parse, std::string("unexpected '") + c + "' in '" + s_ + "'");
    }
};

inline std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[')
            ++depth;
        if (c == ')' || c == ']')
            --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> variables_in(const std::string& s)
{
    std::vector<std::string> out;
    // identifiers inside parentheses are single lowercase letters other than the literal R
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (depth > 0 && std::islower(static_cast<unsigned char>(c))) {
            bool word = (i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1]))) ||
                        (i > 0 && std::isalpha(static_cast<unsigned char>(s[i - 1])));
            if (!word && std::find(out.begin(), out.end(), std::string(1, c)) == out.end())
                out.emplace_back(1, c);
        }
    }
    return out;
}

}

inline int eval_expr(const std::string& e, const Params& p)
{
    return detail::ExprParser(e, p).parse();
}

// chained comparisons such as "1<=k<n"; a list separated by ',' must all hold
inline bool eval_cond(const std::string& text, const Params& p)
{
    for (const auto& part0 : detail::split_top(text, ',')) {
        std::string part = detail::trim(part0);
        if (part.empty())
            continue;
        std::vector<std::string> operands, ops;
        std::string cur;
        for (std::size_t i = 0; i < part.size();) {
            std::string op;
            if (part.compare(i, 2, "<=") == 0 || part.compare(i, 2, ">=") == 0 || part.compare(i, 2, "!=") == 0)
                op = part.substr(i, 2);
            else if (part[i] == '<' || part[i] == '>' || part[i] == '=')
                op = part.substr(i, 1);
            if (!op.empty()) {
                operands.push_back(cur);
                ops.push_back(op);
                cur.clear();
                i += op.size();
            } else
                cur += part[i++];
        }
        operands.push_back(cur);
        if (ops.empty())
            fail(ErrorKind::parse, "condition without comparison: '" + part + "'");
        for (std::size_t k = 0; k < ops.size(); ++k) {
            int a = eval_expr(operands[k], p), b = eval_expr(operands[k + 1], p);
            const auto& op = ops[k];
            bool ok = op == "<" ? a < b : op == "<=" ? a <= b : op == ">" ? a > b : op == ">=" ? a >= b
                    : op == "=" ? a == b : a != b;
            if (!ok)
                return false;
        }
    }
    return true;
}

// "so(2m,2n+1-k)+so(k)" with values substituted, in the written order
inline std::string instantiate_name(const std::string& tmpl, const Params& p)
{
    std::string out;
    for (const auto& comp0 : detail::split_top(tmpl, '+')) {
        std::string comp = detail::trim(comp0);
        auto lp = comp.find('(');
        auto rp = comp.rfind(')');
        if (!out.empty())
            out += '+';
        if (lp == std::string::npos || rp == std::string::npos) {
            out += comp;
            continue;
        }
        std::string suffix = comp.substr(rp + 1);
        out += comp.substr(0, lp + 1);
        auto args = detail::split_top(comp.substr(lp + 1, rp - lp - 1), ',');
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string a = detail::trim(args[i]);
            if (i)
                out += ',';
            if (a == "R" || (!a.empty() && a[0] == '-' && a.size() > 1 && std::isdigit(static_cast<unsigned char>(a[1]))))
                out += a;
            else
                out += std::to_string(eval_expr(a, p));
        }
        out += ')' + suffix;
    }
    return out;
}

// Canonical component multiset: drops zero-dimensional pieces, rewrites x(p,0) as x(p).
inline std::vector<std::string> canonical_components(const std::string& name)
{
    std::vector<std::string> out;
    for (const auto& comp0 : detail::split_top(name, '+')) {
        std::string comp = detail::trim(comp0);
        std::string c;
        for (char ch : comp)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                c += ch;
        auto lp = c.find('(');
        if (lp == std::string::npos || c.back() != ')') {
            out.push_back(c);
            continue;
        }
        std::string head = c.substr(0, lp);
        auto args = detail::split_top(c.substr(lp + 1, c.size() - lp - 2), ',');
        bool numeric = std::all_of(args.begin(), args.end(), [](const std::string& a) {
            return !a.empty() && std::all_of(a.begin(), a.end(), [](char x) { return std::isdigit(static_cast<unsigned char>(x)); });
        });
        if (numeric && (head == "su" || head == "so" || head == "sp" || head == "u")) {
            std::vector<int> v;
            for (const auto& a : args)
                v.push_back(std::stoi(a));
            if (v.size() == 2 && (v[0] == 0 || v[1] == 0)) {
                int s = v[0] + v[1];
                v = {s};
            }
            int tot = 0;
            for (int x : v)
                tot += x;
            if (v.size() == 1 && ((head == "su" && tot <= 1) || (head == "so" && tot <= 1) ||
                                  (head == "sp" && tot == 0) || (head == "u" && tot == 0)))
                continue;
            std::string s = head + "(" + std::to_string(v[0]);
            if (v.size() == 2)
                s += "," + std::to_string(v[1]);
            out.push_back(s + ")");
            continue;
        }
        if (head == "so*" && args.size() == 1 && args[0] == "2") {
            out.push_back("so(2)");
            continue;
        }
        if (head == "so*" && args.size() == 1 && args[0] == "0")
            continue;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool same_algebra(const std::string& a, const std::string& b)
{
    return canonical_components(a) == canonical_components(b);
}

// ---- ambient root systems ----

struct AmbientSpec {
    std::string series; // A B C D E6 E7 E8 F4
    int p = 0, q = 0;
};

inline AmbientSpec parse_ambient(const std::string& text, const Params& pr)
{
    AmbientSpec a;
    auto lp = text.find('(');
    if (lp == std::string::npos) {
        a.series = text;
        return a;
    }
    a.series = text.substr(0, lp);
    auto inside = text.substr(lp + 1, text.size() - lp - 2);
    auto bar = inside.find('|');
    a.p = eval_expr(inside.substr(0, bar), pr);
    a.q = bar == std::string::npos ? 0 : eval_expr(inside.substr(bar + 1), pr);
    return a;
}

struct Ambient {
    Basis basis;
    std::vector<Weight> roots;
    std::vector<Weight> bourbaki_simple; // exceptional only
};

inline std::vector<Weight> e8_roots(const Basis& b)
{
    std::vector<Weight> r;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int s : {1, -1})
                for (int t : {1, -1}) {
                    Weight w(b);
                    w[i] = s;
                    w[j] = t;
                    r.push_back(w);
                }
    for (int m = 0; m < 256; ++m) {
        if (__builtin_popcount(static_cast<unsigned>(m)) % 2)
            continue;
        Weight w(b);
        for (int i = 0; i < 8; ++i)
            w[i] = Rat((m >> i) & 1 ? -1 : 1, 2);
        r.push_back(w);
    }
    return r;
}

inline Ambient build_ambient(const AmbientSpec& a)
{
    Ambient amb;
    auto add_pm = [&](const Weight& w) {
        amb.roots.push_back(w);
        amb.roots.push_back(-w);
    };
    if (a.series == "A" || a.series == "B" || a.series == "C" || a.series == "D") {
        amb.basis = Basis{a.p, a.q, ""};
        const int r = a.p + a.q;
        auto u = [&](int i) { return Weight::unit(amb.basis, i); };
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                add_pm(u(i) - u(j));
                if (a.series != "A")
                    add_pm(u(i) + u(j));
            }
        if (a.series == "B")
            for (int i = 0; i < r; ++i)
                add_pm(u(i));
        if (a.series == "C")
            for (int i = 0; i < r; ++i)
                add_pm(u(i) * Rat(2));
        return amb;
    }
    auto h = Rat(1, 2);
    if (a.series == "F4") {
        amb.basis = Basis{4, 0, ""};
        auto u = [&](int i) { return Weight::unit(amb.basis, i); };
        for (int i = 0; i < 4; ++i) {
            add_pm(u(i));
            for (int j = i + 1; j < 4; ++j) {
                add_pm(u(i) - u(j));
                add_pm(u(i) + u(j));
            }
        }
        for (int m = 0; m < 16; ++m) {
            Weight w(amb.basis);
            for (int i = 0; i < 4; ++i)
                w[i] = (m >> i) & 1 ? -h : h;
            amb.roots.push_back(w);
        }
        amb.bourbaki_simple = {u(1) - u(2), u(2) - u(3), u(3), (u(0) - u(1) - u(2) - u(3)) * h};
        return amb;
    }
    if (a.series == "E6" || a.series == "E7" || a.series == "E8") {
        amb.basis = Basis{8, 0, ""};
        auto u = [&](int i) { return Weight::unit(amb.basis, i); };
        Weight a1(amb.basis);
        for (int i = 0; i < 8; ++i)
            a1[i] = (i == 0 || i == 7) ? h : -h;
        std::vector<Weight> simple{a1, u(0) + u(1), u(1) - u(0), u(2) - u(1), u(3) - u(2), u(4) - u(3), u(5) - u(4), u(6) - u(5)};
        int rank = a.series[1] - '0';
        simple.resize(static_cast<std::size_t>(rank));
        Weight z7 = u(6) + u(7), z6 = u(5) + u(7);
        for (const auto& r : e8_roots(amb.basis)) {
            if (rank <= 7 && inner(r, z7) != 0)
                continue;
            if (rank <= 6 && inner(r, z6) != 0)
                continue;
            amb.roots.push_back(r);
        }
        amb.bourbaki_simple = simple;
        return amb;
    }
    fail(ErrorKind::parse, "unknown ambient series '" + a.series + "'");
}

// dual basis to the simple roots inside their span
inline std::vector<Weight> fundamental_coweights(const std::vector<Weight>& simple)
{
    const std::size_t n = simple.size();
    std::vector<Weight> out;
    for (std::size_t i = 0; i < n; ++i) {
        // solve Σ c_k (α_k, α_j) = δ_ij
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c)
                m[r][c] = inner(simple[r], simple[c]);
            m[r][n] = r == i ? 1 : 0;
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t p = col;
            while (m[p][col] == 0)
                ++p;
            std::swap(m[p], m[col]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || m[r][col] == 0)
                    continue;
                Rat f = m[r][col] / m[col][col];
                for (std::size_t c = col; c <= n; ++c)
                    m[r][c] -= f * m[col][c];
            }
        }
        Weight w = zero_like(simple[0]);
        for (std::size_t k = 0; k < n; ++k)
            w += simple[k] * (m[k][n] / m[k][k]);
        out.push_back(w);
    }
    return out;
}

// "0*m|0*k,1*(n-k)" or "w[1,3]"
inline Weight pattern_vector(const std::string& pat, const Params& p, const Ambient& amb)
{
    std::string s = detail::trim(pat);
    if (s.rfind("w[", 0) == 0) {
        auto cow = fundamental_coweights(amb.bourbaki_simple);
        Weight w(amb.basis);
        for (const auto& idx : detail::split_top(s.substr(2, s.size() - 3), ','))
            w += cow.at(static_cast<std::size_t>(std::stoi(idx) - 1));
        return w;
    }
    auto bar = s.find('|');
    std::vector<Rat> coords;
    auto block = [&](const std::string& b, int expect) {
        std::size_t before = coords.size();
        if (!detail::trim(b).empty())
            for (const auto& seg0 : detail::split_top(b, ',')) {
                std::string seg = detail::trim(seg0);
                auto star = seg.find('*');
                Rat val = parse_rat(seg.substr(0, star));
                int cnt = star == std::string::npos ? 1 : eval_expr(seg.substr(star + 1), p);
                for (int i = 0; i < cnt; ++i)
                    coords.push_back(val);
            }
        if (static_cast<int>(coords.size() - before) != expect)
            fail(ErrorKind::parse, "pattern '" + pat + "' does not fit the basis");
    };
    block(s.substr(0, bar), amb.basis.eps);
    block(bar == std::string::npos ? "" : s.substr(bar + 1), amb.basis.delta);
    return Weight(amb.basis, coords);
}

inline bool even_pairing(const Weight& a, const Weight& x)
{
    Rat v = inner(a, x);
    if (boost::multiprecision::denominator(v) != 1)
        fail(ErrorKind::consistency, "grading vector is not integral on root " + to_text(a));
    return boost::multiprecision::numerator(v) % 2 == 0;
}

// ---- restriction maps ----

struct RestrictionMap {
    Basis source, target;
    std::vector<Weight> rows; // one per target coordinate, orthonormal in the source
    bool identity = true;

    Weight operator()(const Weight& w) const
    {
        if (identity) {
            Weight out = w;
            out.basis = target;
            return out;
        }
        Weight out(target);
        for (std::size_t i = 0; i < rows.size(); ++i)
            out[static_cast<int>(i)] = inner(rows[i], w);
        return out;
    }
    // the section u* → t* given by the rows
    Weight lift(const Weight& v) const
    {
        if (identity) {
            Weight out = v;
            out.basis = source;
            return out;
        }
        Weight out(source);
        for (std::size_t i = 0; i < rows.size(); ++i)
            out += rows[i] * v[static_cast<int>(i)];
        return out;
    }
};

// ---- catalog rows ----

struct CatalogRow {
    std::map<std::string, std::string> fields;
    std::vector<std::string> qu;

    std::string get(const std::string& k, const std::string& dflt = "") const
    {
        auto it = fields.find(k);
        return it == fields.end() ? dflt : it->second;
    }
    bool flag(const std::string& k) const { return get(k) == "true"; }

    std::string pair_text() const { return get("g") + "/" + get("h"); }

    std::string record() const
    {
        static const std::vector<std::string> order{"g", "h", "h0", "psi", "k1", "equal_rank", "bds", "implemented"};
        std::string s = "pair:";
        for (const auto& k : order)
            s += " " + k + "=" + get(k);
        for (const auto& [k, v] : fields)
            if (std::find(order.begin(), order.end(), k) == order.end())
                s += " " + k + "=" + v;
        if (!qu.empty()) {
            s += "\nqu:";
            for (const auto& r : qu)
                s += "\n" + r;
            s += "\nend";
        }
        return s;
    }
};

inline const char* builtin_catalog_text()
{
    return R"(branchkit-catalog v1
# table 1: U = T, non-holomorphic
pair: g=su(m,n) h=su(m,k)+su(n-k)+u(1) h0=su(m,n-k)+su(k)+u(1) psi=Psi_a[1<=a<m] k1=su(m) equal_rank=true bds=g:0,h:0,h0:0 implemented=true table=1 type=A(m|n) theta=0*m|1*n sigma=0*m|0*k,1*(n-k) where=m>=2,1<=k<n
pair: g=su(m,n) h=su(k,n)+su(m-k)+u(1) h0=su(m-k,n)+su(k)+u(1) psi=Psi_tilde_b[1<=b<n] k1=su(n) equal_rank=true bds=g:0,h:0,h0:0 implemented=true table=1 type=A(m|n) theta=0*m|1*n sigma=0*k,1*(m-k)|0*n where=n>=2,1<=k<m
pair: g=so(2m,2n) h=so(2m,2k)+so(2n-2k) h0=so(2m,2n-2k)+so(2k) psi=Psi_plus,Psi_minus k1=so(2m) equal_rank=true bds=g:2,h:2;k=1:0,h0:2;n-k=1:0 implemented=true table=1 type=D(m|n) theta=1*m|0*n sigma=0*m|0*k,1*(n-k) where=m>=3,1<=k<n
pair: g=so(4,2n) h=so(4,2k)+so(2n-2k) h0=so(4,2n-2k)+so(2k) psi=Psi_plus,Psi_minus k1=amax equal_rank=true bds=g:2,h:2;k=1:0,h0:2;n-k=1:0 implemented=true table=1 type=D(2|n) theta=1*2|0*n sigma=0*2|0*k,1*(n-k) where=1<=k<n
pair: g=so(2m,2n+1) h=so(2m,2j)+so(2n+1-2j) h0=so(2m,2n+1-2j)+so(2j) psi=Psi_plus,Psi_minus k1=so(2m) equal_rank=true bds=g:2,h:2;j=1:0,h0:2 implemented=true table=1 type=B(m|n) theta=1*m|0*n sigma=1*m|1*j,0*(n-j) where=m>=3,1<=j<=n
pair: g=so(2m,2n+1) h=so(2m,2j+1)+so(2n-2j) h0=so(2m,2n-2j)+so(2j+1) psi=Psi_plus,Psi_minus k1=so(2m) equal_rank=true bds=g:2,h:2,h0:2;n-j=1:0 implemented=true table=1 type=B(m|n) theta=1*m|0*n sigma=0*m|0*j,1*(n-j) where=m>=3,0<=j<n
pair: g=so(4,2n+1) h=so(4,2j)+so(2n+1-2j) h0=so(4,2n+1-2j)+so(2j) psi=Psi_plus,Psi_minus k1=amax equal_rank=true bds=g:2,h:2;j=1:0,h0:2 implemented=true table=1 type=B(2|n) theta=1*2|0*n sigma=1*2|1*j,0*(n-j) where=1<=j<=n
pair: g=so(4,2n+1) h=so(4,2j+1)+so(2n-2j) h0=so(4,2n-2j)+so(2j+1) psi=Psi_plus,Psi_minus k1=amax equal_rank=true bds=g:2,h:2,h0:2;n-j=1:0 implemented=true table=1 type=B(2|n) theta=1*2|0*n sigma=0*2|0*j,1*(n-j) where=0<=j<n
pair: g=so(4,2n) h=u(2,n)_1 h0=wu(2,n)_1 psi=Psi_1_-1 k1=amax equal_rank=true bds=- implemented=false table=1 where=n>=3 reason=embedding data not provided: the conjugating element w and the system Psi_1_-1 are not specified
pair: g=so(4,2n) h=u(2,n)_2 h0=wu(2,n)_2 psi=Psi_1_1 k1=amax equal_rank=true bds=- implemented=false table=1 where=n>=3 reason=embedding data not provided: the conjugating element w and the system Psi_1_1 are not specified
pair: g=so(4,4) h=u(2,2)_11 h0=wu(2,2)_11 psi=Psi_1_-1,w_ed.Psi_1_-1 k1=amax equal_rank=true bds=- implemented=false table=1 reason=embedding data not provided: the triality conjugations w and w_ed are not specified
pair: g=so(4,4) h=u(2,2)_12 h0=wu(2,2)_12 psi=Psi_1_-1,w_ed.Psi_1_1 k1=amax equal_rank=true bds=- implemented=false table=1 reason=embedding data not provided: the triality conjugations w and w_ed are not specified
pair: g=so(4,4) h=u(2,2)_21 h0=wu(2,2)_21 psi=Psi_1_1,w_ed.Psi_1_-1 k1=amax equal_rank=true bds=- implemented=false table=1 reason=embedding data not provided: the triality conjugations w and w_ed are not specified
pair: g=so(4,4) h=u(2,2)_22 h0=wu(2,2)_22 psi=Psi_1_1,w_ed.Psi_1_1 k1=amax equal_rank=true bds=- implemented=false table=1 reason=embedding data not provided: the triality conjugations w and w_ed are not specified
pair: g=sp(m,n) h=sp(m,k)+sp(n-k) h0=sp(m,n-k)+sp(k) psi=Psi_plus k1=sp(m) equal_rank=true bds=g:2,h:2,h0:2 implemented=true table=1 type=C(n|m) theta=0*n|1*m sigma=0*k,1*(n-k)|0*m where=m>=1,1<=k<n
pair: g=f4(4) h=sp(1,2)+su(2) h0=so(5,4) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:2 implemented=true table=1 type=F4 theta=w[1] sigma=w[1,3]
pair: g=f4(4) h=so(5,4) h0=sp(1,2)+su(2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:2 implemented=true table=1 type=F4 theta=w[1] sigma=w[3]
pair: g=e6(2) h=so(6,4)+so(2) h0=su(4,2)+su(2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:0 implemented=true table=1 type=E6 theta=w[2] sigma=w[1,6]
pair: g=e6(2) h=su(4,2)+su(2) h0=so(6,4)+so(2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:0,h0:2 implemented=true table=1 type=E6 theta=w[2] sigma=w[3]
pair: g=e7(-5) h=so(8,4)+su(2) h0=so(8,4)+su(2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:2 implemented=true table=1 type=E7 theta=w[1] sigma=w[4]
pair: g=e7(-5) h=su(6,2) h0=e6(2)+so(2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:0,h0:2 implemented=true table=1 type=E7 theta=w[1] sigma=w[2]
pair: g=e7(-5) h=e6(2)+so(2) h0=su(6,2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:0 implemented=true table=1 type=E7 theta=w[1] sigma=w[1,2]
pair: g=e8(-24) h=so(12,4) h0=e7(-5)+su(2) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:2 implemented=true table=1 type=E8 theta=w[8] sigma=w[1]
pair: g=e8(-24) h=e7(-5)+su(2) h0=so(12,4) psi=Psi_BS k1=amax equal_rank=true bds=g:2,h:2,h0:2 implemented=true table=1 type=E8 theta=w[8] sigma=w[3]
# table 2: U != T, non-holomorphic
pair: g=su(2,2n) h=sp(1,n) h0=sp(1,n) psi=Psi_1 k1=amax equal_rank=false bds=- implemented=false table=2 where=n>=3 reason=embedding data not provided: the restriction map to the Cartan subalgebra of sp(1,n) is not written out
pair: g=su(2,2) h=sp(1,1) h0=sp(1,1) psi=Psi_1,Psi_tilde_1 k1=amax equal_rank=false bds=- implemented=false table=2 reason=embedding data not provided: the restriction map to the Cartan subalgebra of sp(1,1) is not written out
pair: g=so(2m,2n) h=so(2m,2k+1)+so(2n-2k-1) h0=so(2m,2n-2k-1)+so(2k+1) psi=Psi_plus,Psi_minus k1=so(2m) equal_rank=false bds=- implemented=false table=2 where=m>=3,n>=2,0<=k<n reason=embedding data not provided: the restriction map q_u is not written out
pair: g=so(4,2n) h=so(4,2k+1)+so(2n-2k-1) h0=so(4,2n-2k-1)+so(2k+1) psi=Psi_plus,Psi_minus k1=amax equal_rank=false bds=- implemented=false table=2 where=n>=2,0<=k<n reason=embedding data not provided: the restriction map q_u is not written out
pair: g=so(2m,2) h=so(2m,1) h0=so(2m,1) psi=Psi_plus,Psi_minus k1=so(2m) equal_rank=false bds=g:0,h:2,h0:2 implemented=true table=2 type=D(m|1) theta=1*m|0 fold=h where=m>=3
qu:
project eps
end
pair: g=so(4,2) h=so(4,1) h0=so(4,1) psi=Psi_plus,Psi_minus k1=amax equal_rank=false bds=g:0,h:2,h0:2 implemented=true table=2 type=D(2|1) theta=1*2|0 fold=h
qu:
project eps
end
pair: g=e6(2) h=f4(4) h0=sp(3,1) psi=Psi_BS k1=amax equal_rank=false bds=g:2,h:2,h0:2 implemented=true table=2 type=E6 theta=w[2] fold=h
qu:
1/2,1/2,1/2,1/2,0,0,0,0
1/2,1/2,-1/2,-1/2,0,0,0,0
1/2,-1/2,1/2,-1/2,0,0,0,0
0,0,0,0,1/2,-1/2,-1/2,1/2
end
pair: g=e6(2) h=sp(3,1) h0=f4(4) psi=Psi_BS k1=amax equal_rank=false bds=g:2,h:2,h0:2 implemented=true table=2 type=E6 theta=w[2] fold=h0
qu:
1/2,1/2,1/2,1/2,0,0,0,0
1/2,1/2,-1/2,-1/2,0,0,0,0
1/2,-1/2,1/2,-1/2,0,0,0,0
0,0,0,0,1/2,-1/2,-1/2,1/2
end
# table 3: holomorphic
pair: g=su(m,n) h=su(k,l)+su(m-k,n-l)+u(1) h0=su(k,n-l)+su(m-k,l)+u(1) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:0;k=0:1;l=0:1;k=m:1;l=n:1,h0:0;k=0:1;l=n:1;k=m:1;l=0:1 implemented=true table=3 type=A(m|n) theta=0*m|1*n sigma=0*k,1*(m-k)|0*l,1*(n-l) where=m!=n,m>=1,n>=1,0<=k<=m,0<=l<=n,k*l+(m-k)*(n-l)>=1,k*(n-l)+(m-k)*l>=1,k+l>=1,(m-k)+(n-l)>=1
pair: g=su(n,n) h=su(k,l)+su(n-k,n-l)+u(1) h0=su(k,n-l)+su(n-k,l)+u(1) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:0;k=0:1;l=0:1;k=n:1;l=n:1,h0:0;k=0:1;l=n:1;k=n:1;l=0:1 implemented=true table=3 type=A(n|n) theta=0*n|1*n sigma=0*k,1*(n-k)|0*l,1*(n-l) where=n>=2,0<=k<=n,0<=l<=n,k*l+(n-k)*(n-l)>=1,k*(n-l)+(n-k)*l>=1,k+l>=1,(n-k)+(n-l)>=1
pair: g=so(2,2n) h=so(2,2k)+so(2n-2k) h0=so(2,2n-2k)+so(2k) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1;k=1:0,h0:1;n-k=1:0 implemented=true table=3 type=D(1|n) theta=1|0*n sigma=0|0*k,1*(n-k) where=n>=2,1<=k<n
pair: g=so(2,2n) h=u(1,n) h0=u(1,n) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:1 implemented=true table=3 type=D(1|n) theta=1|0*n sigma=1/2|1/2*n where=n>=2
pair: g=so(2,2n+1) h=so(2,2j)+so(2n+1-2j) h0=so(2,2n+1-2j)+so(2j) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1;j=1:0,h0:1 implemented=true table=3 type=B(1|n) theta=1|0*n sigma=1|1*j,0*(n-j) where=n>=1,1<=j<=n
pair: g=so(2,2n+1) h=so(2,2j+1)+so(2n-2j) h0=so(2,2n-2j)+so(2j+1) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:1;n-j=1:0 implemented=true table=3 type=B(1|n) theta=1|0*n sigma=0|0*j,1*(n-j) where=n>=1,0<=j<n
pair: g=so*(2n) h=u(m,n-m) h0=so*(2m)+so*(2n-2m) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:0;m=1:1;n-m=1:1 implemented=true table=3 type=D(n|0) theta=1/2*n| sigma=1/2*m,-1/2*(n-m)| where=n>=3,1<=m<n
pair: g=sp(n,R) h=u(m,n-m) h0=sp(m,R)+sp(n-m,R) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:0 implemented=true table=3 type=C(n|0) theta=1/2*n| sigma=1/2*m,-1/2*(n-m)| where=n>=2,1<=m<n
pair: g=e6(-14) h=so(2,8)+so(2) h0=so(2,8)+so(2) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:1 implemented=true table=3 type=E6 theta=w[1] sigma=w[6]
pair: g=e6(-14) h=su(2,4)+su(2) h0=su(2,4)+su(2) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:1 implemented=true table=3 type=E6 theta=w[1] sigma=w[4]
pair: g=e6(-14) h=so*(10)+so(2) h0=su(5,1)+sl(2,R) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:0 implemented=true table=3 type=E6 theta=w[1] sigma=w[1,2]
pair: g=e6(-14) h=su(5,1)+sl(2,R) h0=so*(10)+so(2) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:0,h0:1 implemented=true table=3 type=E6 theta=w[1] sigma=w[2]
pair: g=e7(-25) h=so*(12)+su(2) h0=su(6,2) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:1 implemented=true table=3 type=E7 theta=w[7] sigma=w[3]
pair: g=e7(-25) h=su(6,2) h0=so*(12)+su(2) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:1 implemented=true table=3 type=E7 theta=w[7] sigma=w[2]
pair: g=e7(-25) h=so(2,10)+sl(2,R) h0=e6(-14)+so(2) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:0,h0:1 implemented=true table=3 type=E7 theta=w[7] sigma=w[1]
pair: g=e7(-25) h=e6(-14)+so(2) h0=so(2,10)+sl(2,R) psi=Psi_hol,Psi_antihol k1=center equal_rank=true bds=g:1,h:1,h0:0 implemented=true table=3 type=E7 theta=w[7] sigma=w[1,2]
pair: g=su(n,n) h=so*(2n) h0=sp(n,R) psi=Psi_hol,Psi_antihol k1=center equal_rank=false bds=- implemented=false table=3 where=n>=2 reason=embedding data not provided: the restriction map q_u is not written out
pair: g=so(2,2n) h=so(2,2k+1)+so(2n-2k-1) h0=so(2,2n-2k-1)+so(2k+1) psi=Psi_hol,Psi_antihol k1=center equal_rank=false bds=- implemented=false table=3 where=n>=2,0<=k<n reason=embedding data not provided: the restriction map q_u is not written out
)";
}

class Catalog {
public:
    std::vector<CatalogRow> rows;

    static Catalog parse(const std::string& text)
    {
        Catalog c;
        std::istringstream in(text);
        std::string line;
        bool header = false, in_qu = false;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = detail::trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            if (!header) {
                if (t != "branchkit-catalog v1")
                    fail(ErrorKind::parse, "catalog: missing header 'branchkit-catalog v1'");
                header = true;
                continue;
            }
            if (in_qu) {
                if (t == "end")
                    in_qu = false;
                else
                    c.rows.back().qu.push_back(t);
                continue;
            }
            if (t == "qu:") {
                if (c.rows.empty())
                    fail(ErrorKind::parse, "catalog line " + std::to_string(lineno) + ": qu block without a pair");
                in_qu = true;
                continue;
            }
            if (t.rfind("pair:", 0) != 0)
                fail(ErrorKind::parse, "catalog line " + std::to_string(lineno) + ": expected 'pair:'");
            CatalogRow row;
            // key=value tokens; 'reason' runs to the end of the line
            std::string rest = t.substr(5);
            std::size_t i = 0;
            while (i < rest.size()) {
                while (i < rest.size() && rest[i] == ' ')
                    ++i;
                if (i >= rest.size())
                    break;
                auto eq = rest.find('=', i);
                if (eq == std::string::npos)
                    fail(ErrorKind::parse, "catalog line " + std::to_string(lineno) + ": bad field");
                std::string key = rest.substr(i, eq - i);
                std::size_t end = key == "reason" ? rest.size() : rest.find(' ', eq);
                if (end == std::string::npos)
                    end = rest.size();
                row.fields[key] = rest.substr(eq + 1, end - eq - 1);
                i = end;
            }
            for (const char* k : {"g", "h", "h0", "psi", "k1", "equal_rank", "bds", "implemented"})
                if (!row.fields.count(k))
                    fail(ErrorKind::parse, "catalog line " + std::to_string(lineno) + ": missing field " + k);
            c.rows.push_back(std::move(row));
        }
        if (!header)
            fail(ErrorKind::parse, "catalog: empty");
        if (in_qu)
            fail(ErrorKind::parse, "catalog: unterminated qu block");
        return c;
    }

    static const Catalog& builtin()
    {
        static const Catalog c = parse(builtin_catalog_text());
        return c;
    }

    // BRANCHKIT_CATALOG overrides the embedded table
    static const Catalog& active()
    {
        static const Catalog c = [] {
            if (const char* path = std::getenv("BRANCHKIT_CATALOG"); path && *path) {
                std::ifstream f(path);
                if (!f)
                    fail(ErrorKind::invalid_input, std::string("cannot read catalog file ") + path);
                std::stringstream ss;
                ss << f.rdbuf();
                return parse(ss.str());
            }
            return parse(builtin_catalog_text());
        }();
        return c;
    }

    std::vector<const CatalogRow*> filter(const std::string& needle) const
    {
        std::vector<const CatalogRow*> out;
        for (const auto& r : rows)
            if (needle.empty() || r.record().find(needle) != std::string::npos)
                out.push_back(&r);
        return out;
    }
};

// ---- instantiated entries ----

struct HCParameter;

enum class K1Kind { block_eps, block_delta, amax, center };

struct SymmetricPairEntry {
    const CatalogRow* row = nullptr;
    Params params;
    std::string g_name, h_name, h0_name;
    bool equal_rank = true;
    bool implemented = true;
    std::string reason;

    RootSystemPtr g;  // on t*
    RootSystemPtr h;  // on u*
    RootSystemPtr h0; // on u*
    RestrictionMap q;
    IntegralityLattice lattice;
    K1Kind k1 = K1Kind::amax;
    std::string k1_text;
    std::vector<PositiveSystem> family;
    std::vector<std::string> family_ids;
    Weight x_theta;

    std::string pair_text() const { return g_name + "/" + h_name; }

    void require_implemented() const
    {
        if (!implemented)
            fail(ErrorKind::unimplemented_pair, reason.empty() ? "embedding data not provided" : reason);
    }

    std::vector<Weight> l_roots() const
    {
        std::vector<Weight> out;
        for (const auto& r : h->roots)
            if (r.compact)
                out.push_back(r.v);
        return out;
    }
};

struct HCParameter {
    Weight weight;
    PositiveSystem psi;
};

namespace detail {

inline std::vector<std::string> row_variables(const CatalogRow& r)
{
    std::vector<std::string> vars = variables_in(r.get("g"));
    for (const auto& v : variables_in(r.get("h")))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    return vars;
}

inline bool for_each_assignment(const std::vector<std::string>& vars, std::size_t i, Params& p, int maxv,
                                const std::function<bool(const Params&)>& fn)
{
    if (i == vars.size())
        return fn(p);
    for (int v = 0; v <= maxv; ++v) {
        p[vars[i]] = v;
        if (for_each_assignment(vars, i + 1, p, maxv, fn))
            return true;
    }
    p.erase(vars[i]);
    return false;
}

// functional from a lexicographic order given as signed coordinate indices (1-based)
inline Weight order_functional(const Basis& b, const std::vector<int>& order)
{
    Weight f(b);
    int n = static_cast<int>(order.size());
    for (int k = 0; k < n; ++k) {
        int idx = std::abs(order[k]) - 1;
        f[idx] = Rat(order[k] > 0 ? n - k : -(n - k));
    }
    return f;
}

}

inline int bds_expected(const std::string& bds, const std::string& role, const Params& p)
{
    if (bds == "-" || bds.empty())
        return -1;
    for (const auto& item : detail::split_top(bds, ',')) {
        auto colon = item.find(':');
        if (item.substr(0, colon) != role)
            continue;
        auto clauses = detail::split_top(item.substr(colon + 1), ';');
        int value = std::stoi(clauses[0]);
        for (std::size_t i = 1; i < clauses.size(); ++i) {
            auto c2 = clauses[i].rfind(':');
            if (eval_cond(clauses[i].substr(0, c2), p))
                return std::stoi(clauses[i].substr(c2 + 1));
        }
        return value;
    }
    return -1;
}

// positive systems of the family, with ids such as "su(3,2):Psi_a[a=2]"
inline void build_family(SymmetricPairEntry& e, const AmbientSpec& spec, const Ambient& amb)
{
    const Basis& b = amb.basis;
    const int p = b.eps, q = b.delta;
    auto eps = [](int i) { return i + 1; };
    auto del = [p](int i) { return p + i + 1; };
    std::vector<int> std_order;
    for (int i = 0; i < p; ++i)
        std_order.push_back(eps(i));
    for (int i = 0; i < q; ++i)
        std_order.push_back(del(i));
    Weight f_std = amb.bourbaki_simple.empty() ? detail::order_functional(b, std_order)
                                               : [&] {
                                                     Weight s(b);
                                                     for (const auto& c : fundamental_coweights(amb.bourbaki_simple))
                                                         s += c;
                                                     return s;
                                                 }();
    auto add = [&](const std::string& member, const PositiveSystem& ps) {
        PositiveSystem named = ps;
        named.name = member;
        e.family.push_back(named);
        e.family_ids.push_back(e.g_name + ":" + member);
    };
    for (const auto& fam0 : detail::split_top(e.row->get("psi"), ',')) {
        std::string fam = detail::trim(fam0);
        auto lb = fam.find('[');
        std::string base = fam.substr(0, lb);
        std::string cond = lb == std::string::npos ? "" : fam.substr(lb + 1, fam.size() - lb - 2);
        if (base == "Psi_a" || base == "Psi_tilde_b") {
            std::string var = base == "Psi_a" ? "a" : "b";
            for (int v = 0; v <= 16; ++v) {
                Params pp = e.params;
                pp[var] = v;
                if (!eval_cond(cond, pp))
                    continue;
                std::vector<int> order;
                if (base == "Psi_a") {
                    for (int i = 0; i < v; ++i)
                        order.push_back(eps(i));
                    for (int i = 0; i < q; ++i)
                        order.push_back(del(i));
                    for (int i = v; i < p; ++i)
                        order.push_back(eps(i));
                } else {
                    for (int i = 0; i < v; ++i)
                        order.push_back(del(i));
                    for (int i = 0; i < p; ++i)
                        order.push_back(eps(i));
                    for (int i = v; i < q; ++i)
                        order.push_back(del(i));
                }
                add(base + "[" + var + "=" + std::to_string(v) + "]",
                    positive_system_from(e.g, detail::order_functional(b, order), ""));
            }
        } else if (base == "Psi_plus" || base == "Psi_minus") {
            std::vector<int> order;
            if (spec.series == "C") {
                // the delta block carries K1 = sp(m)
                for (int i = 0; i < q; ++i)
                    order.push_back(del(i));
                for (int i = 0; i < p; ++i)
                    order.push_back(eps(i));
            } else {
                order = std_order;
                if (base == "Psi_minus") {
                    order[static_cast<std::size_t>(p - 1)] = -eps(p - 1);
                    if (spec.series == "D" && q > 0)
                        order.back() = -del(q - 1);
                }
            }
            add(base, positive_system_from(e.g, detail::order_functional(b, order), ""));
        } else if (base == "Psi_BS") {
            add(base, positive_system_from(e.g, f_std, ""));
        } else if (base == "Psi_hol" || base == "Psi_antihol") {
            int sgn = base == "Psi_hol" ? 1 : -1;
            std::vector<ColoredRoot> pos;
            for (const auto& r : e.g->roots) {
                Rat v = r.compact ? inner(f_std, r.v) : inner(e.x_theta, r.v) * sgn;
                check(v != 0, "holomorphic grading vanishes on a root");
                if (v > 0)
                    pos.push_back(r);
            }
            add(base, make_positive_system(e.g, pos, ""));
        } else {
            fail(ErrorKind::unimplemented_pair, "positive system family '" + base + "' is not defined");
        }
    }
    for (const auto& ps : e.family) {
        std::set<Weight> c1, c2;
        for (const auto& r : ps.positives)
            if (r.compact)
                c1.insert(r.v);
        for (const auto& r : e.family.front().positives)
            if (r.compact)
                c2.insert(r.v);
        check(c1 == c2, e.g_name + ": family members do not share the compact positive system");
    }
}

inline void build_systems(SymmetricPairEntry& e)
{
    const CatalogRow& r = *e.row;
    AmbientSpec spec = parse_ambient(r.get("type"), e.params);
    Ambient amb = build_ambient(spec);
    amb.basis.label = e.g_name;
    for (auto& w : amb.roots)
        w.basis = amb.basis;
    for (auto& w : amb.bourbaki_simple)
        w.basis = amb.basis;
    Weight xt = pattern_vector(r.get("theta"), e.params, amb);
    e.x_theta = xt;
    std::vector<ColoredRoot> groots;
    for (const auto& a : amb.roots)
        groots.push_back({a, even_pairing(a, xt)});
    e.g = std::make_shared<RootSystem>(e.g_name, amb.basis, groots);

    if (e.equal_rank) {
        Weight xs = pattern_vector(r.get("sigma"), e.params, amb);
        Weight x0 = xs + xt;
        std::vector<ColoredRoot> hr, h0r;
        for (const auto& c : groots) {
            if (even_pairing(c.v, xs))
                hr.push_back(c);
            if (even_pairing(c.v, x0))
                h0r.push_back(c);
        }
        check(hr.size() < groots.size() && h0r.size() < groots.size(), e.pair_text() + ": grading is trivial");
        e.q = RestrictionMap{amb.basis, amb.basis, {}, true};
        Basis hb = amb.basis;
        e.h = std::make_shared<RootSystem>(e.h_name, hb, hr);
        e.h0 = std::make_shared<RootSystem>(e.h0_name, hb, h0r);
    } else {
        RestrictionMap q;
        q.source = amb.basis;
        q.identity = false;
        if (r.qu.size() == 1 && r.qu[0] == "project eps") {
            for (int i = 0; i < amb.basis.eps; ++i)
                q.rows.push_back(Weight::unit(amb.basis, i));
        } else {
            for (const auto& line : r.qu) {
                std::vector<Rat> c;
                for (const auto& x : detail::split_top(line, ','))
                    c.push_back(parse_rat(x));
                q.rows.push_back(Weight(amb.basis, c));
            }
        }
        check(!q.rows.empty(), e.pair_text() + ": folded entry without a qu block");
        for (std::size_t i = 0; i < q.rows.size(); ++i)
            for (std::size_t j = 0; j < q.rows.size(); ++j)
                check(inner(q.rows[i], q.rows[j]) == (i == j ? 1 : 0), e.pair_text() + ": qu rows are not orthonormal");
        q.target = Basis{static_cast<int>(q.rows.size()), 0, e.h_name};
        e.q = q;
        // fixed roots go to one side; each pair of roots with equal image gives one root on both sides
        bool fixed_to_h = r.get("fold", "h") == "h";
        std::map<Weight, std::vector<ColoredRoot>> fibres;
        for (const auto& c : groots)
            fibres[q(c.v)].push_back(c);
        std::vector<ColoredRoot> hr, h0r;
        for (const auto& [img, members] : fibres) {
            if (img.is_zero())
                continue;
            bool fixed = inner(img, img) == inner(members[0].v, members[0].v);
            if (fixed) {
                check(members.size() == 1, "fixed root with a partner");
                bool c = members[0].compact;
                (fixed_to_h ? hr : h0r).push_back({img, c});
                if (c)
                    (fixed_to_h ? h0r : hr).push_back({img, c});
            } else {
                check(members.size() == 2, e.pair_text() + ": restriction fibre of size " + std::to_string(members.size()));
                check(members[0].compact == members[1].compact, "paired roots differ in color");
                hr.push_back({img, members[0].compact});
                h0r.push_back({img, members[0].compact});
            }
        }
        e.h = std::make_shared<RootSystem>(e.h_name, q.target, hr);
        e.h0 = std::make_shared<RootSystem>(e.h0_name, q.target, h0r);
    }
    // compact roots of h and h0 agree
    {
        std::set<Weight> a, b;
        for (const auto& c : e.h->roots)
            if (c.compact)
                a.insert(c.v);
        for (const auto& c : e.h0->roots)
            if (c.compact)
                b.insert(c.v);
        check(a == b, e.pair_text() + ": h and h0 have different compact roots");
    }
    std::string k1 = r.get("k1");
    e.k1_text = k1;
    if (k1 == "amax")
        e.k1 = K1Kind::amax;
    else if (k1 == "center")
        e.k1 = K1Kind::center;
    else if ((k1 == "su(m)" || k1 == "so(2m)") && spec.series != "C")
        e.k1 = K1Kind::block_eps;
    else if (k1 == "su(n)" || k1 == "sp(m)")
        e.k1 = K1Kind::block_delta;
    else
        fail(ErrorKind::parse, "unknown k1 descriptor '" + k1 + "'");

    e.lattice.basis = amb.basis;
    e.lattice.roots = e.g->vectors();
    e.lattice.coroot_rule = true;
    build_family(e, spec, amb);
    e.lattice.rho = e.family.front().rho;
}

inline SymmetricPairEntry instantiate(const CatalogRow& row, const Params& p)
{
    SymmetricPairEntry e;
    e.row = &row;
    e.params = p;
    e.g_name = instantiate_name(row.get("g"), p);
    e.h_name = instantiate_name(row.get("h"), p);
    e.h0_name = row.get("h0").find('(') == std::string::npos ? row.get("h0") : instantiate_name(row.get("h0"), p);
    e.equal_rank = row.flag("equal_rank");
    e.implemented = row.flag("implemented");
    e.reason = row.get("reason");
    if (e.implemented)
        build_systems(e);
    return e;
}

inline std::optional<Params> match_row(const CatalogRow& row, const std::string& g, const std::string& h)
{
    auto gvars = detail::variables_in(row.get("g"));
    std::vector<std::string> hvars;
    for (const auto& v : detail::row_variables(row))
        if (std::find(gvars.begin(), gvars.end(), v) == gvars.end())
            hvars.push_back(v);
    auto cg = canonical_components(g), ch = canonical_components(h);
    Params p;
    std::optional<Params> found;
    // bind the variables of g first, then those that only occur in h
    detail::for_each_assignment(gvars, 0, p, 12, [&](const Params& pg) {
        try {
            if (canonical_components(instantiate_name(row.get("g"), pg)) != cg)
                return false;
        } catch (const Error&) {
            return false;
        }
        Params q = pg;
        return detail::for_each_assignment(hvars, 0, q, 12, [&](const Params& pp) {
            try {
                if (!eval_cond(row.get("where"), pp))
                    return false;
                if (canonical_components(instantiate_name(row.get("h"), pp)) != ch)
                    return false;
            } catch (const Error&) {
                return false;
            }
            found = pp;
            return true;
        });
    });
    return found;
}

inline std::pair<std::string, std::string> split_pair(const std::string& pair)
{
    int depth = 0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        if (pair[i] == '(')
            ++depth;
        else if (pair[i] == ')')
            --depth;
        else if (pair[i] == '/' && depth == 0)
            return {detail::trim(pair.substr(0, i)), detail::trim(pair.substr(i + 1))};
    }
    fail(ErrorKind::parse, "pair must be written g/h: '" + pair + "'");
}

// g may carry explicit parameters, e.g. "sp(1,d)[d=3]"
inline std::string substitute_params(const std::string& g_name0)
{
    std::string g_name = g_name0;
    if (auto lb = g_name.find('['); lb != std::string::npos && g_name.back() == ']') {
        Params pp;
        for (const auto& kv : detail::split_top(g_name.substr(lb + 1, g_name.size() - lb - 2), ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                fail(ErrorKind::parse, "bad parameter '" + kv + "'");
            pp[detail::trim(kv.substr(0, eq))] = eval_expr(kv.substr(eq + 1), {});
        }
        std::string head = g_name.substr(0, lb);
        // substitute the given values into the schematic name, e.g. sp(1,d) -> sp(1,3)
        std::string out;
        int depth = 0;
        for (std::size_t i = 0; i < head.size(); ++i) {
            char c = head[i];
            if (c == '(')
                ++depth;
            if (c == ')')
                --depth;
            std::string key(1, c);
            bool lone = depth > 0 && std::islower(static_cast<unsigned char>(c)) &&
                        !(i + 1 < head.size() && std::isalpha(static_cast<unsigned char>(head[i + 1]))) &&
                        !(i > 0 && std::isalpha(static_cast<unsigned char>(head[i - 1])));
            if (lone && pp.count(key))
                out += std::to_string(pp[key]);
            else
                out += c;
        }
        g_name = out;
    }
    return g_name;
}

// every row naming the pair; a pair may sit in more than one table
inline std::vector<SymmetricPairEntry> lookup_all(const std::string& g_name0, const std::string& h_name,
                                                  const Catalog& cat = Catalog::active())
{
    std::string g_name = substitute_params(g_name0);
    std::vector<SymmetricPairEntry> out;
    for (const auto& row : cat.rows)
        if (auto p = match_row(row, g_name, h_name))
            out.push_back(instantiate(row, *p));
    if (out.empty())
        fail(ErrorKind::unknown_pair, g_name + "/" + h_name);
    return out;
}

inline SymmetricPairEntry lookup(const std::string& g_name, const std::string& h_name,
                                 const Catalog& cat = Catalog::active())
{
    return lookup_all(g_name, h_name, cat).front();
}

inline SymmetricPairEntry lookup_pair(const std::string& pair, const Catalog& cat = Catalog::active())
{
    auto [g, h] = split_pair(pair);
    return lookup(g, h, cat);
}

inline std::vector<SymmetricPairEntry> lookup_pair_all(const std::string& pair, const Catalog& cat = Catalog::active())
{
    auto [g, h] = split_pair(pair);
    return lookup_all(g, h, cat);
}

// ---- parameters and admissibility ----

inline HCParameter make_parameter(const SymmetricPairEntry& e, const Weight& lam0)
{
    e.require_implemented();
    if (!lam0.basis.same_shape(e.g->basis))
        fail(ErrorKind::basis_mismatch, "parameter " + to_text(lam0) + " does not fit " + e.g_name);
    Weight lam = lam0;
    lam.basis = e.g->basis;
    if (!is_regular(lam, e.g->vectors()))
        fail(ErrorKind::singular, to_text(lam));
    HCParameter hc{lam, chamber_system(lam, e.g)};
    if (!is_integral(lam, IntegralityLattice{e.lattice.basis, {}, {}, e.lattice.roots, hc.psi.rho, true}))
        fail(ErrorKind::non_integral, to_text(lam));
    return hc;
}

inline std::optional<std::size_t> family_index(const SymmetricPairEntry& e, const PositiveSystem& psi)
{
    for (std::size_t i = 0; i < e.family.size(); ++i)
        if (e.family[i].same_roots(psi))
            return i;
    return std::nullopt;
}

inline bool admissible(const SymmetricPairEntry& e, const HCParameter& lam)
{
    return family_index(e, lam.psi).has_value();
}

// chamber system named after the family member it equals, when it does
inline PositiveSystem resolve_name(const SymmetricPairEntry& e, PositiveSystem psi)
{
    if (auto i = family_index(e, psi))
        psi.name = e.family_ids[*i];
    return psi;
}

inline HCParameter admissible_parameter(const SymmetricPairEntry& e, const Weight& lam)
{
    HCParameter hc = make_parameter(e, lam);
    auto i = family_index(e, hc.psi);
    if (!i)
        fail(ErrorKind::non_admissible, to_text(lam) + " is not dominant for any admissible system of " + e.pair_text());
    hc.psi.name = e.family_ids[*i];
    return hc;
}

// first implemented row for which λ is admissible
inline std::pair<SymmetricPairEntry, HCParameter> resolve_parameter(const std::vector<SymmetricPairEntry>& entries,
                                                                   const Weight& lam)
{
    const SymmetricPairEntry* first_impl = nullptr;
    for (const auto& e : entries) {
        if (!e.implemented)
            continue;
        if (!first_impl)
            first_impl = &e;
        HCParameter hc = make_parameter(e, lam);
        if (auto i = family_index(e, hc.psi)) {
            hc.psi.name = e.family_ids[*i];
            return {e, hc};
        }
    }
    if (!first_impl)
        entries.front().require_implemented();
    fail(ErrorKind::non_admissible,
         to_text(lam) + " is not dominant for any admissible system of " + entries.front().pair_text());
}

// Ψ_{H,λ}, Ψ_{H0,λ}: the h- and h0-roots inside q(Ψ_λ)
inline std::pair<PositiveSystem, PositiveSystem> induced_systems(const SymmetricPairEntry& e, const PositiveSystem& psi)
{
    e.require_implemented();
    if (!family_index(e, psi))
        fail(ErrorKind::non_admissible, "system is not in the admissible family of " + e.pair_text());
    std::set<Weight> qpos;
    for (const auto& r : psi.positives)
        qpos.insert(e.q(r.v));
    auto pick = [&](const RootSystemPtr& s, const std::string& nm) {
        std::vector<ColoredRoot> pos;
        for (const auto& r : s->roots)
            if (qpos.count(r.v))
                pos.push_back(r);
        return make_positive_system(s, pos, nm);
    };
    return {pick(e.h, "Psi_H"), pick(e.h0, "Psi_H0")};
}

inline std::pair<PositiveSystem, PositiveSystem> induced_systems(const SymmetricPairEntry& e, const HCParameter& lam)
{
    return induced_systems(e, lam.psi);
}

// ---- K1 / K2 ----

inline std::vector<Weight> orthogonal_basis(const std::vector<Weight>& vs)
{
    std::vector<Weight> out;
    for (const auto& v : vs) {
        Weight w = v;
        for (const auto& b : out)
            w -= b * (inner(w, b) / inner(b, b));
        if (!w.is_zero())
            out.push_back(w);
    }
    return out;
}

struct K1Split {
    std::vector<Weight> t1;        // orthogonal basis of t1*
    std::vector<Weight> k1_roots;  // compact roots of k1
    std::vector<Weight> k2_roots;  // compact roots orthogonal to t1*
    std::vector<Weight> lk2_roots; // l-roots orthogonal to q(t1*), on u*
    std::vector<Weight> qt1;       // orthogonal basis of q(t1*)
    std::vector<int> k1_coords, k2_coords;

    Weight part1(const Weight& w) const
    {
        Weight out = zero_like(w);
        for (const auto& b : t1)
            out += b * (inner(w, b) / inner(b, b));
        return out;
    }
    Weight part2(const Weight& w) const { return w - part1(w); }
    Weight part1_u(const Weight& v) const
    {
        Weight out = zero_like(v);
        for (const auto& b : qt1)
            out += b * (inner(v, b) / inner(b, b));
        return out;
    }
};

inline K1Split k1_split(const SymmetricPairEntry& e, const PositiveSystem& psi)
{
    e.require_implemented();
    K1Split s;
    const auto compact = e.g->compact_vectors();
    const Basis& b = e.g->basis;
    std::vector<Weight> span;
    switch (e.k1) {
    case K1Kind::block_eps:
    case K1Kind::block_delta: {
        int lo = e.k1 == K1Kind::block_eps ? 0 : b.eps;
        int hi = e.k1 == K1Kind::block_eps ? b.eps : b.rank();
        for (const auto& a : compact) {
            bool inside = true;
            for (int i = 0; i < b.rank(); ++i)
                if (a[i] != 0 && (i < lo || i >= hi))
                    inside = false;
            if (inside)
                span.push_back(a);
        }
        break;
    }
    case K1Kind::amax: {
        Weight top = psi.positives.front().v;
        for (const auto& r : psi.positives)
            if (inner(r.v, psi.rho) > inner(top, psi.rho))
                top = r.v;
        check(e.g->is_compact(top), "highest root is noncompact");
        span.push_back(top);
        break;
    }
    case K1Kind::center: {
        auto all = orthogonal_basis(e.g->vectors());
        auto comp = orthogonal_basis(compact);
        for (const auto& v : all) {
            Weight w = v;
            for (const auto& c : comp)
                w -= c * (inner(w, c) / inner(c, c));
            for (const auto& c : span)
                w -= c * (inner(w, c) / inner(c, c));
            if (!w.is_zero())
                span.push_back(w);
        }
        break;
    }
    }
    s.t1 = orthogonal_basis(span);
    check(!s.t1.empty(), e.pair_text() + ": empty K1");
    for (const auto& a : compact) {
        if (s.part2(a).is_zero())
            s.k1_roots.push_back(a);
        else if (s.part1(a).is_zero())
            s.k2_roots.push_back(a);
        else
            fail(ErrorKind::consistency, e.pair_text() + ": compact root " + to_text(a) + " straddles k1 and k2");
    }
    // K1 lies in both h and h0
    for (const auto& a : s.k1_roots) {
        check(e.h->contains(e.q(a)) && e.h0->contains(e.q(a)), e.pair_text() + ": K1 is not contained in H and H0");
    }
    std::vector<Weight> qs;
    for (const auto& v : s.t1)
        qs.push_back(e.q(v));
    s.qt1 = orthogonal_basis(qs);
    for (const auto& a : e.l_roots()) {
        bool orth = true;
        for (const auto& v : s.qt1)
            if (inner(a, v) != 0)
                orth = false;
        if (orth)
            s.lk2_roots.push_back(a);
    }
    for (int i = 0; i < b.rank(); ++i) {
        Weight u = Weight::unit(b, i);
        if (s.part2(u).is_zero())
            s.k1_coords.push_back(i);
        else if (s.part1(u).is_zero())
            s.k2_coords.push_back(i);
    }
    return s;
}

// lookup of a named system such as "su(3,2):Psi_a[a=2]" through any entry with that g
inline PositiveSystem named_system(const std::string& id, const Catalog& cat = Catalog::active())
{
    auto colon = id.rfind(':');
    if (colon == std::string::npos)
        fail(ErrorKind::parse, "system id needs 'g:name'");
    std::string g = id.substr(0, colon), member = id.substr(colon + 1);
    for (const auto& row : cat.rows) {
        if (!row.flag("implemented"))
            continue;
        auto vars = detail::row_variables(row);
        Params p;
        std::optional<SymmetricPairEntry> hit;
        auto cg = canonical_components(g);
        detail::for_each_assignment(vars, 0, p, 12, [&](const Params& pp) {
            try {
                if (!eval_cond(row.get("where"), pp))
                    return false;
                if (canonical_components(instantiate_name(row.get("g"), pp)) != cg)
                    return false;
            } catch (const Error&) {
                return false;
            }
            hit = instantiate(row, pp);
            return true;
        });
        if (!hit)
            continue;
        for (std::size_t i = 0; i < hit->family.size(); ++i)
            if (hit->family[i].name == member) {
                PositiveSystem ps = hit->family[i];
                ps.name = hit->family_ids[i];
                return ps;
            }
    }
    fail(ErrorKind::unknown_pair, "no named system '" + id + "'");
}

}
