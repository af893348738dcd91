/**
 * @file io.hpp
 * @brief Text formats: group specifications, truncation sets, coefficient
 *        presentations, tensor literals, ghost vector blocks, representative
 *        overrides, and the built-in named groups.
 *
 * Group specification grammar (UTF-8):
 *   cayley <n>      followed by n whitespace-separated rows
 *   perm <degree>   followed by one generator per line in cycle notation,
 *                   e.g. (1 2 3)(4 5); points are 1-based in files
 *   labels a b c    optional display labels
 *
 * Truncation: all | top | none | { {0,1,2}, {0} } (brace lists of element
 * indices). Coefficients: Z | Z/n | rank <b> rel <matrix file>.
 * Tensor literal: 3*(y0,y1,y0) - (y1,y1,y1), positions in the documented
 * coset-representative order.
 */
#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gwitt/errors.hpp"
#include "gwitt/ghost.hpp"
#include "gwitt/group.hpp"
#include "gwitt/tensor.hpp"
#include "gwitt/truncation.hpp"
#include "gwitt/witt.hpp"

namespace gwitt {

inline const std::map<std::string, std::pair<int, std::vector<std::vector<int>>>>&
builtin_groups() {
    // name -> (degree, permutation generators, 0-based)
    static const std::map<std::string, std::pair<int, std::vector<std::vector<int>>>> tbl = {
        {"c2", {2, {{1, 0}}}},
        {"c3", {3, {{1, 2, 0}}}},
        {"c4", {4, {{1, 2, 3, 0}}}},
        {"c5", {5, {{1, 2, 3, 4, 0}}}},
        {"c6", {6, {{1, 2, 3, 4, 5, 0}}}},
        {"s3", {3, {{1, 2, 0}, {0, 2, 1}}}},
        {"d6", {3, {{1, 2, 0}, {0, 2, 1}}}},
        {"d8", {4, {{1, 2, 3, 0}, {3, 2, 1, 0}}}},
        {"a4", {4, {{1, 2, 0, 3}, {1, 0, 3, 2}}}},
    };
    return tbl;
}

namespace detail {
inline std::vector<int> parse_cycles(const std::string& line, int degree) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = i;
    size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos >= line.size()) break;
        if (line[pos] != '(') throw validation_error("permutation: expected '(' in cycle notation");
        size_t close = line.find(')', pos);
        if (close == std::string::npos) throw validation_error("permutation: unbalanced cycle");
        std::istringstream cyc(line.substr(pos + 1, close - pos - 1));
        std::vector<int> pts;
        std::string tok;
        while (cyc >> tok) {
            for (char& ch : tok)
                if (ch == ',') ch = ' ';
            std::istringstream inner(tok);
            int p;
            while (inner >> p) {
                if (p < 1 || p > degree) throw validation_error("permutation: point out of range");
                pts.push_back(p - 1);
            }
        }
        for (size_t i = 0; i < pts.size(); ++i) img[pts[i]] = pts[(i + 1) % pts.size()];
        pos = close + 1;
    }
    return img;
}
} // namespace detail

/// Parse the group specification grammar; `bound` limits permutation closure.
inline FiniteGroup parse_group_spec(std::istream& in, int bound = kDefaultGroupBound) {
    std::string kind;
    if (!(in >> kind)) throw validation_error("group spec: empty input");
    if (kind == "cayley") {
        int n;
        if (!(in >> n) || n <= 0) throw validation_error("group spec: bad order");
        if (n > bound) throw resource_error("group spec: order exceeds bound");
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(in >> table[i][j])) throw validation_error("group spec: truncated Cayley table");
        std::vector<std::string> labels;
        std::string word;
        if (in >> word && word == "labels") {
            std::string lab;
            while (in >> lab) labels.push_back(lab);
        }
        return FiniteGroup::from_cayley(table, labels);
    }
    if (kind == "perm") {
        int degree;
        if (!(in >> degree) || degree <= 0) throw validation_error("group spec: bad degree");
        std::string line;
        std::getline(in, line);
        std::vector<std::vector<int>> gens;
        while (std::getline(in, line)) {
            std::string trimmed;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
            if (trimmed.empty() || trimmed.rfind("labels", 0) == 0) continue;
            gens.push_back(detail::parse_cycles(line, degree));
        }
        if (gens.empty()) throw validation_error("group spec: no generators");
        return FiniteGroup::from_permutations(degree, gens, bound);
    }
    throw validation_error("group spec: expected 'cayley' or 'perm'");
}

/// Named builtin or file path.
inline FiniteGroup load_group(const std::string& name, int bound = kDefaultGroupBound) {
    auto it = builtin_groups().find(name);
    if (it != builtin_groups().end())
        return FiniteGroup::from_permutations(it->second.first, it->second.second, bound);
    std::ifstream f(name);
    if (!f) throw validation_error("group: no builtin or readable file named '" + name + "'");
    return parse_group_spec(f, bound);
}

/// Parse a brace list of element indices: {0, 3, 5}.
inline std::vector<int> parse_brace_list(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size() || s[pos] != '{') throw validation_error("expected '{'");
    size_t close = s.find('}', pos);
    if (close == std::string::npos) throw validation_error("unbalanced '{'");
    std::string body = s.substr(pos + 1, close - pos - 1);
    for (char& c : body)
        if (c == ',') c = ' ';
    std::istringstream in(body);
    std::vector<int> out;
    int x;
    while (in >> x) out.push_back(x);
    pos = close + 1;
    return out;
}

/// Truncation grammar: [trunc] all | top | none | { <subgroup>, ... }.
inline TruncationSet parse_truncation(const GroupCtx& g, int h, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) || !t.empty()) t += c;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.rfind("trunc", 0) == 0) {
        t.erase(0, 5);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(0, 1);
    }
    if (t == "all") return full_truncation(g, h);
    if (t == "top") return top_truncation(g, h);
    if (t == "none") return empty_truncation(g, h);
    if (t.empty() || t.front() != '{')
        throw validation_error("truncation: expected all|top|none|{...}");
    std::vector<int> members;
    size_t pos = 1; // skip outer '{'
    while (true) {
        while (pos < t.size() && (std::isspace(static_cast<unsigned char>(t[pos])) || t[pos] == ','))
            ++pos;
        if (pos >= t.size()) throw validation_error("truncation: unbalanced braces");
        if (t[pos] == '}') break;
        std::vector<int> elems = parse_brace_list(t, pos);
        std::sort(elems.begin(), elems.end());
        members.push_back(g.sub_id_of(elems));
    }
    return validate_truncation(g, h, members);
}

/// Coefficient grammar: Z | Z/n | rank <b> rel <matrix file>.
inline AbPresentation parse_coefficients(const std::string& text) {
    std::istringstream in(text);
    std::string head;
    if (!(in >> head)) throw validation_error("coefficients: empty");
    if (head == "Z") return AbPresentation::free_of_rank(1);
    if (head.rfind("Z/", 0) == 0) {
        long n = std::stol(head.substr(2));
        if (n <= 0) throw validation_error("coefficients: bad modulus");
        return AbPresentation::cyclic(n);
    }
    if (head == "rank") {
        int b;
        std::string kw, path;
        if (!(in >> b) || b <= 0) throw validation_error("coefficients: bad rank");
        if (!(in >> kw)) return AbPresentation::free_of_rank(b);
        if (kw != "rel") throw validation_error("coefficients: expected 'rel'");
        if (!(in >> path)) throw validation_error("coefficients: missing relation file");
        std::ifstream f(path);
        if (!f) throw validation_error("coefficients: cannot read " + path);
        int rows, cols;
        if (!(f >> rows >> cols) || rows != b || cols < 0)
            throw validation_error("coefficients: bad relation matrix header");
        IntMatrix rel(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                std::string v;
                if (!(f >> v)) throw validation_error("coefficients: truncated matrix");
                rel.at(i, j) = Int(v);
            }
        return AbPresentation(b, std::move(rel));
    }
    throw validation_error("coefficients: expected Z, Z/n or rank b rel <file>");
}

/// Tensor literal: [-]c*(y0,y1,...) +/- ... ; "0" is the zero element.
inline TensorElement parse_tensor_literal(const std::string& text, const CosetTable& space,
                                          int rank) {
    TensorElement out = zero_tensor(space, rank);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos < text.size() && text[pos] == '0' && pos + 1 >= text.size()) return out;
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= text.size()) break;
        Int sign = 1;
        if (text[pos] == '+') { ++pos; }
        else if (text[pos] == '-') { sign = -1; ++pos; }
        else if (!first) throw validation_error("tensor literal: expected + or -");
        skip_ws();
        Int coeff = 1;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            coeff = Int(text.substr(start, pos - start));
            skip_ws();
            if (pos < text.size() && text[pos] == '*') { ++pos; skip_ws(); }
        }
        if (pos >= text.size() || text[pos] != '(')
            throw validation_error("tensor literal: expected '('");
        size_t close = text.find(')', pos);
        if (close == std::string::npos) throw validation_error("tensor literal: unbalanced '('");
        std::string body = text.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream in(body);
        Word w;
        std::string tok;
        while (in >> tok) {
            if (tok.size() < 2 || tok[0] != 'y')
                throw validation_error("tensor literal: expected generator token yK");
            int k = std::stoi(tok.substr(1));
            if (k < 0 || k >= rank) throw validation_error("tensor literal: generator out of range");
            w.push_back(static_cast<uint8_t>(k));
        }
        if (static_cast<int>(w.size()) != space.count())
            throw validation_error("tensor literal: word length does not match coset count");
        out.add_term(w, sign * coeff);
        first = false;
    }
    return out;
}

inline std::string subgroup_text(const GroupCtx& g, int id) {
    std::string s = "{";
    const auto& e = g.sub(id).elems;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + "}";
}

/// Serialize a ghost vector (or component family) as one block per canonical V.
inline std::string ghost_to_text(const WittContext& ctx, const GhostVector& a) {
    std::string out;
    for (const auto& lv : ctx.levels()) {
        auto it = a.comp.find(lv.v);
        TensorElement t = it == a.comp.end() ? zero_tensor(*lv.gv, ctx.rank()) : it->second;
        out += subgroup_text(ctx.G(), lv.v) + ": " + to_literal(t, ctx.Y()) + "\n";
    }
    return out;
}

/// Parse per-subgroup blocks "{elems}: <literal>" into a component family.
inline ComponentFamily parse_family(const WittContext& ctx, std::istream& in) {
    ComponentFamily fam;
    std::string line;
    while (std::getline(in, line)) {
        std::string t;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)) || !t.empty()) t += c;
        if (t.empty() || t[0] == '#') continue;
        size_t pos = 0;
        std::vector<int> elems = parse_brace_list(line, pos);
        std::sort(elems.begin(), elems.end());
        int v = ctx.G().sub_id_of(elems);
        while (pos < line.size() && (std::isspace(static_cast<unsigned char>(line[pos])) || line[pos] == ':'))
            ++pos;
        int li = ctx.level_of(v);
        fam.comp[v] = parse_tensor_literal(line.substr(pos), *ctx.level(li).gv, ctx.rank());
    }
    return fam;
}

/// Representative override file: one line per subgroup, "{elems}: e1 e2 ...".
inline std::map<int, std::vector<int>> parse_rep_overrides(const GroupCtx& g, std::istream& in) {
    std::map<int, std::vector<int>> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string t;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)) || !t.empty()) t += c;
        if (t.empty() || t[0] == '#') continue;
        size_t pos = 0;
        std::vector<int> elems = parse_brace_list(line, pos);
        std::sort(elems.begin(), elems.end());
        int v = g.sub_id_of(elems);
        while (pos < line.size() && (std::isspace(static_cast<unsigned char>(line[pos])) || line[pos] == ':'))
            ++pos;
        std::istringstream rest(line.substr(pos));
        std::vector<int> reps;
        int x;
        while (rest >> x) reps.push_back(x);
        out[v] = std::move(reps);
    }
    return out;
}

inline std::string factors_text(const std::vector<Int>& factors) {
    if (factors.empty()) return "trivial";
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " + ";
        s += factors[i] == 0 ? "Z" : "Z/" + factors[i].get_str();
    }
    return s;
}

} // namespace gwitt
