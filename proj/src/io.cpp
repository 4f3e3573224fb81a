#include "rackq/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace rackq {

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_col_of_offset(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string trimmed(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);
    return lines;
}

FiniteRack rack_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        auto [line, col] = line_col_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("bad JSON: ") + e.what(), line, col);
    }
    if (!j.is_object() || !j.contains("size") || !j.contains("table"))
        throw ParseError("rack JSON needs \"size\" and \"table\"");
    if (!j["size"].is_number_integer()) throw ParseError("\"size\" must be an integer");
    long long n = j["size"].get<long long>();
    if (n < 1) throw ParseError("\"size\" must be at least 1");
    if (!j["table"].is_array()) throw ParseError("\"table\" must be an array of rows");
    std::vector<std::vector<int>> grid;
    for (const auto& row : j["table"]) {
        if (!row.is_array()) throw ParseError("\"table\" rows must be arrays");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ParseError("\"table\" entries must be integers");
            r.push_back(v.get<int>());
        }
        grid.push_back(std::move(r));
    }
    if (static_cast<long long>(grid.size()) != n)
        throw ParseError("\"table\" has " + std::to_string(grid.size()) + " rows, \"size\" says " +
                         std::to_string(n));
    for (size_t x = 0; x < grid.size(); ++x) {
        if (static_cast<long long>(grid[x].size()) != n)
            throw ParseError("\"table\" row " + std::to_string(x) + " has " +
                             std::to_string(grid[x].size()) + " entries, \"size\" says " +
                             std::to_string(n));
        for (int v : grid[x])
            if (v < 0 || v >= n)
                throw ParseError("table entry " + std::to_string(v) + " in row " +
                                 std::to_string(x) + " is outside 0.." + std::to_string(n - 1));
    }
    return FiniteRack::validate(grid);
}

FiniteRack rack_from_text(const std::string& text) {
    auto lines = split_lines(text);
    int n = 0;
    bool quandle_declared = false;
    size_t li = 0;
    // header
    for (; li < lines.size(); ++li) {
        std::string body = strip_comment(lines[li]);
        if (blank(body)) continue;
        std::istringstream hs(body);
        std::string kw;
        hs >> kw;
        if (kw != "RACK" && kw != "QUANDLE")
            throw ParseError("expected a RACK or QUANDLE header, got '" + kw + "'",
                             static_cast<int>(li + 1));
        quandle_declared = kw == "QUANDLE";
        if (!(hs >> n) || n < 1)
            throw ParseError("header needs a positive size", static_cast<int>(li + 1));
        std::string extra;
        if (hs >> extra)
            throw ParseError("unexpected '" + extra + "' after the header",
                             static_cast<int>(li + 1));
        ++li;
        break;
    }
    if (n == 0) throw ParseError("empty input, expected a RACK or QUANDLE header");

    std::vector<std::vector<int>> grid;
    for (; li < lines.size() && static_cast<int>(grid.size()) < n; ++li) {
        std::string body = strip_comment(lines[li]);
        if (blank(body)) continue;
        std::istringstream rs(body);
        std::vector<int> row;
        int v;
        while (rs >> v) row.push_back(v);
        if (!rs.eof()) {
            std::string tok;
            rs.clear();
            rs >> tok;
            throw ParseError("'" + tok + "' is not an integer", static_cast<int>(li + 1));
        }
        if (static_cast<int>(row.size()) != n)
            throw ParseError("row " + std::to_string(grid.size()) + " has " +
                                 std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(n),
                             static_cast<int>(li + 1));
        for (int entry : row)
            if (entry < 0 || entry >= n)
                throw ParseError("table entry " + std::to_string(entry) + " is outside 0.." +
                                     std::to_string(n - 1),
                                 static_cast<int>(li + 1));
        grid.push_back(std::move(row));
    }
    if (static_cast<int>(grid.size()) != n)
        throw ParseError("table ended after " + std::to_string(grid.size()) + " of " +
                         std::to_string(n) + " rows");
    for (; li < lines.size(); ++li)
        if (!blank(strip_comment(lines[li])))
            throw ParseError("unexpected content after the table", static_cast<int>(li + 1));

    FiniteRack r = FiniteRack::validate(grid);
    if (quandle_declared && !r.is_quandle())
        throw ValidationError("declared QUANDLE, but x ▷ x = x fails");
    return r;
}

} // namespace

FiniteRack parse_rack(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return rack_from_json(text);
        break;
    }
    return rack_from_text(text);
}

FiniteRack parse_rack_stream(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rack(buf.str());
}

std::string emit_rack_json(const FiniteRack& r) {
    ordered_json j;
    j["size"] = r.size();
    j["table"] = r.grid();
    return j.dump() + "\n";
}

std::string emit_rack_text(const FiniteRack& r) {
    std::ostringstream out;
    out << (r.is_quandle() ? "QUANDLE " : "RACK ") << r.size() << "\n";
    for (int x = 0; x < r.size(); ++x) {
        for (int y = 0; y < r.size(); ++y) {
            if (y > 0) out << ' ';
            out << r.op(x, y);
        }
        out << "\n";
    }
    return out.str();
}

Perm parse_cycles(const std::string& text, int degree) {
    if (degree < 1) throw ValidationError("degree must be positive");
    std::vector<int> images(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) images[static_cast<size_t>(i)] = i;
    std::vector<bool> used(static_cast<size_t>(degree), false);

    size_t i = 0;
    bool any_cycle = false;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(')
            throw ParseError("expected '(' in cycle notation", 0, static_cast<int>(i + 1));
        ++i;
        any_cycle = true;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (i >= text.size()) throw ParseError("unclosed cycle", 0, static_cast<int>(i));
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (text[i] == ',') {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError(std::string("unexpected '") + text[i] + "' in a cycle", 0,
                                 static_cast<int>(i + 1));
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > degree) break;
                ++i;
            }
            if (v >= degree)
                throw ParseError("point " + std::to_string(v) + " is outside 0.." +
                                     std::to_string(degree - 1),
                                 0, static_cast<int>(i));
            if (used[static_cast<size_t>(v)])
                throw ParseError("point " + std::to_string(v) + " appears twice", 0,
                                 static_cast<int>(i));
            used[static_cast<size_t>(v)] = true;
            cycle.push_back(v);
        }
        for (size_t c = 0; c < cycle.size(); ++c)
            images[static_cast<size_t>(cycle[c])] = cycle[(c + 1) % cycle.size()];
        skip_ws();
    }
    if (!any_cycle) throw ParseError("expected cycle notation, e.g. (0 1) or ()");
    return Perm(std::move(images));
}

GroupSpec parse_group_spec(const std::string& text) {
    auto lines = split_lines(text);
    GroupSpec gs;
    bool have_header = false;
    for (size_t li = 0; li < lines.size(); ++li) {
        std::string body = trimmed(strip_comment(lines[li]));
        if (body.empty()) continue;
        int lineno = static_cast<int>(li + 1);
        if (!have_header) {
            std::istringstream hs(body);
            std::string kw;
            hs >> kw;
            if (kw != "PERM")
                throw ParseError("expected a PERM header, got '" + kw + "'", lineno);
            if (!(hs >> gs.degree) || gs.degree < 1)
                throw ParseError("PERM header needs a positive degree", lineno);
            std::string extra;
            if (hs >> extra)
                throw ParseError("unexpected '" + extra + "' after the header", lineno);
            have_header = true;
            continue;
        }
        if (body.rfind("PAIR", 0) == 0) {
            std::string rest = body.substr(4);
            size_t colon = rest.find(':');
            if (colon == std::string::npos)
                throw ParseError("PAIR needs ':' between the element and its subgroup", lineno);
            std::string left = trimmed(rest.substr(0, colon));
            std::string right = trimmed(rest.substr(colon + 1));
            CosetPair pair;
            try {
                pair.s = parse_cycles(left, gs.degree);
                // subgroup generators separated by commas at the top level
                size_t start = 0;
                int depth = 0;
                for (size_t i = 0; i <= right.size(); ++i) {
                    if (i < right.size() && right[i] == '(') ++depth;
                    if (i < right.size() && right[i] == ')') --depth;
                    bool split_here = i == right.size() || (right[i] == ',' && depth == 0);
                    if (!split_here) continue;
                    std::string tok = trimmed(right.substr(start, i - start));
                    start = i + 1;
                    if (tok.empty()) continue;
                    pair.subgroup_gens.push_back(parse_cycles(tok, gs.degree));
                }
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
            gs.pairs.push_back(std::move(pair));
            continue;
        }
        try {
            gs.generators.push_back(parse_cycles(body, gs.degree));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_header) throw ParseError("empty input, expected a PERM header");
    if (gs.generators.empty())
        throw ParseError("the group needs at least one generator line (use () for trivial)");
    return gs;
}

CosetRackSpec coset_spec_from_group_spec(const GroupSpec& gs) {
    if (gs.pairs.empty())
        throw ValidationError("the group spec has no PAIR lines to build a coset rack from");
    return CosetRackSpec{gs.degree, gs.generators, gs.pairs};
}

namespace {

int fq_generator_of(char c, size_t pos) {
    if (c == 'x') return 0;
    if (c == 'y') return 1;
    throw ParseError(std::string("'") + c + "' is not a generator (use x or y)", 0,
                     static_cast<int>(pos + 1));
}

} // namespace

FQElement parse_fq_element(const std::string& text) {
    size_t at = text.find('@');
    if (at == std::string::npos)
        throw ParseError("expected CONJUGATOR@GENERATOR, e.g. yx@x or y^3@x");
    if (text.find('@', at + 1) != std::string::npos)
        throw ParseError("more than one '@'");
    std::string gen_part = trimmed(text.substr(at + 1));
    if (gen_part.size() != 1)
        throw ParseError("the generator must be a single letter, x or y");
    int gen = fq_generator_of(gen_part[0], at + 1);

    std::vector<int8_t> letters;
    size_t i = 0;
    while (i < at) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int8_t base;
        switch (c) {
            case 'x': base = 1; break;
            case 'X': base = -1; break;
            case 'y': base = 2; break;
            case 'Y': base = -2; break;
            default:
                throw ParseError(std::string("'") + c + "' is not a letter (use x, y, X, Y)", 0,
                                 static_cast<int>(i + 1));
        }
        ++i;
        long exp = 1;
        if (i < at && text[i] == '^') {
            ++i;
            bool neg = false;
            if (i < at && (text[i] == '-' || text[i] == '+')) {
                neg = text[i] == '-';
                ++i;
            }
            if (i >= at || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("'^' needs an integer exponent", 0, static_cast<int>(i + 1));
            exp = 0;
            while (i < at && std::isdigit(static_cast<unsigned char>(text[i]))) {
                exp = exp * 10 + (text[i] - '0');
                if (exp > 10000) throw ParseError("exponent too large", 0, static_cast<int>(i + 1));
                ++i;
            }
            if (neg) exp = -exp;
        }
        int8_t letter = exp >= 0 ? base : static_cast<int8_t>(-base);
        for (long r = 0; r < std::labs(exp); ++r) letters.push_back(letter);
    }
    return fq_canonical(FreeWord{std::move(letters)}, gen);
}

std::string emit_fq_element(const FQElement& e) {
    RACKQ_ASSERT(e.generator == 0 || e.generator == 1, "only two generator letters exist");
    static const char* names[] = {"x", "y", "X", "Y"};
    std::string out;
    const auto& w = e.conjugator.letters;
    for (size_t i = 0; i < w.size();) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        int idx = std::abs(static_cast<int>(w[i])) - 1;
        RACKQ_ASSERT(idx == 0 || idx == 1, "only two generator letters exist");
        out += names[idx + (w[i] < 0 ? 2 : 0)];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    out += "@";
    out += names[e.generator];
    return out;
}

} // namespace rackq
