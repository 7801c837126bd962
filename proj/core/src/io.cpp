#include "mpair/io.hpp"

#include <cctype>
#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

namespace mpair {

namespace {

struct Line {
    std::size_t number;
    std::string text;
    std::vector<std::string> tokens;
    std::vector<std::size_t> token_cols;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::size_t line_no = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string raw = text.substr(start, end - start);
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        Line line{line_no, raw, {}, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            line.tokens.push_back(raw.substr(i, j - i));
            line.token_cols.push_back(i + 1);
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        ++line_no;
        start = end + 1;
        if (end == text.size()) break;
    }
    return lines;
}

long long parse_integer(const std::string& s, const Line& line, std::size_t col) {
    std::size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (i == s.size() || s.find_first_not_of("0123456789", i) != std::string::npos)
        throw ParseError(line.number, col, "expected an integer, got '" + s + "'");
    try {
        return std::stoll(s);
    } catch (const std::out_of_range&) {
        throw ParseError(line.number, col, "integer '" + s + "' is out of range");
    }
}

Coefficient parse_coefficient(const std::string& s, Field f, const Line& line, std::size_t col) {
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos)
        return Coefficient::from_integer(f, parse_integer(s, line, col));
    const long long num = parse_integer(s.substr(0, slash), line, col);
    const long long den = parse_integer(s.substr(slash + 1), line, col);
    if (den == 0) throw ParseError(line.number, col, "zero denominator");
    return Coefficient::from_rational(f, Rational(num) / Rational(den));
}

// key=value token
std::string value_of(const std::string& token, const std::string& key, const Line& line,
                     std::size_t col) {
    if (token.rfind(key + "=", 0) != 0)
        throw ParseError(line.number, col, "expected " + key + "=..., got '" + token + "'");
    return token.substr(key.size() + 1);
}

} // namespace

MDifferential parse_mpair(const std::string& text) {
    const auto lines = tokenize(text);
    std::optional<Field> field;
    std::vector<BasisElement> elems;
    std::vector<std::pair<const Line*, std::size_t>> d_lines;  // line, first token idx

    for (const auto& line : lines) {
        const auto& tok = line.tokens;
        if (tok[0] == "field") {
            if (tok.size() != 2)
                throw ParseError(line.number, line.token_cols[0], "field needs one argument");
            if (field) throw ParseError(line.number, line.token_cols[0], "duplicate field line");
            try {
                field = Field::parse(tok[1]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line.number, line.token_cols[1], e.what());
            }
        } else if (tok[0] == "element") {
            if (tok.size() < 4 || tok.size() > 5)
                throw ParseError(line.number, line.token_cols[0],
                                 "element <id> deg=<int> side=... [trivial]");
            BasisElement e;
            e.id = tok[1];
            e.degree = static_cast<int>(
                parse_integer(value_of(tok[2], "deg", line, line.token_cols[2]), line, line.token_cols[2]));
            const std::string side = value_of(tok[3], "side", line, line.token_cols[3]);
            if (side == "boundary") e.side = Side::boundary;
            else if (side == "interior") e.side = Side::interior;
            else throw ParseError(line.number, line.token_cols[3], "side must be boundary or interior");
            if (tok.size() == 5) {
                if (tok[4] != "trivial")
                    throw ParseError(line.number, line.token_cols[4], "expected 'trivial'");
                e.trivial = true;
            }
            elems.push_back(std::move(e));
        } else if (tok[0] == "d") {
            d_lines.push_back({&line, 0});
        } else {
            throw ParseError(line.number, line.token_cols[0], "unknown statement '" + tok[0] + "'");
        }
    }

    if (!field) {
        if (!lines.empty() || !elems.empty())
            throw ParseError(lines.empty() ? 1 : lines.front().number, 1, "missing field line");
        field = Field::gf(2);
    }

    OrderedTriple t;
    try {
        t = OrderedTriple(std::move(elems));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines.empty() ? 1 : lines.back().number, 1, e.what());
    }

    Matrix m(*field, t.size(), t.size());
    for (const auto& [line_ptr, unused] : d_lines) {
        const auto& line = *line_ptr;
        const auto& tok = line.tokens;
        if (tok.size() < 4 || tok[2] != "=")
            throw ParseError(line.number, line.token_cols[0], "d <id> = <term> (+ <term>)*");
        const auto col_pos = t.position_of(tok[1]);
        if (!col_pos)
            throw ParseError(line.number, line.token_cols[1], "unknown element '" + tok[1] + "'");
        bool expect_term = true;
        for (std::size_t i = 3; i < tok.size(); ++i) {
            if (!expect_term) {
                if (tok[i] != "+")
                    throw ParseError(line.number, line.token_cols[i], "expected '+'");
                expect_term = true;
                continue;
            }
            const std::string& term = tok[i];
            if (term == "0" && tok.size() == 4) break;  // d x = 0
            Coefficient coef = Coefficient::one(*field);
            std::string target = term;
            const std::size_t star = term.find('*');
            if (star != std::string::npos) {
                coef = parse_coefficient(term.substr(0, star), *field, line, line.token_cols[i]);
                target = term.substr(star + 1);
            }
            const auto row_pos = t.position_of(target);
            if (!row_pos)
                throw ParseError(line.number, line.token_cols[i], "unknown element '" + target + "'");
            if (!m.at(*row_pos, *col_pos).is_zero())
                throw ParseError(line.number, line.token_cols[i],
                                 "element '" + target + "' appears twice in one image");
            m.set(*row_pos, *col_pos, coef);
            expect_term = false;
        }
        if (expect_term)
            throw ParseError(line.number, line.token_cols.back(), "dangling '+'");
    }

    return MDifferential(std::move(t), std::move(m));
}

std::string emit_mpair(const MDifferential& d) {
    const auto& t = d.triple();
    std::ostringstream out;
    out << "field " << d.field().str() << "\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& e = t.at(i);
        out << "element " << e.id << " deg=" << e.degree << " side="
            << (e.side == Side::boundary ? "boundary" : "interior")
            << (e.trivial ? " trivial" : "") << "\n";
    }
    for (std::size_t c = 0; c < t.size(); ++c) {
        bool any = false;
        std::ostringstream terms;
        for (std::size_t r = 0; r < t.size(); ++r) {
            const Coefficient& v = d.entry(r, c);
            if (v.is_zero()) continue;
            if (any) terms << " + ";
            if (!v.is_one()) terms << v.str() << "*";
            terms << t.at(r).id;
            any = true;
        }
        if (any) out << "d " << t.at(c).id << " = " << terms.str() << "\n";
    }
    return out.str();
}

Scenario parse_scenario(const std::string& text) {
    const auto lines = tokenize(text);
    Scenario s;
    bool field_seen = false;
    for (const auto& line : lines) {
        const auto& tok = line.tokens;
        if (tok[0] == "field") {
            if (tok.size() != 2)
                throw ParseError(line.number, line.token_cols[0], "field needs one argument");
            try {
                s.field = Field::parse(tok[1]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line.number, line.token_cols[1], e.what());
            }
            field_seen = true;
        } else if (tok[0] == "event") {
            if (tok.size() < 3)
                throw ParseError(line.number, line.token_cols[0],
                                 "event <kind> [direction] value=<rational>");
            CriticalEvent e;
            std::size_t i = 1;
            const std::string& kind = tok[i];
            if (kind == "interior_min") e.kind = EventKind::interior_min;
            else if (kind == "interior_max") e.kind = EventKind::interior_max;
            else if (kind == "boundary_left") e.kind = EventKind::boundary_left;
            else if (kind == "boundary_right") e.kind = EventKind::boundary_right;
            else throw ParseError(line.number, line.token_cols[i], "unknown event kind '" + kind + "'");
            ++i;
            if (e.kind == EventKind::boundary_left || e.kind == EventKind::boundary_right) {
                if (i >= tok.size())
                    throw ParseError(line.number, line.token_cols.back(), "boundary event needs a direction");
                if (tok[i] == "inward") e.direction = BoundaryDirection::inward;
                else if (tok[i] == "outward") e.direction = BoundaryDirection::outward;
                else throw ParseError(line.number, line.token_cols[i], "direction must be inward or outward");
                ++i;
            }
            if (i + 1 != tok.size())
                throw ParseError(line.number, line.token_cols.back(), "event needs exactly value=<rational>");
            const std::string v = value_of(tok[i], "value", line, line.token_cols[i]);
            const std::size_t slash = v.find('/');
            if (slash == std::string::npos) {
                e.value = Rational(parse_integer(v, line, line.token_cols[i]));
            } else {
                const long long num = parse_integer(v.substr(0, slash), line, line.token_cols[i]);
                const long long den = parse_integer(v.substr(slash + 1), line, line.token_cols[i]);
                if (den == 0) throw ParseError(line.number, line.token_cols[i], "zero denominator");
                e.value = Rational(num) / Rational(den);
            }
            s.events.push_back(std::move(e));
        } else {
            throw ParseError(line.number, line.token_cols[0], "unknown statement '" + tok[0] + "'");
        }
    }
    if (!field_seen && s.events.empty())
        throw ParseError(1, 1, "empty scenario");
    return s;
}

std::string emit_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "field " << s.field.str() << "\n";
    for (const auto& e : s.events) {
        out << "event " << event_kind_name(e.kind);
        if (e.direction)
            out << (e.direction == BoundaryDirection::inward ? " inward" : " outward");
        const Coefficient v = Coefficient::from_rational(Field::rationals(), e.value);
        out << " value=" << v.str() << "\n";
    }
    return out.str();
}

} // namespace mpair
