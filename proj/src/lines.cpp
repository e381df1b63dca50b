#include "phaseret/lines.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "phaseret/errors.hpp"

namespace phaseret {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

double parse_number(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw PreconditionError("cannot parse " + what + " '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const std::string& what) {
    long v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end) throw PreconditionError("cannot parse " + what + " '" + s + "'");
    return v;
}

// Split on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (const char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw PreconditionError("unbalanced ')' in line list");
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (depth != 0) throw PreconditionError("unbalanced '(' in line list");
    parts.push_back(cur);
    return parts;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

LineSpec horizontal(double v, const Grid& g, std::string id) {
    LineSpec l;
    l.anchor = {0.0, v};
    l.direction = {1.0, 0.0};
    l.t_min = g.min;
    l.t_max = g.max;
    l.count = g.count;
    l.id = std::move(id);
    return l;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string horizontal_line_id(double v) {
    if (v == 0.0) return "R";
    return (v > 0 ? "R+" : "R-") + format_number(std::abs(v)) + "i";
}

Grid parse_grid(const std::string& text) {
    const std::string s = strip(text);
    const auto a = s.find(':');
    const auto b = a == std::string::npos ? a : s.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos) throw PreconditionError("grid must be min:max:count");
    Grid g;
    g.min = parse_number(s.substr(0, a), "grid min");
    g.max = parse_number(s.substr(a + 1, b - a - 1), "grid max");
    const long count = parse_long(s.substr(b + 1), "grid count");
    if (!(g.max > g.min)) throw PreconditionError("grid needs max > min");
    if (count < 2 || count > 1000000) throw PreconditionError("grid count must lie in [2, 10^6]");
    g.count = static_cast<int>(count);
    return g;
}

double parse_angle(const std::string& text) {
    std::string s = strip(text);
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return parse_number(s, "angle");
    std::string coeff = s.substr(0, pos);
    const std::string rest = s.substr(pos + 2);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    double c = 1.0;
    if (coeff == "-") {
        c = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        c = parse_number(coeff, "angle coefficient");
    }
    double d = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/') throw PreconditionError("cannot parse angle '" + text + "'");
        d = parse_number(rest.substr(1), "angle divisor");
        if (d == 0.0) throw PreconditionError("angle divisor must be nonzero");
    }
    return c * std::numbers::pi / d;
}

std::vector<LineSpec> parse_lines(const std::string& text, const Grid& grid) {
    std::vector<LineSpec> out;
    for (const auto& raw : split_top_level(text)) {
        const std::string s = strip(raw);
        if (s.empty()) throw PreconditionError("empty entry in line list '" + text + "'");
        if (s == "R") {
            out.push_back(horizontal(0.0, grid, "R"));
        } else if (s == "iR") {
            LineSpec l = horizontal(0.0, grid, "iR");
            l.direction = {0.0, 1.0};
            out.push_back(l);
        } else if (starts_with(s, "R+") || starts_with(s, "R-")) {
            if (s.back() != 'i') throw PreconditionError("line '" + s + "' must end in 'i'");
            const double v = parse_number(s.substr(2, s.size() - 3), "line offset");
            out.push_back(horizontal(s[1] == '+' ? v : -v, grid, s));
        } else if (starts_with(s, "rot(") && s.back() == ')') {
            LineSpec l = horizontal(0.0, grid, s);
            l.direction = std::polar(1.0, parse_angle(s.substr(4, s.size() - 5)));
            out.push_back(l);
        } else if (starts_with(s, "family(") && s.back() == ')') {
            const auto args = split_top_level(s.substr(7, s.size() - 8));
            if (args.size() != 3 || args[0] != "R" || !starts_with(args[1], "tau=") || !starts_with(args[2], "n=")) {
                throw PreconditionError("family syntax is family(R, tau=<v>, n=<a>..<b>)");
            }
            const double tau = parse_number(args[1].substr(4), "tau");
            const std::string range = args[2].substr(2);
            const auto dots = range.find("..");
            if (dots == std::string::npos) throw PreconditionError("family range must be n=<a>..<b>");
            const long lo = parse_long(range.substr(0, dots), "family range start");
            const long hi = parse_long(range.substr(dots + 2), "family range end");
            if (hi < lo || hi - lo > 10000) throw PreconditionError("family range must satisfy a <= b, b - a <= 10^4");
            for (long n = lo; n <= hi; ++n) {
                const double v = static_cast<double>(n) * tau;
                out.push_back(horizontal(v, grid, horizontal_line_id(v)));
            }
        } else {
            throw PreconditionError("unknown line '" + s + "'");
        }
    }
    return out;
}

}  // namespace phaseret
