#pragma once

#include <string>
#include <vector>

#include "phaseret/hadamard.hpp"

namespace phaseret {

struct Grid {
    double min = -3.0;
    double max = 3.0;
    int count = 601;
};

/// Shortest round-trip decimal, e.g. 0.5, -5, 1.0471975511965976.
std::string format_number(double v);

/// Id of the horizontal line Im z = v: "R", "R+0.5i", "R-5i".
std::string horizontal_line_id(double v);

/// "min:max:count"; count in [2, 10^6].
Grid parse_grid(const std::string& text);

/// A real number or a multiple of pi: "0.5", "pi", "pi/3", "2pi/5", "2*pi/5", "-pi/4".
double parse_angle(const std::string& text);

/// Comma-separated line list in the mini-language
///   R | iR | R+<v>i | R-<v>i | rot(<angle>) | family(R, tau=<v>, n=<a>..<b>)
/// each sampled on `grid`. Throws PreconditionError on malformed input.
std::vector<LineSpec> parse_lines(const std::string& text, const Grid& grid);

}  // namespace phaseret
