#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "openbook/mixed.hpp"

namespace openbook {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

struct ParsedMixed {
    MixedPolynomial f;
    std::vector<std::string> vars;
};

struct ParsedRealMap {
    RealPolyMap map;
    std::vector<std::string> vars;
};

/// Parse a mixed polynomial. Variables are z1..z9 by default, or the names
/// declared in a leading "vars: a, b, c" line; conj(v) denotes the conjugate
/// of v and `i` the imaginary unit. Coefficients are rational literals.
ParsedMixed parse_mixed(const std::string& text);

/// Parse a semicolon-separated real polynomial map in x1..x9 or declared
/// variables. Rejects `i`, conj(), and maps with more components than
/// variables.
ParsedRealMap parse_real_map(const std::string& text);

/// Canonical printers; output re-parses to the same object. Terms appear in
/// descending graded-lex order of the exponent vectors.
std::string to_string(const MixedPolynomial& f, const std::vector<std::string>& vars);
std::string to_string(const RealPoly& f, const std::vector<std::string>& vars);
std::string to_string(const RealPolyMap& map, const std::vector<std::string>& vars);

/// Default variable names: z1..zn, x1..xm.
std::vector<std::string> default_z_names(int n);
std::vector<std::string> default_x_names(int m);

}  // namespace openbook
