#pragma once

#include <optional>

#include "openbook/mixed.hpp"

namespace openbook::testhelp {

/// a == r * b for a nonzero rational r, exactly.
inline std::optional<Rational> proportionality(const RealPoly& a, const RealPoly& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    auto [ea, ca] = a.leading_term();
    auto [eb, cb] = b.leading_term();
    if (ea != eb) return std::nullopt;
    Rational r = ca / cb;
    if (a != b * r) return std::nullopt;
    return r;
}

}  // namespace openbook::testhelp
