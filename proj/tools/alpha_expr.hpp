#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "pinball/kesten.hpp"

namespace pinball::cli {

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A parsed twist amplitude.  Exact forms are kept so downstream formulas can
/// use them: "1/ln(X)" pins mu = X exactly, "p/q" enables the integer fast
/// paths of the zero-twist module.
struct AlphaSpec {
    std::string text;
    double value = 1.0;
    std::optional<double> exact_mu;    // set for 1/ln(X)
    std::optional<Rational> rational;  // set for integer p/q
};

/// Accepted forms: decimal ("0.5"), integer ratio ("1/2"), "ln(X)", "1/ln(X)".
AlphaSpec parse_alpha(const std::string& text);

}  // namespace pinball::cli
