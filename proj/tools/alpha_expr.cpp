#include "alpha_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace pinball::cli {

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool parse_integer(const std::string& s, long long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

// "ln(X)" -> X
bool parse_ln_arg(const std::string& s, double& x) {
    if (s.size() < 4 || s.compare(0, 3, "ln(") != 0 || s.back() != ')') return false;
    return parse_number(strip(s.substr(3, s.size() - 4)), x);
}

}  // namespace

AlphaSpec parse_alpha(const std::string& text) {
    AlphaSpec spec;
    spec.text = strip(text);
    const std::string& s = spec.text;
    if (s.empty()) throw UsageError("alpha: empty expression");

    double x;
    if (parse_number(s, x)) {
        spec.value = x;
    } else if (parse_ln_arg(s, x)) {
        if (!(x > 0.0)) throw UsageError("alpha: ln argument must be positive in '" + s + "'");
        spec.value = std::log(x);
    } else {
        const auto slash = s.find('/');
        if (slash == std::string::npos)
            throw UsageError("alpha: cannot parse '" + s +
                             "' (expected a decimal, p/q, ln(x), or 1/ln(x))");
        const std::string head = strip(s.substr(0, slash));
        const std::string tail = strip(s.substr(slash + 1));
        double ln_arg;
        long long p, q;
        if (head == "1" && parse_ln_arg(tail, ln_arg)) {
            if (!(ln_arg > 1.0))
                throw UsageError("alpha: 1/ln(x) needs x > 1 in '" + s + "'");
            spec.value = 1.0 / std::log(ln_arg);
            spec.exact_mu = ln_arg;
        } else if (parse_integer(head, p) && parse_integer(tail, q)) {
            if (q == 0) throw UsageError("alpha: zero denominator in '" + s + "'");
            spec.value = static_cast<double>(p) / static_cast<double>(q);
            spec.rational = Rational{p, q};
        } else {
            throw UsageError("alpha: cannot parse '" + s +
                             "' (expected a decimal, p/q, ln(x), or 1/ln(x))");
        }
    }
    if (!(spec.value > 0.0))
        throw UsageError("alpha: must be positive, got '" + s + "'");
    return spec;
}

}  // namespace pinball::cli
