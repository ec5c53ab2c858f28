#include "redgreen/rational.hpp"

#include <cctype>

namespace redgreen {

std::string format_rational(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text)) {
            throw ValidationError("not a rational: '" + text + "'");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
        throw ValidationError("not a rational: '" + text + "'");
    }
    const BigInt d(den);
    if (d == 0) {
        throw ValidationError("zero denominator: '" + text + "'");
    }
    return Rational(BigInt(num), d);
}

}  // namespace redgreen
