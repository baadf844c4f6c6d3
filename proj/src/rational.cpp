#include "icb/rational.hpp"

#include <stdexcept>

namespace icb {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    // mpq_class accepts leading whitespace and partial garbage in some
    // forms; validate the shape ourselves: optional sign, digits,
    // optionally "/" digits.
    auto is_digits = [](std::string_view v) {
        if (v.empty()) return false;
        for (char c : v)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body(s);
    std::string_view num = body, den = "1";
    if (auto pos = body.find('/'); pos != std::string_view::npos) {
        num = body.substr(0, pos);
        den = body.substr(pos + 1);
    }
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) num.remove_prefix(1);
    if (!is_digits(num) || !is_digits(den))
        throw std::invalid_argument("malformed rational: '" + s + "'");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

}  // namespace icb
