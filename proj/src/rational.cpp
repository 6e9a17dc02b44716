#include "hyperctx/rational.hpp"

#include "hyperctx/errors.hpp"

namespace hyperctx {

std::string format_rational(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

bool valid_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!valid_integer_text(text)) throw Error("BadRational", "not a rational: '" + text + "'");
            return Rational(Integer(text));
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!valid_integer_text(num) || !valid_integer_text(den)) {
            throw Error("BadRational", "not a rational: '" + text + "'");
        }
        Integer d(den);
        if (d == 0) throw Error("BadRational", "zero denominator in '" + text + "'");
        return Rational(Integer(num), d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("BadRational", "not a rational: '" + text + "'");
    }
}

}  // namespace hyperctx
