#include "fairwire/rational.hpp"

#include "fairwire/errors.hpp"

#include <cctype>
#include <limits>

namespace fairwire {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto fail = [&] { throw InputError("not a rational number: '" + text + "'"); };

    std::string s = text;
    // trim surrounding whitespace
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) fail();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!is_integer_text(num) || !is_integer_text(den)) fail();
        BigInt p(num), q(den);
        if (q == 0) throw InputError("zero denominator in '" + text + "'");
        return Rational(p, q);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string head = s.substr(0, dot);
        const std::string frac = s.substr(dot + 1);
        bool negative = false;
        if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
            negative = head[0] == '-';
            head.erase(head.begin());
        }
        if (head.empty() && frac.empty()) fail();
        if (!head.empty() && !is_integer_text(head)) fail();
        if (!frac.empty() && !is_integer_text(frac)) fail();
        BigInt whole = head.empty() ? BigInt(0) : BigInt(head);
        BigInt scale = 1;
        BigInt digits = 0;
        for (char c : frac) {
            digits = digits * 10 + (c - '0');
            scale *= 10;
        }
        Rational value = Rational(whole) + Rational(digits, scale);
        return negative ? -value : value;
    }
    if (!is_integer_text(s)) fail();
    return Rational(BigInt(s));
}

std::string format_rational(const Rational& value) {
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

BigInt floor_rational(const Rational& value) {
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);  // > 0 after normalization
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

std::int64_t to_int64(const BigInt& value) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (value < lo || value > hi) throw SolveError("integer out of int64 range: " + value.str());
    return value.convert_to<std::int64_t>();
}

std::int64_t floor_to_int64(const Rational& value) { return to_int64(floor_rational(value)); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational rational_from_double(double value) {
    Rational r;
    mpq_set_d(r.backend().data(), value);
    return r;
}

}  // namespace fairwire
