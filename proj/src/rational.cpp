#include "whcone/rational.hpp"

#include "whcone/graph.hpp"

#include <cctype>

namespace whcone {

std::string to_fraction(const Rational& q)
{
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

namespace {

bool all_digits(const std::string& s, size_t from)
{
    if (from >= s.size()) return false;
    for (size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

BigInt parse_integer(const std::string& s)
{
    size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, start)) throw RejectedInput("not an integer: \"" + s + "\"");
    BigInt v(s.substr(start));
    return s[0] == '-' ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        std::string den_text = text.substr(slash + 1);
        if (!all_digits(den_text, 0)) throw RejectedInput("bad denominator in \"" + text + "\"");
        BigInt den(den_text);
        if (den == 0) throw RejectedInput("zero denominator in \"" + text + "\"");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (!frac.empty() && !all_digits(frac, 0)) throw RejectedInput("bad decimal \"" + text + "\"");
        bool negative = !whole.empty() && whole[0] == '-';
        std::string digits = whole;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits = digits.substr(1);
        if (digits.empty()) digits = "0";
        if (!all_digits(digits, 0)) throw RejectedInput("bad decimal \"" + text + "\"");
        BigInt scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt num = BigInt(digits) * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
        Rational q(num, scale);
        return negative ? Rational(-q) : q;
    }
    return Rational(parse_integer(text));
}

std::vector<std::string> to_fractions(const std::vector<Rational>& v)
{
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(to_fraction(q));
    return out;
}

} // namespace whcone
