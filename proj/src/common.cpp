#include "arakelov/common.hpp"

#include <algorithm>
#include <cctype>

namespace arakelov {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt pow10(long long e) {
    BigInt r = 1;
    for (long long i = 0; i < e; ++i) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(const std::string& token) {
    const auto bad = [&] { return InvalidArgument("malformed number '" + token + "'"); };
    if (token.empty()) throw bad();

    if (auto slash = token.find('/'); slash != std::string::npos) {
        std::string num = token.substr(0, slash);
        std::string den = token.substr(slash + 1);
        bool negative = false;
        if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
            negative = num[0] == '-';
            num.erase(0, 1);
        }
        if (!all_digits(num) || !all_digits(den)) throw bad();
        num.erase(0, std::min(num.find_first_not_of('0'), num.size() - 1));
        den.erase(0, std::min(den.find_first_not_of('0'), den.size() - 1));
        BigInt d(den);
        if (d == 0) throw InvalidArgument("zero denominator in '" + token + "'");
        Rational q(BigInt(num), d);
        return negative ? Rational(-q) : q;
    }

    std::string s = token;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    long long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        std::string exp_part = s.substr(e + 1);
        s = s.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part[0] == '-' || exp_part[0] == '+')) {
            exp_negative = exp_part[0] == '-';
            exp_part.erase(0, 1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6) throw bad();
        exponent = std::stoll(exp_part);
        if (exp_negative) exponent = -exponent;
    }
    std::string int_part = s;
    std::string frac_part;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw bad();
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw bad();
    std::string digits = int_part + frac_part;
    // cpp_int reads a leading zero as an octal prefix.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    BigInt mantissa(digits);
    long long scale = static_cast<long long>(frac_part.size()) - exponent;
    Rational q = scale >= 0 ? Rational(mantissa, pow10(scale)) : Rational(mantissa * pow10(-scale));
    return negative ? Rational(-q) : q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace arakelov
