#include "visguard/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace visguard {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string_view digits = s;
    bool negative = false;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) throw std::invalid_argument("malformed number '" + std::string(s) + "'");
    mpz_class z(std::string(digits), 10);
    return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        mpz_class den(std::string(den_text), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = false;
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            negative = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        mpz_class whole = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
        mpz_class frac = frac_part.empty() ? mpz_class(0) : mpz_class(std::string(frac_part), 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
        Rational q(whole * scale + frac, scale);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }
    return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace visguard
