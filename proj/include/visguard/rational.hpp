#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace visguard {

using Rational = mpq_class;

// Accepts "12", "-3", "0.25", "-1.5", "3/4", "-7/2". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical exact text: "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

// num / den in lowest terms; den != 0.
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace visguard
