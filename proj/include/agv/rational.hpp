#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace agv {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "3", "-7/4", "0.125" and "1e-2"-free decimal forms.
Rational parse_rational(std::string_view text);

// Lowest-terms rendering: "3", "-7/4".
std::string to_string(const Rational& value);

Rational make_rational(long num, long den = 1);

inline bool is_probability(const Rational& value) { return value >= 0 && value <= 1; }

}  // namespace agv
