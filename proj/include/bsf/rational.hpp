#pragma once

// Exact rationals (GMP) and their "p/q" text form.

#include <string>

#include <gmpxx.h>

namespace bsf {

using Rational = mpq_class;

/// Accepts "p", "p/q" and "-p/q"; throws a validation error otherwise.
Rational parse_rational(const std::string& text);

/// Canonical "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

}  // namespace bsf
