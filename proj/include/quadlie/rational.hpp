#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace quadlie {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
using Rational = mpq_class;

/// Dense coordinate vector.
using Vector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Rejects anything else, including q = 0.
Rational parse_rational(std::string_view text);

/// Canonical text: "p/q" with q > 1, or "p".
std::string format_rational(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

bool is_zero(const Vector& v);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);

std::string format_vector(const Vector& v);

}  // namespace quadlie
