#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tstab {

using Rational = mpq_class;
using Integer = mpz_class;

// A point or direction in Q^n. Plain vector; the ambient dimension is
// carried by the containing object.
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a);
RatVector operator*(const Rational& s, const RatVector& a);

bool is_zero(std::span<const Rational> v);
bool is_integral(std::span<const Rational> v);

// Positive rescaling to the primitive integer vector on the same ray.
// The zero vector is returned unchanged.
RatVector primitive(const RatVector& v);

RatVector unit_vector(int dim, int i);

// Rank of a family of vectors (exact Gaussian elimination).
int rank(const RatMatrix& rows);

// Determinant of a square matrix.
Rational determinant(RatMatrix m);

// Solves A x = b for square nonsingular A; returns false if singular.
bool solve(const RatMatrix& a, const RatVector& b, RatVector& x);

// Inverse of a square nonsingular matrix; throws std::domain_error if singular.
RatMatrix inverse(const RatMatrix& a);

// "p/q" with an explicit denominator, e.g. "1/1", "-6/7".
std::string to_pq(const Rational& q);

// Accepts "p/q", "p" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

// Comma-separated list of rationals.
RatVector parse_rational_list(std::string_view text);

double to_double(const Rational& q);

// Lexicographic order on vectors of equal length.
bool lex_less(const RatVector& a, const RatVector& b);

}  // namespace tstab
