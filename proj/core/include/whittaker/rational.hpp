#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace whittaker {

using Int = mpz_class;
using Rat = mpq_class;

/// n! as an exact integer.  Throws for negative n.
Int factorial(long n);

/// 1/n! with the convention 1/n! = 0 for negative integer n.
/// This extends every kernel and weight formula to out-of-range indices.
Rat inv_factorial(long n);

/// Binomial coefficient with C(n,k) = 0 for k < 0 or k > n (n >= 0).
Int binomial(long n, long k);

/// n! / (i! j! (n-i-j)!), zero if any argument is negative.
Int trinomial(long n, long i, long j);

Rat rat(long num, long den = 1);

/// Canonicalized rational from a possibly non-reduced (or negative-
/// denominator) pair.  The raw two-argument mpq constructor must not be
/// used directly.
inline Rat ratio(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}
inline Rat ratio(long num, long den) { return ratio(Int(num), Int(den)); }

/// Exact "p/q" rendering; integers print without the "/1".
std::string rat_to_string(const Rat& q);

/// Parses "p", "p/q" or a decimal like "1.25" into an exact rational.
Rat rat_from_string(const std::string& s);

double to_double(const Rat& q);

/// True if q is an integer that fits in a signed long.
bool is_integer(const Rat& q);
long to_long(const Rat& q);

/// Sum of a vector of rationals (exact).
Rat rat_sum(const std::vector<Rat>& xs);

}  // namespace whittaker
