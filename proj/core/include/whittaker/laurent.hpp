#pragma once

#include <array>
#include <map>

#include "whittaker/rational.hpp"

namespace whittaker {

/// Finitely supported Laurent polynomial in four variables with integer
/// coefficients; multiplication is exact.
class LaurentPoly {
 public:
  using Exponent = std::array<int, 4>;

  LaurentPoly() = default;
  static LaurentPoly constant(Int c);
  /// Single monomial c * x^a y^b z^c w^d.
  static LaurentPoly monomial(Int coeff, Exponent e);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly pow(long k) const;

  Int coefficient(Exponent e) const;
  Int constant_term() const { return coefficient({0, 0, 0, 0}); }
  size_t num_terms() const { return terms_.size(); }

 private:
  std::map<Exponent, Int> terms_;
  void prune();
};

/// The two G_2 Laurent polynomials
///   P = (1 + x + y + xz)(xw + yz + yw) / (xyz),  Q = (1 + y + z + w) / w.
LaurentPoly g2_laurent_P();
LaurentPoly g2_laurent_Q();

/// Constant term of P^n Q^m; an independent route to G_2(n,m).
Int g2_constant_term(long n, long m);

}  // namespace whittaker
