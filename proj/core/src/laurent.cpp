#include "whittaker/laurent.hpp"

#include <stdexcept>

namespace whittaker {

LaurentPoly LaurentPoly::constant(Int c) {
  return monomial(std::move(c), {0, 0, 0, 0});
}

LaurentPoly LaurentPoly::monomial(Int coeff, Exponent e) {
  LaurentPoly p;
  if (coeff != 0) p.terms_[e] = std::move(coeff);
  return p;
}

void LaurentPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.terms_[e] += c;
  out.prune();
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
      out.terms_[e] += c1 * c2;
    }
  out.prune();
  return out;
}

LaurentPoly LaurentPoly::pow(long k) const {
  if (k < 0) throw std::invalid_argument("LaurentPoly::pow: negative power");
  LaurentPoly acc = constant(1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Int LaurentPoly::coefficient(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

namespace {
LaurentPoly mono(long c, int x, int y, int z, int w) {
  return LaurentPoly::monomial(Int(c), {x, y, z, w});
}
}  // namespace

LaurentPoly g2_laurent_P() {
  LaurentPoly f1 = mono(1, 0, 0, 0, 0) + mono(1, 1, 0, 0, 0) +
                   mono(1, 0, 1, 0, 0) + mono(1, 1, 0, 1, 0);
  LaurentPoly f2 = mono(1, 1, 0, 0, 1) + mono(1, 0, 1, 1, 0) +
                   mono(1, 0, 1, 0, 1);
  LaurentPoly inv_xyz = mono(1, -1, -1, -1, 0);
  return f1 * f2 * inv_xyz;
}

LaurentPoly g2_laurent_Q() {
  LaurentPoly f = mono(1, 0, 0, 0, 0) + mono(1, 0, 1, 0, 0) +
                  mono(1, 0, 0, 1, 0) + mono(1, 0, 0, 0, 1);
  return f * mono(1, 0, 0, 0, -1);
}

Int g2_constant_term(long n, long m) {
  if (n < 0 || m < 0) throw std::invalid_argument("g2_constant_term: negative index");
  LaurentPoly p = g2_laurent_P().pow(n) * g2_laurent_Q().pow(m);
  return p.constant_term();
}

}  // namespace whittaker
