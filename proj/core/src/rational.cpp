#include "whittaker/rational.hpp"

#include <sstream>

namespace whittaker {

Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Rat inv_factorial(long n) {
  if (n < 0) return Rat(0);
  Rat q(Int(1), factorial(n));
  q.canonicalize();
  return q;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Int(0);
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return b;
}

Int trinomial(long n, long i, long j) {
  if (n < 0 || i < 0 || j < 0 || i + j > n) return Int(0);
  return binomial(n, i) * binomial(n - i, j);
}

Rat rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat q(s);
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rat q(s);
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  long frac_len = static_cast<long>(s.size() - dot - 1);
  Int den = 1;
  for (long i = 0; i < frac_len; ++i) den *= 10;
  Rat q(Int(digits), den);
  q.canonicalize();
  return q;
}

double to_double(const Rat& q) { return q.get_d(); }

bool is_integer(const Rat& q) {
  return q.get_den() == 1 && q.get_num().fits_slong_p();
}

long to_long(const Rat& q) {
  if (!is_integer(q)) throw std::invalid_argument("to_long: not a small integer");
  return q.get_num().get_si();
}

Rat rat_sum(const std::vector<Rat>& xs) {
  Rat s(0);
  for (const auto& x : xs) s += x;
  return s;
}

}  // namespace whittaker
