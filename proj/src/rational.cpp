#include <zhukit/rational.hpp>

namespace zhukit {

Rat parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ')) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(10); }

Rat binomial(const Rat& n, long i) {
  if (i < 0) return Rat(0);
  Rat num(1);
  for (long j = 0; j < i; ++j) num *= (n - j);
  return num / factorial(i);
}

Rat binomial(long n, long i) { return binomial(Rat(n), i); }

Rat ipow(const Rat& z, long e) {
  if (e < 0) {
    if (is_zero(z)) throw std::domain_error("negative power of zero");
    Rat inv = 1 / z;
    return ipow(inv, -e);
  }
  Rat out(1);
  Rat base = z;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1UL) out *= base;
    base *= base;
    k >>= 1U;
  }
  return out;
}

Rat factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return Rat(f);
}

}  // namespace zhukit
