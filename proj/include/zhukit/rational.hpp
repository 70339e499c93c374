#ifndef ZHUKIT_RATIONAL_HPP
#define ZHUKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace zhukit {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rat = mpq_class;

/// Raised when a computation would need data above a presentation cutoff.
class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a series coefficient is requested outside its certified window.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);

/// Generalized binomial coefficient C(n, i) = n(n-1)...(n-i+1)/i!, zero for i < 0.
Rat binomial(const Rat& n, long i);
Rat binomial(long n, long i);

/// z^e for any integer e (z must be nonzero when e < 0).
Rat ipow(const Rat& z, long e);

Rat factorial(long n);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

/// n/d in lowest terms (the two-argument mpq constructor does not reduce).
inline Rat make_rat(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace zhukit

#endif  // ZHUKIT_RATIONAL_HPP
