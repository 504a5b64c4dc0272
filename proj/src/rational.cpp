#include "lhlll/rational.hpp"

namespace lhlll {

Int rat_floor(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

Int rat_ceil(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

Rat rat_pow(const Rat& x, uint64_t e) {
  Rat acc = 1, base = x;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Int binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (int64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Int isqrt_ceil(const Int& x) {
  if (x <= 0) return 0;
  Int r = boost::multiprecision::sqrt(x);
  if (r * r < x) ++r;
  return r;
}

Int rat_sqrt_ceil(const Rat& x) {
  if (x <= 0) return 0;
  // ceil(sqrt(p/q)) = smallest m with m^2 >= p/q, i.e. m^2*q >= p.
  Int p = numerator(x), q = denominator(x);
  Int m = isqrt_ceil(rat_ceil(x) < 1 ? Int(1) : rat_ceil(x));
  while (m * m * q >= p && m > 0) --m;
  // now m*m*q < p
  return m + 1;
}

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational: " + s);
  }
}

std::string rat_str(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

double rat_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace lhlll
