#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lhlll {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Floor of a rational as a big integer.
Int rat_floor(const Rat& x);

/// Ceiling of a rational as a big integer.
Int rat_ceil(const Rat& x);

/// x^e for integer e >= 0 (exact).
Rat rat_pow(const Rat& x, uint64_t e);

/// Binomial coefficient C(n, k), exact; 0 when k < 0 or k > n.
Int binomial(int64_t n, int64_t k);

/// Smallest integer m with m*m >= x (x >= 0).
Int isqrt_ceil(const Int& x);

/// ceil((p/q)^(1/2)) for a nonnegative rational, exact.
Int rat_sqrt_ceil(const Rat& x);

/// Parse "a/b" or "a" into an exact rational. Throws std::invalid_argument.
Rat rat_parse(const std::string& s);

/// Render as "a/b" (or "a" when the denominator is 1).
std::string rat_str(const Rat& x);

/// Convert to double (only for display and Monte Carlo tolerances).
double rat_double(const Rat& x);

inline int64_t to_i64(const Int& x) { return static_cast<int64_t>(x); }

}  // namespace lhlll
