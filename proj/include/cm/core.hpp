#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cm {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Squaring map between square-root amplitudes and measure densities:
/// eta(z) = z|z|, so |eta(z)| = |z|^2.
inline Complex eta(Complex z) { return z * std::abs(z); }

/// Inverse of eta on all of C: zeta(w) = w/sqrt(|w|), zeta(0) = 0.
inline Complex zeta(Complex w) {
  const double m = std::abs(w);
  if (m == 0.0) return Complex(0.0, 0.0);
  return w / std::sqrt(m);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Accumulates doubles in 128-bit fixed point. All terms are scaled by one
// power of two chosen from the largest magnitude, so the result depends only
// on the multiset of terms, never on their order. Sums whose terms are
// permutations of one another (circular shifts, unions built in different
// orders) agree bit for bit.
template <class TermFn>
double fixed_point_sum(std::size_t n, double maxabs, TermFn&& term) {
  int e = 0;
  std::frexp(maxabs, &e);
  const int k = 100 - e;  // scaled terms <= 2^100; headroom for 2^26 adds
  __int128 acc = 0;
  if (k > -1000 && k < 1000) {
    const double scale = std::ldexp(1.0, k);  // power of two: x*scale is exact
    for (std::size_t i = 0; i < n; ++i)
      acc += static_cast<__int128>(term(i) * scale);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      acc += static_cast<__int128>(std::ldexp(term(i), k));
  }
  return std::ldexp(static_cast<double>(acc), -k);
}

}  // namespace detail

/// Order-invariant summation of term(0..n-1). Truncation sits ~2^-77 below
/// the largest term, so accuracy beats naive accumulation while the result is
/// a pure function of the term multiset.
template <class TermFn>
double stable_sum(std::size_t n, TermFn&& term) {
  if (n == 0) return 0.0;
  if (n > (std::size_t{1} << 26))
    throw Error("stable_sum: too many terms for exact accumulation");
  double maxabs = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(term(i));
    if (!std::isfinite(a)) finite = false;
    if (a > maxabs) maxabs = a;
  }
  if (maxabs == 0.0) return 0.0;
  if (!finite) {  // propagate NaN/Inf the ordinary way
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  return detail::fixed_point_sum(n, maxabs, term);
}

template <class TermFn>
Complex stable_csum(std::size_t n, TermFn&& term) {
  return Complex(stable_sum(n, [&](std::size_t i) { return term(i).real(); }),
                 stable_sum(n, [&](std::size_t i) { return term(i).imag(); }));
}

inline double residual(Complex a, Complex b) { return std::abs(a - b); }

/// |a-b| measured against max(1,|a|,|b|): absolute for O(1) quantities,
/// relative above that.
inline double scaled_residual(Complex a, Complex b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

}  // namespace cm
