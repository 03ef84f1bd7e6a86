#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cm/core.hpp"
#include "cm/grid.hpp"

namespace cm {

// ---------------------------------------------------------------------------
// Profile: a smooth, compactly supported, nonnegative unit-norm square-root
// density on (0,1). Only one family is built in.
// ---------------------------------------------------------------------------

enum class Profile : std::uint8_t { Bump01 };

namespace detail {

inline double bump_raw(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

inline double bump_raw_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double u = x * (1.0 - x);
  return bump_raw(x) * (1.0 - 2.0 * x) / (u * u);
}

// Composite midpoint rule on (0,1); superalgebraically accurate for smooth
// functions vanishing with all derivatives at the endpoints.
template <class Fn>
double unit_interval_quadrature(Fn&& f, int n = 1 << 16) {
  const double h = 1.0 / n;
  return h * stable_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    return f((i + 0.5) * h);
  });
}

struct BumpConstants {
  double inv_norm;            // c with ||c * bump_raw||_{L^2} = 1
  double derivative_norm_sq;  // ||(c * bump_raw)'||^2_{L^2}
};

inline const BumpConstants& bump_constants() {
  static const BumpConstants c = [] {
    const double m0 = unit_interval_quadrature([](double x) {
      const double b = bump_raw(x);
      return b * b;
    });
    const double m1 = unit_interval_quadrature([](double x) {
      const double d = bump_raw_derivative(x);
      return d * d;
    });
    return BumpConstants{1.0 / std::sqrt(m0), m1 / m0};
  }();
  return c;
}

}  // namespace detail

/// Normalized profile amplitude; unit L^2 norm, support (0,1).
inline double profile_amp(Profile, double x) {
  return detail::bump_constants().inv_norm * detail::bump_raw(x);
}

inline double profile_amp_derivative(Profile, double x) {
  return detail::bump_constants().inv_norm * detail::bump_raw_derivative(x);
}

/// ||f'||^2 of the normalized profile.
inline double profile_derivative_norm_sq(Profile) {
  return detail::bump_constants().derivative_norm_sq;
}

// ---------------------------------------------------------------------------
// TailFactor: the one-dimensional amplitude (1/L) f(x/L^2 - offset). Unit
// L^2 norm for every scale; support (offset*L^2, (offset+1)*L^2);
// ||g'||^2 = ||f'||^2 / L^4.
// ---------------------------------------------------------------------------

struct TailFactor {
  Profile profile = Profile::Bump01;
  double scale = 1.0;  // L > 0
  long offset = 0;     // integer lattice position

  double support_lo() const { return offset * scale * scale; }
  double support_hi() const { return (offset + 1) * scale * scale; }

  double amp(double x) const {
    return profile_amp(profile, x / (scale * scale) - offset) / scale;
  }
  double amp_derivative(double x) const {
    const double s2 = scale * scale;
    return profile_amp_derivative(profile, x / s2 - offset) / (scale * s2);
  }
  double derivative_norm_sq() const {
    const double s2 = scale * scale;
    return profile_derivative_norm_sq(profile) / (s2 * s2);
  }

  bool operator==(const TailFactor&) const = default;
};

/// Reference grid a factor is materialized on: a centered power-of-two box
/// that holds the support with margin, sampled at L^2/256 so the quadrature
/// norm of the smooth compactly supported profile is exact to ~1e-14.
inline Grid factor_grid(const TailFactor& f) {
  const unsigned long need = static_cast<unsigned long>(
      std::max(4l, std::labs(f.offset) + 2l));
  const unsigned long half = std::bit_ceil(need);
  const double s2 = f.scale * f.scale;
  return grid_1d(2.0 * half * s2, static_cast<int>(512 * half));
}

inline GridState materialize_factor(const TailFactor& f) {
  return sample(factor_grid(f),
                [&](const std::vector<double>& x) { return Complex(f.amp(x[0]), 0.0); });
}

inline GridState materialize_factor_derivative(const TailFactor& f) {
  return sample(factor_grid(f), [&](const std::vector<double>& x) {
    return Complex(f.amp_derivative(x[0]), 0.0);
  });
}

/// <f, g>_{L^2(R)} of two factors. Exact 1 for identical parameters, exact 0
/// for disjoint supports, quadrature on the overlap otherwise.
inline double factor_overlap(const TailFactor& a, const TailFactor& b) {
  if (a == b) return 1.0;
  const double lo = std::max(a.support_lo(), b.support_lo());
  const double hi = std::min(a.support_hi(), b.support_hi());
  if (!(hi > lo)) return 0.0;
  const int n = 1 << 14;
  const double h = (hi - lo) / n;
  return h * stable_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double x = lo + (i + 0.5) * h;
    return a.amp(x) * b.amp(x);
  });
}

// ---------------------------------------------------------------------------
// Scale laws and the eventually-constant rule region of a product tail.
// ---------------------------------------------------------------------------

struct ScaleLaw {
  enum class Kind : std::uint8_t { Power, Constant };
  Kind kind = Kind::Power;
  double parameter = 1.0;  // exponent s for L(n)=n^s, or the constant L

  double scale_at(long n) const {
    return kind == Kind::Power ? std::pow(double(n), parameter) : parameter;
  }
  /// Whether sum_n 1/L(n)^4 converges (power law: 4s > 1).
  bool summable_inverse_fourth() const {
    return kind == Kind::Power && 4.0 * parameter > 1.0;
  }
  bool operator==(const ScaleLaw&) const = default;
};

inline ScaleLaw power_law(double exponent) {
  return ScaleLaw{ScaleLaw::Kind::Power, exponent};
}
inline ScaleLaw constant_law(double scale) {
  return ScaleLaw{ScaleLaw::Kind::Constant, scale};
}

/// The rule generating all factors beyond the explicit ones: the j-th rule
/// factor (j = 1, 2, ...) has scale law(first_index + j - 1) and a constant
/// offset. first_index is fixed when the tail is built and survives
/// re-splitting, so a factor keeps its identity as heads grow.
struct TailRule {
  Profile profile = Profile::Bump01;
  ScaleLaw law = power_law(1.0);
  long offset = 0;
  long first_index = 1;

  TailFactor factor(long j) const {  // j >= 1
    return TailFactor{profile, law.scale_at(first_index + j - 1), offset};
  }
  bool operator==(const TailRule&) const = default;
};

/// Partial sums of sum_{j>=1} 1/L(first_index+j-1)^4 with a certified
/// integral remainder bound below `tol`.
struct CertifiedSum {
  double value = 0.0;
  double remainder_bound = 0.0;
};

inline CertifiedSum inverse_fourth_power_sum(const TailRule& rule, double tol = 1e-13) {
  if (!rule.law.summable_inverse_fourth())
    throw Error("inverse_fourth_power_sum: divergent scale rule");
  const double p = 4.0 * rule.law.parameter;
  CertifiedSum out;
  long n = rule.first_index;
  double partial = 0.0;
  for (;; ++n) {
    partial += std::pow(double(n), -p);
    // sum_{m>n} m^-p <= n^{1-p}/(p-1)
    const double rem = std::pow(double(n), 1.0 - p) / (p - 1.0);
    if (rem < tol || n > rule.first_index + 100000000l) {
      out.value = partial;
      out.remainder_bound = rem;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic tails: abstract unit tails the flows act on without ever being
// materialized. An anchor-only tail is inert (no derivative energy, flows act
// trivially); a tail with a base records e^{Dt}/e^{iDt} applied to an explicit
// product tail.
// ---------------------------------------------------------------------------

struct TailSnapshot {
  std::vector<TailFactor> factors;  // explicit factors swallowed at evolve time
  TailRule rule;
  bool operator==(const TailSnapshot&) const = default;
};

struct SymbolicTail {
  std::uint64_t anchor = 0;
  std::optional<TailSnapshot> base;  // set when created by evolving a product tail
  double heat_time = 0.0;
  double schrodinger_time = 0.0;

  bool inert() const { return !base.has_value(); }
  bool operator==(const SymbolicTail&) const = default;
};

/// Overlap of the rule regions of two explicit tails, as the exactly
/// evaluated infinite product of per-index factor overlaps.
///  - identical rules: 1
///  - same profile/law/first_index, different offsets: every pair of factors
///    has disjoint support, so the product is exactly 0
///  - both constant laws: a constant per-index overlap r; |r| < 1 gives 0
///  - anything else has no decidable eventual relation
inline double rule_overlap(const TailRule& a, const TailRule& b) {
  if (a == b) return 1.0;
  if (a.profile == b.profile && a.law == b.law && a.first_index == b.first_index &&
      a.offset != b.offset)
    return 0.0;
  if (a.law.kind == ScaleLaw::Kind::Constant && b.law.kind == ScaleLaw::Kind::Constant) {
    const double r = factor_overlap(a.factor(1), b.factor(1));
    if (std::fabs(r) < 1.0 - 1e-9) return 0.0;
    throw Error("incomparable tails: constant rules with unit-modulus overlap");
  }
  throw Error("incomparable tails: no decidable eventual rule relation");
}

/// A complex value optionally scaled by one unspecified positive factor (the
/// squared norm of a heat-evolved tail that is never materialized).
struct ScaledComplex {
  Complex value{0.0, 0.0};
  bool known = true;
};

/// Overlap <a, b> of two symbolic tails. Unitary evolution cancels pairwise;
/// equal-time heat evolution of one common tail leaves a single unknown
/// positive factor.
inline ScaledComplex symbolic_overlap(const SymbolicTail& a, const SymbolicTail& b) {
  if (a.anchor != b.anchor || a.base.has_value() != b.base.has_value())
    throw Error("incomparable tails: different symbolic anchors");
  if (a.schrodinger_time != b.schrodinger_time)
    throw Error("incomparable tails: different unitary evolution times");
  if (a.heat_time != b.heat_time)
    throw Error("incomparable tails: different heat evolution times");
  if (a.base.has_value()) {
    if (!(*a.base == *b.base))
      throw Error("incomparable tails: heat-evolved tails with different bases");
    if (a.heat_time > 0.0) return ScaledComplex{Complex(1.0, 0.0), false};
  }
  return ScaledComplex{Complex(1.0, 0.0), true};
}

}  // namespace cm
