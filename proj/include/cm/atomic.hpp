#pragma once

#include <cstring>
#include <map>
#include <utility>
#include <vector>

#include "cm/core.hpp"

namespace cm {

using Point = std::vector<double>;

namespace detail {

inline std::uint64_t double_bits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

// Points are keyed by the raw bit pattern of every coordinate. Callers who
// want fuzzy merging must snap to a lattice first; silent merging would break
// representation independence.
struct PointBitLess {
  bool operator()(const Point& a, const Point& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t x = double_bits(a[i]), y = double_bits(b[i]);
      if (x != y) return x < y;
    }
    return a.size() < b.size();
  }
};

using PointIndex = std::map<Point, std::size_t, PointBitLess>;

}  // namespace detail

/// A finite atomic base measure: distinct support points with positive
/// weights, all of one dimension.
struct BaseMeasure {
  int dimension = 0;
  std::vector<Point> points;
  std::vector<double> weights;

  std::size_t atom_count() const { return points.size(); }

  void validate() const {
    if (dimension < 0) throw Error("BaseMeasure: negative dimension");
    if (points.size() != weights.size())
      throw Error("BaseMeasure: points/weights size mismatch");
    detail::PointIndex seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (static_cast<int>(points[i].size()) != dimension)
        throw Error("BaseMeasure: point length != dimension");
      if (!(weights[i] > 0.0)) throw Error("BaseMeasure: weight must be > 0");
      if (!seen.emplace(points[i], i).second)
        throw Error("BaseMeasure: duplicate support point");
    }
  }
};

/// A finitely supported complex measure in square-root coordinates:
/// the represented measure assigns eta(amp_i) * weight_i to atom i.
struct AtomicState {
  BaseMeasure base;
  std::vector<Complex> amps;

  void validate() const {
    base.validate();
    if (amps.size() != base.atom_count())
      throw Error("AtomicState: amplitude count mismatch");
  }
};

inline AtomicState make_atomic(int dimension, std::vector<Point> points,
                               std::vector<double> weights,
                               std::vector<Complex> amps) {
  AtomicState s{BaseMeasure{dimension, std::move(points), std::move(weights)},
                std::move(amps)};
  s.validate();
  return s;
}

inline AtomicState zero_atomic(int dimension) {
  return AtomicState{BaseMeasure{dimension, {}, {}}, {}};
}

/// Per-atom complex measure values (no square-root coordinates); used both
/// for the inner-product measure and for comparing states as measures.
struct ComplexAtomicMeasure {
  int dimension = 0;
  std::vector<Point> points;
  std::vector<Complex> values;

  Complex total() const {
    return stable_csum(values.size(), [&](std::size_t i) { return values[i]; });
  }
};

inline ComplexAtomicMeasure measure_of(const AtomicState& u) {
  ComplexAtomicMeasure m;
  m.dimension = u.base.dimension;
  m.points = u.base.points;
  m.values.resize(u.amps.size());
  for (std::size_t i = 0; i < u.amps.size(); ++i)
    m.values[i] = eta(u.amps[i]) * u.base.weights[i];
  return m;
}

/// Two states are the same element iff their measures agree atomwise on the
/// union of supports (value 0 off-support).
inline bool approx_equal(const AtomicState& a, const AtomicState& b,
                         double tol = 1e-12) {
  if (a.base.dimension != b.base.dimension) return false;
  detail::PointIndex index;
  std::vector<Complex> diff;
  for (std::size_t i = 0; i < a.base.atom_count(); ++i) {
    index.emplace(a.base.points[i], diff.size());
    diff.push_back(eta(a.amps[i]) * a.base.weights[i]);
  }
  for (std::size_t i = 0; i < b.base.atom_count(); ++i) {
    const Complex v = eta(b.amps[i]) * b.base.weights[i];
    auto it = index.find(b.base.points[i]);
    if (it == index.end()) {
      if (std::abs(v) > tol) return false;
    } else {
      diff[it->second] -= v;
    }
  }
  for (const Complex& d : diff)
    if (std::abs(d) > tol) return false;
  return true;
}

struct Refined {
  BaseMeasure base;      // union of supports, every weight 1
  std::vector<Complex> first, second;
};

/// Common refinement: a weight-1 base on the union of supports carrying both
/// states. Amplitudes are rescaled by zeta(eta(amp) * weight) so that the
/// represented measures are unchanged. Union order: atoms of `a` in order,
/// then unseen atoms of `b` — deterministic, so inner products built from a
/// refinement are reproducible bit for bit.
inline Refined refine(const AtomicState& a, const AtomicState& b) {
  if (a.base.dimension != b.base.dimension)
    throw Error("refine: dimension mismatch");
  Refined r;
  r.base.dimension = a.base.dimension;
  detail::PointIndex index;
  for (std::size_t i = 0; i < a.base.atom_count(); ++i) {
    index.emplace(a.base.points[i], r.base.points.size());
    r.base.points.push_back(a.base.points[i]);
    r.base.weights.push_back(1.0);
    r.first.push_back(zeta(eta(a.amps[i]) * a.base.weights[i]));
  }
  r.second.assign(r.base.points.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < b.base.atom_count(); ++i) {
    const Complex amp = zeta(eta(b.amps[i]) * b.base.weights[i]);
    auto it = index.find(b.base.points[i]);
    if (it == index.end()) {
      index.emplace(b.base.points[i], r.base.points.size());
      r.base.points.push_back(b.base.points[i]);
      r.base.weights.push_back(1.0);
      r.first.push_back(Complex(0.0, 0.0));
      r.second.push_back(amp);
    } else {
      r.second[it->second] = amp;
    }
  }
  return r;
}

inline AtomicState add(const AtomicState& a, const AtomicState& b) {
  Refined r = refine(a, b);
  std::vector<Complex> amps(r.first.size());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = r.first[i] + r.second[i];
  return AtomicState{std::move(r.base), std::move(amps)};
}

inline AtomicState scale(Complex c, const AtomicState& u) {
  AtomicState v = u;
  for (Complex& a : v.amps) a *= c;
  return v;
}

inline AtomicState sub(const AtomicState& a, const AtomicState& b) {
  return add(a, scale(Complex(-1.0, 0.0), b));
}

/// The inner-product complex measure: per-atom values f1 * conj(f2) * w on
/// the common refinement. Its total over all atoms is inner(a, b).
inline ComplexAtomicMeasure inner_measure(const AtomicState& a,
                                          const AtomicState& b) {
  Refined r = refine(a, b);
  ComplexAtomicMeasure m;
  m.dimension = r.base.dimension;
  m.points = std::move(r.base.points);
  m.values.resize(r.first.size());
  for (std::size_t i = 0; i < m.values.size(); ++i)
    m.values[i] = r.first[i] * std::conj(r.second[i]) * r.base.weights[i];
  return m;
}

inline Complex inner(const AtomicState& a, const AtomicState& b) {
  return inner_measure(a, b).total();
}

inline double norm_sq(const AtomicState& u) {
  return stable_sum(u.amps.size(), [&](std::size_t i) {
    return std::norm(u.amps[i]) * u.base.weights[i];
  });
}

inline double norm(const AtomicState& u) { return std::sqrt(norm_sq(u)); }

/// Total variation: sum of |eta(amp_i)| * w_i = sum of |amp_i|^2 * w_i.
inline double total_variation(const AtomicState& u) {
  return stable_sum(u.amps.size(), [&](std::size_t i) {
    return std::abs(eta(u.amps[i])) * u.base.weights[i];
  });
}

/// Pushforward under x -> x + a: atoms move, amplitudes and weights do not.
inline AtomicState translate_atomic(const Point& a, const AtomicState& u) {
  if (static_cast<int>(a.size()) != u.base.dimension)
    throw Error("translate_atomic: dimension mismatch");
  AtomicState v = u;
  for (Point& p : v.base.points)
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += a[i];
  return v;
}

/// Product measure on the concatenated space: Cartesian product of supports,
/// amplitudes multiply, weights multiply. Norms multiply.
inline AtomicState product(const AtomicState& a, const AtomicState& b) {
  AtomicState v;
  v.base.dimension = a.base.dimension + b.base.dimension;
  v.base.points.reserve(a.base.atom_count() * b.base.atom_count());
  for (std::size_t i = 0; i < a.base.atom_count(); ++i) {
    for (std::size_t j = 0; j < b.base.atom_count(); ++j) {
      Point p = a.base.points[i];
      p.insert(p.end(), b.base.points[j].begin(), b.base.points[j].end());
      v.base.points.push_back(std::move(p));
      v.base.weights.push_back(a.base.weights[i] * b.base.weights[j]);
      v.amps.push_back(a.amps[i] * b.amps[j]);
    }
  }
  return v;
}

/// Both sides of the product inner-product factorization, for reporting:
/// lhs = <u1*u2, v1*v2>, rhs = <u1,v1> * <u2,v2>.
inline std::pair<Complex, Complex> product_inner_factorization_check(
    const AtomicState& u1, const AtomicState& v1, const AtomicState& u2,
    const AtomicState& v2) {
  const Complex lhs = inner(product(u1, u2), product(v1, v2));
  const Complex rhs = inner(u1, v1) * inner(u2, v2);
  return {lhs, rhs};
}

}  // namespace cm
