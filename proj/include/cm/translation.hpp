#pragma once

#include <utility>
#include <vector>

#include "cm/atomic.hpp"
#include "cm/cylinder.hpp"
#include "cm/grid.hpp"

namespace cm {

/// A coordinate direction, 1-based.
struct Direction {
  long k = 1;
};

/// Finitely supported shift: a list of (coordinate, amount) pairs.
struct ShiftVector {
  std::vector<std::pair<long, double>> entries;
};

namespace detail {

inline bool nearly_integer(double x, double tol = 1e-9) {
  return std::fabs(x - std::llround(x)) <= tol;
}

// Shift along one axis of a block: an exact circular roll when the amount is
// a whole number of cells, a spectral phase otherwise.
inline GridState shift_block(const GridState& g, int axis, double amount) {
  const double h = g.grid.spacing(axis);
  const double cells = amount / h;
  if (nearly_integer(cells)) {
    std::vector<long> steps(g.grid.dimension(), 0);
    steps[axis] = std::llround(cells);
    return lattice_shift(g, steps);
  }
  return spectral_shift(g, axis, amount);
}

}  // namespace detail

/// Translation of a representable state. Block coordinates shift by cell
/// rolls or spectral phases; factor coordinates must move on their own offset
/// lattice a = m * L^2.
inline CylinderState translate(const ShiftVector& a, const CylinderState& u) {
  CylinderState v = u;
  for (const auto& [coord, amount] : a.entries) {
    if (coord < 1) throw Error("translate: coordinates are 1-based");
    if (amount == 0.0) continue;
    if (coord > v.span()) {
      if (!v.tail_is_rule())
        throw Error("translate: shift not representable on a symbolic tail");
      pull_until_span(v, coord);
    }
    const auto pos = detail::locate(v, coord);
    Segment& seg = v.segments[pos.index];
    if (auto* f = std::get_if<TailFactor>(&seg)) {
      const double steps = amount / (f->scale * f->scale);
      if (!detail::nearly_integer(steps))
        throw Error("translate: shift not representable on tail factor lattice");
      f->offset += std::llround(steps);
    } else {
      GridState& g = std::get<GridState>(seg);
      g = detail::shift_block(g, pos.axis, amount);
    }
  }
  return v;
}

inline CylinderState translate(long coordinate, double amount, const CylinderState& u) {
  return translate(ShiftVector{{{coordinate, amount}}}, u);
}

/// (tau_{h e_k} u - u)/h in square-root coordinates. The affected coordinate
/// is materialized so arbitrary real h act spectrally; all other pieces are
/// untouched, so the quotient stays a representable product.
inline CylinderState difference_quotient(Direction k, double h, const CylinderState& u) {
  if (!(h > 0.0)) throw Error("difference_quotient: h must be > 0");
  CylinderState v = u;
  materialize_coordinate(v, k.k);
  const auto pos = detail::locate(v, k.k);
  GridState& g = std::get<GridState>(v.segments[pos.index]);
  GridState shifted = detail::shift_block(g, pos.axis, h);
  g = Complex(1.0 / h, 0.0) * (shifted - g);
  return v;
}

/// The generator d/dx_k. Block coordinates differentiate spectrally; a
/// closed-form factor is replaced by grid samples of its analytic derivative.
inline CylinderState derivative(Direction k, const CylinderState& u) {
  CylinderState v = u;
  if (k.k > v.span()) {
    if (!v.tail_is_rule())
      throw Error("derivative: coordinate lies in a symbolic tail");
    pull_until_span(v, k.k);
  }
  const auto pos = detail::locate(v, k.k);
  Segment& seg = v.segments[pos.index];
  if (const auto* f = std::get_if<TailFactor>(&seg)) {
    seg = materialize_factor_derivative(*f);
  } else {
    GridState& g = std::get<GridState>(seg);
    g = spectral_derivative(g, pos.axis);
  }
  return v;
}

/// Both sides of the generator symmetry <i d_k u, v> = <u, i d_k v> — the
/// testable surrogate for self-adjointness of i d/dx_k.
inline std::pair<Complex, Complex> symmetry_check(Direction k, const CylinderState& u,
                                                  const CylinderState& v) {
  const Complex lhs = Complex(0.0, 1.0) * cylinder_inner(derivative(k, u), v);
  const Complex rhs = Complex(0.0, -1.0) * cylinder_inner(u, derivative(k, v));
  return {lhs, rhs};
}

/// ||tau_{h e_k} u - u|| for each h. Only the piece holding coordinate k
/// changes under the shift, so the norm is the piece-difference norm times
/// the other piece norms — no polarization loss.
inline std::vector<double> strong_continuity_check(Direction k, const CylinderState& u,
                                                   const std::vector<double>& hs) {
  CylinderState v = u;
  if (k.k > v.span()) {
    if (!v.tail_is_rule())
      throw Error("strong_continuity_check: coordinate lies in a symbolic tail");
    pull_until_span(v, k.k);
  }
  const auto pos = detail::locate(v, k.k);
  double others = std::abs(v.scalar);
  for (std::size_t i = 0; i < v.segments.size(); ++i)
    if (i != pos.index) others *= std::sqrt(segment_norm_sq(v.segments[i]));

  std::vector<double> out;
  out.reserve(hs.size());
  for (const double h : hs) {
    const Segment& seg = v.segments[pos.index];
    double piece;
    if (const auto* f = std::get_if<TailFactor>(&seg)) {
      const double steps = h / (f->scale * f->scale);
      if (detail::nearly_integer(steps) && std::llround(steps) != 0) {
        TailFactor moved = *f;
        moved.offset += std::llround(steps);
        piece = std::sqrt(std::max(0.0, 2.0 - 2.0 * factor_overlap(moved, *f)));
      } else if (detail::nearly_integer(steps)) {
        piece = 0.0;
      } else {
        const GridState g = materialize_factor(*f);
        piece = grid_norm(detail::shift_block(g, 0, h) - g);
      }
    } else {
      const GridState& g = std::get<GridState>(seg);
      piece = grid_norm(detail::shift_block(g, pos.axis, h) - g);
    }
    out.push_back(piece * others);
  }
  return out;
}

}  // namespace cm
