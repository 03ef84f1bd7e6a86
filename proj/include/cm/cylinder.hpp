#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "cm/core.hpp"
#include "cm/grid.hpp"
#include "cm/tail.hpp"

namespace cm {

/// One consecutive span of coordinates: either materialized grid samples or a
/// closed-form tail factor.
using Segment = std::variant<GridState, TailFactor>;

inline int segment_dim(const Segment& s) {
  if (const auto* g = std::get_if<GridState>(&s)) return g->grid.dimension();
  return 1;
}

inline double segment_norm_sq(const Segment& s) {
  if (const auto* g = std::get_if<GridState>(&s)) return grid_norm_sq(*g);
  return 1.0;  // factors are unit-norm by construction
}

/// Infinite 0/1 sequence: explicit prefix, then a constant bit.
struct BinaryAddress {
  std::vector<int> prefix;
  int rest = 0;

  int bit(long n) const {  // n >= 1
    if (n <= static_cast<long>(prefix.size())) return prefix[n - 1];
    return rest;
  }
};

/// A representable element of the infinite-product measure space:
///   scalar * (tensor product of the segments) * (rule or symbolic tail).
/// Segments cover coordinates 1..span; the tail covers everything beyond.
/// Grid blocks are the "head", factor segments the explicit part of the
/// product tail. A symbolic tail never coexists with factor segments.
struct CylinderState {
  Complex scalar{1.0, 0.0};
  std::vector<Segment> segments;
  std::variant<TailRule, SymbolicTail> tail = TailRule{};

  long span() const {
    long d = 0;
    for (const Segment& s : segments) d += segment_dim(s);
    return d;
  }
  bool tail_is_rule() const { return std::holds_alternative<TailRule>(tail); }
  const TailRule& rule() const { return std::get<TailRule>(tail); }
  const SymbolicTail& symbolic() const { return std::get<SymbolicTail>(tail); }

  void validate() const {
    if (!tail_is_rule()) {
      for (const Segment& s : segments)
        if (std::holds_alternative<TailFactor>(s))
          throw Error("CylinderState: factor segments with a symbolic tail");
    }
  }
};

/// Head-only state: grid samples in front of an abstract inert unit tail
/// (no derivative energy; the flows act trivially on it).
inline CylinderState head_only_state(GridState head, std::uint64_t anchor = 0) {
  CylinderState u;
  if (head.grid.dimension() == 0) {
    u.scalar = head.amp.at(0);
  } else {
    u.segments.emplace_back(std::move(head));
  }
  u.tail = SymbolicTail{anchor};
  return u;
}

/// Pure product-tail state defined entirely by a rule.
inline CylinderState pure_rule_state(TailRule rule) {
  CylinderState u;
  u.tail = rule;
  return u;
}

/// The member of the offset-indexed orthonormal family at a binary address:
/// factor n has scale law(n) and offset bit(n); requires sum 1/L_n^4 < inf.
inline CylinderState build_family_state(const BinaryAddress& addr,
                                        const ScaleLaw& law, int prefix_len,
                                        Profile profile = Profile::Bump01) {
  if (!law.summable_inverse_fourth())
    throw Error("build_family_state: divergent scale rule");
  CylinderState u;
  for (long n = 1; n <= prefix_len; ++n)
    u.segments.emplace_back(TailFactor{profile, law.scale_at(n), addr.bit(n)});
  u.tail = TailRule{profile, law, addr.rest, prefix_len + 1};
  return u;
}

/// Moves the first rule factor into the explicit segment list.
inline void pull_rule_factor(CylinderState& u) {
  if (!u.tail_is_rule()) throw Error("pull_rule_factor: symbolic tail");
  TailRule r = u.rule();
  u.segments.emplace_back(r.factor(1));
  r.first_index += 1;
  u.tail = r;
}

inline void pull_until_span(CylinderState& u, long span) {
  while (u.span() < span) pull_rule_factor(u);
}

namespace detail {

struct SegmentPos {
  std::size_t index;  // segment index
  int axis;           // axis within a block (0 for factors)
};

inline SegmentPos locate(const CylinderState& u, long coordinate) {
  long c = 1;
  for (std::size_t i = 0; i < u.segments.size(); ++i) {
    const int d = segment_dim(u.segments[i]);
    if (coordinate < c + d) return {i, static_cast<int>(coordinate - c)};
    c += d;
  }
  throw Error("coordinate beyond explicit segments");
}

}  // namespace detail

/// Ensures `coordinate` lies in an explicit segment, pulling rule factors as
/// needed, and materializes it as grid samples if it is a closed-form factor.
inline void materialize_coordinate(CylinderState& u, long coordinate) {
  if (coordinate > u.span()) {
    if (!u.tail_is_rule())
      throw Error("materialize_coordinate: coordinate lies in a symbolic tail");
    pull_until_span(u, coordinate);
  }
  const auto pos = detail::locate(u, coordinate);
  if (const auto* f = std::get_if<TailFactor>(&u.segments[pos.index]))
    u.segments[pos.index] = materialize_factor(*f);
}

/// f tensor u: new leading coordinates carry the samples of f; the tail is
/// re-indexed implicitly. Bilinear in each slot.
inline CylinderState tensor(const GridState& f, const CylinderState& u) {
  CylinderState v = u;
  if (f.grid.dimension() == 0) {
    v.scalar *= f.amp.at(0);
  } else {
    v.segments.insert(v.segments.begin(), f);
  }
  return v;
}

inline double norm_sq(const CylinderState& u) {
  if (!u.tail_is_rule()) {
    const SymbolicTail& s = u.symbolic();
    if (!s.inert() && s.heat_time > 0.0)
      throw Error("norm of a heat-evolved tail is not determined");
  }
  double n = std::norm(u.scalar);
  for (const Segment& s : u.segments) n *= segment_norm_sq(s);
  return n;
}

inline double norm(const CylinderState& u) { return std::sqrt(norm_sq(u)); }

namespace detail {

inline Grid axis_grid(const Grid& g, int axis) {
  return grid_1d(g.axes[axis].length, g.axes[axis].count);
}

// Samples of a dim-1 piece on a given axis. Blocks must live on that very
// axis; factors are sampled, with their support and feature scale checked
// against the box.
inline std::vector<Complex> piece_line(const Segment& s, const Axis& axis) {
  if (const auto* g = std::get_if<GridState>(&s)) {
    if (g->grid.dimension() != 1 || !(g->grid.axes[0] == axis))
      throw Error("incompatible head splits: axis mismatch");
    return g->amp;
  }
  const TailFactor& f = std::get<TailFactor>(s);
  const double half = axis.length / 2.0;
  if (f.support_lo() < -half || f.support_hi() > half)
    throw Error("tail factor support exceeds the partner grid box");
  const double h = axis.length / axis.count;
  if (h > f.scale * f.scale / 64.0)
    throw Error("partner grid too coarse for tail factor");
  std::vector<Complex> line(axis.count);
  for (int j = 0; j < axis.count; ++j) {
    const double x = j * h - half;
    line[j] = Complex(f.amp(x), 0.0);
  }
  return line;
}

struct Walker {
  const std::vector<Segment>& segs;
  std::size_t i = 0;
  bool done() const { return i == segs.size(); }
  const Segment& current() const { return segs[i]; }
};

// Contribution of one multi-axis block against a run of dim-1 pieces from
// the other state. Exactly one side is conjugated: the block when it sits in
// the second slot of the inner product, the pieces otherwise.
inline Complex contract_block_against_run(const GridState& block, Walker& run,
                                          bool conjugate_block) {
  std::vector<Complex> data(block.amp.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] = conjugate_block ? std::conj(block.amp[i]) : block.amp[i];
  for (int a = 0; a < block.grid.dimension(); ++a) {
    if (run.done()) throw Error("incompatible head splits");
    const Segment& piece = run.current();
    if (segment_dim(piece) != 1) throw Error("incompatible head splits");
    std::vector<Complex> line = piece_line(piece, block.grid.axes[a]);
    const double h = block.grid.spacing(a);
    if (conjugate_block) {
      for (Complex& c : line) c *= h;
    } else {
      for (Complex& c : line) c = std::conj(c) * h;
    }
    data = contract_leading_axis(data, line.size(), line);
    run.i += 1;
  }
  return data.at(0);
}

}  // namespace detail

/// <u, v> with any heat-evolved tail factored out as one unspecified positive
/// scalar (known == false). Segment layouts must tile compatibly; the shorter
/// explicit part is extended from its rule.
inline ScaledComplex cylinder_inner_scaled(const CylinderState& u,
                                           const CylinderState& v) {
  const CylinderState* a = &u;
  const CylinderState* b = &v;
  CylinderState ua, vb;  // storage for aligned copies when spans differ
  if (u.span() != v.span()) {
    ua = u;
    vb = v;
    const long s = std::max(ua.span(), vb.span());
    if (ua.span() < s) {
      if (!ua.tail_is_rule()) throw Error("incomparable tails: split mismatch");
      pull_until_span(ua, s);
    }
    if (vb.span() < s) {
      if (!vb.tail_is_rule()) throw Error("incomparable tails: split mismatch");
      pull_until_span(vb, s);
    }
    a = &ua;
    b = &vb;
  }

  ScaledComplex tail_part;
  if (a->tail_is_rule() != b->tail_is_rule())
    throw Error("incomparable tails: rule vs symbolic");
  if (a->tail_is_rule()) {
    tail_part = ScaledComplex{Complex(rule_overlap(a->rule(), b->rule()), 0.0), true};
  } else {
    tail_part = symbolic_overlap(a->symbolic(), b->symbolic());
  }

  Complex contrib = a->scalar * std::conj(b->scalar);
  detail::Walker wa{a->segments}, wb{b->segments};
  while (!wa.done() || !wb.done()) {
    if (wa.done() || wb.done()) throw Error("incompatible head splits");
    const Segment& su = wa.current();
    const Segment& sv = wb.current();
    const int du = segment_dim(su), dv = segment_dim(sv);
    if (du == 1 && dv == 1) {
      const auto* fu = std::get_if<TailFactor>(&su);
      const auto* fv = std::get_if<TailFactor>(&sv);
      if (fu && fv) {
        contrib *= factor_overlap(*fu, *fv);
      } else if (fv) {  // u block vs v factor
        const GridState& gu = std::get<GridState>(su);
        const std::vector<Complex> line = detail::piece_line(sv, gu.grid.axes[0]);
        const double h = gu.grid.spacing(0);
        contrib *= stable_csum(line.size(), [&](std::size_t i) {
          return gu.amp[i] * std::conj(line[i]) * h;
        });
      } else if (fu) {  // u factor vs v block
        const GridState& gv = std::get<GridState>(sv);
        const std::vector<Complex> line = detail::piece_line(su, gv.grid.axes[0]);
        const double h = gv.grid.spacing(0);
        contrib *= stable_csum(line.size(), [&](std::size_t i) {
          return line[i] * std::conj(gv.amp[i]) * h;
        });
      } else {
        contrib *= grid_inner(std::get<GridState>(su), std::get<GridState>(sv));
      }
      wa.i += 1;
      wb.i += 1;
    } else if (du == dv) {
      const GridState& gu = std::get<GridState>(su);
      const GridState& gv = std::get<GridState>(sv);
      contrib *= grid_inner(gu, gv);
      wa.i += 1;
      wb.i += 1;
    } else if (dv > 1) {  // v block against a run of u pieces
      contrib *= detail::contract_block_against_run(std::get<GridState>(sv), wa,
                                                    /*conjugate_block=*/true);
      wb.i += 1;
    } else {  // u block against a run of v pieces (pieces conjugated inside)
      contrib *= detail::contract_block_against_run(std::get<GridState>(su), wb,
                                                    /*conjugate_block=*/false);
      wa.i += 1;
    }
  }
  return ScaledComplex{contrib * tail_part.value, tail_part.known};
}

inline Complex cylinder_inner(const CylinderState& u, const CylinderState& v) {
  const ScaledComplex r = cylinder_inner_scaled(u, v);
  if (!r.known)
    throw Error("inner product carries an unevaluated heat-tail factor");
  return r.value;
}

/// Polarization distance sqrt(|u|^2 + |v|^2 - 2 Re<u,v>). Floor ~1e-8 for
/// unit states; use distance_bound for tight comparisons.
inline double distance(const CylinderState& u, const CylinderState& v) {
  const double d2 = norm_sq(u) + norm_sq(v) - 2.0 * cylinder_inner(u, v).real();
  return std::sqrt(std::max(0.0, d2));
}

/// Upper bound on ||u - v|| for states sharing a layout, by telescoping the
/// product over the segment differences. Exact cancellation per piece, so it
/// resolves differences far below the polarization floor.
inline double distance_bound(const CylinderState& u, const CylinderState& v) {
  if (u.segments.size() != v.segments.size() || !(u.tail == v.tail))
    throw Error("distance_bound: layouts differ");
  const std::size_t n = u.segments.size();
  std::vector<double> nu(n), nv(n), dd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& a = u.segments[i];
    const Segment& b = v.segments[i];
    nu[i] = std::sqrt(segment_norm_sq(a));
    nv[i] = std::sqrt(segment_norm_sq(b));
    const auto* fa = std::get_if<TailFactor>(&a);
    const auto* fb = std::get_if<TailFactor>(&b);
    if (fa && fb) {
      dd[i] = (*fa == *fb) ? 0.0
                           : std::sqrt(std::max(0.0, 2.0 - 2.0 * factor_overlap(*fa, *fb)));
    } else {
      GridState ga = fa ? materialize_factor(*fa) : std::get<GridState>(a);
      GridState gb = fb ? materialize_factor(*fb) : std::get<GridState>(b);
      dd[i] = grid_norm(ga - gb);
    }
  }
  double head = std::abs(u.scalar - v.scalar);
  for (double x : nu) head *= x;
  double sum = head;
  for (std::size_t i = 0; i < n; ++i) {
    double term = std::abs(v.scalar) * dd[i];
    for (std::size_t p = 0; p < i; ++p) term *= nv[p];
    for (std::size_t p = i + 1; p < n; ++p) term *= nu[p];
    sum += term;
  }
  return sum;
}

/// Equality of states across different splits: spans are aligned from the
/// rules, factor-vs-block positions are re-split by materializing the factor
/// (which must land on the partner's grid), and the telescoped piecewise
/// distance decides. Resolves differences down to the absorption accuracy,
/// far below the polarization floor.
inline bool approx_equal(const CylinderState& u, const CylinderState& v,
                         double tol = 1e-10) {
  CylinderState a = u, b = v;
  const long s = std::max(a.span(), b.span());
  if (a.span() < s) {
    if (!a.tail_is_rule()) return false;
    pull_until_span(a, s);
  }
  if (b.span() < s) {
    if (!b.tail_is_rule()) return false;
    pull_until_span(b, s);
  }
  if (!(a.tail == b.tail)) return false;
  if (a.segments.size() != b.segments.size()) return false;  // block merges differ
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    const bool fa = std::holds_alternative<TailFactor>(a.segments[i]);
    const bool fb = std::holds_alternative<TailFactor>(b.segments[i]);
    if (fa && !fb) a.segments[i] = materialize_factor(std::get<TailFactor>(a.segments[i]));
    if (fb && !fa) b.segments[i] = materialize_factor(std::get<TailFactor>(b.segments[i]));
    if (segment_dim(a.segments[i]) != segment_dim(b.segments[i])) return false;
  }
  return distance_bound(a, b) <= tol;
}

/// Merges the leading `dims` coordinates into one grid block, materializing
/// factors on their reference grids. Guarded against blow-up.
inline void merge_leading(CylinderState& u, long dims,
                          std::size_t max_nodes = std::size_t{1} << 22) {
  if (dims == 0) return;
  pull_until_span(u, dims);
  GridState acc = scalar_state(Complex(1.0, 0.0));
  long covered = 0;
  std::size_t taken = 0;
  while (covered < dims) {
    const Segment& s = u.segments.at(taken);
    const int d = segment_dim(s);
    if (covered + d > dims) throw Error("merge_leading: split crosses a block");
    GridState piece = std::holds_alternative<GridState>(s)
                          ? std::get<GridState>(s)
                          : materialize_factor(std::get<TailFactor>(s));
    if (acc.amp.size() * piece.amp.size() > max_nodes)
      throw Error("merge_leading: merged block too large");
    acc = kron(acc, piece);
    covered += d;
    taken += 1;
  }
  u.segments.erase(u.segments.begin(), u.segments.begin() + taken);
  u.segments.insert(u.segments.begin(), std::move(acc));
}

/// Adjoint of (f tensor .): the unique w with <f tensor u, v> = <u, w> on
/// representable states. For v = g tensor w0 this is <g, f> * w0.
inline CylinderState contract_head(const GridState& f, const CylinderState& v) {
  const int N = f.grid.dimension();
  CylinderState w = v;
  if (N == 0) {
    w.scalar *= std::conj(f.amp.at(0));
    return w;
  }
  if (w.span() < N) {
    if (!w.tail_is_rule()) throw Error("contract_head: dimension mismatch");
    pull_until_span(w, N);
  }
  // Bring the leading N coordinates into one block matching f's grid.
  bool direct = false;
  if (!w.segments.empty()) {
    if (const auto* g = std::get_if<GridState>(&w.segments.front())) {
      direct = g->grid.dimension() >= N;
      for (int a = 0; direct && a < N; ++a)
        direct = g->grid.axes[a] == f.grid.axes[a];
    }
  }
  if (!direct) merge_leading(w, N);
  GridState& block = std::get<GridState>(w.segments.front());
  for (int a = 0; a < N; ++a)
    if (!(block.grid.axes[a] == f.grid.axes[a]))
      throw Error("contract_head: grid mismatch");

  const std::size_t lead = f.amp.size();
  const std::size_t rest = block.amp.size() / lead;
  std::vector<Complex> out(rest, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < lead; ++i) {
    const Complex c = std::conj(f.amp[i]);
    const Complex* row = block.amp.data() + i * rest;
    for (std::size_t r = 0; r < rest; ++r) out[r] += c * row[r];
  }
  const double wf = [&] {
    double p = 1.0;
    for (int a = 0; a < N; ++a) p *= block.grid.spacing(a);
    return p;
  }();
  for (Complex& c : out) c *= wf;

  if (block.grid.dimension() == N) {
    w.scalar *= out.at(0);
    w.segments.erase(w.segments.begin());
  } else {
    Grid g;
    g.axes.assign(block.grid.axes.begin() + N, block.grid.axes.end());
    w.segments.front() = GridState{std::move(g), std::move(out)};
  }
  return w;
}

/// Adjoint in the other slot: the unique g in L^2(R^N) with
/// <f tensor u, v> = <f, g> for every head f. For v = g0 tensor w this is
/// <w, u> * g0. N is the span difference between v and u.
inline GridState contract_tail(const CylinderState& u, const CylinderState& v) {
  const long N = v.span() - u.span();
  if (N < 0) throw Error("contract_tail: v has a smaller explicit span than u");
  CylinderState vv = v;
  if (N == 0) {
    const Complex o = std::conj(cylinder_inner(u, vv));
    return scalar_state(o);
  }
  bool direct = false;
  if (!vv.segments.empty()) {
    if (const auto* g = std::get_if<GridState>(&vv.segments.front()))
      direct = g->grid.dimension() == N;
  }
  if (!direct) merge_leading(vv, N);
  GridState lead = std::get<GridState>(vv.segments.front());
  if (lead.grid.dimension() != N)
    throw Error("contract_tail: head split crosses a block");
  vv.segments.erase(vv.segments.begin());
  const Complex o = std::conj(cylinder_inner(u, vv));
  return o * lead;
}

}  // namespace cm
