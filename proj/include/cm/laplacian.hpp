#pragma once

#include <utility>
#include <vector>

#include "cm/cylinder.hpp"
#include "cm/grid.hpp"
#include "cm/translation.hpp"

namespace cm {

/// Per-coordinate derivative energies ||d_k u||^2: one entry per explicit
/// coordinate plus the certified sum over the rule region. The total is the
/// quadratic form whose graph norm is the H^1 norm.
struct DerivativeSpectrum {
  std::vector<std::pair<long, double>> explicit_norms;
  CertifiedSum rule_sum;

  double total() const {
    double t = rule_sum.value;
    for (const auto& [k, v] : explicit_norms) t += v;
    return t;
  }
};

namespace detail {

// ||d_axis g||^2 for every axis of a block, via one forward transform.
inline std::vector<double> block_derivative_norms(const GridState& g) {
  GridState hat = dft(g, false);
  const int d = hat.grid.dimension();
  std::vector<double> out(d, 0.0);
  const double w = hat.grid.weight();
  std::vector<int> idx(d, 0);
  for (int a = 0; a < d; ++a) {
    out[a] = stable_sum(hat.amp.size(), [&](std::size_t lin) {
      std::size_t rem = lin;
      for (int q = d - 1; q >= 0; --q) {
        idx[q] = static_cast<int>(rem % hat.grid.axes[q].count);
        rem /= hat.grid.axes[q].count;
      }
      const double xi = hat.grid.frequency(a, idx[a]);
      return xi * xi * std::norm(hat.amp[lin]) * w;
    });
  }
  return out;
}

}  // namespace detail

/// Derivative energies of a representable state. Factor coordinates use the
/// closed form ||f'||^2 / L^4; block coordinates are evaluated spectrally;
/// the rule region is summed with a certified remainder. Inert symbolic
/// tails carry no derivative energy.
inline DerivativeSpectrum h1_profile(const CylinderState& u, double remainder_tol = 1e-13) {
  DerivativeSpectrum out;
  std::vector<double> piece_norm_sq(u.segments.size());
  double all = std::norm(u.scalar);
  for (std::size_t i = 0; i < u.segments.size(); ++i) {
    piece_norm_sq[i] = segment_norm_sq(u.segments[i]);
    all *= piece_norm_sq[i];
  }
  long coord = 1;
  for (std::size_t i = 0; i < u.segments.size(); ++i) {
    const double others = piece_norm_sq[i] > 0.0 ? all / piece_norm_sq[i] : 0.0;
    if (const auto* f = std::get_if<TailFactor>(&u.segments[i])) {
      out.explicit_norms.emplace_back(coord, others * f->derivative_norm_sq());
      coord += 1;
    } else {
      const GridState& g = std::get<GridState>(u.segments[i]);
      const std::vector<double> dn = detail::block_derivative_norms(g);
      for (int a = 0; a < g.grid.dimension(); ++a)
        out.explicit_norms.emplace_back(coord + a, others * dn[a]);
      coord += g.grid.dimension();
    }
  }
  if (u.tail_is_rule()) {
    const CertifiedSum s = inverse_fourth_power_sum(u.rule(), remainder_tol);
    const double c = profile_derivative_norm_sq(u.rule().profile);
    out.rule_sum = CertifiedSum{all * c * s.value, all * c * s.remainder_bound};
  } else if (!u.symbolic().inert()) {
    throw Error("h1_profile: derivative data unavailable for evolved tails");
  }
  return out;
}

/// <u, v> + sum_k <d_k u, d_k v>, with the rule-region tail of the sum
/// evaluated in closed form (requires identical rules beyond the explicit
/// parts, or inert symbolic tails).
inline Complex h1_inner(const CylinderState& u, const CylinderState& v) {
  if (u.span() != v.span()) {
    CylinderState a = u, b = v;
    const long s = std::max(a.span(), b.span());
    pull_until_span(a, s);
    pull_until_span(b, s);
    return h1_inner(a, b);
  }
  Complex acc = cylinder_inner(u, v);
  const Complex base = acc;
  for (long k = 1; k <= u.span(); ++k)
    acc += cylinder_inner(derivative(Direction{k}, u), derivative(Direction{k}, v));
  if (u.tail_is_rule() != v.tail_is_rule())
    throw Error("h1_inner: incomparable tails");
  if (u.tail_is_rule()) {
    if (!(u.rule() == v.rule()))
      throw Error("h1_inner: tails must share one rule beyond the explicit part");
    const CertifiedSum s = inverse_fourth_power_sum(u.rule());
    acc += base * profile_derivative_norm_sq(u.rule().profile) * s.value;
  } else if (!u.symbolic().inert() || !v.symbolic().inert()) {
    throw Error("h1_inner: derivative data unavailable for evolved tails");
  }
  return acc;
}

inline double h1_norm_sq(const CylinderState& u) {
  return norm_sq(u) + h1_profile(u).total();
}

namespace detail {

inline bool head_only(const CylinderState& u) {
  if (u.tail_is_rule() || !u.symbolic().inert()) return false;
  for (const Segment& s : u.segments)
    if (!std::holds_alternative<GridState>(s)) return false;
  return true;
}

// Joint head block of a head-only state (merging if several blocks).
inline CylinderState with_single_block(CylinderState u) {
  if (!head_only(u))
    throw Error("operation requires a head-only state (inert tail)");
  if (u.segments.size() > 1) merge_leading(u, u.span());
  return u;
}

template <class Mult>
CylinderState apply_head_multiplier(CylinderState u, Mult&& m) {
  CylinderState v = with_single_block(std::move(u));
  if (v.segments.empty()) return v;  // pure scalar: every multiplier fixes it
  GridState& g = std::get<GridState>(v.segments.front());
  g = fourier_multiplier(g, m);
  return v;
}

}  // namespace detail

/// (1 - Laplacian)^{-1} on head-only states: frequency multiplier
/// 1/(1+|xi|^2). Satisfies <u, phi>_{H1} = <f, phi>_{L2} on the representable
/// test class and contracts the H^1 norm.
inline CylinderState resolvent(const CylinderState& f) {
  return detail::apply_head_multiplier(f, [](const std::vector<double>& xi) {
    double s = 0.0;
    for (double x : xi) s += x * x;
    return Complex(1.0 / (1.0 + s), 0.0);
  });
}

/// The Laplacian on head-only states: frequency multiplier -|xi|^2.
inline CylinderState laplacian(const CylinderState& u) {
  return detail::apply_head_multiplier(u, [](const std::vector<double>& xi) {
    double s = 0.0;
    for (double x : xi) s += x * x;
    return Complex(-s, 0.0);
  });
}

/// (1 - Laplacian) u, the inverse direction of the resolvent.
inline CylinderState one_minus_laplacian(const CylinderState& u) {
  return detail::apply_head_multiplier(u, [](const std::vector<double>& xi) {
    double s = 0.0;
    for (double x : xi) s += x * x;
    return Complex(1.0 + s, 0.0);
  });
}

enum class Flow { Heat, Schrodinger };

/// e^{Laplacian t} (Flow::Heat, t >= 0) or e^{i Laplacian t}
/// (Flow::Schrodinger, any t). Grid blocks evolve by the separable frequency
/// multiplier; a product tail is carried as a symbolic evolved tail and never
/// materialized; inert tails are fixed points of both flows.
inline CylinderState evolve(Flow flow, double t, const CylinderState& u) {
  if (flow == Flow::Heat && t < 0.0) throw Error("evolve: heat flow needs t >= 0");
  if (t == 0.0) return u;
  const Complex z = flow == Flow::Heat ? Complex(t, 0.0) : Complex(0.0, t);
  CylinderState v;
  v.scalar = u.scalar;
  TailSnapshot swallowed;
  bool have_factors = false;
  for (const Segment& s : u.segments) {
    if (const auto* g = std::get_if<GridState>(&s)) {
      if (have_factors)
        throw Error("evolve: grid blocks behind tail factors are not representable");
      v.segments.emplace_back(fourier_multiplier(*g, [&](const std::vector<double>& xi) {
        double q = 0.0;
        for (double x : xi) q += x * x;
        return std::exp(-z * q);
      }));
    } else {
      have_factors = true;
      swallowed.factors.push_back(std::get<TailFactor>(s));
    }
  }
  if (u.tail_is_rule()) {
    swallowed.rule = u.rule();
    SymbolicTail sym;
    sym.base = std::move(swallowed);
    if (flow == Flow::Heat)
      sym.heat_time = t;
    else
      sym.schrodinger_time = t;
    v.tail = sym;
  } else {
    SymbolicTail sym = u.symbolic();
    if (!sym.inert()) {
      if (flow == Flow::Heat)
        sym.heat_time += t;
      else
        sym.schrodinger_time += t;
    }
    v.tail = sym;
  }
  return v;
}

inline CylinderState evolve_schrodinger(double t, const CylinderState& u) {
  return evolve(Flow::Schrodinger, t, u);
}

inline CylinderState evolve_heat(double t, const CylinderState& u) {
  return evolve(Flow::Heat, t, u);
}

/// Pairwise inner products of a family sharing one tail. `known == false`
/// marks a common unspecified positive factor (heat-evolved tail).
struct FamilyGram {
  std::size_t n = 0;
  std::vector<Complex> entries;  // row-major n x n
  bool known = true;

  Complex at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

inline FamilyGram family_gram(const std::vector<CylinderState>& members) {
  FamilyGram g;
  g.n = members.size();
  g.entries.assign(g.n * g.n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      const ScaledComplex e = cylinder_inner_scaled(members[i], members[j]);
      g.entries[i * g.n + j] = e.value;
      g.known = g.known && e.known;
    }
  }
  return g;
}

/// Residuals for the semigroup factorization over tensor splits.
struct FactorizationReport {
  double split_residual = 0.0;    // joint evolution vs nested per-factor evolution
  double trivial_residual = 0.0;  // empty second factor: bitwise consistency
  double taylor_ratio = 0.0;      // first-order rate of (evolve(t)-1)/t against the generator
};

/// Checks that evolving a product head jointly equals evolving the factors
/// through nested tensor splits, and that (evolve(t) - 1)/t converges to the
/// generator at first order on the head.
inline FactorizationReport factorization_check(double t, const GridState& g1,
                                               const GridState& g2,
                                               const CylinderState& u0, Flow flow) {
  FactorizationReport rep;

  // Joint: one merged block. Nested: two blocks evolved independently.
  CylinderState joint = tensor(kron(g1, g2), u0);
  CylinderState nested = tensor(g1, tensor(g2, u0));
  CylinderState ej = evolve(flow, t, joint);
  CylinderState en = evolve(flow, t, nested);
  merge_leading(en, en.span());
  rep.split_residual = distance_bound(ej, en);

  // Degenerate split: an empty second factor must change nothing.
  CylinderState e0 = evolve(flow, t, tensor(kron(g1, scalar_state(Complex(1.0, 0.0))), u0));
  CylinderState e0b = evolve(flow, t, tensor(g1, u0));
  rep.trivial_residual = distance_bound(e0, e0b);

  // (evolve(s) - 1)/s u -> z * Laplacian u with first-order rate in s.
  const Complex z = flow == Flow::Heat ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  CylinderState u = detail::with_single_block(head_only_state(kron(g1, g2)));
  CylinderState gen = laplacian(u);
  auto residual_at = [&](double s) {
    const GridState& ug = std::get<GridState>(u.segments.front());
    const GridState eg = std::get<GridState>(evolve(flow, s, u).segments.front());
    const GridState& lg = std::get<GridState>(gen.segments.front());
    return grid_norm(Complex(1.0 / s, 0.0) * (eg - ug) - z * lg);
  };
  const double r1 = residual_at(1e-3);
  const double r2 = residual_at(5e-4);
  rep.taylor_ratio = r2 / r1;
  return rep;
}

/// || Laplacian(tau_a u) - tau_a(Laplacian u) ||.
inline double translation_invariance_check(const ShiftVector& a, const CylinderState& u) {
  const CylinderState lhs = laplacian(translate(a, u));
  const CylinderState rhs = translate(a, laplacian(u));
  return distance_bound(lhs, rhs);
}

/// Residuals of the contraction/derivative exchange identities:
/// d_k(f <| v) = f <| d_{N+k} v for the head contraction, and the grid
/// derivative of the tail contraction against the contracted derivative.
inline double contraction_derivative_check(Direction k, const GridState& f,
                                           const CylinderState& v) {
  const long N = f.grid.dimension();
  const CylinderState lhs = derivative(k, contract_head(f, v));
  const CylinderState rhs = contract_head(f, derivative(Direction{N + k.k}, v));
  double res = distance_bound(lhs, rhs);

  // Tail-side counterpart with u = the trailing part of v past its first block.
  CylinderState u = v;
  if (!u.segments.empty() &&
      std::holds_alternative<GridState>(u.segments.front())) {
    u.segments.erase(u.segments.begin());
    const GridState lhs2 =
        spectral_derivative(contract_tail(u, v), static_cast<int>(k.k - 1));
    const GridState rhs2 = contract_tail(u, derivative(k, v));
    res = std::max(res, grid_norm(lhs2 - rhs2));
  }
  return res;
}

}  // namespace cm
