#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cm/atomic.hpp"
#include "cm/gaussian.hpp"
#include "cm/grid.hpp"

namespace cm {

/// Seeded generator with portable value derivation (raw 64-bit draws mapped
/// to [0,1) directly, independent of stdlib distribution internals), so a
/// seed pins every report byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  long integer(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Complex complex_in_box(double half_side = 1.0) {
    return Complex(uniform(-half_side, half_side), uniform(-half_side, half_side));
  }

  /// Derives an independent stream for a labelled sub-task (splitmix64 of
  /// seed and label), keeping scenarios order-independent.
  Rng fork(std::uint64_t label) const {
    std::uint64_t z = seed_ + (label + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Random atomic state with support on a small dyadic lattice, so that
/// independently drawn states share atoms and inner products carry genuine
/// cross terms (continuous coordinates would make every pair mutually
/// singular). Lattice points are exact doubles; translated copies pair
/// bitwise.
inline AtomicState random_atomic(Rng& rng, int dimension, int atoms,
                                 long lattice_half = 3, double spacing = 0.5) {
  double cells = 1.0;
  for (int d = 0; d < dimension; ++d) cells *= double(2 * lattice_half + 1);
  if (atoms > cells) throw Error("random_atomic: more atoms than lattice cells");
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<Complex> amps;
  detail::PointIndex seen;
  while (static_cast<int>(points.size()) < atoms) {
    Point p(dimension);
    for (double& x : p) x = spacing * rng.integer(-lattice_half, lattice_half);
    if (!seen.emplace(p, points.size()).second) continue;
    points.push_back(std::move(p));
    weights.push_back(rng.uniform(0.25, 2.0));
    amps.push_back(rng.complex_in_box(1.0));
  }
  return make_atomic(dimension, std::move(points), std::move(weights), std::move(amps));
}

/// Exactly band-limited random samples: coefficients are drawn on modes with
/// |k| <= band per axis and synthesized through the unitary inverse DFT.
inline GridState random_bandlimited(Rng& rng, const Grid& grid, int band,
                                    bool unit_norm = true) {
  GridState hat{grid, std::vector<Complex>(grid.size(), Complex(0.0, 0.0))};
  const int d = grid.dimension();
  std::vector<int> idx(d, 0);
  for (std::size_t lin = 0; lin < hat.amp.size(); ++lin) {
    bool in_band = true;
    for (int a = 0; a < d; ++a) {
      const int n = grid.axes[a].count;
      const int k = idx[a] < n / 2 ? idx[a] : idx[a] - n;
      if (std::abs(k) > band) in_band = false;
    }
    if (in_band) hat.amp[lin] = rng.complex_in_box(1.0);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < grid.axes[a].count) break;
      idx[a] = 0;
    }
  }
  GridState s = dft(std::move(hat), true);
  if (unit_norm) {
    const double n = grid_norm(s);
    if (n > 0.0) s = Complex(1.0 / n, 0.0) * s;
  }
  return s;
}

inline GridState random_gaussian_head(Rng& rng, const Grid& g1d) {
  const double L = g1d.axes[0].length;
  GaussianPacket p = normalized_gaussian(rng.uniform(0.6, 1.4) * L / 40.0,
                                         rng.uniform(-L / 16.0, L / 16.0),
                                         rng.uniform(-2.0, 2.0));
  return sample_gaussian(g1d, p);
}

}  // namespace cm
