#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "cm/core.hpp"

namespace cm {

namespace detail {

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline const std::vector<Complex>& twiddle_table(std::size_t n, bool inverse) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, bool>, std::vector<Complex>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& t = cache[{n, inverse}];
  if (t.empty()) {
    t.resize(n / 2);
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = sgn * 2.0 * kPi * double(k) / double(n);
      t[k] = Complex(std::cos(ang), std::sin(ang));
    }
  }
  return t;
}

// Iterative radix-2 transform, unnormalized. Twiddles come from a table so
// the accumulated error stays at a few ulps regardless of length.
inline void fft_pow2(Complex* a, std::size_t n, bool inverse) {
  if (n <= 1) return;
  const auto& tw = twiddle_table(n, inverse);
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex w = tw[j * step];
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace detail

struct Axis {
  double length = 1.0;  // box size L; nodes at j*h - L/2, h = L/n
  int count = 1;        // power of two

  bool operator==(const Axis&) const = default;
};

/// Periodic quadrature grid on a centered box. Node coordinates are
/// j*h - L/2 per axis; the quadrature weight is the cell volume. Frequencies
/// are 2*pi*k/L with k in [-n/2, n/2).
struct Grid {
  std::vector<Axis> axes;

  int dimension() const { return static_cast<int>(axes.size()); }

  std::size_t size() const {
    std::size_t s = 1;
    for (const Axis& a : axes) s *= static_cast<std::size_t>(a.count);
    return s;
  }

  double spacing(int axis) const {
    return axes[axis].length / axes[axis].count;
  }

  double weight() const {  // quadrature weight per node
    double w = 1.0;
    for (int a = 0; a < dimension(); ++a) w *= spacing(a);
    return w;
  }

  double coordinate(int axis, int index) const {
    return index * spacing(axis) - axes[axis].length / 2.0;
  }

  double frequency(int axis, int index) const {
    const int n = axes[axis].count;
    const int k = index < n / 2 ? index : index - n;
    return 2.0 * kPi * k / axes[axis].length;
  }

  void validate() const {
    for (const Axis& a : axes) {
      if (!(a.length > 0.0)) throw Error("Grid: axis length must be > 0");
      if (!detail::is_pow2(a.count)) throw Error("Grid: axis count must be a power of two");
    }
  }

  bool operator==(const Grid&) const = default;
};

inline Grid make_grid(std::vector<Axis> axes) {
  Grid g{std::move(axes)};
  g.validate();
  return g;
}

inline Grid grid_1d(double length, int count) { return make_grid({Axis{length, count}}); }

/// Complex samples of a square-root density f on a grid; the represented
/// measure assigns eta(amp) * weight to each cell.
struct GridState {
  Grid grid;
  std::vector<Complex> amp;  // row-major, last axis contiguous

  void validate() const {
    grid.validate();
    if (amp.size() != grid.size()) throw Error("GridState: sample count mismatch");
  }
};

inline GridState constant_state(const Grid& g, Complex value) {
  return GridState{g, std::vector<Complex>(g.size(), value)};
}

/// Dimension-zero state: a single scalar sample with unit weight.
inline GridState scalar_state(Complex value) {
  return GridState{Grid{}, {value}};
}

template <class Fn>  // Fn(const std::vector<double>& x) -> Complex
GridState sample(const Grid& g, Fn&& f) {
  GridState s{g, std::vector<Complex>(g.size())};
  const int d = g.dimension();
  std::vector<int> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t lin = 0; lin < s.amp.size(); ++lin) {
    for (int a = 0; a < d; ++a) x[a] = g.coordinate(a, idx[a]);
    s.amp[lin] = f(x);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.axes[a].count) break;
      idx[a] = 0;
    }
  }
  return s;
}

inline Complex grid_inner(const GridState& a, const GridState& b) {
  if (!(a.grid == b.grid)) throw Error("grid_inner: grid mismatch");
  const double w = a.grid.weight();
  return stable_csum(a.amp.size(), [&](std::size_t i) {
    return a.amp[i] * std::conj(b.amp[i]) * w;
  });
}

inline double grid_norm_sq(const GridState& s) {
  const double w = s.grid.weight();
  return stable_sum(s.amp.size(), [&](std::size_t i) {
    return std::norm(s.amp[i]) * w;
  });
}

inline double grid_norm(const GridState& s) { return std::sqrt(grid_norm_sq(s)); }

/// The complex measure a grid state represents, cell by cell: eta(amp) * w,
/// mirroring the atomic representation.
inline Complex cell_measure(const GridState& s, std::size_t node) {
  return eta(s.amp[node]) * s.grid.weight();
}

namespace detail {

// Applies op to every 1-D line of `s` along `axis`. Lines along the last
// axis are contiguous; others are gathered into scratch.
template <class LineOp>
void for_each_line(GridState& s, int axis, LineOp&& op) {
  const int d = s.grid.dimension();
  const std::size_t n = static_cast<std::size_t>(s.grid.axes[axis].count);
  std::size_t stride = 1;
  for (int a = axis + 1; a < d; ++a) stride *= s.grid.axes[a].count;
  const std::size_t lines = s.amp.size() / n;
  if (stride == 1) {
    for (std::size_t l = 0; l < lines; ++l) op(s.amp.data() + l * n, 1);
  } else {
    std::vector<Complex> scratch(n);
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < s.amp.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        Complex* p = s.amp.data() + base + off;
        for (std::size_t j = 0; j < n; ++j) scratch[j] = p[j * stride];
        op(scratch.data(), 1);
        for (std::size_t j = 0; j < n; ++j) p[j * stride] = scratch[j];
      }
    }
  }
}

}  // namespace detail

/// Unitary discrete Fourier transform along one axis (scale 1/sqrt(n)).
inline void dft_axis_inplace(GridState& s, int axis, bool inverse) {
  const std::size_t n = static_cast<std::size_t>(s.grid.axes[axis].count);
  const double scale = 1.0 / std::sqrt(double(n));
  detail::for_each_line(s, axis, [&](Complex* line, std::size_t) {
    detail::fft_pow2(line, n, inverse);
    for (std::size_t j = 0; j < n; ++j) line[j] *= scale;
  });
}

/// Unitary DFT over all axes; grid_inner(dft(a), dft(b)) = grid_inner(a, b).
inline GridState dft(GridState s, bool inverse = false) {
  for (int a = 0; a < s.grid.dimension(); ++a) dft_axis_inplace(s, a, inverse);
  return s;
}

/// Applies m(xi) in frequency space: inverse-DFT(m * DFT(amp)).
/// Unitary whenever |m| = 1 on the frequency lattice.
template <class Multiplier>  // Multiplier(const std::vector<double>& xi) -> Complex
GridState fourier_multiplier(const GridState& s, Multiplier&& m) {
  GridState hat = dft(s, false);
  const int d = hat.grid.dimension();
  std::vector<int> idx(d, 0);
  std::vector<double> xi(d);
  for (std::size_t lin = 0; lin < hat.amp.size(); ++lin) {
    for (int a = 0; a < d; ++a) xi[a] = hat.grid.frequency(a, idx[a]);
    hat.amp[lin] *= m(xi);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < hat.grid.axes[a].count) break;
      idx[a] = 0;
    }
  }
  return dft(std::move(hat), true);
}

namespace detail {

// Frequency multiplier depending on one axis only: transforms just that axis.
template <class Fn>  // Fn(double xi) -> Complex
GridState axis_multiplier(const GridState& s, int axis, Fn&& m) {
  GridState r = s;
  dft_axis_inplace(r, axis, false);
  const std::size_t n = static_cast<std::size_t>(r.grid.axes[axis].count);
  std::vector<Complex> mv(n);
  for (std::size_t k = 0; k < n; ++k) mv[k] = m(r.grid.frequency(axis, static_cast<int>(k)));
  for_each_line(r, axis, [&](Complex* line, std::size_t) {
    for (std::size_t k = 0; k < n; ++k) line[k] *= mv[k];
  });
  dft_axis_inplace(r, axis, true);
  return r;
}

}  // namespace detail

/// d/dx along one axis, realized spectrally (multiplier i*xi).
inline GridState spectral_derivative(const GridState& s, int axis) {
  return detail::axis_multiplier(s, axis, [](double xi) { return Complex(0.0, xi); });
}

/// Translation by a real amount along one axis (multiplier e^{-i xi a});
/// exact for band-limited samples.
inline GridState spectral_shift(const GridState& s, int axis, double amount) {
  return detail::axis_multiplier(s, axis, [&](double xi) {
    return std::exp(Complex(0.0, -xi * amount));
  });
}

/// Translation by whole cells: a circular roll of the samples, exactly
/// norm-preserving. Positive steps translate by +steps*h.
inline GridState lattice_shift(const GridState& s, const std::vector<long>& steps) {
  if (steps.size() != static_cast<std::size_t>(s.grid.dimension()))
    throw Error("lattice_shift: steps size mismatch");
  const int d = s.grid.dimension();
  GridState r{s.grid, std::vector<Complex>(s.amp.size())};
  std::vector<int> idx(d, 0);
  std::vector<std::size_t> stride(d, 1);
  for (int a = d - 2; a >= 0; --a)
    stride[a] = stride[a + 1] * s.grid.axes[a + 1].count;
  for (std::size_t lin = 0; lin < s.amp.size(); ++lin) {
    std::size_t src = 0;
    for (int a = 0; a < d; ++a) {
      const long n = s.grid.axes[a].count;
      long j = (idx[a] - steps[a]) % n;
      if (j < 0) j += n;
      src += static_cast<std::size_t>(j) * stride[a];
    }
    r.amp[lin] = s.amp[src];
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < s.grid.axes[a].count) break;
      idx[a] = 0;
    }
  }
  return r;
}

inline GridState operator+(const GridState& a, const GridState& b) {
  if (!(a.grid == b.grid)) throw Error("GridState +: grid mismatch");
  GridState r = a;
  for (std::size_t i = 0; i < r.amp.size(); ++i) r.amp[i] += b.amp[i];
  return r;
}

inline GridState operator-(const GridState& a, const GridState& b) {
  if (!(a.grid == b.grid)) throw Error("GridState -: grid mismatch");
  GridState r = a;
  for (std::size_t i = 0; i < r.amp.size(); ++i) r.amp[i] -= b.amp[i];
  return r;
}

inline GridState operator*(Complex c, const GridState& s) {
  GridState r = s;
  for (Complex& a : r.amp) a *= c;
  return r;
}

/// Tensor product of samples: the combined grid is a's axes followed by b's.
inline GridState kron(const GridState& a, const GridState& b) {
  Grid g;
  g.axes = a.grid.axes;
  g.axes.insert(g.axes.end(), b.grid.axes.begin(), b.grid.axes.end());
  GridState r{std::move(g), std::vector<Complex>(a.amp.size() * b.amp.size())};
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    for (std::size_t j = 0; j < b.amp.size(); ++j) r.amp[k++] = a.amp[i] * b.amp[j];
  return r;
}

/// Contracts the leading axis against a line of samples (weights included by
/// the caller): out[rest] = sum_j line[j] * data[j][rest].
inline std::vector<Complex> contract_leading_axis(const std::vector<Complex>& data,
                                                  std::size_t lead,
                                                  const std::vector<Complex>& line) {
  if (line.size() != lead || data.size() % lead != 0)
    throw Error("contract_leading_axis: shape mismatch");
  const std::size_t rest = data.size() / lead;
  std::vector<Complex> out(rest, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < lead; ++j) {
    const Complex c = line[j];
    const Complex* row = data.data() + j * rest;
    for (std::size_t r = 0; r < rest; ++r) out[r] += c * row[r];
  }
  return out;
}

}  // namespace cm
