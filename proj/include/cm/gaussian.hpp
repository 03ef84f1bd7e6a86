#pragma once

#include <vector>

#include "cm/core.hpp"
#include "cm/grid.hpp"

namespace cm {

/// One-dimensional Gaussian wave packet
///   f(x) = scale * exp(-(x-center)^2 / (2*width2) + i*momentum*(x-center)).
/// With scale = (pi*width2)^(-1/4) the packet has unit L^2 norm.
struct GaussianPacket {
  double width2 = 1.0;   // sigma^2 in exp(-x^2/(2 sigma^2))
  double center = 0.0;
  double momentum = 0.0;
  Complex scale = Complex(1.0, 0.0);

  Complex operator()(double x) const {
    const double y = x - center;
    return scale * std::exp(Complex(-y * y / (2.0 * width2), momentum * y));
  }
};

inline GaussianPacket normalized_gaussian(double sigma, double center = 0.0,
                                          double momentum = 0.0) {
  GaussianPacket g;
  g.width2 = sigma * sigma;
  g.center = center;
  g.momentum = momentum;
  g.scale = Complex(std::pow(kPi * g.width2, -0.25), 0.0);
  return g;
}

/// Closed form for <e^{z1 D} f, e^{z2 D} g> where D is the 1-D Laplacian and
/// e^{zD} acts by the frequency multiplier e^{-z xi^2} (z = t: heat flow,
/// z = it: free unitary evolution, z = 0: plain L^2 inner product).
/// Plancherel reduces it to a single Gaussian integral.
inline Complex evolved_gaussian_inner(const GaussianPacket& f, Complex z1,
                                      const GaussianPacket& g, Complex z2) {
  const double af = f.width2, ag = g.width2;
  const Complex P = z1 + std::conj(z2) + Complex(0.5 * (af + ag), 0.0);
  const Complex Q = Complex(af * f.momentum + ag * g.momentum, g.center - f.center);
  const double R = -0.5 * (af * f.momentum * f.momentum + ag * g.momentum * g.momentum);
  return f.scale * std::conj(g.scale) *
         std::sqrt(kPi * af * ag / P) * std::exp(Q * Q / (4.0 * P) + Complex(R, 0.0));
}

inline Complex gaussian_inner(const GaussianPacket& f, const GaussianPacket& g) {
  return evolved_gaussian_inner(f, Complex(0.0, 0.0), g, Complex(0.0, 0.0));
}

/// Closed-form heat evolution of the unit-norm real Gaussian of width sigma:
/// e^{Dt} g_sigma = norm * g_{sqrt(sigma^2+2t)} with
/// norm = (sigma^2/(sigma^2+2t))^{1/4}.
struct HeatGaussian {
  double width2 = 0.0;  // evolved width parameter sigma^2 + 2t
  double norm = 1.0;    // L^2 norm of the evolved packet
};

inline HeatGaussian heat_1d_oracle(double sigma, double t) {
  if (!(sigma > 0.0)) throw Error("heat_1d_oracle: sigma must be > 0");
  if (t < 0.0) throw Error("heat_1d_oracle: t must be >= 0");
  const double a = sigma * sigma;
  return HeatGaussian{a + 2.0 * t, std::pow(a / (a + 2.0 * t), 0.25)};
}

/// The evolved packet itself (real Gaussian, heat flow).
inline GaussianPacket heat_evolved_gaussian(double sigma, double t) {
  const HeatGaussian h = heat_1d_oracle(sigma, t);
  GaussianPacket g = normalized_gaussian(std::sqrt(h.width2));
  g.scale *= h.norm;
  return g;
}

inline GridState sample_gaussian(const Grid& g1d, const GaussianPacket& p) {
  if (g1d.dimension() != 1) throw Error("sample_gaussian: 1-D grid expected");
  return sample(g1d, [&](const std::vector<double>& x) { return p(x[0]); });
}

/// Gauss-Legendre nodes/weights on (-1, 1), computed by Newton iteration.
struct QuadratureRule {
  std::vector<double> nodes, weights;
};

inline QuadratureRule gauss_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

/// Nodes/weights for ∫_0^∞ e^{-t} g(t) dt via the exponential map
/// u = e^{-t/2}: the integral becomes ∫_0^1 2u g(-2 ln u) du, evaluated by
/// Gauss-Legendre on (0,1). The doubled map keeps the per-mode integrands
/// u^{1+2p} away from the u=0 branch point, uniformly accurate in p.
inline QuadratureRule exponential_laplace_rule(int n) {
  QuadratureRule gl = gauss_legendre(n);
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (gl.nodes[i] + 1.0);
    r.nodes[i] = -2.0 * std::log(u);  // quadrature point in t
    r.weights[i] = u * gl.weights[i];
  }
  return r;
}

}  // namespace cm
