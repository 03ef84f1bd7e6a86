#include <catch2/catch_amalgamated.hpp>

#include "cm/gaussian.hpp"
#include "cm/grid.hpp"
#include "cm/random.hpp"

using namespace cm;

TEST_CASE("grid geometry and validation") {
  const Grid g = grid_1d(40.0, 256);
  CHECK(g.spacing(0) == Catch::Approx(40.0 / 256));
  CHECK(g.coordinate(0, 0) == Catch::Approx(-20.0));
  CHECK(g.frequency(0, 0) == 0.0);
  CHECK(g.frequency(0, 1) == Catch::Approx(2 * kPi / 40.0));
  CHECK(g.frequency(0, 128) == Catch::Approx(-2 * kPi * 128 / 40.0));  // -n/2 end
  CHECK(g.frequency(0, 255) == Catch::Approx(-2 * kPi / 40.0));
  CHECK_THROWS_AS(grid_1d(40.0, 100), Error);   // not a power of two
  CHECK_THROWS_AS(grid_1d(-1.0, 128), Error);

  const Grid g0;  // dimension zero
  CHECK(g0.size() == 1);
  CHECK(g0.weight() == 1.0);
}

TEST_CASE("quadrature inner products") {
  const Grid g = grid_1d(8.0, 64);
  const GridState one = constant_state(g, Complex(1, 0));
  CHECK(grid_inner(one, one).real() == Catch::Approx(8.0));  // box volume

  // Distinct Fourier modes are exactly orthogonal in the discrete product.
  auto mode = [&](int k) {
    return sample(g, [&](const std::vector<double>& x) {
      return std::exp(Complex(0, 2 * kPi * k / 8.0 * x[0]));
    });
  };
  CHECK(std::abs(grid_inner(mode(3), mode(5))) < 1e-12);
  CHECK(grid_inner(mode(3), mode(3)).real() == Catch::Approx(8.0));

  const Grid gw = grid_1d(40.0, 512);
  const GaussianPacket p1 = normalized_gaussian(1.0, -1.0, 0.3);
  const GaussianPacket p2 = normalized_gaussian(1.2, 1.5, -0.8);
  CHECK(std::abs(grid_inner(sample_gaussian(gw, p1), sample_gaussian(gw, p2)) -
                 gaussian_inner(p1, p2)) < 1e-8);
}

TEST_CASE("unitary transform") {
  Rng rng(11);
  const Grid g = make_grid({Axis{10.0, 32}, Axis{20.0, 64}});
  const GridState a = random_bandlimited(rng, g, 10, false);
  const GridState b = random_bandlimited(rng, g, 10, false);
  CHECK(std::abs(grid_inner(dft(a), dft(b)) - grid_inner(a, b)) < 1e-12);
  GridState rt = dft(dft(a), true);
  CHECK(grid_norm(rt - a) < 1e-13);
}

TEST_CASE("frequency multipliers") {
  Rng rng(12);
  const Grid g = grid_1d(40.0, 256);
  const GridState s = random_bandlimited(rng, g, 12);

  SECTION("identity") {
    const GridState r = fourier_multiplier(s, [](const std::vector<double>&) {
      return Complex(1, 0);
    });
    CHECK(grid_norm(r - s) < 1e-13);
  }
  SECTION("derivative is the i*xi eigenvalue on a mode") {
    const double xi = 2 * kPi * 7 / 40.0;
    const GridState mode = sample(g, [&](const std::vector<double>& x) {
      return std::exp(Complex(0, xi * x[0]));
    });
    const GridState d = spectral_derivative(mode, 0);
    CHECK(grid_norm(d - Complex(0, xi) * mode) < 1e-10);
  }
  SECTION("heat multiplier widens a gaussian per the closed form") {
    const double sigma = 1.0, t = 0.7;
    const GridState f = sample_gaussian(g, normalized_gaussian(sigma));
    const GridState e = fourier_multiplier(f, [&](const std::vector<double>& xi) {
      return std::exp(Complex(-xi[0] * xi[0] * t, 0));
    });
    CHECK(grid_norm(e - sample_gaussian(g, heat_evolved_gaussian(sigma, t))) < 1e-8);
    CHECK(grid_norm(e) == Catch::Approx(heat_1d_oracle(sigma, t).norm).margin(1e-12));
  }
  SECTION("composition") {
    auto m1 = [](const std::vector<double>& xi) {
      return std::exp(Complex(0, -0.3 * xi[0]));
    };
    auto m2 = [](const std::vector<double>& xi) {
      return Complex(1.0 / (1.0 + xi[0] * xi[0]), 0);
    };
    const GridState ab = fourier_multiplier(fourier_multiplier(s, m1), m2);
    const GridState joint = fourier_multiplier(s, [&](const std::vector<double>& xi) {
      return m1(xi) * m2(xi);
    });
    CHECK(grid_norm(ab - joint) < 1e-12);
  }
  SECTION("unit-modulus multipliers are unitary") {
    const GridState e = fourier_multiplier(s, [](const std::vector<double>& xi) {
      return std::exp(Complex(0, -xi[0] * xi[0] * 0.4));
    });
    CHECK(std::fabs(grid_norm(e) - grid_norm(s)) < 1e-12);
  }
}

TEST_CASE("heat oracle parameters") {
  CHECK(heat_1d_oracle(1.3, 0.0).width2 == Catch::Approx(1.69));
  CHECK(heat_1d_oracle(1.3, 0.0).norm == 1.0);
  CHECK(heat_1d_oracle(1.0, 0.5).width2 == Catch::Approx(2.0));
  CHECK(heat_1d_oracle(1.0, 0.5).norm < 1.0);
  CHECK_THROWS_AS(heat_1d_oracle(1.0, -0.1), Error);
}

TEST_CASE("lattice shifts") {
  Rng rng(13);
  const Grid g = grid_1d(40.0, 128);
  const GridState s = random_bandlimited(rng, g, 10);
  CHECK(lattice_shift(s, {0}).amp == s.amp);
  CHECK(lattice_shift(lattice_shift(s, {17}), {-17}).amp == s.amp);
  CHECK(grid_norm_sq(lattice_shift(s, {17})) == grid_norm_sq(s));

  // A shifted gaussian overlaps the original per the closed form.
  const Grid gw = grid_1d(40.0, 512);
  const GaussianPacket p = normalized_gaussian(1.0);
  const GridState f = sample_gaussian(gw, p);
  const long k = 19;
  const double d = k * gw.spacing(0);
  GaussianPacket moved = p;
  moved.center += d;
  CHECK(std::abs(grid_inner(lattice_shift(f, {k}), f) - gaussian_inner(moved, p)) < 1e-8);

  // Shifts commute with axis multipliers up to the exact phase.
  const GridState a = spectral_shift(spectral_derivative(s, 0), 0, 0.77);
  const GridState b = spectral_derivative(spectral_shift(s, 0, 0.77), 0);
  CHECK(grid_norm(a - b) < 1e-12);
}

TEST_CASE("kron and contraction") {
  Rng rng(14);
  const Grid g1 = grid_1d(8.0, 16), g2 = grid_1d(4.0, 8);
  const GridState a = random_bandlimited(rng, g1, 3, false);
  const GridState b = random_bandlimited(rng, g2, 2, false);
  const GridState ab = kron(a, b);
  CHECK(ab.grid.dimension() == 2);
  CHECK(grid_norm(ab) == Catch::Approx(grid_norm(a) * grid_norm(b)).margin(1e-12));

  // Contracting the leading axis against conj(a)*h recovers <a,a> b.
  std::vector<Complex> line(a.amp.size());
  for (std::size_t i = 0; i < line.size(); ++i)
    line[i] = std::conj(a.amp[i]) * g1.spacing(0);
  const std::vector<Complex> out = contract_leading_axis(ab.amp, line.size(), line);
  const Complex na = grid_inner(a, a);
  for (std::size_t j = 0; j < out.size(); ++j)
    CHECK(std::abs(out[j] - na * b.amp[j]) < 1e-12);
}
