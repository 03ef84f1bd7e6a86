#include <catch2/catch_amalgamated.hpp>

#include "cm/laplacian.hpp"
#include "cm/random.hpp"
#include "cm/translation.hpp"

using namespace cm;

namespace {
CylinderState family3(int b1, int b2, int b3) {
  return build_family_state(BinaryAddress{{b1, b2, b3}, 0}, power_law(1.0), 3);
}
}  // namespace

TEST_CASE("translate: identity, group law, unitarity") {
  Rng rng(31);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState u = tensor(random_bandlimited(rng, g, 10), family3(0, 1, 0));

  CHECK(distance_bound(translate(ShiftVector{}, u), u) == 0.0);

  const double h = g.spacing(0);
  const CylinderState fwd = translate(1, 13 * h, u);
  CHECK(distance_bound(translate(1, -13 * h, fwd), u) == 0.0);  // exact roll back
  CHECK(std::fabs(norm(fwd) - norm(u)) == 0.0);

  const CylinderState two_step = translate(1, 5 * h, translate(1, 8 * h, u));
  CHECK(distance_bound(two_step, fwd) == 0.0);

  // Spectral (non-lattice) head shift preserves norms to rounding.
  const CylinderState sp = translate(1, 0.7321, u);
  CHECK(std::fabs(norm(sp) - norm(u)) < 1e-12);

  // Tail-coordinate shifts move factor offsets. Coordinate 2 holds the first
  // factor (L=1, offset lattice spacing 1); coordinate 3 the second (L=2,
  // lattice spacing 4).
  const CylinderState tf = translate(2, 4.0, u);
  CHECK(std::get<TailFactor>(tf.segments[1]).offset ==
        std::get<TailFactor>(u.segments[1]).offset + 4);
  const CylinderState tf2 = translate(3, 4.0, u);
  CHECK(std::get<TailFactor>(tf2.segments[2]).offset ==
        std::get<TailFactor>(u.segments[2]).offset + 1);
  CHECK_THROWS_AS(translate(3, 1.7, u), Error);  // off the offset lattice

  // Shifting a rule coordinate pulls it into the explicit prefix first.
  const CylinderState deep = translate(5, 25.0, family3(0, 0, 0));
  CHECK(deep.span() >= 5);
  CHECK(std::get<TailFactor>(deep.segments[4]).offset == 1);  // 25 = 1 * 5^2
}

TEST_CASE("difference quotients converge at first order") {
  Rng rng(32);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState u = head_only_state(random_bandlimited(rng, g, 6));
  const GridState du = std::get<GridState>(derivative(Direction{1}, u).segments[0]);

  double prev = -1.0;
  for (int lev = 0; lev < 5; ++lev) {
    const double h = 0.1 / (1 << lev);
    const GridState q =
        std::get<GridState>(difference_quotient(Direction{1}, h, u).segments[0]);
    const double res = grid_norm(q + du);
    if (prev > 0) CHECK(res / prev == Catch::Approx(0.5).margin(0.05));
    prev = res;
  }

  // Constant along the coordinate: the quotient vanishes identically.
  const CylinderState flat = head_only_state(constant_state(g, Complex(2, 1)));
  CHECK(norm(difference_quotient(Direction{1}, 0.25, flat)) == 0.0);
  CHECK_THROWS_AS(difference_quotient(Direction{1}, 0.0, flat), Error);
}

TEST_CASE("derivative: eigenmodes, tail factors, pass-through") {
  const Grid g = grid_1d(40.0, 256);
  const double xi = 2 * kPi * 6 / 40.0;
  const CylinderState pw = head_only_state(sample(g, [&](const std::vector<double>& x) {
    return std::exp(Complex(0, xi * x[0]));
  }));
  const CylinderState dpw = derivative(Direction{1}, pw);
  const GridState expect = Complex(0, xi) * std::get<GridState>(pw.segments[0]);
  CHECK(grid_norm(std::get<GridState>(dpw.segments[0]) - expect) < 1e-10);

  // Family states: || d_n u ||^2 = ||f'||^2 / L_n^4.
  const CylinderState u = family3(1, 0, 1);
  const double c = profile_derivative_norm_sq(Profile::Bump01);
  for (long n = 1; n <= 3; ++n) {
    const double have = norm_sq(derivative(Direction{n}, u));
    CHECK(have == Catch::Approx(c / std::pow(double(n), 4)).epsilon(1e-11));
  }
  // Beyond the explicit prefix the rule factor is pulled and differentiated.
  const double have5 = norm_sq(derivative(Direction{5}, u));
  CHECK(have5 == Catch::Approx(c / std::pow(5.0, 4)).epsilon(1e-11));

  // d_(N+k) (f tensor u) = f tensor d_k u on disjoint coordinates.
  Rng rng(33);
  const GridState f = random_bandlimited(rng, g, 8);
  const CylinderState lhs = derivative(Direction{3}, tensor(f, u));
  const CylinderState rhs = tensor(f, derivative(Direction{2}, u));
  CHECK(distance_bound(lhs, rhs) == 0.0);

  // Derivatives along symbolic tails are not representable.
  CHECK_THROWS_AS(derivative(Direction{2}, head_only_state(f)), Error);
}

TEST_CASE("generator symmetry") {
  Rng rng(34);
  const Grid g = grid_1d(40.0, 256);
  for (int i = 0; i < 25; ++i) {
    const CylinderState u = head_only_state(random_bandlimited(rng, g, 8), 1);
    const CylinderState v = head_only_state(random_bandlimited(rng, g, 8), 1);
    const auto [lhs, rhs] = symmetry_check(Direction{1}, u, v);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
  // Tail-factor direction, real profile: both sides vanish (the profile and
  // its derivative integrate to zero against each other by parts).
  const CylinderState fam = family3(0, 1, 0);
  const auto [lhs, rhs] = symmetry_check(Direction{2}, fam, fam);
  CHECK(std::abs(lhs) < 1e-10);
  CHECK(std::abs(rhs) < 1e-10);
}

TEST_CASE("derivative commutes with translations") {
  Rng rng(35);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState u = head_only_state(random_bandlimited(rng, g, 8));
  const double h = g.spacing(0);
  for (const double a : {0.0, 17 * h, 0.3331}) {
    const CylinderState lhs = derivative(Direction{1}, translate(1, a, u));
    const CylinderState rhs = translate(1, a, derivative(Direction{1}, u));
    CHECK(distance_bound(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("strong continuity along representable directions") {
  Rng rng(36);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState u = head_only_state(random_bandlimited(rng, g, 8));

  std::vector<double> hs;
  for (int lev = 0; lev < 6; ++lev) hs.push_back(0.2 / (1 << lev));
  const std::vector<double> norms = strong_continuity_check(Direction{1}, u, hs);
  for (std::size_t i = 1; i < norms.size(); ++i) {
    CHECK(norms[i] < norms[i - 1]);
    CHECK(norms[i] / norms[i - 1] == Catch::Approx(0.5).margin(0.06));
  }
  // Lipschitz bound through the generator norm.
  const double dn = norm(derivative(Direction{1}, u));
  for (std::size_t i = 0; i < hs.size(); ++i) CHECK(norms[i] <= hs[i] * dn + 1e-12);

  // Constant head: identically zero.
  const CylinderState flat = head_only_state(constant_state(g, Complex(1, 0)));
  for (double n : strong_continuity_check(Direction{1}, flat, hs)) CHECK(n == 0.0);

  // A whole offset step on a tail factor jumps to a disjoint copy: the
  // discontinuity of translation outside the strongly continuous class.
  const CylinderState fam = family3(0, 0, 0);
  const std::vector<double> step = strong_continuity_check(Direction{1}, fam, {1.0});
  CHECK(step[0] == Catch::Approx(std::sqrt(2.0)).margin(1e-10));
}
