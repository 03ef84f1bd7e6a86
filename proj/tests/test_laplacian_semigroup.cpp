#include <catch2/catch_amalgamated.hpp>

#include "cm/laplacian.hpp"
#include "cm/random.hpp"

using namespace cm;

TEST_CASE("derivative energies and the H1 form") {
  const CylinderState u = build_family_state(BinaryAddress{{0, 1}, 0}, power_law(1.0), 2);
  const DerivativeSpectrum prof = h1_profile(u);
  REQUIRE(prof.explicit_norms.size() == 2);
  const double c = profile_derivative_norm_sq(Profile::Bump01);
  CHECK(prof.explicit_norms[0].second == Catch::Approx(c).epsilon(1e-12));
  CHECK(prof.explicit_norms[1].second == Catch::Approx(c / 16.0).epsilon(1e-12));
  CHECK(prof.rule_sum.remainder_bound < 1e-11);

  // Brute-force partial sums as the oracle for the rule region.
  double brute = 0;
  for (long n = 1000000; n >= 3; --n) brute += 1.0 / std::pow(double(n), 4);
  CHECK(prof.rule_sum.value == Catch::Approx(c * brute).epsilon(1e-9));

  // Head-only states: the form reduces to the spectral energies.
  Rng rng(41);
  const Grid g = make_grid({Axis{40.0, 64}, Axis{40.0, 64}});
  const GridState f = random_bandlimited(rng, g, 6);
  const CylinderState h = head_only_state(f, 2);
  const DerivativeSpectrum hp = h1_profile(h);
  REQUIRE(hp.explicit_norms.size() == 2);
  double direct0 = grid_norm_sq(spectral_derivative(f, 0));
  double direct1 = grid_norm_sq(spectral_derivative(f, 1));
  CHECK(hp.explicit_norms[0].second == Catch::Approx(direct0).epsilon(1e-10));
  CHECK(hp.explicit_norms[1].second == Catch::Approx(direct1).epsilon(1e-10));
  CHECK(hp.rule_sum.value == 0.0);

  CHECK(h1_norm_sq(u) == Catch::Approx(1.0 + prof.total()).margin(1e-12));
  CHECK(std::abs(h1_inner(u, u) - Complex(h1_norm_sq(u), 0)) < 1e-10);

  // Zero state.
  CHECK(h1_norm_sq(head_only_state(Complex(0, 0) * f, 2)) == 0.0);
}

TEST_CASE("resolvent on head-only states") {
  Rng rng(42);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState f = head_only_state(random_bandlimited(rng, g, 10), 7);
  const CylinderState u = resolvent(f);

  SECTION("weak identity against representable test states") {
    for (int i = 0; i < 10; ++i) {
      const CylinderState phi = head_only_state(random_bandlimited(rng, g, 10), 7);
      CHECK(std::abs(h1_inner(u, phi) - cylinder_inner(f, phi)) < 1e-8);
    }
  }
  SECTION("H1 contraction and injectivity") {
    CHECK(std::sqrt(h1_norm_sq(u)) <= norm(f) + 1e-10);
    CHECK(norm(u) > 0.0);
  }
  SECTION("plane wave eigenvector") {
    const double xi = 2 * kPi * 4 / 40.0;
    const GridState pw = sample(g, [&](const std::vector<double>& x) {
      return std::exp(Complex(0, xi * x[0]));
    });
    const CylinderState r = resolvent(head_only_state(pw, 1));
    CHECK(grid_norm(std::get<GridState>(r.segments[0]) -
                    Complex(1 / (1 + xi * xi), 0) * pw) < 1e-12);
  }
  SECTION("resolvent inverts one-minus-laplacian") {
    CHECK(distance_bound(resolvent(one_minus_laplacian(u)), u) < 1e-12);
    CHECK(distance_bound(one_minus_laplacian(resolvent(f)), f) < 1e-12);
  }
  SECTION("rejects states with live product tails") {
    const CylinderState fam = build_family_state(BinaryAddress{{0}, 0}, power_law(1.0), 1);
    CHECK_THROWS_AS(resolvent(fam), Error);
  }
}

TEST_CASE("laplacian") {
  Rng rng(43);
  const Grid g = grid_1d(40.0, 256);

  const CylinderState flat = head_only_state(constant_state(g, Complex(3, -1)));
  CHECK(norm(laplacian(flat)) < 1e-12);

  const double xi = 2 * kPi * 5 / 40.0;
  const GridState pw = sample(g, [&](const std::vector<double>& x) {
    return std::exp(Complex(0, xi * x[0]));
  });
  const CylinderState lp = laplacian(head_only_state(pw));
  CHECK(grid_norm(std::get<GridState>(lp.segments[0]) + Complex(xi * xi, 0) * pw) <
        1e-10);

  // <-Lap u, u> equals the derivative energy and is nonnegative.
  for (int i = 0; i < 10; ++i) {
    const CylinderState u = head_only_state(random_bandlimited(rng, g, 10), 3);
    const Complex q = Complex(-1, 0) * cylinder_inner(laplacian(u), u);
    CHECK(q.real() >= -1e-12);
    CHECK(std::abs(q - Complex(h1_profile(u).total(), 0)) < 1e-10);
  }
}

TEST_CASE("flows: unitarity, contraction, composition, tail bookkeeping") {
  Rng rng(44);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState u = head_only_state(random_bandlimited(rng, g, 10), 5);

  CHECK(distance_bound(evolve_schrodinger(0.0, u), u) == 0.0);
  CHECK(std::fabs(norm(evolve_schrodinger(0.8, u)) - norm(u)) < 1e-12);
  CHECK(norm(evolve_heat(0.8, u)) <= norm(u) + 1e-12);
  CHECK_THROWS_AS(evolve_heat(-0.1, u), Error);

  CHECK(distance_bound(evolve_heat(0.3, evolve_heat(0.4, u)), evolve_heat(0.7, u)) <
        1e-12);
  CHECK(distance_bound(evolve_schrodinger(-0.3, evolve_schrodinger(0.9, u)),
                       evolve_schrodinger(0.6, u)) < 1e-12);

  // Evolving a state with a live product tail swallows it symbolically.
  const CylinderState fam = build_family_state(BinaryAddress{{1}, 0}, power_law(1.0), 1);
  const CylinderState ef = evolve_schrodinger(0.5, tensor(random_bandlimited(rng, g, 8), fam));
  REQUIRE(!ef.tail_is_rule());
  CHECK(!ef.symbolic().inert());
  CHECK(ef.symbolic().schrodinger_time == 0.5);
  CHECK(std::fabs(norm(ef) - 1.0) < 1e-12);  // unitary tail keeps the norm

  const CylinderState eh = evolve_heat(0.5, tensor(random_bandlimited(rng, g, 8), fam));
  CHECK_THROWS_AS(norm(eh), Error);  // heat-evolved tail norm is undetermined
  const ScaledComplex self = cylinder_inner_scaled(eh, eh);
  CHECK(!self.known);
  CHECK_THROWS_AS(cylinder_inner(eh, eh), Error);

  // Different evolution times are incomparable.
  const CylinderState e1 = evolve_schrodinger(0.3, tensor(random_bandlimited(rng, g, 8), fam));
  CHECK_THROWS_AS(cylinder_inner(e1, ef), Error);
}

TEST_CASE("semigroup factorization over tensor splits") {
  Rng rng(45);
  const Grid g = grid_1d(40.0, 128);
  const CylinderState u0 = build_family_state(BinaryAddress{{0, 1}, 0}, power_law(1.0), 2);
  const GridState g1 = random_bandlimited(rng, g, 6);
  const GridState g2 = random_bandlimited(rng, g, 6);

  for (const Flow flow : {Flow::Schrodinger, Flow::Heat}) {
    const FactorizationReport rep = factorization_check(0.4, g1, g2, u0, flow);
    CHECK(rep.split_residual < 1e-10);
    CHECK(rep.trivial_residual == 0.0);
    CHECK(rep.taylor_ratio == Catch::Approx(0.5).margin(0.1));
  }

  // Unitary flow: the Gram matrix of a family over one tail is invariant.
  std::vector<CylinderState> base;
  for (int i = 0; i < 4; ++i) base.push_back(tensor(random_bandlimited(rng, g, 6), u0));
  const FamilyGram g0 = family_gram(base);
  std::vector<CylinderState> ev;
  for (const auto& b : base) ev.push_back(evolve_schrodinger(0.7, b));
  const FamilyGram gt = family_gram(ev);
  REQUIRE(gt.known);
  for (std::size_t i = 0; i < gt.n; ++i)
    for (std::size_t j = 0; j < gt.n; ++j)
      CHECK(std::abs(gt.at(i, j) - g0.at(i, j)) < 1e-10);

  // Heat flow: entries carry one common unknown positive factor.
  std::vector<CylinderState> evh;
  for (const auto& b : base) evh.push_back(evolve_heat(0.7, b));
  const FamilyGram gh = family_gram(evh);
  CHECK(!gh.known);
}

TEST_CASE("family grams are Hermitian positive semidefinite") {
  Rng rng(48);
  const Grid g = grid_1d(40.0, 128);
  const CylinderState u0 = build_family_state(BinaryAddress{{1}, 0}, power_law(1.0), 1);
  std::vector<CylinderState> fam;
  for (int i = 0; i < 5; ++i) fam.push_back(tensor(random_bandlimited(rng, g, 6), u0));
  FamilyGram gr = family_gram(fam);

  for (std::size_t i = 0; i < gr.n; ++i)
    for (std::size_t j = 0; j < gr.n; ++j)
      CHECK(std::abs(gr.at(i, j) - std::conj(gr.at(j, i))) < 1e-13);

  // Cholesky factorization succeeds (up to rounding slack): the matrix is PSD.
  std::vector<Complex> a = gr.entries;
  const std::size_t n = gr.n;
  bool psd = true;
  for (std::size_t k = 0; k < n && psd; ++k) {
    double d = a[k * n + k].real();
    for (std::size_t p = 0; p < k; ++p) d -= std::norm(a[k * n + p]);
    if (d < -1e-10) {
      psd = false;
      break;
    }
    d = std::sqrt(std::max(d, 1e-300));
    a[k * n + k] = Complex(d, 0);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex s = gr.at(i, k);
      for (std::size_t p = 0; p < k; ++p) s -= a[i * n + p] * std::conj(a[k * n + p]);
      a[i * n + k] = s / d;
    }
  }
  CHECK(psd);
}

TEST_CASE("grid states represent measures cell by cell") {
  const Grid g = grid_1d(2.0, 4);
  GridState s = constant_state(g, Complex(0, 2));
  // eta(2i) = 4i per cell, scaled by the cell volume 1/2.
  CHECK(cell_measure(s, 1) == Complex(0, 2.0));
  double total_mass = 0;
  for (std::size_t i = 0; i < s.amp.size(); ++i)
    total_mass += std::abs(cell_measure(s, i));
  CHECK(total_mass == Catch::Approx(grid_norm_sq(s)));  // total variation
}

TEST_CASE("laplacian commutes with translations") {
  Rng rng(46);
  const Grid g = grid_1d(40.0, 128);
  const CylinderState u = head_only_state(random_bandlimited(rng, g, 8), 1);
  CHECK(translation_invariance_check(ShiftVector{{{1, 0.0}}}, u) == 0.0);
  CHECK(translation_invariance_check(ShiftVector{{{1, 11 * g.spacing(0)}}}, u) < 1e-12);
  CHECK(translation_invariance_check(ShiftVector{{{1, 0.817}}}, u) < 1e-10);
}

TEST_CASE("contraction derivative exchange") {
  Rng rng(47);
  const Grid g = grid_1d(40.0, 256);
  const CylinderState w0 = build_family_state(BinaryAddress{{0}, 0}, power_law(1.0), 1);
  const GridState f = random_bandlimited(rng, g, 6);
  const GridState h = random_bandlimited(rng, g, 6);
  const CylinderState v = tensor(f, tensor(h, w0));
  CHECK(contraction_derivative_check(Direction{1}, f, v) < 1e-10);
}
