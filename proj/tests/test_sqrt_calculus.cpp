#include <catch2/catch_amalgamated.hpp>

#include "cm/atomic.hpp"
#include "cm/random.hpp"

using namespace cm;

namespace {
AtomicState single_atom(double x, Complex amp, double weight = 1.0) {
  return make_atomic(1, {{x}}, {weight}, {amp});
}
}  // namespace

TEST_CASE("eta and zeta") {
  CHECK(eta(Complex(0, 0)) == Complex(0, 0));
  CHECK(eta(Complex(1, 0)) == Complex(1, 0));
  CHECK(eta(Complex(3, 4)) == Complex(15, 20));  // |z| = 5
  CHECK(zeta(Complex(0, 0)) == Complex(0, 0));
  CHECK(zeta(Complex(15, 20)) == Complex(3, 4));
  CHECK(std::abs(eta(Complex(-2, 1))) == Catch::Approx(5.0));  // |eta(z)| = |z|^2

  Rng rng(1);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z = rng.complex_in_box(6.0);
    worst = std::max(worst, std::abs(zeta(eta(z)) - z));
    const Complex w = rng.complex_in_box(30.0);
    worst = std::max(worst, std::abs(eta(zeta(w)) - w));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("stable_sum is permutation invariant and accurate") {
  Rng rng(2);
  std::vector<double> xs(5000);
  for (double& x : xs) x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-8, 8));
  const double s1 = stable_sum(xs.size(), [&](std::size_t i) { return xs[i]; });
  // A deterministic shuffle.
  std::vector<double> ys = xs;
  for (std::size_t i = ys.size() - 1; i > 0; --i)
    std::swap(ys[i], ys[rng.bits() % (i + 1)]);
  const double s2 = stable_sum(ys.size(), [&](std::size_t i) { return ys[i]; });
  CHECK(s1 == s2);  // bitwise
  // Cancellation: sum of (x, -x) pairs plus one survivor.
  std::vector<double> zs;
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(0.5, 2.0) * std::pow(2.0, rng.integer(-30, 30));
    zs.push_back(v);
    zs.push_back(-v);
  }
  zs.push_back(0.37521);
  CHECK(stable_sum(zs.size(), [&](std::size_t i) { return zs[i]; }) ==
        Catch::Approx(0.37521).margin(1e-15));
}

TEST_CASE("refine rebuilds states over a weight-1 union base") {
  AtomicState a = make_atomic(1, {{0.0}, {1.0}}, {2.0, 0.5}, {{1, 1}, {0, 2}});
  AtomicState b = make_atomic(1, {{1.0}, {3.0}}, {1.0, 4.0}, {{2, 0}, {1, -1}});
  const Refined r = refine(a, b);
  CHECK(r.base.atom_count() == 3);  // union of {0,1} and {1,3}
  for (double w : r.base.weights) CHECK(w == 1.0);
  const AtomicState a2{r.base, r.first};
  const AtomicState b2{r.base, r.second};
  CHECK(approx_equal(a2, a));
  CHECK(approx_equal(b2, b));
  CHECK(std::abs(inner(a2, b2) - inner(a, b)) < 1e-12);

  SECTION("idempotent on a shared base") {
    const Refined rr = refine(a, a);
    CHECK(rr.base.atom_count() == a.base.atom_count());
    CHECK(approx_equal(AtomicState{rr.base, rr.first}, a));
  }
  SECTION("disjoint supports union to m + n atoms") {
    const Refined rd = refine(a, translate_atomic({100.0}, b));
    CHECK(rd.base.atom_count() == a.base.atom_count() + b.base.atom_count());
  }
  SECTION("dimension mismatch") {
    Rng rng(3);
    CHECK_THROWS_AS(refine(a, random_atomic(rng, 2, 2)), Error);
  }
}

TEST_CASE("addition follows the square-root coordinates") {
  // Two unit-weight atoms at one point with amplitudes 1 and 1: the sum has
  // amplitude 1 + 1 = 2, hence measure value eta(2) = 2|2| = 4 — twice the
  // amplitude sum, not twice the measure value.
  const AtomicState u = single_atom(0.0, Complex(1, 0));
  const AtomicState s = add(u, u);
  const ComplexAtomicMeasure m = measure_of(s);
  REQUIRE(m.values.size() == 1);
  CHECK(m.values[0] == eta(Complex(2, 0)));
  CHECK(m.values[0] == Complex(4, 0));

  Rng rng(4);
  const AtomicState a = random_atomic(rng, 2, 5);
  CHECK(approx_equal(add(a, zero_atomic(2)), a));
  CHECK(norm(add(a, scale(Complex(-1, 0), a))) < 1e-12);
}

TEST_CASE("scaling acts on amplitudes, quadratically on measure values") {
  const AtomicState u = single_atom(0.0, Complex(1, 0));
  const ComplexAtomicMeasure m = measure_of(scale(Complex(0, 2), u));
  CHECK(m.values[0] == Complex(0, 4));  // eta(2i) = 4i
  Rng rng(5);
  const AtomicState a = random_atomic(rng, 1, 4);
  CHECK(approx_equal(scale(Complex(1, 0), a), a));
  CHECK(norm(scale(Complex(0, 0), a)) == 0.0);
  CHECK(norm(scale(Complex(0.3, -0.4), a)) == Catch::Approx(0.5 * norm(a)));
}

TEST_CASE("inner-product measure totals the inner product exactly") {
  Rng rng(6);
  const AtomicState a = random_atomic(rng, 1, 5);
  const AtomicState b = random_atomic(rng, 1, 5);
  const ComplexAtomicMeasure m = inner_measure(a, b);
  CHECK(m.total() == inner(a, b));  // same refinement, same order: bitwise

  const ComplexAtomicMeasure diag = inner_measure(a, a);
  for (const Complex& v : diag.values) {
    CHECK(v.real() >= 0.0);
    CHECK(v.imag() == 0.0);
  }

  const AtomicState far = translate_atomic({100.0}, b);
  for (const Complex& v : inner_measure(a, far).values) CHECK(v == Complex(0, 0));
  CHECK(inner(a, far) == Complex(0, 0));
}

TEST_CASE("vector space and inner product axioms") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const AtomicState a = random_atomic(rng, 2, 4);
    const AtomicState b = random_atomic(rng, 2, 4);
    const AtomicState c = random_atomic(rng, 2, 4);
    const Complex al = rng.complex_in_box(2.0), be = rng.complex_in_box(2.0);

    CHECK(approx_equal(add(a, b), add(b, a)));
    CHECK(approx_equal(add(add(a, b), c), add(a, add(b, c)), 1e-12));
    CHECK(approx_equal(scale(al, add(a, b)), add(scale(al, a), scale(al, b)), 1e-12));
    CHECK(approx_equal(scale(al + be, a), add(scale(al, a), scale(be, a)), 1e-12));

    CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-13);
    CHECK(std::abs(inner(add(a, b), c) - inner(a, c) - inner(b, c)) < 1e-12);
    CHECK(std::abs(inner(a, b)) <= norm(a) * norm(b) + 1e-12);
    CHECK(norm_sq(add(a, b)) + norm_sq(sub(a, b)) ==
          Catch::Approx(2 * norm_sq(a) + 2 * norm_sq(b)).margin(1e-10));
  }
}

TEST_CASE("total variation is the squared norm in square-root coordinates") {
  CHECK(total_variation(zero_atomic(3)) == 0.0);
  CHECK(total_variation(single_atom(0.0, Complex(1, 0))) == 1.0);
  Rng rng(8);
  const AtomicState a = random_atomic(rng, 1, 6);
  CHECK(total_variation(a) == Catch::Approx(norm_sq(a)).margin(1e-13));
}

TEST_CASE("translation moves atoms and nothing else") {
  Rng rng(9);
  const AtomicState a = random_atomic(rng, 2, 5);
  const AtomicState b = random_atomic(rng, 2, 5);
  CHECK(approx_equal(translate_atomic({0.0, 0.0}, a), a, 0.0));
  const Point shift{0.7, -1.3};
  CHECK(inner(translate_atomic(shift, a), translate_atomic(shift, b)) == inner(a, b));
}

TEST_CASE("base measure invariants are enforced") {
  CHECK_THROWS_AS(make_atomic(1, {{0.0}, {0.0}}, {1, 1}, {{1, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(make_atomic(1, {{0.0}}, {0.0}, {{1, 0}}), Error);
  CHECK_THROWS_AS(make_atomic(2, {{0.0}}, {1.0}, {{1, 0}}), Error);
  // -0.0 and 0.0 are distinct keys (bitwise comparison): no silent merging.
  const AtomicState s = make_atomic(1, {{0.0}, {-0.0}}, {1, 1}, {{1, 0}, {1, 0}});
  CHECK(s.base.atom_count() == 2);
}
