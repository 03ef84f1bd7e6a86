#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cm/io.hpp"
#include "cm/random.hpp"
#include "cm/scenarios.hpp"

using namespace cm;

TEST_CASE("atomic state CSV roundtrips bit for bit") {
  Rng rng(51);
  const AtomicState a = random_atomic(rng, 3, 7);
  const AtomicState b = atomic_from_csv(to_csv(a));
  REQUIRE(b.base.atom_count() == a.base.atom_count());
  CHECK(b.base.dimension == a.base.dimension);
  CHECK(b.base.points == a.base.points);    // exact doubles
  CHECK(b.base.weights == a.base.weights);
  CHECK(b.amps == a.amps);
  CHECK(to_csv(b) == to_csv(a));

  CHECK_THROWS_AS(atomic_from_csv("garbage"), Error);
  CHECK_THROWS_AS(atomic_from_csv("dim=1\nx1,weight,re,im\n1,2\n"), Error);
}

TEST_CASE("grid state CSV roundtrips bit for bit") {
  Rng rng(52);
  const Grid g = make_grid({Axis{12.5, 16}, Axis{3.75, 8}});
  const GridState s = random_bandlimited(rng, g, 3, false);
  const GridState t = grid_from_csv(to_csv(s));
  CHECK(t.grid == s.grid);
  CHECK(t.amp == s.amp);
}

TEST_CASE("tail JSON form is canonical and roundtrips") {
  const std::vector<TailFactor> prefix{{Profile::Bump01, 1.0, 0},
                                       {Profile::Bump01, 2.0, 1}};
  const TailRule rule{Profile::Bump01, power_law(1.0), 0, 3};
  const nlohmann::json j = tail_to_json(prefix, rule);
  CHECK(j.at("version") == 1);
  const auto [p2, r2] = tail_from_json(j);
  CHECK(p2 == prefix);
  CHECK(r2 == rule);
  CHECK(tail_to_json(p2, r2).dump() == j.dump());  // canonical serialization
}

TEST_CASE("scenario registry") {
  const auto& reg = verify::registry();
  CHECK(reg.size() >= 12);

  std::set<std::string> ids, topics;
  for (const auto& s : reg) {
    CHECK(ids.insert(s.id).second);  // unique
    topics.insert(s.topic);
    CHECK(!s.description.empty());
    CHECK(&verify::find_scenario(s.id) == &s);  // resolvable
  }
  // Every identity group of the calculus is covered.
  for (const char* t :
       {"square-root calculus", "product measure", "translation group",
        "derivative generator", "tensor contraction", "laplacian resolvent",
        "semigroup factorization", "orthonormal family", "translation invariance"})
    CHECK(topics.count(t) == 1);

  CHECK_THROWS_AS(verify::find_scenario("nope"), Error);
}

TEST_CASE("tolerance violations fail the scenario but still report") {
  const auto& s = verify::find_scenario("hilbert-axioms");
  const auto r = verify::run_scenario(s, {{"triples", "5"}, {"tol", "0"}});
  CHECK(!r.pass());
  const nlohmann::json j = verify::report_json(r, "T");
  CHECK(j.at("pass") == false);
  CHECK(!j.at("checks").empty());
}

TEST_CASE("reports are deterministic modulo the timestamp") {
  const auto& s = verify::find_scenario("cauchy-completeness");
  const auto r1 = verify::run_scenario(s);
  const auto r2 = verify::run_scenario(s);
  CHECK(verify::report_json(r1, "T").dump() == verify::report_json(r2, "T").dump());
  CHECK(r1.pass());

  // A seed override changes the recorded seed but stays deterministic.
  const auto r3 = verify::run_scenario(s, {{"seed", "99"}});
  CHECK(r3.seed == 99);
}

TEST_CASE("series are emitted for series scenarios only") {
  const auto& with = verify::find_scenario("difference-quotient-rate");
  const auto r = verify::run_scenario(with);
  const std::string csv = verify::series_csv(r);
  CHECK(csv.rfind("x,y,series\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 6);

  const auto& without = verify::find_scenario("hilbert-axioms");
  auto r2 = verify::run_scenario(without, {{"triples", "5"}});
  CHECK_THROWS_AS(verify::series_csv(r2), Error);
}

TEST_CASE("config text parsing") {
  const auto sections = verify::parse_config_text(
      "# comment\n[alpha]\nkey = 1e-4\nother=2\n\n[beta]\nx = hello\n");
  CHECK(sections.at("alpha").at("key") == "1e-4");
  CHECK(sections.at("alpha").at("other") == "2");
  CHECK(sections.at("beta").at("x") == "hello");
  CHECK_THROWS_AS(verify::parse_config_text("[unterminated\n"), Error);
  CHECK_THROWS_AS(verify::parse_config_text("novalue\n"), Error);
}

TEST_CASE("quick scenario passes with reduced parameters") {
  // Smoke-run a cheap configuration of each scenario family that finishes in
  // well under a second; the acceptance binary runs the pinned parameters.
  const std::map<std::string, std::map<std::string, std::string>> quick = {
      {"hilbert-axioms", {{"triples", "50"}}},
      {"amplitude-roundtrip", {{"count", "10000"}}},
      {"product-factorization", {{"quadruples", "25"}}},
      {"translation-unitarity", {{"pairs", "20"}, {"grid", "64"}}},
      {"generator-symmetry",
       {{"grid", "64"}, {"pairs_n1", "5"}, {"pairs_n2", "2"}, {"pairs_n3", "1"}}},
      {"laplacian-translation-invariance", {{"count", "6"}}},
      {"contraction-adjoint", {{"draws", "3"}}},
      {"semigroup-factorization-schrodinger", {{"grid", "128"}, {"members", "3"}}},
      {"semigroup-factorization-heat", {{"grid", "128"}}},
  };
  for (const auto& [id, overrides] : quick) {
    const auto r = verify::run_scenario(verify::find_scenario(id), overrides);
    INFO(id);
    for (const auto& c : r.checks) {
      INFO(c.name + " residual " + std::to_string(c.residual));
      CHECK(c.pass);
    }
  }
}
