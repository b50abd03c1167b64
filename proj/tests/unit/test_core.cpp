#include "rda/core.hpp"

#include <doctest.h>

using namespace rda;

TEST_CASE("validate_spec accepts a simple mix system") {
  SystemSpec s;
  s.c2 = 1.0;
  s.f1 = {PolyTerm{1.0, 1, 1, 0}};
  CHECK(validate_spec(s).ok());
}

TEST_CASE("validate_spec rejects linear terms and bad diffusion") {
  SystemSpec s;
  s.f1 = {PolyTerm{1.0, 1, 0, 0}};
  CHECK(validate_spec(s).has("alpha+beta>=2"));
  SystemSpec d;
  d.d1 = 0.0;
  const ValidationReport r = validate_spec(d);
  CHECK(r.has("d1>0"));
  CHECK_FALSE(r.has("d2>0"));
}

TEST_CASE("validate_spec enforces gamma per list") {
  SystemSpec s;
  s.f2 = {PolyTerm{1.0, 2, 0, 1}};
  s.g1 = {PolyTerm{1.0, 2, 0, 0}};
  const ValidationReport r = validate_spec(s);
  CHECK(r.has("f-terms have gamma=0"));
  CHECK(r.has("g-terms have gamma=1"));
}

TEST_CASE("grid invariants") {
  const Grid g(10.0, 64);
  CHECK(g.dx() == 20.0 / 64);
  CHECK(g.x(0) == -10.0);
  CHECK(g.points().size() == 64);
  CHECK_THROWS_AS(Grid(10.0, 100), PreconditionError);
  CHECK_THROWS_AS(Grid(10.0, 32), PreconditionError);
  CHECK_THROWS_AS(Grid(-1.0, 64), PreconditionError);
}

TEST_CASE("scenario validation checks time stepping and envelope") {
  Scenario s;
  s.dt = 2.0;
  s.t_end = 1.0;
  CHECK(validate_scenario(s).has("dt<t_end"));
  Scenario e;
  e.envelope = EnvelopeSpec{EnvelopeKind::Algebraic, 16.0, 2.0};
  CHECK(validate_scenario(e).has("r>=3"));
  Scenario m;
  m.envelope = EnvelopeSpec{EnvelopeKind::ExponentialGaussian, 4.0, 3.0};
  CHECK_FALSE(validate_scenario(m).ok());
  CHECK(envelope_threshold_M(SystemSpec{}) == 16.0);
}

TEST_CASE("domain budget") {
  SystemSpec s;
  s.c2 = 1.0;
  const Grid g(100.0, 256);
  CHECK(within_domain_budget(s, g, 16.0, 0.0));
  CHECK_FALSE(within_domain_budget(s, g, 16.0, 95.0));
}

TEST_CASE("envelope kind names round trip") {
  for (EnvelopeKind k : {EnvelopeKind::ExponentialGaussian, EnvelopeKind::Algebraic, EnvelopeKind::DragAugmented,
                         EnvelopeKind::NormalForm}) {
    CHECK(envelope_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS(envelope_kind_from_string("bogus"));
}
