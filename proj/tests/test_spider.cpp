#include <cmath>
#include <vector>

#include "doctest.h"
#include "majorize/error.hpp"
#include "majorize/spider.hpp"
#include "support.hpp"

using namespace majorize;
using testing::Rng;

namespace {

SpiderPoint pt(std::size_t leg, double r, std::size_t k = 3) { return {k, leg, r}; }

SpiderFunction restrictions(ScalarFunction f1, ScalarFunction f2, ScalarFunction f3) {
  return SpiderFunction({std::move(f1), std::move(f2), std::move(f3)});
}

SpiderMeasure tripod(double a, double b, double c, double l1, double l2, double l3) {
  return SpiderMeasure(3, {{pt(1, a), l1}, {pt(2, b), l2}, {pt(3, c), l3}});
}

}  // namespace

TEST_CASE("points and metric") {
  CHECK(pt(2, 0.0) == SpiderPoint::origin(3));
  CHECK(pt(2, 0.0).leg() == 1);
  CHECK_THROWS_AS(pt(4, 1.0), Error);
  CHECK_THROWS_AS(pt(0, 1.0), Error);
  CHECK_THROWS_AS(pt(1, -1.0), Error);
  CHECK_THROWS_AS(pt(1, NAN), Error);
  CHECK(spider_distance(pt(1, 2), pt(1, 5)) == 3.0);
  CHECK(spider_distance(pt(1, 2), pt(2, 3)) == 5.0);
  CHECK(spider_distance(pt(1, 0), pt(3, 4)) == 4.0);
  CHECK_THROWS_AS(spider_distance(pt(1, 1, 3), pt(1, 1, 4)), Error);
}

TEST_CASE("triangle inequality") {
  Rng rng(41);
  for (int i = 0; i < 10000; ++i) {
    std::size_t k = testing::pick(rng, 1, 6);
    auto a = testing::random_point(rng, k, 10), b = testing::random_point(rng, k, 10),
         c = testing::random_point(rng, k, 10);
    CHECK(spider_distance(a, c) <= spider_distance(a, b) + spider_distance(b, c) + 1e-12);
    CHECK(spider_distance(a, b) == spider_distance(b, a));
  }
}

TEST_CASE("geodesic midpoints") {
  CHECK(geodesic_midpoint(pt(1, 1), pt(1, 3)) == pt(1, 2));
  CHECK(geodesic_midpoint(pt(1, 1), pt(2, 1)) == SpiderPoint::origin(3));
  CHECK(geodesic_midpoint(pt(1, 3), pt(2, 1)) == pt(1, 1));
  CHECK(geodesic_midpoint(pt(2, 1), pt(1, 3)) == pt(1, 1));
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    std::size_t k = testing::pick(rng, 1, 6);
    auto a = testing::random_point(rng, k, 10), b = testing::random_point(rng, k, 10);
    auto m = geodesic_midpoint(a, b);
    double half = spider_distance(a, b) / 2;
    CHECK(std::abs(spider_distance(a, m) - half) <= 1e-12);
    CHECK(std::abs(spider_distance(m, b) - half) <= 1e-12);
  }
}

TEST_CASE("NPC inequality") {
  auto r = npc_inequality_check(pt(1, 1), pt(2, 1), pt(3, 1));
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 3.0);
  CHECK(r.holds);
  auto at_mid = npc_inequality_check(pt(1, 1), pt(2, 3), pt(2, 1));
  CHECK(at_mid.lhs == 0.0);
  // At the midpoint both sides vanish: (d/2)^2 - d^2/4 = 0.
  CHECK(at_mid.rhs == doctest::Approx(0.0));
  auto flat = npc_inequality_check(pt(1, 1), pt(1, 5), pt(1, 2));
  CHECK(flat.slack == doctest::Approx(0.0));

  NpcSampleOptions o;
  o.seed = 7;
  auto s = npc_sample_check(o);
  CHECK(s.samples == 10000);
  CHECK(s.violations == 0);
  CHECK(s.min_slack >= -1e-9);
}

TEST_CASE("measures validate their input") {
  CHECK_THROWS_AS(SpiderMeasure(3, {}), Error);
  CHECK_THROWS_AS(SpiderMeasure(3, {{pt(1, 1), 0.5}}), Error);
  CHECK_THROWS_AS(SpiderMeasure(3, {{pt(1, 1), 1.5}, {pt(2, 1), -0.5}}), Error);
  CHECK_THROWS_AS(SpiderMeasure(3, {{pt(1, 1, 4), 1.0}}), Error);
  CHECK_NOTHROW(SpiderMeasure(3, {{pt(1, 1), 1.0}}));
}

TEST_CASE("closed-form tripod barycenters") {
  CHECK(tripod_barycenter(1, 1, 1, 1.0 / 3, 1.0 / 3, 1.0 / 3) == SpiderPoint::origin(3));
  auto a = tripod_barycenter(1, 1, 2, 0.2, 0.2, 0.6);
  CHECK(a.leg() == 3);
  CHECK(a.radius() == doctest::Approx(0.8).epsilon(1e-15));
  auto c = tripod_barycenter(2, 1, 1, 0.6, 0.2, 0.2);
  CHECK(c.leg() == 1);
  CHECK(c.radius() == doctest::Approx(0.8).epsilon(1e-15));
  auto b = tripod_barycenter(1, 4, 1, 0.25, 0.5, 0.25);
  CHECK(b.leg() == 2);
  CHECK(b.radius() == doctest::Approx(1.5));
  // Equality on the boundary lands at the origin.
  CHECK(tripod_barycenter(1, 1, 1, 0.25, 0.25, 0.5).is_origin());
  CHECK_THROWS_AS(tripod_barycenter(SpiderMeasure(3, {{pt(1, 1), 1.0}})), Error);
}

TEST_CASE("numeric barycenter matches the closed form") {
  Rng rng(43);
  for (int i = 0; i < 10000; ++i) {
    double r[3], w[3];
    double total = 0;
    for (int j = 0; j < 3; ++j) {
      r[j] = i % 4 == 0 ? static_cast<double>(testing::pick(rng, 1, 4)) : testing::uniform(rng, 0.01, 10);
      total += (w[j] = i % 4 == 0 ? static_cast<double>(testing::pick(rng, 1, 4)) : testing::uniform(rng, 0.05, 1));
    }
    for (double& x : w) x /= total;
    auto mu = tripod(r[0], r[1], r[2], w[0], w[1], w[2]);
    auto closed = tripod_barycenter(mu);
    auto numeric = spider_barycenter_numeric(mu);
    CHECK(spider_distance(closed, numeric) <= 1e-12);
  }
}

TEST_CASE("numeric barycenter on general spiders") {
  // All atoms on one leg: the Euclidean mean.
  SpiderMeasure one(4, {{pt(2, 1, 4), 0.25}, {pt(2, 3, 4), 0.5}, {pt(2, 5, 4), 0.25}});
  auto m = spider_barycenter_numeric(one);
  CHECK(m.leg() == 2);
  CHECK(m.radius() == doctest::Approx(3.0));
  // Two equal atoms on different legs.
  SpiderMeasure two(5, {{pt(1, 2, 5), 0.5}, {pt(4, 2, 5), 0.5}});
  CHECK(spider_barycenter_numeric(two).is_origin());

  Rng rng(44);
  for (int i = 0; i < 2000; ++i) {
    std::size_t k = testing::pick(rng, 1, 6);
    auto mu = testing::random_measure(rng, k, testing::pick(rng, 1, 6), 10);
    auto b = spider_barycenter_numeric(mu);
    double got = barycenter_objective(mu, b);
    CHECK(got == doctest::Approx(testing::oracle_objective(mu, b.leg(), b.radius())));
    CHECK(got <= testing::oracle_min_objective(mu, 10) + 1e-9);
    for (int p = 0; p < 100; ++p) {
      auto probe = testing::random_point(rng, k, 12);
      CHECK(got <= barycenter_objective(mu, probe) + 1e-12);
    }
  }
}

TEST_CASE("convexity conditions") {
  auto sq = [](double t) { return t * t; };
  auto lin = [](double c) { return [c](double t) { return c * t; }; };
  auto ok = convexity_conditions_check(restrictions(sq, sq, sq));
  CHECK(ok.conditions_hold);
  for (double d : ok.right_derivs_at_0) CHECK(std::abs(d) < 1e-4);

  auto bad = convexity_conditions_check(restrictions(lin(-1), lin(-1), lin(1)));
  CHECK(bad.each_restriction_convex);
  CHECK_FALSE(bad.conditions_hold);
  CHECK_FALSE(bad.derivative_conditions);
  CHECK(bad.pairs[0].derivative_sum == doctest::Approx(-2.0));

  auto mixed = convexity_conditions_check(restrictions(lin(-1), lin(2), lin(2)));
  CHECK(mixed.conditions_hold);

  auto concave = convexity_conditions_check(restrictions([](double t) { return -t * t; }, sq, sq));
  CHECK_FALSE(concave.each_restriction_convex);
  CHECK_FALSE(concave.conditions_hold);

  CHECK_THROWS_AS(SpiderFunction({sq, [](double t) { return t + 1; }}), Error);
  CHECK_THROWS_AS(convexity_conditions_check(SpiderFunction({sq, sq})), Error);
}

TEST_CASE("Jensen inequality") {
  auto sq = [](double t) { return t * t; };
  auto f = restrictions(sq, sq, sq);
  auto r = jensen_check(f, tripod(1, 1, 2, 0.2, 0.2, 0.6));
  CHECK(r.barycenter.leg() == 3);
  CHECK(r.lhs == doctest::Approx(0.64));
  CHECK(r.rhs == doctest::Approx(2.8));
  CHECK(r.holds);

  auto point = jensen_check(f, SpiderMeasure(3, {{pt(2, 1.5), 1.0}}));
  CHECK(point.lhs == point.rhs);

  auto neg = [](double t) { return -t; };
  auto id = [](double t) { return t; };
  auto g = restrictions(neg, neg, id);
  auto v = jensen_check(g, SpiderMeasure(3, {{pt(1, 1), 0.5}, {pt(2, 1), 0.5}}));
  CHECK(v.barycenter.is_origin());
  CHECK(v.lhs == 0.0);
  CHECK(v.rhs == -1.0);
  CHECK_FALSE(v.holds);

  auto hit = search_jensen_violation(g, 100, 0);
  REQUIRE(hit.has_value());
  CHECK(hit->report.lhs == 0.0);
  CHECK(hit->report.rhs == -1.0);
  CHECK_FALSE(search_jensen_violation(f, 200, 0).has_value());
}

TEST_CASE("condition-satisfying functions obey Jensen") {
  Rng rng(45);
  for (int i = 0; i < 30; ++i) {
    auto f = testing::random_convex_tripod(rng);
    REQUIRE(convexity_conditions_check(f).conditions_hold);
    for (int j = 0; j < 300; ++j) {
      auto mu = testing::random_measure(rng, 3, testing::pick(rng, 1, 5), 10);
      CHECK(jensen_check(f, mu, 1e-7).holds);
      auto p = testing::random_point(rng, 3, 10), q = testing::random_point(rng, 3, 10);
      CHECK(f(geodesic_midpoint(p, q)) <= 0.5 * f(p) + 0.5 * f(q) + 1e-9);
    }
  }
}
