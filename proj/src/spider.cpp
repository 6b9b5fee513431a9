#include "majorize/spider.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "majorize/error.hpp"

namespace majorize {

namespace {

void require_same_legs(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::invalid_argument,
                "spider leg count mismatch: K=" + std::to_string(a) +
                    " vs K=" + std::to_string(b));
  }
}

void require_weights(std::span<const double> w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(std::isfinite(x) && x > 0.0)) {
      throw Error(ErrorCode::invalid_argument, "weights must be positive and finite");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "weights must sum to 1");
  }
}

}  // namespace

SpiderPoint::SpiderPoint(std::size_t legs, std::size_t leg, double radius)
    : legs_(legs), leg_(leg), radius_(radius) {
  if (legs == 0) throw Error(ErrorCode::invalid_argument, "spider needs at least one leg");
  if (leg < 1 || leg > legs) {
    throw Error(ErrorCode::invalid_argument,
                "leg " + std::to_string(leg) + " outside 1.." + std::to_string(legs));
  }
  if (!(std::isfinite(radius) && radius >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "radius must be finite and nonnegative");
  }
  if (radius_ == 0.0) {
    leg_ = 1;
    radius_ = 0.0;  // drops -0.0
  }
}

double spider_distance(const SpiderPoint& p, const SpiderPoint& q) {
  require_same_legs(p.legs(), q.legs());
  if (p.leg() == q.leg()) return std::abs(p.radius() - q.radius());
  return p.radius() + q.radius();
}

SpiderPoint geodesic_midpoint(const SpiderPoint& p, const SpiderPoint& q) {
  require_same_legs(p.legs(), q.legs());
  if (p.leg() == q.leg()) {
    return {p.legs(), p.leg(), 0.5 * (p.radius() + q.radius())};
  }
  if (p.radius() >= q.radius()) {
    return {p.legs(), p.leg(), 0.5 * (p.radius() - q.radius())};
  }
  return {q.legs(), q.leg(), 0.5 * (q.radius() - p.radius())};
}

NpcReport npc_inequality_check(const SpiderPoint& x0, const SpiderPoint& x1,
                               const SpiderPoint& z, double tol) {
  require_same_legs(x0.legs(), z.legs());
  SpiderPoint y = geodesic_midpoint(x0, x1);
  auto sq = [](double d) { return d * d; };
  double lhs = sq(spider_distance(z, y));
  double rhs = 0.5 * sq(spider_distance(z, x0)) + 0.5 * sq(spider_distance(z, x1)) -
               0.25 * sq(spider_distance(x0, x1));
  return {y, lhs, rhs, rhs - lhs, rhs - lhs >= -tol};
}

SpiderMeasure::SpiderMeasure(std::size_t legs, std::vector<SpiderAtom> atoms)
    : legs_(legs), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::invalid_argument, "measure has no atoms");
  std::vector<double> w;
  for (const auto& a : atoms_) {
    require_same_legs(legs_, a.point.legs());
    w.push_back(a.weight);
  }
  require_weights(w);
}

double barycenter_objective(const SpiderMeasure& mu, const SpiderPoint& z) {
  double s = 0.0;
  for (const auto& a : mu.atoms()) {
    double d = spider_distance(z, a.point);
    s += a.weight * d * d;
  }
  return s;
}

SpiderPoint tripod_barycenter(double a, double b, double c, double l1,
                              double l2, double l3) {
  for (double r : {a, b, c}) {
    if (!(std::isfinite(r) && r >= 0.0)) {
      throw Error(ErrorCode::invalid_argument, "radius must be finite and nonnegative");
    }
  }
  const double w[] = {l1, l2, l3};
  require_weights(w);
  double t1 = l1 * a, t2 = l2 * b, t3 = l3 * c;
  if (t3 >= t1 + t2) return {3, 3, t3 - (t1 + t2)};
  if (t2 >= t1 + t3) return {3, 2, t2 - (t1 + t3)};
  if (t1 >= t2 + t3) return {3, 1, t1 - (t2 + t3)};
  return SpiderPoint::origin(3);
}

SpiderPoint tripod_barycenter(const SpiderMeasure& mu) {
  if (mu.legs() != 3 || mu.atoms().size() != 3) {
    throw Error(ErrorCode::invalid_argument,
                "tripod barycenter needs three atoms on a 3-spider");
  }
  double r[3] = {0, 0, 0}, l[3] = {0, 0, 0};
  bool seen[3] = {false, false, false};
  for (const auto& atom : mu.atoms()) {
    std::size_t i = atom.point.leg() - 1;
    if (seen[i]) {
      throw Error(ErrorCode::invalid_argument,
                  "tripod barycenter needs one atom on each leg");
    }
    seen[i] = true;
    r[i] = atom.point.radius();
    l[i] = atom.weight;
  }
  return tripod_barycenter(r[0], r[1], r[2], l[0], l[1], l[2]);
}

SpiderPoint spider_barycenter_numeric(const SpiderMeasure& mu, double tie_tol) {
  const std::size_t k = mu.legs();
  std::vector<double> on(k + 1, 0.0), off(k + 1, 0.0);
  for (std::size_t leg = 1; leg <= k; ++leg) {
    for (const auto& a : mu.atoms()) {
      double s = a.weight * a.point.radius();
      if (a.point.leg() == leg && !a.point.is_origin()) {
        on[leg] += s;
      } else {
        off[leg] += s;
      }
    }
  }
  SpiderPoint best = SpiderPoint::origin(k);
  double best_value = barycenter_objective(mu, best);
  for (std::size_t leg = 1; leg <= k; ++leg) {
    double r = std::max(0.0, on[leg] - off[leg]);
    if (r == 0.0) continue;
    SpiderPoint candidate(k, leg, r);
    double value = barycenter_objective(mu, candidate);
    if (value < best_value - tie_tol) {
      best = candidate;
      best_value = value;
    }
  }
  return best;
}

SpiderFunction::SpiderFunction(std::vector<ScalarFunction> restrictions)
    : restrictions_(std::move(restrictions)) {
  if (restrictions_.empty()) {
    throw Error(ErrorCode::invalid_argument, "spider function needs at least one leg");
  }
  double at0 = restrictions_[0](0.0);
  for (std::size_t i = 1; i < restrictions_.size(); ++i) {
    if (std::abs(restrictions_[i](0.0) - at0) > 1e-9) {
      throw Error(ErrorCode::invalid_argument,
                  "restrictions disagree at the origin: f_1(0) != f_" +
                      std::to_string(i + 1) + "(0)");
    }
  }
}

double SpiderFunction::operator()(const SpiderPoint& p) const {
  require_same_legs(legs(), p.legs());
  return restriction(p.leg())(p.radius());
}

ConvexityReport convexity_conditions_check(const SpiderFunction& f,
                                           const ConvexityOptions& opt) {
  if (f.legs() != 3) {
    throw Error(ErrorCode::invalid_argument,
                "convexity conditions are stated for the tripod (K = 3)");
  }
  if (opt.grid_points < 3 || !(opt.grid_max > 0.0) || !(opt.h > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "bad convexity grid options");
  }
  const std::size_t k = f.legs();
  const std::size_t n = opt.grid_points;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = opt.grid_max * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  std::vector<std::vector<double>> values(k, std::vector<double>(n));
  for (std::size_t leg = 0; leg < k; ++leg) {
    for (std::size_t i = 0; i < n; ++i) values[leg][i] = f.restriction(leg + 1)(grid[i]);
  }

  ConvexityReport report;
  report.each_restriction_convex = true;
  for (std::size_t leg = 0; leg < k; ++leg) {
    const auto& v = values[leg];
    bool convex = true;
    // Midpoint inequality on every grid pair with a grid midpoint.
    for (std::size_t i = 0; i < n && convex; ++i) {
      for (std::size_t j = i + 2; j < n; j += 2) {
        double mid = v[(i + j) / 2];
        double chord = 0.5 * (v[i] + v[j]);
        if (mid > chord + opt.tol.allowance(std::max(std::abs(mid), std::abs(chord)))) {
          convex = false;
          break;
        }
      }
    }
    report.restriction_convex.push_back(convex);
    report.each_restriction_convex = report.each_restriction_convex && convex;
    double d0 = (f.restriction(leg + 1)(opt.h) - f.restriction(leg + 1)(0.0)) / opt.h;
    report.right_derivs_at_0.push_back(d0);
  }

  report.derivative_conditions = true;
  report.pairwise_sums_nondecreasing = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      LegPairCheck pc{i + 1, j + 1,
                      report.right_derivs_at_0[i] + report.right_derivs_at_0[j],
                      false, true};
      pc.derivative_ok = pc.derivative_sum >= -opt.deriv_tol;
      for (std::size_t g = 1; g < n; ++g) {
        double prev = values[i][g - 1] + values[j][g - 1];
        double cur = values[i][g] + values[j][g];
        if (cur < prev - opt.tol.allowance(std::max(std::abs(cur), std::abs(prev)))) {
          pc.sum_nondecreasing = false;
          break;
        }
      }
      report.derivative_conditions = report.derivative_conditions && pc.derivative_ok;
      report.pairwise_sums_nondecreasing =
          report.pairwise_sums_nondecreasing && pc.sum_nondecreasing;
      report.pairs.push_back(pc);
    }
  }
  report.conditions_hold = report.each_restriction_convex &&
                           report.derivative_conditions &&
                           report.pairwise_sums_nondecreasing;
  return report;
}

JensenReport jensen_check(const SpiderFunction& f, const SpiderMeasure& mu,
                          double tol) {
  require_same_legs(f.legs(), mu.legs());
  SpiderPoint b = spider_barycenter_numeric(mu);
  double lhs = f(b);
  double rhs = 0.0;
  for (const auto& a : mu.atoms()) rhs += a.weight * f(a.point);
  return {b, lhs, rhs, rhs - lhs, rhs - lhs >= -tol};
}

NpcSampleReport npc_sample_check(const NpcSampleOptions& opt) {
  if (opt.min_legs < 1 || opt.max_legs < opt.min_legs || !(opt.max_radius > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "bad NPC sampling options");
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> legs_dist(opt.min_legs, opt.max_legs);
  std::uniform_real_distribution<double> radius_dist(0.0, opt.max_radius);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  NpcSampleReport report;
  report.samples = opt.samples;
  bool first = true;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    std::size_t k = legs_dist(rng);
    std::uniform_int_distribution<std::size_t> leg_dist(1, k);
    auto draw = [&] {
      // Occasional origin points exercise the glued boundary.
      double r = coin(rng) < 0.05 ? 0.0 : radius_dist(rng);
      return SpiderPoint(k, leg_dist(rng), r);
    };
    SpiderPoint x0 = draw(), x1 = draw(), z = draw();
    NpcReport r = npc_inequality_check(x0, x1, z, opt.tol);
    if (!r.holds) ++report.violations;
    if (first || r.slack < report.min_slack) {
      report.min_slack = r.slack;
      report.worst = {x0, x1, z};
      first = false;
    }
  }
  return report;
}

std::optional<JensenViolation> search_jensen_violation(
    const SpiderFunction& f, std::size_t trials, std::uint64_t seed,
    double max_radius, double tol) {
  const std::size_t k = f.legs();
  auto attempt = [&](SpiderMeasure mu) -> std::optional<JensenViolation> {
    JensenReport r = jensen_check(f, mu, tol);
    if (r.holds) return std::nullopt;
    return JensenViolation{std::move(mu), r};
  };

  // Balanced, unit-scale measures first: they give the most readable witness.
  const double radii[] = {1.0, 2.0, 0.5, 5.0, 0.25};
  const double weights[] = {0.5, 0.25, 0.75};
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = i + 1; j <= k; ++j) {
      for (double a : radii) {
        if (a > max_radius) continue;
        for (double b : radii) {
          if (b > max_radius) continue;
          for (double w : weights) {
            auto hit = attempt(SpiderMeasure(
                k, {{SpiderPoint(k, i, a), w}, {SpiderPoint(k, j, b), 1.0 - w}}));
            if (hit) return hit;
          }
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count_dist(1, 5);
  std::uniform_int_distribution<std::size_t> leg_dist(1, k);
  std::uniform_real_distribution<double> radius_dist(0.0, max_radius);
  std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t n = count_dist(rng);
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) total += (x = weight_dist(rng));
    std::vector<SpiderAtom> atoms;
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t leg = leg_dist(rng);
      double r = radius_dist(rng);
      atoms.push_back({SpiderPoint(k, leg, r), w[a] / total});
    }
    auto hit = attempt(SpiderMeasure(k, std::move(atoms)));
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace majorize
