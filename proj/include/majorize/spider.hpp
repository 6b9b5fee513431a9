#ifndef MAJORIZE_SPIDER_HPP
#define MAJORIZE_SPIDER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "majorize/majorization.hpp"

namespace majorize {

/// A point (leg, radius) on the K-spider: K half-lines glued at the origin.
/// Legs are numbered 1..K. Every radius-0 point is stored as (1, 0).
class SpiderPoint {
 public:
  SpiderPoint(std::size_t legs, std::size_t leg, double radius);
  static SpiderPoint origin(std::size_t legs) { return {legs, 1, 0.0}; }

  std::size_t legs() const { return legs_; }
  std::size_t leg() const { return leg_; }
  double radius() const { return radius_; }
  bool is_origin() const { return radius_ == 0.0; }

  friend bool operator==(const SpiderPoint&, const SpiderPoint&) = default;

 private:
  std::size_t legs_;
  std::size_t leg_;
  double radius_;
};

double spider_distance(const SpiderPoint& p, const SpiderPoint& q);

// The unique point at distance d(p,q)/2 from both ends.
SpiderPoint geodesic_midpoint(const SpiderPoint& p, const SpiderPoint& q);

struct NpcReport {
  SpiderPoint midpoint;
  double lhs;  // d^2(z, y)
  double rhs;  // d^2(z,x0)/2 + d^2(z,x1)/2 - d^2(x0,x1)/4
  double slack;
  bool holds;
};

NpcReport npc_inequality_check(const SpiderPoint& x0, const SpiderPoint& x1,
                               const SpiderPoint& z, double tol = 1e-9);

struct SpiderAtom {
  SpiderPoint point;
  double weight;
};

// Finitely supported probability measure; weights positive, summing to 1.
class SpiderMeasure {
 public:
  SpiderMeasure(std::size_t legs, std::vector<SpiderAtom> atoms);

  std::size_t legs() const { return legs_; }
  const std::vector<SpiderAtom>& atoms() const { return atoms_; }

 private:
  std::size_t legs_;
  std::vector<SpiderAtom> atoms_;
};

// z -> sum_j w_j d^2(z, x_j)
double barycenter_objective(const SpiderMeasure& mu, const SpiderPoint& z);

/// Closed-form barycenter of three atoms (1,a), (2,b), (3,c) with weights
/// l1, l2, l3. If one weighted radius dominates the sum of the other two the
/// barycenter lies on that leg at the excess; otherwise it is the origin.
SpiderPoint tripod_barycenter(double a, double b, double c, double l1,
                              double l2, double l3);
// Same, for a measure with exactly one atom on each leg of a 3-spider.
SpiderPoint tripod_barycenter(const SpiderMeasure& mu);

/// Barycenter of an arbitrary atomic measure on a K-spider.
///
/// On leg i the objective is a convex quadratic in r with stationary point
/// (on-leg weighted radii) - (off-leg weighted radii); clip it at 0, then
/// compare every leg's candidate against the origin. A candidate must beat
/// the origin by more than tie_tol to be chosen.
SpiderPoint spider_barycenter_numeric(const SpiderMeasure& mu,
                                      double tie_tol = 0.0);

/// A function on the K-spider given by its restrictions f_1..f_K to the legs.
/// The restrictions must agree at 0 (within 1e-9).
class SpiderFunction {
 public:
  explicit SpiderFunction(std::vector<ScalarFunction> restrictions);

  std::size_t legs() const { return restrictions_.size(); }
  const ScalarFunction& restriction(std::size_t leg) const {
    return restrictions_.at(leg - 1);
  }
  double operator()(const SpiderPoint& p) const;

 private:
  std::vector<ScalarFunction> restrictions_;
};

struct ConvexityOptions {
  double h = 1e-6;             // one-sided difference step at 0
  double deriv_tol = 1e-4;     // sign tests on right derivatives
  double grid_max = 10.0;
  std::size_t grid_points = 65;
  Tolerance tol{};             // sampled convexity / monotonicity
};

struct LegPairCheck {
  std::size_t i;  // 1-based legs
  std::size_t j;
  double derivative_sum;
  bool derivative_ok;  // f_i'(0+) + f_j'(0+) >= -deriv_tol
  bool sum_nondecreasing;  // f_i + f_j sampled on the grid
};

struct ConvexityReport {
  std::vector<bool> restriction_convex;
  bool each_restriction_convex = false;
  std::vector<double> right_derivs_at_0;
  std::vector<LegPairCheck> pairs;
  bool derivative_conditions = false;
  bool pairwise_sums_nondecreasing = false;
  bool conditions_hold = false;
};

/// Sufficient conditions for convexity of a function on the tripod: each
/// restriction convex and every pairwise sum f_i + f_j nondecreasing
/// (equivalently, nonnegative sums of right derivatives at 0). A failed
/// check does not mean f is not convex.
ConvexityReport convexity_conditions_check(const SpiderFunction& f,
                                           const ConvexityOptions& options = {});

struct JensenReport {
  SpiderPoint barycenter;
  double lhs;  // f(barycenter)
  double rhs;  // sum_j w_j f(x_j)
  double slack;
  bool holds;
};

JensenReport jensen_check(const SpiderFunction& f, const SpiderMeasure& mu,
                          double tol = 1e-9);

struct NpcSampleOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t min_legs = 2;
  std::size_t max_legs = 6;
  double max_radius = 10.0;
  double tol = 1e-9;
};

struct NpcSampleReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  std::vector<SpiderPoint> worst;  // x0, x1, z at min_slack
};

// Random triples on K-spiders with K drawn from [min_legs, max_legs].
NpcSampleReport npc_sample_check(const NpcSampleOptions& options = {});

struct JensenViolation {
  SpiderMeasure measure;
  JensenReport report;
};

/// Random search for an atomic measure with f(barycenter) > sum w_j f(x_j).
/// Two-atom measures across pairs of legs are tried first, then random
/// measures with up to five atoms and radii in [0, max_radius].
std::optional<JensenViolation> search_jensen_violation(
    const SpiderFunction& f, std::size_t trials, std::uint64_t seed,
    double max_radius = 10.0, double tol = 1e-9);

}  // namespace majorize

#endif
