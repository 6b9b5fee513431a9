#ifndef MAJORIZE_MAJORIZATION_HPP
#define MAJORIZE_MAJORIZATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "majorize/matrix.hpp"

namespace majorize {

using ScalarFunction = std::function<double(double)>;
using VectorFunction = std::function<double(std::span<const double>)>;

// Comparison allowance: abs + rel * scale, where scale is the magnitude of
// the quantities being compared.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-12;

  double allowance(double scale) const { return abs + rel * scale; }
  static Tolerance exact() { return {0.0, 0.0}; }
};

/// A real vector together with its descending rearrangement and the prefix
/// sums of that rearrangement. Ties keep their original relative order.
class RankedVector {
 public:
  explicit RankedVector(std::span<const double> values);
  RankedVector(std::initializer_list<double> values)
      : RankedVector(std::span<const double>(values.begin(), values.size())) {}

  std::size_t size() const { return original_.size(); }
  const std::vector<double>& original() const { return original_; }
  const std::vector<double>& sorted() const { return sorted_; }
  const std::vector<double>& prefix() const { return prefix_; }
  // order()[i] is the original index of sorted()[i].
  const std::vector<std::size_t>& order() const { return order_; }
  double total() const { return prefix_.back(); }

 private:
  std::vector<double> original_;
  std::vector<double> sorted_;
  std::vector<double> prefix_;
  std::vector<std::size_t> order_;
};

RankedVector rank_descending(std::span<const double> values);

enum class Relation { none, weak, classical, strong };
const char* to_string(Relation r);

struct MajorizationVerdict {
  Relation relation = Relation::none;
  // weak/classical: one per k = 1..N (prefix_y - prefix_x).
  // strong: one per k = 1..N-1 (rhs - lhs of the cross-product inequality).
  std::vector<double> slacks;
  // The two sides of each inequality, slacks[k] = rhs[k] - lhs[k].
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::optional<double> alpha;  // total_x / total_y when total_y > 0
  double total_x = 0.0;
  double total_y = 0.0;
  // 1-based k of the first failing inequality; N+1 (weak/classical) or N
  // (strong) denotes the totals condition.
  std::optional<std::size_t> first_failure;

  bool holds(Relation wanted) const;
};

MajorizationVerdict check_weak(const RankedVector& x, const RankedVector& y,
                               Tolerance tol = {});
MajorizationVerdict check_classical(const RankedVector& x,
                                    const RankedVector& y, Tolerance tol = {});
// Cross-product form: no division, so null partial sums are legal.
MajorizationVerdict check_strong(const RankedVector& x, const RankedVector& y,
                                 Tolerance tol = {});

// Sum(x) / Sum(y). Requires y >= 0 and Sum(y) > 0.
double mass_ratio(std::span<const double> x, std::span<const double> y);

enum class CheckStatus { ok, precondition_failed };
const char* to_string(CheckStatus s);

struct InequalityReport {
  CheckStatus status = CheckStatus::ok;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  std::optional<double> alpha;
  std::vector<std::string> warnings;
};

/// Checks mean f(x) <= alpha * mean f(y) + (1 - alpha) f(0) for x << y.
///
/// x and y must be nonnegative with Sum(y) > 0 (throws otherwise). When x is
/// not strongly majorized by y the values are still computed, but status is
/// precondition_failed. f is sampled for convexity on the observed range and
/// a warning is attached if the sample contradicts it.
InequalityReport hlp_generalized_check(std::span<const double> x,
                                       std::span<const double> y,
                                       const ScalarFunction& f,
                                       Tolerance tol = {});

/// Checks Sum f(x) <= Sum f(y) for x weakly majorized by y and f
/// nondecreasing convex. Monotonicity and convexity are sampled, never
/// proven; a failed sample only adds a warning.
InequalityReport tomic_weyl_check(std::span<const double> x,
                                  std::span<const double> y,
                                  const ScalarFunction& f, Tolerance tol = {});

// Entries >= -tol, every row and column sum within tol of 1.
bool is_doubly_stochastic(const Matrix& a, double tol = 1e-9);

/// Doubly stochastic A with x = A y, for x majorized by y.
///
/// Built from at most N-1 T-transforms on the descending rearrangements,
/// then conjugated by the two sorting permutations.
Matrix doubly_stochastic_witness(std::span<const double> x,
                                 std::span<const double> y,
                                 Tolerance tol = {});

enum class SchurVerdict { schur_convex, schur_concave, neither, inconclusive };
const char* to_string(SchurVerdict v);

struct SchurOptions {
  std::size_t dim = 2;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t samples = 512;
  std::uint64_t seed = 0;
  double fd_step = 1e-5;
  double fd_tol = 1e-6;
};

struct SchurReport {
  SchurVerdict verdict = SchurVerdict::inconclusive;
  double min_slack_convex = 0.0;   // min of (x_i-x_j)(dF_i-dF_j)
  double min_slack_concave = 0.0;  // min of -(x_i-x_j)(dF_i-dF_j)
  std::vector<double> witness_point;
  std::pair<std::size_t, std::size_t> witness_pair{0, 0};
  bool symmetric = true;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<std::string> notes;
};

/// Samples the Schur-Ostrowski criterion (x_i - x_j)(dF/dx_i - dF/dx_j) on
/// (lo, hi)^dim with central differences. Symmetry is spot-checked first; an
/// asymmetric F or more than 10% failed evaluations is inconclusive.
SchurReport schur_ostrowski_check(const VectorFunction& f,
                                  const SchurOptions& options);

}  // namespace majorize

#endif
