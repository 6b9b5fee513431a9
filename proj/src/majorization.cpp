#include "majorize/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorize/error.hpp"

namespace majorize {

namespace {

void require_same_length(const RankedVector& x, const RankedVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::length_mismatch,
                "length mismatch: " + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()));
  }
}

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::length_mismatch,
                "length mismatch: " + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()));
  }
}

void require_nonnegative(std::span<const double> v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  std::string("negative entry in ") + name + " at index " +
                      std::to_string(i));
    }
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

MajorizationVerdict prefix_verdict(const RankedVector& x, const RankedVector& y,
                                   Tolerance tol) {
  require_same_length(x, y);
  MajorizationVerdict v;
  v.total_x = x.total();
  v.total_y = y.total();
  if (v.total_y > 0.0) v.alpha = v.total_x / v.total_y;
  const auto& px = x.prefix();
  const auto& py = y.prefix();
  v.slacks.resize(px.size());
  v.lhs = px;
  v.rhs = py;
  bool ok = true;
  for (std::size_t k = 0; k < px.size(); ++k) {
    v.slacks[k] = py[k] - px[k];
    double allow = tol.allowance(std::max(std::abs(px[k]), std::abs(py[k])));
    if (v.slacks[k] < -allow && ok) {
      ok = false;
      v.first_failure = k + 1;
    }
  }
  v.relation = ok ? Relation::weak : Relation::none;
  return v;
}

// Samples f on a uniform grid over [lo, hi]; returns false if the midpoint
// convexity inequality fails on some neighbouring triple.
bool sampled_convex(const ScalarFunction& f, double lo, double hi, Tolerance tol) {
  constexpr int kGrid = 64;
  if (!(hi > lo)) return true;
  std::vector<double> vals(kGrid);
  double step = (hi - lo) / (kGrid - 1);
  for (int i = 0; i < kGrid; ++i) vals[i] = f(lo + step * i);
  for (int i = 0; i + 2 < kGrid; ++i) {
    double mid = vals[i + 1];
    double chord = 0.5 * (vals[i] + vals[i + 2]);
    if (mid > chord + tol.allowance(std::max(std::abs(mid), std::abs(chord)))) {
      return false;
    }
  }
  return true;
}

bool sampled_nondecreasing(const ScalarFunction& f, double lo, double hi,
                           Tolerance tol) {
  constexpr int kGrid = 64;
  if (!(hi > lo)) return true;
  double step = (hi - lo) / (kGrid - 1);
  double prev = f(lo);
  for (int i = 1; i < kGrid; ++i) {
    double cur = f(lo + step * i);
    if (cur < prev - tol.allowance(std::max(std::abs(cur), std::abs(prev)))) {
      return false;
    }
    prev = cur;
  }
  return true;
}

}  // namespace

RankedVector::RankedVector(std::span<const double> values)
    : original_(values.begin(), values.end()) {
  if (original_.empty()) {
    throw Error(ErrorCode::invalid_argument, "empty vector");
  }
  for (std::size_t i = 0; i < original_.size(); ++i) {
    if (!std::isfinite(original_[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "non-finite entry at index " + std::to_string(i));
    }
  }
  order_.resize(original_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return original_[a] > original_[b];
  });
  sorted_.reserve(original_.size());
  prefix_.reserve(original_.size());
  double acc = 0.0;
  for (std::size_t i : order_) {
    sorted_.push_back(original_[i]);
    acc += original_[i];
    prefix_.push_back(acc);
  }
}

RankedVector rank_descending(std::span<const double> values) {
  return RankedVector(values);
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::none: return "none";
    case Relation::weak: return "weak";
    case Relation::classical: return "classical";
    case Relation::strong: return "strong";
  }
  return "?";
}

bool MajorizationVerdict::holds(Relation wanted) const {
  if (wanted == Relation::none) return true;
  if (wanted == Relation::weak) {
    return relation == Relation::weak || relation == Relation::classical;
  }
  return relation == wanted;
}

MajorizationVerdict check_weak(const RankedVector& x, const RankedVector& y,
                               Tolerance tol) {
  return prefix_verdict(x, y, tol);
}

MajorizationVerdict check_classical(const RankedVector& x,
                                    const RankedVector& y, Tolerance tol) {
  MajorizationVerdict v = prefix_verdict(x, y, tol);
  double allow =
      tol.allowance(std::max(std::abs(v.total_x), std::abs(v.total_y)));
  bool equal_totals = std::abs(v.total_x - v.total_y) <= allow;
  if (v.relation == Relation::weak && equal_totals) {
    v.relation = Relation::classical;
  } else if (!equal_totals && !v.first_failure) {
    v.first_failure = x.size() + 1;
  }
  return v;
}

MajorizationVerdict check_strong(const RankedVector& x, const RankedVector& y,
                                 Tolerance tol) {
  require_same_length(x, y);
  const std::size_t n = x.size();
  const auto& xs = x.sorted();
  const auto& ys = y.sorted();
  const auto& px = x.prefix();
  const auto& py = y.prefix();

  MajorizationVerdict v;
  v.total_x = x.total();
  v.total_y = y.total();
  if (v.total_y > 0.0) v.alpha = v.total_x / v.total_y;

  // Tails summed directly rather than as total - prefix.
  std::vector<double> sx(n + 1, 0.0), sy(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    sx[i] = sx[i + 1] + xs[i];
    sy[i] = sy[i + 1] + ys[i];
  }

  double scale = std::max(1.0, max_abs(px) * max_abs(py));
  bool ok = true;
  v.slacks.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    double lhs = px[k - 1] * sy[k];
    double rhs = py[k - 1] * sx[k];
    v.slacks[k - 1] = rhs - lhs;
    v.lhs.push_back(lhs);
    v.rhs.push_back(rhs);
    double allow = tol.abs * scale +
                   tol.rel * std::max(std::abs(lhs), std::abs(rhs));
    if (v.slacks[k - 1] < -allow && ok) {
      ok = false;
      v.first_failure = k;
    }
  }
  double total_allow =
      tol.allowance(std::max(std::abs(v.total_x), std::abs(v.total_y)));
  if (v.total_x > v.total_y + total_allow && ok) {
    ok = false;
    v.first_failure = n;
  }
  v.relation = ok ? Relation::strong : Relation::none;
  return v;
}

double mass_ratio(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  require_nonnegative(y, "y");
  double sy = std::accumulate(y.begin(), y.end(), 0.0);
  if (!(sy > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha undefined: sum of y is not positive");
  }
  return std::accumulate(x.begin(), x.end(), 0.0) / sy;
}

const char* to_string(CheckStatus s) {
  return s == CheckStatus::ok ? "ok" : "precondition_failed";
}

InequalityReport hlp_generalized_check(std::span<const double> x,
                                       std::span<const double> y,
                                       const ScalarFunction& f, Tolerance tol) {
  require_same_length(x, y);
  require_nonnegative(x, "x");
  double alpha = mass_ratio(x, y);

  InequalityReport r;
  r.alpha = alpha;
  if (!check_strong(RankedVector(x), RankedVector(y), tol).holds(Relation::strong)) {
    r.status = CheckStatus::precondition_failed;
    r.warnings.push_back("x is not strongly majorized by y");
  }

  const double n = static_cast<double>(x.size());
  double fx = 0.0, fy = 0.0;
  for (double v : x) fx += f(v);
  for (double v : y) fy += f(v);
  double f0 = f(0.0);
  r.lhs = fx / n;
  r.rhs = alpha * (fy / n) + (1.0 - alpha) * f0;
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= -tol.allowance(std::max(std::abs(r.lhs), std::abs(r.rhs)));

  double hi = std::max(*std::max_element(x.begin(), x.end()),
                       *std::max_element(y.begin(), y.end()));
  if (!sampled_convex(f, 0.0, hi, tol)) {
    r.warnings.push_back("f failed a sampled convexity test on [0, max]");
  }
  return r;
}

InequalityReport tomic_weyl_check(std::span<const double> x,
                                  std::span<const double> y,
                                  const ScalarFunction& f, Tolerance tol) {
  require_same_length(x, y);
  RankedVector rx(x), ry(y);

  InequalityReport r;
  if (!check_weak(rx, ry, tol).holds(Relation::weak)) {
    r.status = CheckStatus::precondition_failed;
    r.warnings.push_back("x is not weakly majorized by y");
  }
  for (double v : x) r.lhs += f(v);
  for (double v : y) r.rhs += f(v);
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= -tol.allowance(std::max(std::abs(r.lhs), std::abs(r.rhs)));

  double lo = std::min(rx.sorted().back(), ry.sorted().back());
  double hi = std::max(rx.sorted().front(), ry.sorted().front());
  if (!sampled_nondecreasing(f, lo, hi, tol)) {
    r.warnings.push_back("f is not nondecreasing on the sampled range");
    bool nonneg = std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0; }) &&
                  std::all_of(y.begin(), y.end(), [](double v) { return v >= 0.0; });
    if (nonneg && ry.total() > 0.0 && std::abs(f(0.0)) <= tol.abs &&
        check_strong(rx, ry, tol).holds(Relation::strong)) {
      r.warnings.push_back(
          "f(0) = 0 and x << y: the inequality still follows from the "
          "generalized HLP bound without monotonicity");
    }
  }
  if (!sampled_convex(f, lo, hi, tol)) {
    r.warnings.push_back("f failed a sampled convexity test on [min, max]");
  }
  return r;
}

bool is_doubly_stochastic(const Matrix& a, double tol) {
  if (!a.square()) {
    throw Error(ErrorCode::invalid_argument, "matrix is not square");
  }
  const std::size_t n = a.rows();
  std::vector<double> col(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      double e = a(r, c);
      if (!(e >= -tol)) return false;
      row += e;
      col[c] += e;
    }
    if (std::abs(row - 1.0) > tol) return false;
  }
  return std::all_of(col.begin(), col.end(),
                     [&](double s) { return std::abs(s - 1.0) <= tol; });
}

Matrix doubly_stochastic_witness(std::span<const double> x,
                                 std::span<const double> y, Tolerance tol) {
  require_same_length(x, y);
  RankedVector rx(x), ry(y);
  if (!check_classical(rx, ry, tol).holds(Relation::classical)) {
    throw Error(ErrorCode::precondition, "x not majorized by y");
  }
  const std::size_t n = x.size();
  const std::vector<double>& target = rx.sorted();
  std::vector<double> work = ry.sorted();
  Matrix sorted_map = Matrix::identity(n);  // work = sorted_map * sorted(y)

  double eps = tol.allowance(std::max(max_abs(target), max_abs(work)));
  for (std::size_t step = 0; step < n * n; ++step) {
    std::size_t j = n;
    for (std::size_t i = n; i-- > 0;) {
      if (work[i] - target[i] > eps) {
        j = i;
        break;
      }
    }
    if (j == n) break;
    std::size_t k = n;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (target[i] - work[i] > eps) {
        k = i;
        break;
      }
    }
    if (k == n) break;

    double down = work[j] - target[j];
    double up = target[k] - work[k];
    double delta = std::min(down, up);
    double lambda = 1.0 - delta / (work[j] - work[k]);
    for (std::size_t c = 0; c < n; ++c) {
      double rj = sorted_map(j, c);
      double rk = sorted_map(k, c);
      sorted_map(j, c) = lambda * rj + (1.0 - lambda) * rk;
      sorted_map(k, c) = (1.0 - lambda) * rj + lambda * rk;
    }
    double wj = work[j];
    double wk = work[k];
    work[j] = lambda * wj + (1.0 - lambda) * wk;
    work[k] = (1.0 - lambda) * wj + lambda * wk;
    if (down <= up) work[j] = target[j];
    if (up <= down) work[k] = target[k];
  }

  // x[order_x[r]] = sum_c sorted_map(r, c) * y[order_y[c]]
  Matrix a(n, n);
  const auto& ox = rx.order();
  const auto& oy = ry.order();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(ox[r], oy[c]) = sorted_map(r, c);
  }
  return a;
}

const char* to_string(SchurVerdict v) {
  switch (v) {
    case SchurVerdict::schur_convex: return "schur_convex";
    case SchurVerdict::schur_concave: return "schur_concave";
    case SchurVerdict::neither: return "neither";
    case SchurVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace majorize
