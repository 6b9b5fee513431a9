#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "majorize/error.hpp"
#include "majorize/majorization.hpp"

namespace majorize {

namespace {

struct Gradient {
  double value;
  std::vector<double> partials;
};

Gradient central_differences(const VectorFunction& f, std::vector<double> point,
                             double h) {
  Gradient g{f(point), std::vector<double>(point.size())};
  for (std::size_t i = 0; i < point.size(); ++i) {
    double xi = point[i];
    point[i] = xi + h;
    double up = f(point);
    point[i] = xi - h;
    double down = f(point);
    point[i] = xi;
    g.partials[i] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace

SchurReport schur_ostrowski_check(const VectorFunction& f,
                                  const SchurOptions& opt) {
  if (opt.dim < 2) {
    throw Error(ErrorCode::invalid_argument, "dimension must be at least 2");
  }
  if (!(std::isfinite(opt.lo) && std::isfinite(opt.hi) && opt.lo < opt.hi)) {
    throw Error(ErrorCode::invalid_argument, "domain must be a finite open interval lo < hi");
  }
  if (!(opt.fd_step > 0.0) || opt.hi - opt.lo <= 2.0 * opt.fd_step) {
    throw Error(ErrorCode::invalid_argument, "fd_step too large for the domain");
  }
  if (opt.samples == 0) {
    throw Error(ErrorCode::invalid_argument, "samples must be positive");
  }

  std::mt19937_64 rng(opt.seed);
  // Keep every stencil point strictly inside the open domain.
  std::uniform_real_distribution<double> coord(opt.lo + opt.fd_step,
                                               opt.hi - opt.fd_step);

  SchurReport report;
  double min_convex = std::numeric_limits<double>::infinity();
  double min_concave = std::numeric_limits<double>::infinity();
  std::vector<double> at_convex, at_concave;
  std::pair<std::size_t, std::size_t> pair_convex{0, 1}, pair_concave{0, 1};

  std::vector<double> point(opt.dim), permuted(opt.dim);
  std::vector<std::size_t> perm(opt.dim);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    for (double& c : point) c = coord(rng);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    if (std::is_sorted(perm.begin(), perm.end())) std::swap(perm[0], perm[1]);
    for (std::size_t i = 0; i < opt.dim; ++i) permuted[i] = point[perm[i]];

    Gradient g;
    double f_perm = 0.0;
    try {
      g = central_differences(f, point, opt.fd_step);
      f_perm = f(permuted);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::domain) throw;
      ++report.skipped;
      continue;
    }
    ++report.evaluated;

    if (std::abs(g.value - f_perm) > opt.fd_tol * std::max(1.0, std::abs(g.value))) {
      report.symmetric = false;
      report.witness_point = point;
      report.notes.push_back("symmetry spot-check failed: F changes under a permutation of its arguments");
      break;
    }

    for (std::size_t i = 0; i < opt.dim; ++i) {
      for (std::size_t j = i + 1; j < opt.dim; ++j) {
        double c = (point[i] - point[j]) * (g.partials[i] - g.partials[j]);
        if (c < min_convex) {
          min_convex = c;
          at_convex = point;
          pair_convex = {i, j};
        }
        if (-c < min_concave) {
          min_concave = -c;
          at_concave = point;
          pair_concave = {i, j};
        }
      }
    }
  }

  if (report.evaluated > 0) {
    report.min_slack_convex = min_convex;
    report.min_slack_concave = min_concave;
  }

  if (!report.symmetric) {
    report.verdict = SchurVerdict::inconclusive;
    return report;
  }
  if (report.skipped * 10 > opt.samples || report.evaluated == 0) {
    report.verdict = SchurVerdict::inconclusive;
    report.notes.push_back("more than 10% of the samples failed to evaluate");
    return report;
  }

  bool convex = min_convex >= -opt.fd_tol;
  bool concave = min_concave >= -opt.fd_tol;
  if (convex) {
    report.verdict = SchurVerdict::schur_convex;
    report.witness_point = at_convex;
    report.witness_pair = pair_convex;
    if (concave) {
      report.notes.push_back("criterion vanishes on every sample: F is both Schur-convex and Schur-concave");
    }
  } else if (concave) {
    report.verdict = SchurVerdict::schur_concave;
    report.witness_point = at_concave;
    report.witness_pair = pair_concave;
  } else {
    report.verdict = SchurVerdict::neither;
    report.witness_point = at_convex;
    report.witness_pair = pair_convex;
  }
  return report;
}

}  // namespace majorize
