#include "fhardy/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fhardy/error.hpp"
#include "fhardy/verifier.hpp"

namespace fhardy {

namespace {


double critical_kappa(const Scenario& sc) {
  const double Q = sc.group.Q;
  return -(Q - sc.p) / sc.p;
}

}  // namespace

std::vector<std::pair<double, double>> default_bounds(const std::string& family, const Scenario& sc) {
  if (family == "tent") return {{0.5, 2.0}, {1.0, 4.0}, {2.0, 8.0}};
  if (family == "truncated_power") {
    const double L = std::log(sc.extremal.ratio_R_r0);
    const double k = critical_kappa(sc);
    return {{k - 1.0, k + 1.0}, {0.02 * L, 0.5 * L}};
  }
  if (family == "gaussian_ring") return {{0.5, 2.0}, {2.0, 8.0}, {0.05, 2.0}};
  throw ConfigError("unknown search family '" + family + "'");
}

TestFunction family_member(const std::string& family, const std::vector<double>& x, const Scenario& sc) {
  TestFunction t;
  t.id = "search";
  if (family == "tent") {
    if (x.size() != 3) throw ConfigError("tent family takes (r0, peak, R)");
    t.profile = Profile::tent;
    t.r0 = x[0];
    t.peak = x[1];
    t.R = x[2];
  } else if (family == "truncated_power") {
    if (x.size() != 2) throw ConfigError("truncated_power family takes (kappa, ramp)");
    t.profile = Profile::truncated_power;
    t.r0 = 1.0;
    t.R = sc.extremal.ratio_R_r0;
    t.kappa = x[0];
    t.ramp = x[1];
  } else if (family == "gaussian_ring") {
    if (x.size() != 3) throw ConfigError("gaussian_ring family takes (r0, R, sigma)");
    t.profile = Profile::gaussian_ring;
    t.r0 = x[0];
    t.R = x[1];
    t.sigma = x[2];
  } else {
    throw ConfigError("unknown search family '" + family + "'");
  }
  t.validate();
  return t;
}

SearchResult extremal_search(const Scenario& sc, std::int64_t budget) {
  SearchResult res;
  res.family = sc.search.family;
  res.bounds = sc.search.bounds.empty() ? default_bounds(res.family, sc) : sc.search.bounds;
  const std::size_t n = res.bounds.size();
  if (n == 0 || n > 6) throw ConfigError("search family needs 1 to 6 parameters");
  for (const auto& [lo, hi] : res.bounds)
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("search bounds must be finite with lo < hi");
  if (budget <= 0) throw ConfigError("search budget must be positive");

  Scenario probe = sc;
  probe.extremal.epsilons.clear();
  for (const auto& g : check_admissibility(probe))
    if (!g.pass) {
      res.message = "gate '" + g.name + "' failed; nothing to search";
      res.best_ratio = res.best_normalized_ratio = kNegInf;
      return res;
    }

  // work in the unit cube, clamped to the box
  auto to_params = [&](const std::vector<double>& u) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = std::clamp(u[i], 0.0, 1.0);
      x[i] = res.bounds[i].first + t * (res.bounds[i].second - res.bounds[i].first);
    }
    return x;
  };
  double best = kNegInf;
  double best_raw = kNegInf;
  std::vector<double> best_x;
  auto objective = [&](const std::vector<double>& u) -> double {
    ++res.evaluations;
    const std::vector<double> x = to_params(u);
    double val = kNegInf;
    double raw = kNegInf;
    try {
      probe.corpus = {family_member(res.family, x, sc)};
      const VerificationReport rep = verify(probe);
      const Record& r = rep.results.front();
      if (r.verdict != Verdict::error && std::isfinite(r.normalized_ratio)) {
        val = r.normalized_ratio;
        raw = r.ratio;
      }
    } catch (const Error&) {
    }
    if (val > best) {
      best = val;
      best_raw = raw;
      best_x = x;
    }
    return -val;  // minimised
  };

  std::mt19937_64 rng(sc.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool all_converged = true;
  const int restarts = std::max(1, sc.search.restarts);
  for (int rs = 0; rs < restarts && res.evaluations < budget; ++rs) {
    std::vector<double> start(n);
    for (auto& v : start) v = unif(rng);
    std::vector<std::vector<double>> simplex{start};
    for (std::size_t i = 0; i < n; ++i) {
      auto v = start;
      v[i] += v[i] < 0.5 ? 0.25 : -0.25;
      simplex.push_back(v);
    }
    std::vector<double> f(n + 1);
    for (std::size_t i = 0; i <= n; ++i) f[i] = objective(simplex[i]);

    bool converged = false;
    for (int it = 0; it < sc.search.iterations && res.evaluations < budget; ++it) {
      std::vector<std::size_t> idx(n + 1);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
      std::vector<std::vector<double>> s2;
      std::vector<double> f2;
      for (auto i : idx) {
        s2.push_back(simplex[i]);
        f2.push_back(f[i]);
      }
      simplex = std::move(s2);
      f = std::move(f2);
      res.trace.push_back({rs, it, res.evaluations, best});

      double size = 0.0;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < n; ++j) size = std::max(size, std::abs(simplex[i][j] - simplex[0][j]));
      const double spread = std::abs(f[n] - f[0]);
      if (std::isfinite(f[0]) && size < 1e-4 && spread <= 1e-8 * std::max(1.0, std::abs(f[0]))) {
        converged = true;
        break;
      }

      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[j] += simplex[i][j] / static_cast<double>(n);
      auto along = [&](double t) {
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = std::clamp(c[j] + t * (simplex[n][j] - c[j]), 0.0, 1.0);
        return v;
      };
      const auto xr = along(-1.0);
      const double fr = objective(xr);
      if (fr < f[0]) {
        const auto xe = along(-2.0);
        const double fe = objective(xe);
        if (fe < fr) {
          simplex[n] = xe;
          f[n] = fe;
        } else {
          simplex[n] = xr;
          f[n] = fr;
        }
      } else if (fr < f[n - 1]) {
        simplex[n] = xr;
        f[n] = fr;
      } else {
        const bool outside = fr < f[n];
        const auto xc = along(outside ? -0.5 : 0.5);
        const double fc = objective(xc);
        if (fc < (outside ? fr : f[n])) {
          simplex[n] = xc;
          f[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
            f[i] = objective(simplex[i]);
          }
        }
      }
    }
    all_converged = all_converged && converged;
  }
  res.converged = all_converged;
  if (!all_converged)
    res.message = res.evaluations >= budget ? "not converged: evaluation budget exhausted"
                                            : "not converged: iteration limit reached";
  res.best_normalized_ratio = best;
  res.best_ratio = best_raw;
  res.params = best_x;
  return res;
}

}  // namespace fhardy
