#include "fhardy/group.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fhardy/error.hpp"
#include "fhardy/rules.hpp"

namespace fhardy {

std::string to_string(GroupLaw law) {
  return law == GroupLaw::abelian ? "abelian" : "heisenberg";
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::aniso_max: return "aniso_max";
    case NormKind::aniso_smooth: return "aniso_smooth";
    case NormKind::koranyi: return "koranyi";
  }
  return "?";
}

GroupLaw parse_group_law(const std::string& name) {
  if (name == "abelian") return GroupLaw::abelian;
  if (name == "heisenberg") return GroupLaw::heisenberg;
  throw ConfigError("unknown group law '" + name + "' (expected abelian or heisenberg)");
}

NormKind parse_norm_kind(const std::string& name) {
  if (name == "euclidean") return NormKind::euclidean;
  if (name == "aniso_max") return NormKind::aniso_max;
  if (name == "aniso_smooth") return NormKind::aniso_smooth;
  if (name == "koranyi") return NormKind::koranyi;
  throw ConfigError("unknown quasi-norm kind '" + name + "'");
}

GroupSpec GroupSpec::abelian(std::span<const double> nu) {
  if (nu.empty() || nu.size() > kMaxDim)
    throw InputError("abelian group needs 1 to 3 dilation weights");
  GroupSpec g;
  g.dim = static_cast<int>(nu.size());
  g.nu = {0.0, 0.0, 0.0};
  g.law = GroupLaw::abelian;
  g.Q = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0) || !std::isfinite(nu[i])) throw InputError("dilation weights must be positive");
    g.nu[i] = nu[i];
    g.Q += nu[i];
  }
  return g;
}

GroupSpec GroupSpec::euclidean(int n) {
  if (n < 1 || n > kMaxDim) throw InputError("euclidean dimension must be 1..3");
  std::vector<double> nu(static_cast<std::size_t>(n), 1.0);
  return abelian(nu);
}

GroupSpec GroupSpec::heisenberg() {
  GroupSpec g;
  g.dim = 3;
  g.nu = {1.0, 1.0, 2.0};
  g.law = GroupLaw::heisenberg;
  g.Q = 4.0;
  return g;
}

double GroupSpec::min_weight() const {
  double m = nu[0];
  for (int i = 1; i < dim; ++i) m = std::min(m, nu[static_cast<std::size_t>(i)]);
  return m;
}

bool GroupSpec::isotropic() const {
  for (int i = 0; i < dim; ++i)
    if (nu[static_cast<std::size_t>(i)] != 1.0) return false;
  return true;
}

QuasiNormSpec QuasiNormSpec::make(NormKind kind, const GroupSpec& g) {
  QuasiNormSpec q;
  q.kind = kind;
  switch (kind) {
    case NormKind::euclidean:
      if (g.law != GroupLaw::abelian || !g.isotropic())
        throw ConfigError("euclidean quasi-norm requires an abelian group with all weights 1");
      q.c_tri = 1.0;
      break;
    case NormKind::koranyi:
      if (g.law != GroupLaw::heisenberg) throw ConfigError("koranyi gauge requires the heisenberg group");
      q.c_tri = 1.0;
      break;
    case NormKind::aniso_max:
    case NormKind::aniso_smooth: {
      if (g.law != GroupLaw::abelian)
        throw ConfigError(to_string(kind) + " is only supported on abelian groups");
      if (kind == NormKind::aniso_smooth) {
        int found = 0;
        for (int m = 1; m <= 12 && found == 0; ++m) {
          bool ok = true;
          for (int i = 0; i < g.dim; ++i) {
            const double e = 2.0 * m / g.nu[static_cast<std::size_t>(i)];
            const double r = std::round(e);
            if (std::abs(e - r) > 1e-12 || static_cast<long long>(r) % 2 != 0) ok = false;
          }
          if (ok) found = m;
        }
        if (found == 0)
          throw ConfigError("aniso_smooth: no M <= 12 makes every 2M/nu_i an even integer");
        q.smooth_exponent = found;
      }
      // (a+b)^e <= max(1, 2^(e-1)) (a^e + b^e) with e = 1/nu_i
      q.c_tri = std::max(1.0, std::pow(2.0, 1.0 / g.min_weight() - 1.0));
      break;
    }
  }
  return q;
}

Point dil(const GroupSpec& g, double lambda, const Point& x) {
  Point y{0.0, 0.0, 0.0};
  for (int i = 0; i < g.dim; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double nu = g.nu[k];
    y[k] = (nu == 1.0 ? lambda : nu == 2.0 ? lambda * lambda : std::pow(lambda, nu)) * x[k];
  }
  return y;
}

double norm(const QuasiNormSpec& q, const GroupSpec& g, const Point& x) {
  switch (q.kind) {
    case NormKind::euclidean: {
      double s = 0.0;
      for (int i = 0; i < g.dim; ++i) s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      return g.dim == 1 ? std::abs(x[0]) : std::sqrt(s);
    }
    case NormKind::koranyi: {
      const double rho2 = x[0] * x[0] + x[1] * x[1];
      return std::sqrt(std::sqrt(rho2 * rho2 + x[2] * x[2]));
    }
    case NormKind::aniso_max: {
      double m = 0.0;
      for (int i = 0; i < g.dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double a = std::abs(x[k]);
        m = std::max(m, g.nu[k] == 1.0 ? a : std::pow(a, 1.0 / g.nu[k]));
      }
      return m;
    }
    case NormKind::aniso_smooth: {
      const double two_m = 2.0 * q.smooth_exponent;
      // scale out the largest coordinate gauge to avoid overflow
      double scale = 0.0;
      for (int i = 0; i < g.dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        scale = std::max(scale, std::pow(std::abs(x[k]), 1.0 / g.nu[k]));
      }
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (int i = 0; i < g.dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double e = two_m / g.nu[k];
        s += std::pow(std::abs(x[k]) / std::pow(scale, g.nu[k]), e);
      }
      return scale * std::pow(s, 1.0 / two_m);
    }
  }
  return 0.0;
}

Point project_to_sphere(const QuasiNormSpec& q, const GroupSpec& g, const Point& x) {
  const double n = norm(q, g, x);
  return dil(g, 1.0 / n, x);
}

namespace {

Point to_point(const GroupSpec& g, std::span<const double> x, const char* what) {
  if (static_cast<int>(x.size()) != g.dim) {
    std::ostringstream os;
    os << what << ": expected a point with " << g.dim << " coordinates, got " << x.size();
    throw InputError(os.str());
  }
  Point p{0.0, 0.0, 0.0};
  std::copy(x.begin(), x.end(), p.begin());
  return p;
}

std::vector<double> to_vector(const GroupSpec& g, const Point& p) {
  return {p.begin(), p.begin() + g.dim};
}

}  // namespace

std::vector<double> group_mul(const GroupSpec& g, std::span<const double> x,
                              std::span<const double> y) {
  return to_vector(g, mul(g, to_point(g, x, "group_mul"), to_point(g, y, "group_mul")));
}

std::vector<double> group_inv(const GroupSpec& g, std::span<const double> x) {
  return to_vector(g, inv(g, to_point(g, x, "group_inv")));
}

std::vector<double> dilate(const GroupSpec& g, double lambda, std::span<const double> x) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("dilate: lambda must be positive");
  return to_vector(g, dil(g, lambda, to_point(g, x, "dilate")));
}

double qnorm(const QuasiNormSpec& q, const GroupSpec& g, std::span<const double> x) {
  return norm(q, g, to_point(g, x, "qnorm"));
}

double certified_ctri(const QuasiNormSpec& q, const GroupSpec& g) {
  return QuasiNormSpec::make(q.kind, g).c_tri;
}

double estimate_ctri(const QuasiNormSpec& q, const GroupSpec& g, std::int64_t samples,
                     std::uint64_t seed) {
  if (samples < 1) throw InputError("estimate_ctri: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0));
  auto draw = [&] {
    Point v{0.0, 0.0, 0.0};
    double n = 0.0;
    while (n == 0.0) {
      for (int i = 0; i < g.dim; ++i) v[static_cast<std::size_t>(i)] = gauss(rng);
      n = norm(q, g, v);
    }
    return dil(g, std::exp(logr(rng)), project_to_sphere(q, g, v));
  };
  double best = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const Point x = draw();
    const Point y = draw();
    const double r = norm(q, g, mul(g, x, y)) / (norm(q, g, x) + norm(q, g, y));
    best = std::max(best, r);
  }
  return best;
}

namespace {

// sup { t >= 0 : |(prefix, t, 0..)| <= 1 } for coordinate k
double section_extent(const QuasiNormSpec& q, const GroupSpec& g, Point prefix, int k) {
  const auto kk = static_cast<std::size_t>(k);
  prefix[kk] = 0.0;
  if (norm(q, g, prefix) >= 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (;;) {
    prefix[kk] = hi;
    if (norm(q, g, prefix) >= 1.0) break;
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    prefix[kk] = mid;
    if (norm(q, g, prefix) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double section_volume(const QuasiNormSpec& q, const GroupSpec& g, Point prefix, int k, int level,
                      std::int64_t& evals) {
  const double ext = section_extent(q, g, prefix, k);
  ++evals;
  if (k == g.dim - 1) return ext;
  if (ext == 0.0) return 0.0;
  return tanh_sinh(
      [&](double t) {
        Point p = prefix;
        p[static_cast<std::size_t>(k)] = t;
        return section_volume(q, g, p, k + 1, level, evals);
      },
      0.0, ext, level);
}

}  // namespace

IntegralResult unit_ball_volume(const QuasiNormSpec& q, const GroupSpec& g, double rel_tol) {
  const double sym = std::ldexp(1.0, g.dim);
  std::int64_t evals = 0;
  double prev = sym * section_volume(q, g, Point{0, 0, 0}, 0, 3, evals);
  for (int level = 4; level <= 9; ++level) {
    const double cur = sym * section_volume(q, g, Point{0, 0, 0}, 0, level, evals);
    const double err = std::abs(cur - prev);
    if (err <= rel_tol * std::abs(cur)) return {cur, err, evals};
    prev = cur;
  }
  throw NumericError("unit ball volume: refinement levels disagree beyond tolerance", prev);
}

double sphere_measure(const QuasiNormSpec& q, const GroupSpec& g) {
  return g.Q * unit_ball_volume(q, g).value;
}

double euclid_step_bound(const GroupSpec& g, const Point& y, double r) {
  if (g.law == GroupLaw::heisenberg) {
    const double y12 = std::hypot(y[0], y[1]);
    const double v = r * r + 0.5 * y12 * r;
    return std::sqrt(r * r + v * v);
  }
  double s = 0.0;
  for (int i = 0; i < g.dim; ++i) s += std::pow(r, 2.0 * g.nu[static_cast<std::size_t>(i)]);
  return std::sqrt(s);
}

Geometry::Geometry(GroupSpec g, QuasiNormSpec q)
    : group_(g), norm_(QuasiNormSpec::make(q.kind, g)), cache_(std::make_shared<Cache>()) {}

double Geometry::sphere_measure() const {
  std::call_once(cache_->once, [this] { cache_->sphere = fhardy::sphere_measure(norm_, group_); });
  return cache_->sphere;
}

double Geometry::ball_volume(double r) const {
  return sphere_measure() * std::pow(r, group_.Q) / group_.Q;
}

bool Geometry::rotation_symmetric() const {
  if (group_.dim == 1) return true;
  return norm_.kind == NormKind::euclidean || norm_.kind == NormKind::koranyi;
}

}  // namespace fhardy
