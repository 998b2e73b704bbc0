#pragma once

// Homogeneous Lie groups on R^N (N <= 3): the anisotropic abelian groups and
// the first Heisenberg group, their dilations and homogeneous quasi-norms.

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "fhardy/integral.hpp"

namespace fhardy {

inline constexpr int kMaxDim = 3;

/// Coordinates of a group element; entries beyond the group dimension are zero.
using Point = std::array<double, kMaxDim>;

enum class GroupLaw { abelian, heisenberg };
enum class NormKind { euclidean, aniso_max, aniso_smooth, koranyi };

std::string to_string(GroupLaw law);
std::string to_string(NormKind kind);
GroupLaw parse_group_law(const std::string& name);
NormKind parse_norm_kind(const std::string& name);

struct GroupSpec {
  int dim = 1;
  Point nu{1.0, 0.0, 0.0};
  GroupLaw law = GroupLaw::abelian;
  double Q = 1.0;

  /// Abelian R^N with dilation weights nu (1 <= N <= 3, all nu > 0).
  static GroupSpec abelian(std::span<const double> nu);
  static GroupSpec euclidean(int n);
  /// Heisenberg group H^1 with law (x1+y1, x2+y2, x3+y3 + (x1 y2 - x2 y1)/2).
  static GroupSpec heisenberg();

  std::span<const double> weights() const { return {nu.data(), static_cast<std::size_t>(dim)}; }
  double min_weight() const;
  bool isotropic() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct QuasiNormSpec {
  NormKind kind = NormKind::euclidean;
  /// M for aniso_smooth: every 2M/nu_i is an even integer.
  int smooth_exponent = 1;
  /// Certified quasi-triangle constant C with |xy| <= C (|x| + |y|).
  double c_tri = 1.0;

  /// Validates kind/law compatibility and fills in the derived fields.
  static QuasiNormSpec make(NormKind kind, const GroupSpec& g);

  friend bool operator==(const QuasiNormSpec&, const QuasiNormSpec&) = default;
};

// Unchecked kernels used in the quadrature loops.

inline Point mul(const GroupSpec& g, const Point& x, const Point& y) {
  Point z{x[0] + y[0], x[1] + y[1], x[2] + y[2]};
  if (g.law == GroupLaw::heisenberg) z[2] += 0.5 * (x[0] * y[1] - x[1] * y[0]);
  return z;
}

inline Point inv(const GroupSpec&, const Point& x) { return {-x[0], -x[1], -x[2]}; }

Point dil(const GroupSpec& g, double lambda, const Point& x);
double norm(const QuasiNormSpec& q, const GroupSpec& g, const Point& x);

/// Projects x != 0 onto the unit quasi-sphere along its dilation orbit.
Point project_to_sphere(const QuasiNormSpec& q, const GroupSpec& g, const Point& x);

// Checked public operations.

std::vector<double> group_mul(const GroupSpec& g, std::span<const double> x,
                              std::span<const double> y);
std::vector<double> group_inv(const GroupSpec& g, std::span<const double> x);
std::vector<double> dilate(const GroupSpec& g, double lambda, std::span<const double> x);
double qnorm(const QuasiNormSpec& q, const GroupSpec& g, std::span<const double> x);

double certified_ctri(const QuasiNormSpec& q, const GroupSpec& g);

/// Largest |xy| / (|x| + |y|) over `samples` seeded random pairs.
double estimate_ctri(const QuasiNormSpec& q, const GroupSpec& g, std::int64_t samples,
                     std::uint64_t seed);

/// Lebesgue volume of the unit quasi-ball, integrated section by section in
/// Cartesian coordinates with nested tanh-sinh rules.
IntegralResult unit_ball_volume(const QuasiNormSpec& q, const GroupSpec& g,
                                double rel_tol = 1e-10);

/// |S| = Q |B(0,1)|.
double sphere_measure(const QuasiNormSpec& q, const GroupSpec& g);

/// sup over |w| <= r of the Euclidean length of y.w - y.
double euclid_step_bound(const GroupSpec& g, const Point& y, double r);

/// A group with a chosen quasi-norm and its cached sphere measure.
class Geometry {
 public:
  Geometry(GroupSpec g, QuasiNormSpec q);
  Geometry(GroupSpec g, NormKind kind) : Geometry(g, QuasiNormSpec::make(kind, g)) {}

  const GroupSpec& group() const { return group_; }
  const QuasiNormSpec& quasi_norm() const { return norm_; }
  int dim() const { return group_.dim; }
  double Q() const { return group_.Q; }
  double c_tri() const { return norm_.c_tri; }

  double norm(const Point& x) const { return fhardy::norm(norm_, group_, x); }
  Point mul(const Point& x, const Point& y) const { return fhardy::mul(group_, x, y); }
  Point dil(double lambda, const Point& x) const { return fhardy::dil(group_, lambda, x); }

  /// Computed once on first use; thread safe.
  double sphere_measure() const;
  double ball_volume(double r) const;

  /// True when Euclidean rotations about the last axis (or x -> -x for N = 1)
  /// are group automorphisms preserving the quasi-norm.
  bool rotation_symmetric() const;

 private:
  struct Cache {
    std::once_flag once;
    double sphere = 0.0;
  };
  GroupSpec group_;
  QuasiNormSpec norm_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace fhardy
