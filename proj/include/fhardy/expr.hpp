#pragma once

// Weight expressions: products of powers of |x|, |y|, |y^-1 x| and Gaussian
// factors exp(-c |.|^2), with a positive coefficient.

#include <cmath>
#include <string>

namespace fhardy {

class PowerExpr {
 public:
  PowerExpr() = default;

  /// Grammar: term ('*' term | '/' term)*, term = atom ('^' number)?,
  /// atom = number | |x| | |y| | |y^-1x| | exp(-c*VAR^2) | '(' expr ')'.
  static PowerExpr parse(const std::string& text);
  static PowerExpr constant(double c);
  static PowerExpr power_of_x(double a, double coef = 1.0);

  double log_eval(double nx, double ny, double nd) const;
  double eval(double nx, double ny, double nd) const { return std::exp(log_eval(nx, ny, nd)); }
  /// Radial weights depend on |x| only.
  double log_eval(double nx) const { return log_eval(nx, 1.0, 1.0); }
  double eval(double nx) const { return std::exp(log_eval(nx)); }

  bool depends_on_x() const { return px_ != 0.0 || gx_ != 0.0; }
  bool depends_on_y() const { return py_ != 0.0 || gy_ != 0.0; }
  bool depends_on_diff() const { return pd_ != 0.0 || gd_ != 0.0; }
  bool is_constant() const { return !depends_on_x() && !depends_on_y() && !depends_on_diff(); }
  bool is_radial() const { return !depends_on_y() && !depends_on_diff(); }

  double coef() const { return coef_; }
  double power_x() const { return px_; }
  double power_y() const { return py_; }
  double power_diff() const { return pd_; }
  double gauss_x() const { return gx_; }
  double gauss_y() const { return gy_; }
  double gauss_diff() const { return gd_; }

  PowerExpr operator*(const PowerExpr& o) const;
  PowerExpr pow(double k) const;
  PowerExpr scaled(double lambda) const;
  /// Same expression with |x| and |y| exchanged.
  PowerExpr swapped() const;
  /// Factors depending on |x| (resp. |y|) alone, with coefficient 1.
  PowerExpr x_factor() const;
  PowerExpr y_factor() const;

  /// Canonical text that parses back to an identical expression.
  std::string to_string() const;

  friend bool operator==(const PowerExpr&, const PowerExpr&) = default;

 private:
  friend class ExprParser;

  double coef_ = 1.0;
  double px_ = 0.0, py_ = 0.0, pd_ = 0.0;
  double gx_ = 0.0, gy_ = 0.0, gd_ = 0.0;
};

}  // namespace fhardy
