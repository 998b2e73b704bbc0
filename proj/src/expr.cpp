#include "fhardy/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "fhardy/error.hpp"

namespace fhardy {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  PowerExpr parse() {
    PowerExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("weight expression '" + s_ + "': " + msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  bool at_number() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+';
  }

  double number() {
    skip();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    if (!std::isfinite(v)) fail("non-finite number");
    return v;
  }

  PowerExpr expr() {
    PowerExpr e = term();
    for (;;) {
      if (eat("*"))
        e = e * term();
      else if (eat("/"))
        e = e * term().pow(-1.0);
      else
        return e;
    }
  }

  PowerExpr term() {
    PowerExpr a = atom();
    if (eat("^")) {
      double k;
      if (eat("(")) {
        k = number();
        expect(")");
      } else {
        k = number();
      }
      a = a.pow(k);
    }
    return a;
  }

  // 0 for |x|, 1 for |y|, 2 for |y^-1x|
  int variable() {
    if (eat("|x|")) return 0;
    if (eat("|y|")) return 1;
    if (eat("|y^-1x|") || eat("|y^{-1}x|")) return 2;
    fail("expected |x|, |y| or |y^-1x|");
  }

  PowerExpr atom() {
    if (eat("(")) {
      PowerExpr e = expr();
      expect(")");
      return e;
    }
    if (eat("exp(")) {
      expect("-");
      double c = 1.0;
      if (at_number()) {
        c = number();
        expect("*");
      }
      const int v = variable();
      expect("^");
      if (number() != 2.0) fail("only squared norms are allowed inside exp");
      expect(")");
      if (c < 0.0) fail("exp factor must decay");
      PowerExpr e;
      (v == 0 ? e.gx_ : v == 1 ? e.gy_ : e.gd_) = c;
      return e;
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '|') {
      const int v = variable();
      PowerExpr e;
      (v == 0 ? e.px_ : v == 1 ? e.py_ : e.pd_) = 1.0;
      return e;
    }
    if (at_number()) {
      const double c = number();
      if (!(c > 0.0)) fail("coefficients must be positive");
      return PowerExpr::constant(c);
    }
    fail("unexpected token");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

PowerExpr PowerExpr::parse(const std::string& text) { return ExprParser(text).parse(); }

PowerExpr PowerExpr::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("weight coefficient must be positive and finite");
  PowerExpr e;
  e.coef_ = c;
  return e;
}

PowerExpr PowerExpr::power_of_x(double a, double coef) {
  PowerExpr e = constant(coef);
  e.px_ = a;
  return e;
}

double PowerExpr::log_eval(double nx, double ny, double nd) const {
  double v = std::log(coef_);
  if (px_ != 0.0) v += px_ * std::log(nx);
  if (py_ != 0.0) v += py_ * std::log(ny);
  if (pd_ != 0.0) v += pd_ * std::log(nd);
  if (gx_ != 0.0) v -= gx_ * nx * nx;
  if (gy_ != 0.0) v -= gy_ * ny * ny;
  if (gd_ != 0.0) v -= gd_ * nd * nd;
  return v;
}

PowerExpr PowerExpr::operator*(const PowerExpr& o) const {
  PowerExpr e;
  e.coef_ = coef_ * o.coef_;
  e.px_ = px_ + o.px_;
  e.py_ = py_ + o.py_;
  e.pd_ = pd_ + o.pd_;
  e.gx_ = gx_ + o.gx_;
  e.gy_ = gy_ + o.gy_;
  e.gd_ = gd_ + o.gd_;
  return e;
}

PowerExpr PowerExpr::pow(double k) const {
  PowerExpr e;
  e.coef_ = std::pow(coef_, k);
  e.px_ = px_ * k;
  e.py_ = py_ * k;
  e.pd_ = pd_ * k;
  e.gx_ = gx_ * k;
  e.gy_ = gy_ * k;
  e.gd_ = gd_ * k;
  if (e.gx_ < 0.0 || e.gy_ < 0.0 || e.gd_ < 0.0)
    throw ConfigError("negative power of a Gaussian factor grows without bound");
  return e;
}

PowerExpr PowerExpr::scaled(double lambda) const {
  PowerExpr e = *this;
  e.coef_ *= lambda;
  if (!(e.coef_ > 0.0)) throw ConfigError("weight scale must be positive");
  return e;
}

PowerExpr PowerExpr::swapped() const {
  PowerExpr e = *this;
  std::swap(e.px_, e.py_);
  std::swap(e.gx_, e.gy_);
  return e;
}

PowerExpr PowerExpr::x_factor() const {
  PowerExpr e;
  e.px_ = px_;
  e.gx_ = gx_;
  return e;
}

PowerExpr PowerExpr::y_factor() const {
  PowerExpr e;
  e.py_ = py_;
  e.gy_ = gy_;
  return e;
}

std::string PowerExpr::to_string() const {
  std::string out;
  auto add = [&](const std::string& t) {
    if (!out.empty()) out += "*";
    out += t;
  };
  if (coef_ != 1.0) add(fmt(coef_));
  if (px_ != 0.0) add(px_ == 1.0 ? "|x|" : "|x|^" + fmt(px_));
  if (py_ != 0.0) add(py_ == 1.0 ? "|y|" : "|y|^" + fmt(py_));
  if (pd_ != 0.0) add(pd_ == 1.0 ? "|y^-1x|" : "|y^-1x|^" + fmt(pd_));
  if (gx_ != 0.0) add("exp(-" + fmt(gx_) + "*|x|^2)");
  if (gy_ != 0.0) add("exp(-" + fmt(gy_) + "*|y|^2)");
  if (gd_ != 0.0) add("exp(-" + fmt(gd_) + "*|y^-1x|^2)");
  return out.empty() ? "1" : out;
}

}  // namespace fhardy
