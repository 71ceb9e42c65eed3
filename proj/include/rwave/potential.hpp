#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace rwave {

// Radial potential coefficient V(r).  Built-in families are closed-form; a
// user table is linearly interpolated and clamped to zero beyond its last
// node.  Every potential carries a decay exponent beta > 2 and a precomputed
// bound on sup (1+r)^beta |V(r)|.
class Potential {
 public:
  enum class Kind { Zero, ManufacturedStar, Gaussian, PowerWell, Scaled, Tabulated };

  static Potential zero();
  static Potential manufactured_star();                       // 4 (1+r^2)^-2
  static Potential gaussian(double alpha, double sigma);      // alpha exp(-(r/sigma)^2)
  static Potential power_well(double alpha, double beta);     // alpha (1+r)^-beta, beta > 2
  static Potential scaled(double alpha, Potential base);      // alpha * base(r), alpha >= 0
  static Potential tabulated(std::vector<double> r, std::vector<double> value);
  static Potential tabulated_from_file(const std::string& path);

  double operator()(double r) const;
  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  double y_norm_bound() const { return y_bound_; }
  bool nonnegative() const { return nonneg_; }
  double alpha() const { return alpha_; }
  double sigma() const { return sigma_; }
  const Potential* base() const { return base_.get(); }

  std::string describe() const;

 private:
  Potential() = default;

  Kind kind_ = Kind::Zero;
  double alpha_ = 0.0;
  double sigma_ = 1.0;
  double beta_ = 4.0;
  double y_bound_ = 0.0;
  bool nonneg_ = true;
  std::shared_ptr<const Potential> base_;   // for Scaled
  std::vector<double> tab_r_, tab_v_;       // for Tabulated
};

// Numerical weighted sup-norm: sup over the probe set {0} union log-spaced
// points of [1e-3, 1e3] of (1+r)^beta |V(r)|.
double y_norm(const Potential& V);

// Closed-form steady pair: u*(r) = (1+r^2)^(-1/2) solves the steady equation
// with V*(r) = 4 (1+r^2)^(-2) and has spatial tail u* ~ c/r with c = 1.
struct ManufacturedPair {
  Potential V;
  double c = 1.0;
  static double u(double r) { return 1.0 / std::sqrt(1.0 + r * r); }
  static double du(double r) {
    const double q = 1.0 + r * r;
    return -r / (q * std::sqrt(q));
  }
};

ManufacturedPair manufactured_pair();

}  // namespace rwave
