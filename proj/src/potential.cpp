#include "rwave/potential.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rwave {

namespace {

// Probe set shared by y_norm and the tabulated-bound computation.
std::vector<double> probe_radii() {
  std::vector<double> probes;
  probes.push_back(0.0);
  const int m = 600;
  const double lo = std::log(1e-3), hi = std::log(1e3);
  for (int i = 0; i <= m; ++i) probes.push_back(std::exp(lo + (hi - lo) * i / m));
  return probes;
}

double weighted_sup(const std::vector<double>& radii, double beta,
                    const std::function<double(double)>& V) {
  double s = 0.0;
  for (double r : radii) s = std::max(s, std::pow(1.0 + r, beta) * std::abs(V(r)));
  return s;
}

}  // namespace

Potential Potential::zero() {
  Potential p;
  p.kind_ = Kind::Zero;
  p.beta_ = 4.0;
  p.y_bound_ = 0.0;
  return p;
}

Potential Potential::manufactured_star() {
  Potential p;
  p.kind_ = Kind::ManufacturedStar;
  p.beta_ = 4.0;
  // sup (1+r)^4 * 4(1+r^2)^-2 is attained at r = 1 with value 16.
  p.y_bound_ = 16.0;
  return p;
}

Potential Potential::gaussian(double alpha, double sigma) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("Potential::gaussian: alpha must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("Potential::gaussian: sigma must be > 0");
  Potential p;
  p.kind_ = Kind::Gaussian;
  p.alpha_ = alpha;
  p.sigma_ = sigma;
  p.beta_ = 4.0;
  double s = 0.0;
  const int m = 200000;
  const double hi = 12.0 * sigma + 12.0;
  for (int i = 0; i <= m; ++i) {
    const double r = hi * i / m;
    const double q = r / sigma;
    s = std::max(s, std::pow(1.0 + r, 4.0) * alpha * std::exp(-q * q));
  }
  p.y_bound_ = s * (1.0 + 1e-10);
  return p;
}

Potential Potential::power_well(double alpha, double beta) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("Potential::power_well: alpha must be >= 0");
  if (!(beta > 2.0)) throw std::invalid_argument("Potential::power_well: beta must be > 2");
  Potential p;
  p.kind_ = Kind::PowerWell;
  p.alpha_ = alpha;
  p.beta_ = beta;
  // (1+r)^beta * alpha (1+r)^-beta is identically alpha.
  p.y_bound_ = alpha;
  return p;
}

Potential Potential::scaled(double alpha, Potential base) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("Potential::scaled: alpha must be >= 0");
  Potential p;
  p.kind_ = Kind::Scaled;
  p.alpha_ = alpha;
  p.beta_ = base.beta();
  p.y_bound_ = alpha * base.y_norm_bound();
  p.nonneg_ = base.nonnegative();
  p.base_ = std::make_shared<Potential>(std::move(base));
  return p;
}

Potential Potential::tabulated(std::vector<double> r, std::vector<double> value) {
  if (r.size() != value.size() || r.size() < 2)
    throw std::invalid_argument("Potential::tabulated: need matching columns with >= 2 rows");
  if (r.front() != 0.0)
    throw std::invalid_argument("Potential::tabulated: radii must start at 0");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1]))
      throw std::invalid_argument("Potential::tabulated: radii must be strictly increasing");
  Potential p;
  p.kind_ = Kind::Tabulated;
  p.beta_ = 4.0;  // the table is clamped to 0 beyond its range, so any decay exponent holds
  p.tab_r_ = std::move(r);
  p.tab_v_ = std::move(value);
  p.nonneg_ = std::all_of(p.tab_v_.begin(), p.tab_v_.end(), [](double x) { return x >= 0.0; });
  std::vector<double> radii = probe_radii();
  radii.insert(radii.end(), p.tab_r_.begin(), p.tab_r_.end());
  p.y_bound_ =
      weighted_sup(radii, p.beta_, [&p](double x) { return p(x); }) * (1.0 + 1e-10) + 1e-300;
  return p;
}

Potential Potential::tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open potential table: " + path);
  std::vector<double> r, v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two columns 'r value'");
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected exactly two columns 'r value'");
    r.push_back(a);
    v.push_back(b);
  }
  try {
    return tabulated(std::move(r), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

double Potential::operator()(double r) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::ManufacturedStar: {
      const double q = 1.0 + r * r;
      return 4.0 / (q * q);
    }
    case Kind::Gaussian: {
      const double q = r / sigma_;
      return alpha_ * std::exp(-q * q);
    }
    case Kind::PowerWell:
      return alpha_ * std::pow(1.0 + r, -beta_);
    case Kind::Scaled:
      return alpha_ * (*base_)(r);
    case Kind::Tabulated: {
      if (r <= tab_r_.front()) return tab_v_.front();
      if (r >= tab_r_.back()) return 0.0;
      const auto it = std::upper_bound(tab_r_.begin(), tab_r_.end(), r);
      const std::size_t i = static_cast<std::size_t>(it - tab_r_.begin());
      const double t = (r - tab_r_[i - 1]) / (tab_r_[i] - tab_r_[i - 1]);
      return tab_v_[i - 1] + t * (tab_v_[i] - tab_v_[i - 1]);
    }
  }
  return 0.0;
}

std::string Potential::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero:
      os << "zero";
      break;
    case Kind::ManufacturedStar:
      os << "manufactured";
      break;
    case Kind::Gaussian:
      os << "gaussian(alpha=" << alpha_ << ", sigma=" << sigma_ << ")";
      break;
    case Kind::PowerWell:
      os << "powerwell(alpha=" << alpha_ << ", beta=" << beta_ << ")";
      break;
    case Kind::Scaled:
      os << "scaled(alpha=" << alpha_ << ", base=" << base_->describe() << ")";
      break;
    case Kind::Tabulated:
      os << "tabulated(" << tab_r_.size() << " rows, r <= " << tab_r_.back() << ")";
      break;
  }
  return os.str();
}

double y_norm(const Potential& V) {
  return weighted_sup(probe_radii(), V.beta(), [&V](double r) { return V(r); });
}

ManufacturedPair manufactured_pair() {
  ManufacturedPair mp{Potential::manufactured_star(), 1.0};
  return mp;
}

}  // namespace rwave
