#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace rwave {

// Embedded Dormand-Prince 5(4) step controller for two-component systems,
// with FSAL reuse and a standard PI-free accept/reject loop.  Integration
// direction follows the sign of (x1 - x0).
enum class OdeStatus { Done, Event, StepUnderflow };

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  double h_init = 1e-3;
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

template <class Rhs, class Event>
class Dp54 {
 public:
  using Vec = std::array<double, 2>;

  Dp54(Rhs rhs, Event event, OdeOptions opt) : rhs_(rhs), event_(event), opt_(opt) {}

  void start(double x, const Vec& y) {
    x_ = x;
    y_ = y;
    rhs_(x_, y_, k1_);
    h_ = 0.0;
    steps_ = 0;
  }

  double x() const { return x_; }
  const Vec& y() const { return y_; }

  // Advance to x_target (clamping the final step).  Returns Event as soon as
  // the event predicate fires at an accepted step end.
  OdeStatus integrate_to(double x_target) {
    const double dir = x_target >= x_ ? 1.0 : -1.0;
    if (h_ == 0.0) h_ = dir * std::min(opt_.h_init, opt_.h_max);
    if (h_ * dir < 0.0) {
      h_ = -h_;
      rhs_(x_, y_, k1_);  // direction reversal invalidates the FSAL slope
    }
    while (dir * (x_target - x_) > 1e-14 * std::max(1.0, std::abs(x_))) {
      if (++steps_ > opt_.max_steps) return OdeStatus::StepUnderflow;
      // A step size below the loop's arrival tolerance means the controller is
      // stuck (e.g. at a finite-x singularity); report that rather than spin.
      if (std::abs(h_) < 1e-14 * std::max(1.0, std::abs(x_))) return OdeStatus::StepUnderflow;
      double h = h_;
      if (dir * (x_ + h - x_target) > 0.0) h = x_target - x_;

      Vec k2, k3, k4, k5, k6, k7, yt, y5;
      auto stage = [&](Vec& out, std::initializer_list<std::pair<double, const Vec*>> terms) {
        for (std::size_t i = 0; i < 2; ++i) {
          double acc = 0.0;
          for (const auto& [c, k] : terms) acc += c * (*k)[i];
          out[i] = y_[i] + h * acc;
        }
      };
      stage(yt, {{1.0 / 5, &k1_}});
      rhs_(x_ + h / 5, yt, k2);
      stage(yt, {{3.0 / 40, &k1_}, {9.0 / 40, &k2}});
      rhs_(x_ + 3 * h / 10, yt, k3);
      stage(yt, {{44.0 / 45, &k1_}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}});
      rhs_(x_ + 4 * h / 5, yt, k4);
      stage(yt, {{19372.0 / 6561, &k1_},
                 {-25360.0 / 2187, &k2},
                 {64448.0 / 6561, &k3},
                 {-212.0 / 729, &k4}});
      rhs_(x_ + 8 * h / 9, yt, k5);
      stage(yt, {{9017.0 / 3168, &k1_},
                 {-355.0 / 33, &k2},
                 {46732.0 / 5247, &k3},
                 {49.0 / 176, &k4},
                 {-5103.0 / 18656, &k5}});
      rhs_(x_ + h, yt, k6);
      stage(y5, {{35.0 / 384, &k1_},
                 {500.0 / 1113, &k3},
                 {125.0 / 192, &k4},
                 {-2187.0 / 6784, &k5},
                 {11.0 / 84, &k6}});
      rhs_(x_ + h, y5, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < 2; ++i) {
        const double ei = h * (71.0 / 57600 * k1_[i] - 71.0 / 16695 * k3[i] +
                               71.0 / 1920 * k4[i] - 17253.0 / 339200 * k5[i] +
                               22.0 / 525 * k6[i] - 1.0 / 40 * k7[i]);
        const double sk = opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(y5[i]));
        err += (ei / sk) * (ei / sk);
      }
      err = std::sqrt(0.5 * err);

      if (err <= 1.0) {
        x_ += h;
        y_ = y5;
        k1_ = k7;  // FSAL
        if (event_(x_, y_)) return OdeStatus::Event;
      }
      double fac = 0.9 * std::pow(std::max(err, 1e-20), -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      double hn = h * fac;
      if (std::abs(hn) > opt_.h_max) hn = dir * opt_.h_max;
      if (std::abs(hn) < 1e-14 * std::max(1.0, std::abs(x_))) return OdeStatus::StepUnderflow;
      h_ = hn;
    }
    return OdeStatus::Done;
  }

 private:
  Rhs rhs_;
  Event event_;
  OdeOptions opt_;
  double x_ = 0.0;
  double h_ = 0.0;
  Vec y_{};
  Vec k1_{};
  std::size_t steps_ = 0;
};

template <class Rhs, class Event>
Dp54<Rhs, Event> make_dp54(Rhs rhs, Event event, OdeOptions opt = {}) {
  return Dp54<Rhs, Event>(rhs, event, opt);
}

}  // namespace rwave
