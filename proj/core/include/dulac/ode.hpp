#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace dulac {

template <std::size_t N>
using State = std::array<double, N>;

/// Dormand-Prince 5(4) with FSAL and the standard continuous extension, for
/// autonomous systems y' = f(y). Integrates forward or backward depending on
/// the sign passed to the constructor.
template <std::size_t N, class F>
class DormandPrince {
 public:
  DormandPrince(F f, const State<N>& y0, double t0, double direction, double atol, double rtol,
                long max_steps = 2'000'000)
      : f_(std::move(f)), t_(t0), y_(y0), dir_(direction < 0 ? -1.0 : 1.0), atol_(atol), rtol_(rtol),
        max_steps_(max_steps) {
    k1_ = f_(y_);
    h_ = initial_step();
    t_prev_ = t_;
    y_prev_ = y_;
  }

  double t() const { return t_; }
  const State<N>& y() const { return y_; }
  double t_prev() const { return t_prev_; }
  const State<N>& y_prev() const { return y_prev_; }
  /// Right-hand side at the current state.
  const State<N>& derivative() const { return k1_; }
  /// Local error estimate (scaled, <= 1 when accepted) of the last step.
  double last_error() const { return last_err_; }
  long steps() const { return steps_; }

  /// Advances by one accepted step, never past t_end. Returns false when the
  /// step size collapses, the state stops being finite, or the step budget
  /// runs out.
  bool step(double t_end) {
    if (steps_ >= max_steps_) return false;
    for (int attempt = 0; attempt < 100; ++attempt) {
      double h = std::min(std::abs(h_), std::abs(t_end - t_));
      if (h <= 0.0) return false;
      const double min_h = 1e-14 * std::max(1.0, std::abs(t_));
      if (h < min_h && std::abs(t_end - t_) > min_h) return false;
      const double hs = dir_ * h;

      State<N> k2, k3, k4, k5, k6, k7, y1, tmp;
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + hs * (a21 * k1_[i]);
      k2 = f_(tmp);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + hs * (a31 * k1_[i] + a32 * k2[i]);
      k3 = f_(tmp);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + hs * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
      k4 = f_(tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + hs * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      k5 = f_(tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + hs * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      k6 = f_(tmp);
      for (std::size_t i = 0; i < N; ++i)
        y1[i] = y_[i] + hs * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      k7 = f_(y1);

      double err = 0.0;
      bool finite = true;
      for (std::size_t i = 0; i < N; ++i) {
        const double e = hs * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y1[i]));
        err += (e / sc) * (e / sc);
        finite = finite && std::isfinite(y1[i]);
      }
      err = std::sqrt(err / static_cast<double>(N));
      if (!finite || !std::isfinite(err)) {
        h_ = 0.25 * h;
        continue;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err > 1.0) {
        h_ = h * std::max(0.2, factor);
        continue;
      }
      const bool clipped = h < std::abs(h_);
      // Dense-output coefficients for the accepted step.
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = y1[i] - y_[i];
        const double bspl = hs * k1_[i] - dy;
        r1_[i] = y_[i];
        r2_[i] = dy;
        r3_[i] = bspl;
        r4_[i] = dy - hs * k7[i] - bspl;
        r5_[i] = hs * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t_prev_ = t_;
      y_prev_ = y_;
      h_last_ = hs;
      t_ = (std::abs(t_end - (t_ + hs)) <= 1e-15 * std::max(1.0, std::abs(t_end))) ? t_end : t_ + hs;
      y_ = y1;
      k1_ = k7;
      last_err_ = err;
      ++steps_;
      if (!clipped) h_ = h * factor;
      return true;
    }
    return false;
  }

  /// Continuous extension on the last accepted step; t in [t_prev, t].
  State<N> dense(double t) const {
    if (h_last_ == 0.0) return y_;
    const double th = (t - t_prev_) / h_last_;
    const double th1 = 1.0 - th;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = r1_[i] + th * (r2_[i] + th1 * (r3_[i] + th * (r4_[i] + th1 * r5_[i])));
    return out;
  }

 private:
  double norm_scaled(const State<N>& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = atol_ + rtol_ * std::abs(y_[i]);
      s += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(N));
  }

  double initial_step() {
    const double d0 = norm_scaled(y_);
    const double d1n = norm_scaled(k1_);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    State<N> y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + dir_ * h0 * k1_[i];
    const State<N> f1 = f_(y1);
    State<N> df;
    for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - k1_[i];
    const double d2 = norm_scaled(df) / h0;
    const double m = std::max(d1n, d2);
    const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
    const double h = std::min(100.0 * h0, h1);
    return std::isfinite(h) && h > 0.0 ? h : 1e-6;
  }

  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  F f_;
  double t_;
  State<N> y_;
  double dir_;
  double atol_;
  double rtol_;
  long max_steps_;
  double h_ = 0.0;
  double h_last_ = 0.0;
  double t_prev_ = 0.0;
  State<N> y_prev_{};
  State<N> k1_{};
  State<N> r1_{}, r2_{}, r3_{}, r4_{}, r5_{};
  double last_err_ = 0.0;
  long steps_ = 0;
};

}  // namespace dulac
