#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sphere_feynman/geometry.hpp"
#include "sphere_feynman/quadrature.hpp"

namespace sphere_feynman::geom {

namespace detail {

inline double bessel_i0(double x) {
  const double q = x * x / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// I1(x)/x, regular at x = 0 (value 1/2).
inline double bessel_i1_over_x(double x) {
  const double q = x * x / 4.0;
  double term = 0.5, sum = 0.5;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Chebyshev interpolant on fixed-width pieces; Clenshaw evaluation.
struct PiecewiseChebyshev {
  double lo = 0.0, hi = 1.0, piece_w = 1.0;
  int degree = 0;
  std::vector<std::vector<double>> coeffs;  // one vector per piece

  double eval(double v) const {
    int p = static_cast<int>((v - lo) / piece_w);
    if (p < 0) p = 0;
    if (p >= static_cast<int>(coeffs.size())) p = static_cast<int>(coeffs.size()) - 1;
    const double a = lo + p * piece_w;
    const double u = 2.0 * (v - a) / piece_w - 1.0;
    const std::vector<double>& c = coeffs[p];
    double b1 = 0.0, b2 = 0.0;
    for (int k = degree; k >= 1; --k) {
      const double b0 = 2.0 * u * b1 - b2 + c[k];
      b2 = b1;
      b1 = b0;
    }
    return u * b1 - b2 + c[0];
  }
};

}  // namespace detail

// Smooth cutoff chi(d): 1 on [0, r_flat], 0 on [r_cut, pi].  The bridge is
// specified through its derivative in the phase variable v = d^2/2:
//   dchi/dv = -c * I0(beta sqrt(1-u^2))/I0(beta) * e^{-clamp/(v-vlo)} * e^{-clamp/(vhi-v)}
// with u = (v-v0)/h centered on the bridge.  The Kaiser-shaped core keeps the
// bridge's oscillatory-integral tail below the kernel's intrinsic O(t^2)
// deviation down to slice counts of order 10, which plain exponential
// partition bridges do not (their tails decay only like exp(-c sqrt(1/t))).
class BumpProfile {
 public:
  BumpProfile(double r_flat, double r_cut, double beta = 14.0, double clamp = 0.1)
      : r_flat_(r_flat), r_cut_(r_cut), beta_(beta), clamp_(clamp) {
    if (!(0.0 < r_flat && r_flat < r_cut && r_cut < kPi))
      throw std::invalid_argument("BumpProfile: need 0 < r_flat < r_cut < pi");
    if (!(beta > 0.0) || !(clamp > 0.0))
      throw std::invalid_argument("BumpProfile: beta and clamp must be positive");
    vlo_ = r_flat * r_flat / 2.0;
    vhi_ = r_cut * r_cut / 2.0;
    v0_ = 0.5 * (vlo_ + vhi_);
    h_ = 0.5 * (vhi_ - vlo_);
    i0_beta_ = detail::bessel_i0(beta_);
    margin_ = clamp_ / 700.0;  // e^{-700} underflows; pulse is exactly 0 outside
    build_interpolant();
  }

  static BumpProfile defaults() { return BumpProfile(0.25, 3.05, 14.0, 0.1); }

  double r_flat() const { return r_flat_; }
  double r_cut() const { return r_cut_; }
  double beta() const { return beta_; }
  double clamp() const { return clamp_; }

  double value(double d) const {
    if (d <= r_flat_) return 1.0;
    if (d >= r_cut_) return 0.0;
    double chi = 1.0 - norm_ * anti_.eval(d * d / 2.0);
    if (chi < 0.0) chi = 0.0;
    if (chi > 1.0) chi = 1.0;
    return chi;
  }

  // dchi/dd = dchi/dv * d (exact, not differentiated from the interpolant)
  double deriv(double d) const {
    if (d <= r_flat_ || d >= r_cut_) return 0.0;
    return -norm_ * pulse(d * d / 2.0) * d;
  }

  double second_deriv(double d) const {
    if (d <= r_flat_ || d >= r_cut_) return 0.0;
    const double v = d * d / 2.0;
    return -norm_ * (pulse_deriv(v) * d * d + pulse(v));
  }

  double pulse(double v) const {
    if (v - vlo_ < margin_ || vhi_ - v < margin_) return 0.0;
    const double u = (v - v0_) / h_;
    const double w = 1.0 - u * u;
    const double core = detail::bessel_i0(beta_ * std::sqrt(w > 0.0 ? w : 0.0)) / i0_beta_;
    return core * std::exp(-clamp_ / (v - vlo_)) * std::exp(-clamp_ / (vhi_ - v));
  }

  double pulse_deriv(double v) const {
    if (v - vlo_ < margin_ || vhi_ - v < margin_) return 0.0;
    const double u = (v - v0_) / h_;
    const double w = 1.0 - u * u;
    const double q = std::sqrt(w > 0.0 ? w : 0.0);
    const double core = detail::bessel_i0(beta_ * q) / i0_beta_;
    const double dcore_du = -beta_ * beta_ * u * detail::bessel_i1_over_x(beta_ * q) / i0_beta_;
    const double a = v - vlo_, b = vhi_ - v;
    const double m = std::exp(-clamp_ / a) * std::exp(-clamp_ / b);
    const double dm = m * (clamp_ / (a * a) - clamp_ / (b * b));
    return dcore_du / h_ * m + core * dm;
  }

 private:
  void build_interpolant() {
    const int n_pieces = 48;
    const int n_cheb = 24;  // interpolation points per piece, degree 23
    anti_.lo = vlo_;
    anti_.hi = vhi_;
    anti_.piece_w = (vhi_ - vlo_) / n_pieces;
    anti_.degree = n_cheb - 1;
    anti_.coeffs.assign(n_pieces, std::vector<double>(n_cheb, 0.0));

    const quad::GaussRule& g = quad::gauss_rule(16);
    auto segment = [&](double a, double b) {
      double s = 0.0;
      for (std::size_t k = 0; k < g.nodes.size(); ++k)
        s += g.weights[k] * pulse(0.5 * (a + b) + 0.5 * (b - a) * g.nodes[k]);
      return s * 0.5 * (b - a);
    };

    // running antiderivative sampled at Chebyshev points of every piece
    double carried = 0.0;
    std::vector<double> samples(n_cheb);
    for (int p = 0; p < n_pieces; ++p) {
      const double a = vlo_ + p * anti_.piece_w;
      double prev = a, acc = carried;
      for (int j = n_cheb - 1; j >= 0; --j) {  // ascending x as j decreases
        const double u = std::cos(kPi * (j + 0.5) / n_cheb);
        const double x = a + 0.5 * (u + 1.0) * anti_.piece_w;
        acc += segment(prev, x);
        samples[j] = acc;
        prev = x;
      }
      carried += segment(a, a + anti_.piece_w);
      for (int k = 0; k < n_cheb; ++k) {
        double s = 0.0;
        for (int j = 0; j < n_cheb; ++j)
          s += samples[j] * std::cos(kPi * k * (j + 0.5) / n_cheb);
        anti_.coeffs[p][k] = (k == 0 ? 1.0 : 2.0) * s / n_cheb;
      }
    }
    norm_ = 1.0 / carried;
  }

  double r_flat_, r_cut_, beta_, clamp_;
  double vlo_, vhi_, v0_, h_, i0_beta_, margin_;
  double norm_ = 1.0;
  detail::PiecewiseChebyshev anti_;
};

inline double bump(const BumpProfile& profile, double d) { return profile.value(d); }
inline double bump_deriv(const BumpProfile& profile, double d) { return profile.deriv(d); }
inline double bump_second_deriv(const BumpProfile& profile, double d) {
  return profile.second_deriv(d);
}

}  // namespace sphere_feynman::geom
