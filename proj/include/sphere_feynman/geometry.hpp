#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sphere_feynman::geom {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPoleEps = 1e-6;  // default antipode rejection margin

struct Point3 {
  double x = 0.0, y = 0.0, z = 1.0;

  static Point3 from_spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
  static Point3 normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    return {x / n, y / n, z / n};
  }
  double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
  bool is_unit(double tol = 1e-12) const {
    return std::abs(x * x + y * y + z * z - 1.0) <= tol;
  }
};

inline double geodesic_distance(const Point3& p, const Point3& q) {
  double c = p.dot(q);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

inline double action(double t, double d) {
  if (t == 0.0) throw std::invalid_argument("action: t must be nonzero");
  return d * d / (2.0 * t);
}

// d / sin d, with the short series below 1e-4 to avoid the 0/0 evaluation.
inline double d_over_sin(double d) {
  if (d < 1e-4) {
    const double d2 = d * d;
    return 1.0 + d2 / 6.0 + 7.0 * d2 * d2 / 360.0;
  }
  return d / std::sin(d);
}

// (d^2 - sin^2 d) / (d^2 sin^2 d); tends to 1/3 at d = 0.
inline double cancellation_ratio(double d) {
  if (d < 1e-4) return 1.0 / 3.0 + d * d / 15.0;
  const double s = std::sin(d);
  return (d * d - s * s) / (d * d * s * s);
}

inline double van_vleck(double t, double d, double pole_eps = kPoleEps) {
  if (t == 0.0) throw std::invalid_argument("van_vleck: t must be nonzero");
  if (d < 0.0 || d >= kPi - pole_eps)
    throw std::invalid_argument("van_vleck: d out of [0, pi - pole_eps) (antipodal divergence)");
  return d_over_sin(d) / (t * t);
}

namespace detail {
inline double action_spherical(double t, double t1, double p1, double t2, double p2) {
  const double c = std::sin(t1) * std::sin(t2) * std::cos(p1 - p2) +
                   std::cos(t1) * std::cos(t2);
  const double cc = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
  const double d = std::acos(cc);
  return d * d / (2.0 * t);
}
}  // namespace detail

// Appendix-style check: central finite differences of the mixed action
// Hessian in (theta1, phi1) x (theta2, phi2), 2x2 determinant, divided by
// the metric factors sin(theta1) sin(theta2).
inline double van_vleck_numeric(double t, double theta1, double phi1, double theta2,
                                double phi2, double h) {
  if (t == 0.0) throw std::invalid_argument("van_vleck_numeric: t must be nonzero");
  if (std::sin(theta1) < 0.1 || std::sin(theta2) < 0.1)
    throw std::invalid_argument("van_vleck_numeric: points too close to coordinate poles");
  const double d = std::acos(std::min(
      1.0, std::max(-1.0, std::sin(theta1) * std::sin(theta2) * std::cos(phi1 - phi2) +
                              std::cos(theta1) * std::cos(theta2))));
  if (d < 0.05 || d > kPi - 0.05)
    throw std::invalid_argument("van_vleck_numeric: points (nearly) coincident or antipodal");

  auto mixed = [&](int ia, int ib) {
    double v[4] = {theta1, phi1, theta2, phi2};
    auto at = [&](double da, double db) {
      double w[4] = {v[0], v[1], v[2], v[3]};
      w[ia] += da;
      w[ib] += db;
      return detail::action_spherical(t, w[0], w[1], w[2], w[3]);
    };
    return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
  };
  const double s00 = mixed(0, 2), s01 = mixed(0, 3);
  const double s10 = mixed(1, 2), s11 = mixed(1, 3);
  return (s00 * s11 - s01 * s10) / (std::sin(theta1) * std::sin(theta2));
}

// Kernel of the slice operator before the bump cutoff.  The amplitude is
// kept real positive; the sign of the 1/t prefactor lives in the phase
// (+pi for t < 0).  Phase = d^2/(2t) + t/6, the t/6 being R t/12 with R = 2.
struct KernelValue {
  double amplitude = 0.0;
  double phase = 0.0;
  std::complex<double> value;
};

inline KernelValue kernel(double t, double d, double pole_eps = kPoleEps) {
  if (t == 0.0) throw std::invalid_argument("kernel: t must be nonzero");
  if (d < 0.0 || d >= kPi - pole_eps)
    throw std::invalid_argument("kernel: d out of [0, pi - pole_eps)");
  KernelValue k;
  k.amplitude = std::sqrt(d_over_sin(d)) / std::abs(t);
  k.phase = d * d / (2.0 * t) + t / 6.0 + (t < 0.0 ? kPi : 0.0);
  k.value = std::polar(k.amplitude, k.phase);
  return k;
}

// Residual bracket 1/8 + (d^2 - sin^2 d)/(8 d^2 sin^2 d); 1/6 at d = 0.
inline double residual_bracket(double d) {
  return 0.125 + cancellation_ratio(d) / 8.0;
}

// Right side of the free-kernel identity:
// (i d/dt + Laplacian/2) Khat = (1/t) sqrt(d/sin d) * bracket * e^{i d^2/2t}.
inline std::complex<double> pde_residual_analytic(double t, double d) {
  if (t == 0.0) throw std::invalid_argument("pde_residual_analytic: t must be nonzero");
  const double amp = std::sqrt(d_over_sin(d)) / t;
  return amp * residual_bracket(d) * std::polar(1.0, d * d / (2.0 * t));
}

// Khat itself (no curvature phase), signed 1/t prefactor.
inline std::complex<double> kernel_free(double t, double d) {
  if (t == 0.0) throw std::invalid_argument("kernel_free: t must be nonzero");
  return (std::sqrt(d_over_sin(d)) / t) * std::polar(1.0, d * d / (2.0 * t));
}

}  // namespace sphere_feynman::geom
