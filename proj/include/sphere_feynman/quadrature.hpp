#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sphere_feynman::quad {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Nodes/weights by Newton iteration on P_n; good to machine precision for
// the orders used here (<= a few hundred).
inline GaussRule make_gauss_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss rule order must be >= 1");
  GaussRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= order; ++l) {
        const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[order - 1 - i] = x;
    r.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

inline const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss_rule(order)).first;
  return it->second;
}

struct PanelRule {
  int order = 10;
  int panels = 1;
  double a = 0.0;
  double b = 1.0;
};

// Oscillatory integrand spec: phase theta^2/(2 t_phase) on [0, domain_cut].
struct OscillatorySpec {
  double t_phase = 1.0;
  double domain_cut = 3.0;

  double phase_sweep() const { return domain_cut * domain_cut / (2.0 * std::abs(t_phase)); }
};

using Integrand = std::function<std::complex<double>(double)>;

inline std::complex<double> integrate_1d(const Integrand& f, const PanelRule& rule) {
  if (rule.order < 2 || rule.panels < 1 || !(rule.a < rule.b))
    throw std::invalid_argument("integrate_1d: order >= 2, panels >= 1, a < b required");
  const GaussRule& g = gauss_rule(rule.order);
  const double hp = (rule.b - rule.a) / rule.panels;
  std::complex<double> sum = 0.0;
  for (int p = 0; p < rule.panels; ++p) {
    const double mid = rule.a + (p + 0.5) * hp;
    std::complex<double> psum = 0.0;
    for (int k = 0; k < rule.order; ++k) {
      const double x = mid + 0.5 * hp * g.nodes[k];
      const std::complex<double> v = f(x);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "integrate_1d: non-finite integrand sample at x = " << x
            << " (panel " << p << ")";
        throw std::runtime_error(msg.str());
      }
      psum += g.weights[k] * v;
    }
    sum += psum * (0.5 * hp);
  }
  return sum;
}

struct RefinedIntegral {
  std::complex<double> value;  // from the doubled rule
  double error;                // |doubled - coarse|
};

// Self-refinement estimate: the panel-doubled value, with the difference to
// the coarse value as the runtime error estimate.
inline RefinedIntegral integrate_1d_refined(const Integrand& f, const PanelRule& rule) {
  const std::complex<double> coarse = integrate_1d(f, rule);
  PanelRule fine = rule;
  fine.panels *= 2;
  const std::complex<double> refined = integrate_1d(f, fine);
  return {refined, std::abs(refined - coarse)};
}

// Panels >= ceil(kappa (Phi/2pi + l)), kappa = 8, order 10, floor 8.
inline PanelRule choose_panels(const OscillatorySpec& spec, int l) {
  const double pi = 3.14159265358979323846;
  const double kappa = 8.0;
  const double phi = spec.phase_sweep();
  const int panels =
      std::max(8, static_cast<int>(std::ceil(kappa * (phi / (2.0 * pi) + l))));
  return PanelRule{10, panels, 0.0, spec.domain_cut};
}

}  // namespace sphere_feynman::quad
