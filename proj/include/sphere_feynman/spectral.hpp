#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "sphere_feynman/geometry.hpp"
#include "sphere_feynman/quadrature.hpp"

namespace sphere_feynman::spectral {

using Complex = std::complex<double>;

inline double legendre_p(int l, double x) {
  if (l < 0) throw std::invalid_argument("legendre_p: l must be >= 0");
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline void legendre_all(int l_max, double x, std::vector<double>& out) {
  out.resize(l_max + 1);
  out[0] = 1.0;
  if (l_max == 0) return;
  out[1] = x;
  for (int l = 2; l <= l_max; ++l)
    out[l] = ((2 * l - 1) * x * out[l - 1] - (l - 1) * out[l - 2]) / l;
}

namespace detail {

constexpr std::size_t plm_idx(int l, int m) {
  return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}

// Fully normalized associated Legendre P̄_l^m (Condon-Shortley included):
// Y_{l,m} = P̄_l^m(cos θ) e^{imφ} is orthonormal on the sphere, m >= 0.
inline void plm_all(int l_max, double cos_t, double sin_t, std::vector<double>& out) {
  out.resize(plm_idx(l_max, l_max) + 1);
  double pmm = std::sqrt(1.0 / (4.0 * geom::kPi));
  for (int m = 0; m <= l_max; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_t;
    out[plm_idx(m, m)] = pmm;
    if (m == l_max) break;
    double p_prev = pmm;
    double p_cur = std::sqrt(2.0 * m + 3.0) * cos_t * pmm;
    out[plm_idx(m + 1, m)] = p_cur;
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) /
                                 (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      const double p_next = a * (cos_t * p_cur - b * p_prev);
      p_prev = p_cur;
      p_cur = p_next;
      out[plm_idx(l, m)] = p_cur;
    }
  }
}

}  // namespace detail

inline Complex sph_harm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("sph_harm: need 0 <= |m| <= l");
  const int am = std::abs(m);
  const double ct = std::cos(theta), st = std::sin(theta);
  double pmm = std::sqrt(1.0 / (4.0 * geom::kPi));
  for (int k = 1; k <= am; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
  double p = pmm;
  if (l > am) {
    double p_prev = pmm;
    p = std::sqrt(2.0 * am + 3.0) * ct * pmm;
    for (int k = am + 2; k <= l; ++k) {
      const double a = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - am * am));
      const double b = std::sqrt((static_cast<double>(k - 1) * (k - 1) - am * am) /
                                 (4.0 * static_cast<double>(k - 1) * (k - 1) - 1.0));
      const double p_next = a * (ct * p - b * p_prev);
      p_prev = p;
      p = p_next;
    }
  }
  const Complex y = p * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

// Band-limited function as coefficients a_{l,m}; storage index l^2 + l + m.
struct SpectralState {
  int l_max = 0;
  std::vector<Complex> coeffs;  // (l_max+1)^2 entries

  SpectralState() : coeffs(1, Complex{0.0, 0.0}) {}
  explicit SpectralState(int lmax)
      : l_max(lmax), coeffs(static_cast<std::size_t>(lmax + 1) * (lmax + 1), Complex{0.0, 0.0}) {
    if (lmax < 0) throw std::invalid_argument("SpectralState: l_max must be >= 0");
  }

  static std::size_t idx(int l, int m) { return static_cast<std::size_t>(l) * l + l + m; }
  Complex& at(int l, int m) { return coeffs[idx(l, m)]; }
  const Complex& at(int l, int m) const { return coeffs[idx(l, m)]; }

  double norm() const {
    double s = 0.0;
    for (const Complex& c : coeffs) s += std::norm(c);
    return std::sqrt(s);
  }
};

inline void to_json(nlohmann::json& j, const SpectralState& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Complex& c : s.coeffs) arr.push_back({c.real(), c.imag()});
  j = nlohmann::json{{"l_max", s.l_max}, {"coeffs", std::move(arr)}};
}

inline void from_json(const nlohmann::json& j, SpectralState& s) {
  s = SpectralState(j.at("l_max").get<int>());
  const auto& arr = j.at("coeffs");
  if (arr.size() != s.coeffs.size())
    throw std::invalid_argument("SpectralState: coeffs length does not match l_max");
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    s.coeffs[i] = Complex(arr[i][0].get<double>(), arr[i][1].get<double>());
}

// Gauss-Legendre in cos(theta) x uniform in phi; weights sum to 4 pi.
struct SphereGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> thetas;         // per ring
  std::vector<double> cos_thetas;
  std::vector<double> sin_thetas;
  std::vector<double> theta_weights;  // Gauss-Legendre weights, sum 2
  double phi_weight = 0.0;            // 2 pi / n_phi

  SphereGrid(int nt, int np) : n_theta(nt), n_phi(np) {
    if (nt < 1 || np < 1) throw std::invalid_argument("SphereGrid: need n_theta, n_phi >= 1");
    const quad::GaussRule& g = quad::gauss_rule(nt);
    thetas.resize(nt);
    cos_thetas.resize(nt);
    sin_thetas.resize(nt);
    theta_weights = g.weights;
    for (int i = 0; i < nt; ++i) {
      cos_thetas[i] = g.nodes[i];
      thetas[i] = std::acos(g.nodes[i]);
      sin_thetas[i] = std::sin(thetas[i]);
    }
    phi_weight = 2.0 * geom::kPi / np;
  }

  std::size_t size() const { return static_cast<std::size_t>(n_theta) * n_phi; }
  double phi(int ip) const { return 2.0 * geom::kPi * ip / n_phi; }
  double weight(std::size_t node) const { return theta_weights[node / n_phi] * phi_weight; }
  double theta(std::size_t node) const { return thetas[node / n_phi]; }

  bool exact_for(int l_max) const { return n_theta >= l_max + 1 && n_phi >= 2 * l_max + 1; }
};

struct GridFunction {
  const SphereGrid* grid = nullptr;
  std::vector<Complex> values;

  explicit GridFunction(const SphereGrid& g)
      : grid(&g), values(g.size(), Complex{0.0, 0.0}) {}

  double norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      s += grid->weight(i) * std::norm(values[i]);
    return std::sqrt(s);
  }
  double sup_norm() const {
    double s = 0.0;
    for (const Complex& v : values) s = std::max(s, std::abs(v));
    return s;
  }
};

// Forward transform; exact for band-limited input when the grid satisfies
// n_theta >= l_max+1 and n_phi >= 2 l_max+1.
inline SpectralState analyze(const GridFunction& f, int l_max) {
  const SphereGrid& g = *f.grid;
  if (!g.exact_for(l_max))
    throw std::invalid_argument("analyze: grid too coarse for requested l_max");
  SpectralState s(l_max);
  std::vector<double> plm;
  std::vector<Complex> ring_m(2 * l_max + 1);
  for (int it = 0; it < g.n_theta; ++it) {
    // phi sums G_m = sum_ip f e^{-im phi} w_phi for m in [-l_max, l_max]
    for (int m = -l_max; m <= l_max; ++m) {
      Complex acc = 0.0;
      const Complex step = std::polar(1.0, -m * 2.0 * geom::kPi / g.n_phi);
      Complex w{1.0, 0.0};
      for (int ip = 0; ip < g.n_phi; ++ip) {
        acc += f.values[static_cast<std::size_t>(it) * g.n_phi + ip] * w;
        w *= step;
      }
      ring_m[m + l_max] = acc * g.phi_weight;
    }
    detail::plm_all(l_max, g.cos_thetas[it], g.sin_thetas[it], plm);
    const double wt = g.theta_weights[it];
    for (int l = 0; l <= l_max; ++l) {
      for (int m = -l; m <= l; ++m) {
        const int am = std::abs(m);
        const double sign = (m < 0 && am % 2 != 0) ? -1.0 : 1.0;
        s.at(l, m) += sign * plm[detail::plm_idx(l, am)] * wt * ring_m[m + l_max];
      }
    }
  }
  return s;
}

inline GridFunction synthesize(const SpectralState& s, const SphereGrid& g) {
  GridFunction f(g);
  std::vector<double> plm;
  std::vector<Complex> ring_m(2 * s.l_max + 1);
  for (int it = 0; it < g.n_theta; ++it) {
    detail::plm_all(s.l_max, g.cos_thetas[it], g.sin_thetas[it], plm);
    for (int m = -s.l_max; m <= s.l_max; ++m) {
      const int am = std::abs(m);
      const double sign = (m < 0 && am % 2 != 0) ? -1.0 : 1.0;
      Complex acc = 0.0;
      for (int l = am; l <= s.l_max; ++l)
        acc += s.at(l, m) * (sign * plm[detail::plm_idx(l, am)]);
      ring_m[m + s.l_max] = acc;
    }
    for (int ip = 0; ip < g.n_phi; ++ip) {
      const double phi = g.phi(ip);
      Complex acc = 0.0;
      for (int m = -s.l_max; m <= s.l_max; ++m)
        acc += ring_m[m + s.l_max] * std::polar(1.0, m * phi);
      f.values[static_cast<std::size_t>(it) * g.n_phi + ip] = acc;
    }
  }
  return f;
}

// e^{it Laplacian/2}: a_{l,m} -> e^{-i t l(l+1)/2} a_{l,m}
inline SpectralState exact_propagator(const SpectralState& s, double t) {
  SpectralState out = s;
  for (int l = 0; l <= s.l_max; ++l) {
    const Complex mult = std::polar(1.0, -t * l * (l + 1) / 2.0);
    for (int m = -l; m <= l; ++m) out.at(l, m) = s.at(l, m) * mult;
  }
  return out;
}

// rho(E): keep l(l+1) < E (strict)
inline SpectralState projector(const SpectralState& s, double energy) {
  SpectralState out = s;
  for (int l = 0; l <= s.l_max; ++l)
    if (!(static_cast<double>(l) * (l + 1) < energy))
      for (int m = -l; m <= l; ++m) out.at(l, m) = 0.0;
  return out;
}

// ||(-Laplacian + 1)^k s||: sqrt(sum (l(l+1)+1)^{2k} |a|^2)
inline double sobolev_norm(const SpectralState& s, int k) {
  if (k < 0) throw std::invalid_argument("sobolev_norm: k must be >= 0");
  double sum = 0.0;
  for (int l = 0; l <= s.l_max; ++l) {
    double mult = 1.0;
    for (int j = 0; j < 2 * k; ++j) mult *= static_cast<double>(l) * (l + 1) + 1.0;
    for (int m = -l; m <= l; ++m) sum += mult * std::norm(s.at(l, m));
  }
  return std::sqrt(sum);
}

}  // namespace sphere_feynman::spectral
