#include "isl/fourier.hpp"

#include <gsl/gsl_sf_expint.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "isl/errors.hpp"

namespace isl {
namespace {

constexpr double kPi = std::numbers::pi;

// Moments of u^p e^{iux} over [-h, h]. The odd moment is purely imaginary and
// is returned as m1 with M1 = i*m1.
struct Moments {
  double m0, m1, m2;
};

Moments filon_moments(double h, double x) {
  const double t = h * x;
  if (std::abs(t) < 1.0) {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    double pe = 1.0;  // t^{2n} / (2n)!
    double po = t;    // t^{2n+1} / (2n+1)!
    for (int n = 0; n < 12; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      m0 += sign * pe / (2 * n + 1);
      m2 += sign * pe / (2 * n + 3);
      m1 += sign * po / (2 * n + 3);
      pe *= t * t / ((2 * n + 1) * (2 * n + 2));
      po *= t * t / ((2 * n + 2) * (2 * n + 3));
    }
    return {2 * h * m0, 2 * h * h * m1, 2 * h * h * h * m2};
  }
  const double s = std::sin(t), c = std::cos(t);
  return {2 * s / x, 2 * (s / (x * x) - h * c / x),
          2 * (h * h * s / x + 2 * h * c / (x * x) - 2 * s / (x * x * x))};
}

struct TailIntegrals {
  double i2, i4, j1, j3;  // I_n = int_K^inf cos(kx)/k^n, J_n = int_K^inf sin(kx)/k^n
};

TailIntegrals tail_integrals(double kmax, double x) {
  const double sign = x < 0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  if (ax == 0.0) {
    // Right limit: J1 -> pi/2 while x*Ci(Kx) -> 0.
    return {1.0 / kmax, 1.0 / (3 * kmax * kmax * kmax), kPi / 2, 0.0};
  }
  const double z = kmax * ax;
  const double s = std::sin(z), c = std::cos(z);
  const double j1 = kPi / 2 - gsl_sf_Si(z);
  const double i2 = c / kmax - ax * j1;
  const double j3 = s / (2 * kmax * kmax) + ax / 2 * i2;
  const double i4 = c / (3 * kmax * kmax * kmax) - ax / 3 * j3;
  return {i2, i4, sign * j1, sign * j3};
}

// Fills nodes 0..m-1 of a grid that starts at m*step by cubic extrapolation.
std::vector<cd> extend_to_origin(const SampledFunction& g, std::size_t& m) {
  const auto& grid = g.grid();
  if (grid.start() < 0.0) throw ValidationError("oscillatory_fourier: grid must start at k >= 0");
  const double r = grid.start() / grid.step();
  m = static_cast<std::size_t>(std::llround(r));
  if (std::abs(r - static_cast<double>(m)) > 1e-6 || m > 8) {
    throw ValidationError("oscillatory_fourier: grid must start at 0 or within 8 steps of it on a node");
  }
  if (m > 0 && g.size() < 4) throw ValidationError("oscillatory_fourier: too few samples to extrapolate");
  std::vector<cd> out(m + g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[m + i] = g[i];
  for (std::size_t i = 0; i < m; ++i) {
    // Lagrange basis on nodes m..m+3 evaluated at node i (integer offsets).
    const double t = static_cast<double>(i) - static_cast<double>(m);
    cd v{};
    for (int a = 0; a < 4; ++a) {
      double w = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (b != a) w *= (t - b) / static_cast<double>(a - b);
      }
      v += w * g[static_cast<std::size_t>(a)];
    }
    out[i] = v;
  }
  return out;
}

// Weighted least squares for data ~ p1*b1(k) + p2*b2(k).
Eigen::Vector2d fit_two(const std::vector<double>& k, const std::vector<double>& data,
                        const std::vector<double>& w, int e1, int e2) {
  Eigen::MatrixXd a(k.size(), 2);
  Eigen::VectorXd b(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double sw = std::sqrt(w[i]);
    a(i, 0) = sw * std::pow(k[i], -e1);
    a(i, 1) = sw * std::pow(k[i], -e2);
    b(i) = sw * data[i];
  }
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace

cd TailModel::operator()(double k, Symmetry sym) const {
  const double k2 = 1.0 / (k * k);
  const cd even = c2 * k2 + c4 * k2 * k2;
  if (sym == Symmetry::EvenReal) return even;
  return even + cd(0.0, s1 / k + s3 * k2 / k);
}

OscillatoryFourier::OscillatoryFourier(const SampledFunction& g, Symmetry sym, FourierOptions opt)
    : sym_(sym), step_(g.grid().step()), k_max_(g.grid().back()) {
  std::size_t m = 0;
  g_ = extend_to_origin(g, m);
  const std::size_t n = g_.size();
  edge_ = std::abs(g_.back());

  std::vector<double> absg(n);
  for (std::size_t i = 0; i < n; ++i) absg[i] = std::abs(g_[i]);
  double integral = 0.5 * (absg.front() + absg.back());
  for (std::size_t i = 1; i + 1 < n; ++i) integral += absg[i];
  scale_ = integral * step_ / kPi;

  // Fit window with squared-Hann weights.
  const double k0 = opt.fit_start * k_max_;
  std::vector<double> kk, re, im, w;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i) * step_;
    if (k < k0) continue;
    const double s = std::sin(kPi * (k - k0) / (k_max_ - k0));
    kk.push_back(k);
    re.push_back(g_[i].real());
    im.push_back(g_[i].imag());
    w.push_back(s * s * s * s);
  }
  if (kk.size() < 8) throw ValidationError("oscillatory_fourier: too few samples in the tail-fit window");

  const Eigen::Vector2d pr = fit_two(kk, re, w, 2, 4);
  model_.c2 = pr(0);
  model_.c4 = pr(1);
  if (sym == Symmetry::Hermitian) {
    const Eigen::Vector2d pi = fit_two(kk, im, w, 1, 3);
    model_.s1 = pi(0);
    model_.s3 = pi(1);
  } else {
    const Eigen::Vector2d pi = fit_two(kk, im, w, 2, 4);
    model_.c2 += cd(0.0, pi(0));
    model_.c4 += cd(0.0, pi(1));
  }
  double rss = 0.0, ws = 0.0;
  for (std::size_t i = 0; i < kk.size(); ++i) {
    rss += w[i] * std::norm(cd(re[i], im[i]) - model_(kk[i], sym));
    ws += w[i];
  }
  model_.residual_rms = std::sqrt(rss / ws);
  uncertainty_ = model_.residual_rms * k_max_ / kPi;
  // The absolute floor keeps identically vanishing data (q = 0) from failing on roundoff.
  if (uncertainty_ > opt.tail_tolerance * scale_ + 1e-14) {
    char msg[200];
    std::snprintf(msg, sizeof msg,
                  "oscillatory_fourier: tail-model uncertainty %.3g exceeds %.3g of the integral scale %.3g; "
                  "increase k_max",
                  uncertainty_, opt.tail_tolerance, scale_);
    throw TailTooLarge(msg);
  }

  // Blend samples into the model over [taper_start*k_max, k_max].
  const double kt = opt.taper_start * k_max_;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i) * step_;
    if (k <= kt) continue;
    const double c = std::cos(kPi / 2 * (k - kt) / (k_max_ - kt));
    const double wt = c * c;
    g_[i] = wt * g_[i] + (1.0 - wt) * model_(k, sym);
  }
}

FourierValue OscillatoryFourier::evaluate(double x) const {
  const std::size_t n = g_.size();
  const std::size_t intervals = n - 1;
  cd plus{}, minus{};  // integrals over [0, k_max] against e^{ikx} and e^{-ikx}

  auto panel = [&](double mid, double h, cd a0, cd a1, cd a2) {
    const Moments mo = filon_moments(h, x);
    const cd e = std::polar(1.0, mid * x);
    const cd even = a0 * mo.m0 + a2 * mo.m2;
    const cd odd = a1 * cd(0.0, mo.m1);
    plus += e * (even + odd);
    minus += std::conj(e) * (even - odd);
  };

  const double h = step_;
  const std::size_t pairs = intervals / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t i = 2 * p;
    const cd g0 = g_[i], g1 = g_[i + 1], g2 = g_[i + 2];
    panel(static_cast<double>(i + 1) * h, h, g1, (g2 - g0) / (2 * h), (g0 - 2.0 * g1 + g2) / (2 * h * h));
  }
  if (intervals % 2 == 1) {
    const cd g0 = g_[n - 2], g1 = g_[n - 1];
    panel((static_cast<double>(n) - 1.5) * h, h / 2, 0.5 * (g0 + g1), (g1 - g0) / h, cd{});
  }

  const TailIntegrals t = tail_integrals(k_max_, x);
  cd body, tail;
  if (sym_ == Symmetry::Hermitian) {
    body = (plus + std::conj(plus)) / (2 * kPi);
    tail = (model_.c2.real() * t.i2 + model_.c4.real() * t.i4 - model_.s1 * t.j1 - model_.s3 * t.j3) / kPi;
  } else {
    body = (plus + minus) / (2 * kPi);
    tail = (model_.c2 * t.i2 + model_.c4 * t.i4) / kPi;
  }
  return {body + tail, tail};
}

FourierValue oscillatory_fourier(const SampledFunction& g, double x, Symmetry sym, FourierOptions opt) {
  return OscillatoryFourier(g, sym, opt).evaluate(x);
}

}  // namespace isl
