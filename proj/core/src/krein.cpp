#include "isl/krein.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "isl/calculus.hpp"
#include "isl/errors.hpp"
#include "isl/fourier.hpp"
#include "isl/integral_equation.hpp"
#include "isl/roots.hpp"

namespace isl {
namespace {

constexpr double kPi = std::numbers::pi;

// Integrals of the quadratic Lagrange basis on the panel [0, 2h] against
// 1/(y - w), w = r h + i eps: G[m] for basis node m.
std::array<cd, 3> basis_cauchy(double h, double r, double eps) {
  const cd w(r * h, eps);
  const double nodes[3] = {0.0, h, 2.0 * h};
  std::array<cd, 3> out{};
  const cd d = w - h;
  if (std::abs(d) <= 8.0 * h) {
    // p(y) = A + B (y - h) + C (y - h)^2 integrates in closed form.
    const cd u0 = -w, u2 = 2.0 * h - w;
    const cd lg = std::log(u2) - std::log(u0);
    const cd sq = (u2 * u2 - u0 * u0) / 2.0;
    const double A[3] = {0.0, 1.0, 0.0};
    const double B[3] = {-0.5 / h, 0.0, 0.5 / h};
    const double C[3] = {0.5 / (h * h), -1.0 / (h * h), 0.5 / (h * h)};
    for (int m = 0; m < 3; ++m) {
      const cd pw = A[m] + d * (B[m] + d * C[m]);
      out[m] = pw * lg + (B[m] + 2.0 * C[m] * d) * (2.0 * h) + C[m] * sq;
    }
    return out;
  }
  for (int m = 0; m < 3; ++m) {
    auto basis = [&](double y) {
      double v = 1.0;
      for (int k = 0; k < 3; ++k) {
        if (k != m) v *= (y - nodes[k]) / (nodes[m] - nodes[k]);
      }
      return v;
    };
    out[m] = boost::math::quadrature::gauss<double, 8>::integrate(
        [&](double y) { return cd(basis(y)) / (y - w); }, 0.0, 2.0 * h);
  }
  return out;
}

// Weight of node j for target node i depends on d = i - j and the parity of j.
// Index by d + shift.
struct CauchyWeights {
  std::vector<cd> even, odd, last;
  std::ptrdiff_t shift;
  CauchyWeights(double h, double eps, std::ptrdiff_t lo, std::ptrdiff_t hi) : shift(-lo) {
    const auto count = static_cast<std::size_t>(hi - lo + 1);
    even.resize(count);
    odd.resize(count);
    last.resize(count);
    for (std::ptrdiff_t d = lo; d <= hi; ++d) {
      const auto g0 = basis_cauchy(h, static_cast<double>(d), eps);
      const auto g2 = basis_cauchy(h, static_cast<double>(d + 2), eps);
      const auto g1 = basis_cauchy(h, static_cast<double>(d + 1), eps);
      const auto idx = static_cast<std::size_t>(d - lo);
      even[idx] = g0[0] + g2[2];
      odd[idx] = g1[1];
      last[idx] = g2[2];
    }
  }
  cd at(std::size_t j, std::size_t n_last, std::ptrdiff_t d) const {
    const auto idx = static_cast<std::size_t>(d + shift);
    if (j == n_last) return last[idx];
    return j % 2 == 0 ? even[idx] : odd[idx];
  }
};

// Weighted fit delta ~ d1/y + d3/y^3 on [K/2, K].
std::pair<double, double> fit_phase_tail(const std::vector<double>& k, const std::vector<double>& delta) {
  const double kmax = k.back(), k0 = 0.5 * kmax;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] >= k0) idx.push_back(i);
  }
  Eigen::MatrixXd a(idx.size(), 2);
  Eigen::VectorXd b(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double y = k[idx[r]];
    const double s = std::sin(kPi * (y - k0) / (kmax - k0));
    const double sw = s * s;
    a(r, 0) = sw / y;
    a(r, 1) = sw / (y * y * y);
    b(r) = sw * delta[idx[r]];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

// Integral over [K, inf) of (d1/y + d3/y^3) (1/(y - z) + 1/(y + z)).
cd phase_tail(double d1, double d3, double kmax, cd z) {
  const cd lg = std::log((kmax + z) / (kmax - z));
  return d1 / z * lg + 2.0 * d3 / (z * z) * (lg / (2.0 * z) - 1.0 / kmax);
}

}  // namespace

KreinJost jost_from_S(const HalfLineScatteringData& data, double epsilon) {
  if (data.J() > 0) {
    throw IndexNonzero("Krein inversion needs data without bound states (found " + std::to_string(data.J()) +
                       "); the index of S over the real axis must be zero");
  }
  const int index = winding_number(data.symmetric_samples());
  if (index != 0) {
    throw IndexNonzero("Krein inversion needs the index of S over the real axis to be zero; it is " +
                       std::to_string(index));
  }
  const auto& g = data.k_grid;
  const double h = g.step();
  if (std::abs(g.start() - h) > 1e-9 * h) {
    throw ValidationError("jost_from_S: the k-grid must start at one step from 0");
  }
  const std::size_t n = data.S.size();
  if (n < 16) throw ValidationError("jost_from_S: too few samples of S");

  // Unwrap the phase from k_max down.
  std::vector<double> delta(n);
  delta[n - 1] = std::arg(data.S[n - 1]) / 2.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    const double inc = std::arg(data.S[i] / data.S[i + 1]);
    if (std::abs(inc) > kPi / 2) {
      throw BranchJump("phase of S jumps by " + std::to_string(inc) + " near k = " + std::to_string(g[i]) +
                       "; refine the k-grid");
    }
    delta[i] = delta[i + 1] + inc / 2.0;
  }
  if (std::abs(delta[0]) > kPi / 2) {
    throw IndexNonzero("phase of S does not return to 0 at k = 0 (delta(k_min) = " + std::to_string(delta[0]) +
                       "); the index of S over the real axis must be zero");
  }

  // Node j sits at y = j h with delta(0) = 0 (delta is odd and continuous).
  // Quadratic panels pair the nodes; an odd leftover sample goes to the tail.
  std::vector<double> dv(n + 1, 0.0);
  std::copy(delta.begin(), delta.end(), dv.begin() + 1);
  const std::size_t n_last = n % 2 == 0 ? n : n - 1;
  const double kint = static_cast<double>(n_last) * h;
  std::vector<double> ky(n);
  for (std::size_t i = 0; i < n; ++i) ky[i] = g[i];
  const auto [d1, d3] = fit_phase_tail(ky, delta);
  // Blend the samples into the tail model near the cut so the phase stays
  // continuous there; a jump would put a log singularity into ln f at k_max.
  const double kb = 0.9 * kint;
  for (std::size_t j = 1; j <= n_last; ++j) {
    const double yj = static_cast<double>(j) * h;
    if (yj <= kb) continue;
    const double c = std::cos(0.5 * kPi * (yj - kb) / (kint - kb));
    dv[j] = c * c * dv[j] + (1.0 - c * c) * (d1 / yj + d3 / (yj * yj * yj));
  }

  // ln f(z) = -(1/pi) sum_j delta_j [W(i - j) + conj(W(-i - j))] - tail / pi.
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const auto sl = static_cast<std::ptrdiff_t>(n_last);
  const CauchyWeights w1(h, epsilon, -sn - sl, sn), w2(h, 2 * epsilon, -sn - sl, sn);
  std::vector<cd> f(n);
  std::vector<double> drift(n);
  parallel_for(n, [&](std::size_t t) {
    const auto i = static_cast<std::ptrdiff_t>(t + 1);
    cd s1 = phase_tail(d1, d3, kint, cd(g[t], epsilon));
    cd s2 = phase_tail(d1, d3, kint, cd(g[t], 2 * epsilon));
    for (std::size_t j = 1; j <= n_last; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      s1 += dv[j] * (w1.at(j, n_last, i - sj) + std::conj(w1.at(j, n_last, -i - sj)));
      s2 += dv[j] * (w2.at(j, n_last, i - sj) + std::conj(w2.at(j, n_last, -i - sj)));
    }
    const cd lf = -(2.0 * s1 - s2) / kPi;
    f[t] = std::polar(std::exp(lf.real()), -delta[t]);
    drift[t] = std::abs(std::remainder(lf.imag() + delta[t], 2 * kPi));
  });
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(std::conj(f[i]) / f[i] - data.S[i]));
  return {SampledFunction(g, std::move(f)), res, *std::max_element(drift.begin(), drift.end()), std::move(delta)};
}

KreinH build_H(const SampledFunction& f, double t_max, double t_step) {
  std::vector<cd> h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = std::norm(f[i]);
    if (!(m > 1e-24)) throw ZeroJost("build_H: |f(k)| vanishes on the grid");
    h[i] = 1.0 / m - 1.0;
  }
  const OscillatoryFourier ft(SampledFunction(f.grid(), std::move(h)), Symmetry::EvenReal);
  const UniformGrid tg = UniformGrid::covering(0.0, t_max, t_step);
  std::vector<cd> v(tg.size());
  std::vector<double> asym(tg.size());
  parallel_for(tg.size(), [&](std::size_t i) {
    const cd p = ft(tg[i]);
    const cd m = ft(-tg[i]);
    asym[i] = std::abs(p - m);
    v[i] = 0.5 * (p + m).real();
  });
  return {SampledFunction(tg, std::move(v)), *std::max_element(asym.begin(), asym.end()),
          {ft.edge_magnitude(), ft.tail_uncertainty(), 0.0}};
}

KreinRow solve_krein(const SampledFunction& H, double x) {
  const auto& g = H.grid();
  if (std::abs(g.start()) > 1e-12) throw ValidationError("solve_krein: H grid must start at 0");
  if (!g.is_node(x, 1e-6)) throw ValidationError("solve_krein: x must be a node of H's grid");
  const std::size_t ix = g.nearest(x);
  const std::size_t n = ix + 1;
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = H[i].real();
  const auto w = trapezoid_weights(n, g.step());
  const auto sol = solve_second_kind_real(
      [&](std::size_t i, std::size_t j) { return H[i > j ? i - j : j - i].real(); }, w, rhs);
  KreinRow row{sol.solution, sol.solution.back(), sol.condition_number, sol.residual};
  return row;
}

RadialPotential recover_q_krein(const SampledFunction& H, const UniformGrid& x_grid, std::vector<double>* a_out,
                                double* max_condition, double* max_residual) {
  const double h = x_grid.step();
  if (std::abs(H.grid().step() - h) > 1e-9 * h) throw ValidationError("recover_q_krein: H and x grids differ in step");
  if (H.grid().back() < 2.0 * x_grid.back() * (1.0 - 1e-12)) {
    throw ValidationError("recover_q_krein: H must cover [0, 2 x_max]");
  }
  const std::size_t n = x_grid.size();
  std::vector<double> a(n), conds(n), resid(n);
  parallel_for(n, [&](std::size_t i) {
    const KreinRow row = solve_krein(H, H.grid()[2 * i]);
    a[i] = 2.0 * row.gamma_at_x;
    conds[i] = row.condition_number;
    resid[i] = row.residual;
  });
  const auto da = derivative4(a, h);
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = a[i] * a[i] + da[i];
  if (a_out) *a_out = a;
  if (max_condition) *max_condition = *std::max_element(conds.begin(), conds.end());
  if (max_residual) *max_residual = *std::max_element(resid.begin(), resid.end());
  return RadialPotential::from_reconstruction(x_grid, std::move(q), 1e-6, "krein");
}

KreinWorkspace invert_krein(const HalfLineScatteringData& data, const UniformGrid& x_grid) {
  if (std::abs(x_grid.start()) > 1e-12) throw ValidationError("invert_krein: x grid must start at 0");
  KreinConditions cond;
  cond.symmetry_ok = data.unitarity_defect() <= 1e-6;
  KreinJost fj = jost_from_S(data);  // throws IndexNonzero when the gate fails
  cond.index_zero = true;
  const double h = x_grid.step();
  const UniformGrid t_grid(0.0, h, 2 * (x_grid.size() - 1) + 1);
  cond.F_norms_ok = characterize(data, t_grid).norms_finite;
  KreinH H = build_H(fj.f, t_grid.back(), h);
  std::vector<double> a;
  double mc = 1.0, mr = 0.0;
  RadialPotential q = recover_q_krein(H.H, x_grid, &a, &mc, &mr);
  return {std::move(fj), std::move(H), cond, std::move(a), std::move(q), mc, mr};
}

}  // namespace isl
