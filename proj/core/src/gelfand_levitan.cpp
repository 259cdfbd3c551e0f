#include "isl/gelfand_levitan.hpp"

#include <Eigen/Dense>
#include <array>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/ode.hpp"
#include "isl/calculus.hpp"
#include "isl/errors.hpp"
#include "isl/integral_equation.hpp"

namespace isl {
namespace {

constexpr double kPi = std::numbers::pi;

// Nodes for the regular solution: potential breakpoints plus every grid node.
std::vector<double> regular_nodes(const RadialPotential& q) {
  auto nodes = detail::integration_nodes(q, true);
  for (std::size_t i = 0; i < q.grid().size(); ++i) {
    if (q.grid()[i] > nodes.back() + 1e-12) nodes.push_back(q.grid()[i]);
  }
  return nodes;
}

// |f(k)|^2 as an even function of k, interpolated from forward data whose grid
// starts at one step.
class JostModulus {
 public:
  explicit JostModulus(const HalfLineScatteringData& d) : kmax_(d.k_grid.back()) {
    const std::size_t n = d.f0_values.size();
    std::vector<double> v(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::norm(d.f0_values[i]);
      v[n + 1 + i] = m;
      v[n - 1 - i] = m;
    }
    v[n] = (4.0 * v[n + 1] - v[n + 2]) / 3.0;
    spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(
        v.begin(), v.end(), -static_cast<double>(n) * d.k_grid.step(), d.k_grid.step());
  }
  double operator()(double k) const { return spline_(std::min(k, kmax_)); }

 private:
  double kmax_;
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

}  // namespace

double SpectralMeasure::w0(double lambda) noexcept { return lambda > 0.0 ? std::sqrt(lambda) / kPi : 0.0; }

RegularSolutionEval regular_solution(const RadialPotential& q, double lambda, OdeTolerance tol) {
  using State = std::array<double, 3>;  // phi, phi', integral of phi^2
  State y{0.0, 1.0, 0.0};
  const auto& grid = q.grid();
  std::vector<cd> prof(grid.size(), 0.0);
  const double a = q.support_radius();
  double phi_a = 0.0, norm_a = 0.0;
  const auto nodes = regular_nodes(q);
  std::size_t hint = 0;
  for (std::size_t m = 0; m + 1 < nodes.size(); ++m) {
    const double x0 = nodes[m], x1 = nodes[m + 1];
    const PotentialSegment* seg = (x1 <= a + 1e-12 && !q.is_zero()) ? detail::segment_for(q, x0, x1, hint) : nullptr;
    auto sys = [&](const State& s, State& d, double x) {
      const double qx = seg ? seg->at(x) : 0.0;
      d[0] = s[1];
      d[1] = (qx - lambda) * s[0];
      d[2] = s[0] * s[0];
    };
    detail::integrate(sys, y, x0, x1, tol.abs, tol.rel);
    if (grid.is_node(x1, 1e-9)) prof[grid.nearest(x1)] = y[0];
    if (std::abs(x1 - a) <= 1e-12 * std::max(1.0, a)) {
      phi_a = y[0];
      norm_a = y[2];
    }
  }
  RegularSolutionEval out{lambda, SampledFunction(grid, std::move(prof)), 0.0};
  if (lambda < 0.0) {
    if (q.is_zero()) {
      phi_a = 0.0;
      norm_a = 0.0;
    }
    out.norm_sq = norm_a + phi_a * phi_a / (2.0 * std::sqrt(-lambda));
  }
  return out;
}

SpectralMeasure spectral_from_data(const RadialPotential& q, const HalfLineScatteringData& data, double lambda_max,
                                   double lambda_step) {
  if (!(lambda_max > 0.0) || !(lambda_step > 0.0)) {
    throw ValidationError("spectral measure: lambda_max and lambda_step must be positive");
  }
  const double kmax = data.k_grid.back();
  if (std::sqrt(lambda_max) > kmax * (1.0 + 1e-9)) {
    throw ValidationError("spectral measure: lambda_max exceeds k_max^2 of the scattering data");
  }
  const UniformGrid lg = UniformGrid::covering(0.0, lambda_max, lambda_step);
  std::vector<double> w(lg.size(), 0.0);
  const bool from_grid = data.f0_values.size() == data.S.size() && data.S.size() >= 4 &&
                         std::abs(data.k_grid.start() - data.k_grid.step()) <= 1e-9 * data.k_grid.step();
  if (from_grid) {
    const JostModulus mod(data);
    for (std::size_t i = 1; i < lg.size(); ++i) w[i] = std::sqrt(lg[i]) / (kPi * mod(std::sqrt(lg[i])));
  } else {
    parallel_for(lg.size() - 1, [&](std::size_t j) {
      const double k = std::sqrt(lg[j + 1]);
      w[j + 1] = k / (kPi * std::norm(jost_function(q, k)));
    });
  }
  SpectralMeasure m{lg, std::move(w), {}};
  for (const auto& b : data.bound_states) {
    const double lam = -b.k * b.k;
    const RegularSolutionEval phi = regular_solution(q, lam);
    m.atoms.push_back({lam, 1.0 / phi.norm_sq});
  }
  return m;
}

SpectralMeasure spectral_from_potential(const RadialPotential& q, double lambda_max, double lambda_step,
                                        double k_step) {
  const double kmax = std::sqrt(lambda_max);
  const auto n = static_cast<std::size_t>(std::ceil(kmax / k_step - 1e-9));
  const UniformGrid kg(kmax / static_cast<double>(n), kmax / static_cast<double>(n), n);
  return spectral_from_data(q, forward_data(q, kg), lambda_max, lambda_step);
}

SampledFunction measure_deviation_in_k(const SpectralMeasure& m, double k_step) {
  const auto& lg = m.lambda_grid;
  if (lg.size() < 6) throw ValidationError("spectral measure: too few lambda nodes");
  std::vector<double> h(lg.size());
  for (std::size_t i = 1; i < lg.size(); ++i) h[i] = kPi * m.w[i] / std::sqrt(lg[i]) - 1.0;
  h[0] = 4.0 * h[1] - 6.0 * h[2] + 4.0 * h[3] - h[4];
  const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(h.begin(), h.end(), 0.0, lg.step());
  const double kmax = std::sqrt(lg.back());
  const auto n = static_cast<std::size_t>(std::floor(kmax / k_step + 1e-9)) + 1;
  const UniformGrid kg(0.0, k_step, n);
  std::vector<cd> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = spline(std::min(kg[i] * kg[i], lg.back()));
  return SampledFunction(kg, std::move(v));
}

LKernel::LKernel(const SpectralMeasure& measure, double t_max, double t_step, double k_step)
    : ft_(measure_deviation_in_k(measure, k_step), Symmetry::EvenReal),
      table_(SampledFunction::zeros(UniformGrid::covering(0.0, std::max(t_max, t_step), t_step))),
      atoms_(measure.atoms) {
  const UniformGrid g = table_.grid();
  std::vector<cd> v(g.size());
  parallel_for(g.size(), [&](std::size_t i) { v[i] = ft_(g[i]).real(); });
  table_ = SampledFunction(g, std::move(v));
}

double LKernel::H(double t) const {
  const double at = std::abs(t);
  const auto& g = table_.grid();
  if (at <= g.back() && g.is_node(at, 1e-9)) return table_[g.nearest(at)].real();
  return ft_(at).real();
}

double LKernel::operator()(double x, double y) const {
  double v = H(x - y) - H(x + y);
  for (const auto& a : atoms_) {
    const double kap = std::sqrt(-a.lambda);
    v += a.c * std::sinh(kap * x) * std::sinh(kap * y) / (kap * kap);
  }
  return v;
}

double build_L(const SpectralMeasure& measure, double x, double y) {
  return LKernel(measure, 0.0, 1.0)(x, y);
}

namespace {

KernelRow solve_gl_indexed(const std::function<double(std::size_t, std::size_t)>& L, std::size_t i, double h) {
  const std::size_t n = i + 1;
  std::vector<double> rhs(n);
  for (std::size_t m = 0; m < n; ++m) rhs[m] = -L(i, m);
  const auto w = trapezoid_weights(n, h);
  const auto sol = solve_second_kind_real([&](std::size_t m, std::size_t j) { return L(j, m); }, w, rhs);
  return {sol.solution, sol.condition_number, sol.residual};
}

}  // namespace

KernelRow solve_gl(const std::function<double(double, double)>& L, double x, double h) {
  if (!(h > 0.0) || x < 0.0) throw ValidationError("solve_gl: need x >= 0 and h > 0");
  const double r = x / h;
  if (std::abs(r - std::round(r)) > 1e-6) throw ValidationError("solve_gl: x must be a multiple of h");
  const auto i = static_cast<std::size_t>(std::llround(r));
  return solve_gl_indexed([&](std::size_t a, std::size_t b) { return L(a * h, b * h); }, i, h);
}

RadialPotential recover_q_gl(const TriangularKernel& kernel) {
  const auto diag = kernel.diagonal();
  if (diag.size() < 5) throw ValidationError("recover_q_gl: need at least five diagonal nodes");
  auto d = derivative4(diag, kernel.x_grid().step());
  for (double& v : d) v *= 2.0;
  return RadialPotential::from_reconstruction(kernel.x_grid(), std::move(d), 1e-6, "gelfand_levitan");
}

GLResult invert_gl(const SpectralMeasure& measure, const UniformGrid& x_grid, double k_step) {
  if (std::abs(x_grid.start()) > 1e-12) throw ValidationError("invert_gl: x grid must start at 0");
  const double h = x_grid.step();
  const std::size_t n = x_grid.size();
  const LKernel L(measure, 2.0 * x_grid.back(), h, k_step);
  const auto& Ht = L.H_table();

  Eigen::MatrixXd lm(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = Ht[i - j].real() - Ht[i + j].real();
      for (const auto& a : measure.atoms) {
        const double kap = std::sqrt(-a.lambda);
        v += a.c * std::sinh(kap * x_grid[i]) * std::sinh(kap * x_grid[j]) / (kap * kap);
      }
      lm(i, j) = lm(j, i) = v;
    }
  }

  TriangularKernel kernel(x_grid, TriangularKernel::Orientation::Lower);
  std::vector<double> conds(n, 1.0), resid(n, 0.0);
  auto Lidx = [&](std::size_t a, std::size_t b) { return lm(a, b); };
  parallel_for(n, [&](std::size_t i) {
    KernelRow row = solve_gl_indexed(Lidx, i, h);
    conds[i] = row.condition_number;
    resid[i] = row.residual;
    kernel.set_row(i, std::move(row.values));
  });

  // Positivity proxy on the largest triangle.
  const auto w = trapezoid_weights(n, h);
  Eigen::VectorXd sw(n);
  for (std::size_t i = 0; i < n; ++i) sw(i) = std::sqrt(w[i]);
  Eigen::MatrixXd sym = sw.asDiagonal() * lm * sw.asDiagonal();
  sym += Eigen::MatrixXd::Identity(n, n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);

  GLResult out{Ht, std::move(kernel), RadialPotential::zero(x_grid.back(), h), 1.0, 0.0, es.eigenvalues().minCoeff(),
               (lm - lm.transpose()).cwiseAbs().maxCoeff(), {}};
  out.q = recover_q_gl(out.kernel);
  out.max_condition = *std::max_element(conds.begin(), conds.end());
  out.max_residual = *std::max_element(resid.begin(), resid.end());
  out.fourier = {L.transform().edge_magnitude(), L.transform().tail_uncertainty(), 0.0};
  return out;
}

}  // namespace isl
