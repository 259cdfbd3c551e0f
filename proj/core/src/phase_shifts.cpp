#include "isl/phase_shifts.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/ode.hpp"
#include "isl/errors.hpp"

namespace isl {
namespace detail {

// Riccati-Bessel jhat_l(z) = z j_l(z) and nhat_l(z) = z y_l(z). nhat recurs
// upward (always stable); jhat recurs upward only for z >= l, and otherwise
// comes from its power series (small z) or Miller's downward recurrence.
void riccati_bessel(unsigned l, double z, double& jh, double& nh) {
  const double s = std::sin(z), c = std::cos(z);
  double n0 = -c, n1 = -c / z - s;
  if (l == 0) {
    nh = n0;
  } else {
    for (unsigned m = 1; m < l; ++m) {
      const double n2 = (2.0 * m + 1.0) / z * n1 - n0;
      n0 = n1;
      n1 = n2;
    }
    nh = n1;
  }
  if (z >= static_cast<double>(l)) {
    double j0 = s, j1 = s / z - c;
    if (l == 0) {
      jh = j0;
      return;
    }
    for (unsigned m = 1; m < l; ++m) {
      const double j2 = (2.0 * m + 1.0) / z * j1 - j0;
      j0 = j1;
      j1 = j2;
    }
    jh = j1;
    return;
  }
  if (z * z < 2.0 * l + 3.0) {
    // z^{l+1} / (2l+1)!! sum_m (-z^2/2)^m / (m! prod_{i=1..m} (2l+2i+1))
    double lead = z;
    for (unsigned m = 1; m <= l; ++m) lead *= z / (2.0 * m + 1.0);
    double term = 1.0, sum = 1.0;
    for (unsigned m = 1; m < 60; ++m) {
      term *= -z * z / (2.0 * m * (2.0 * l + 2.0 * m + 1.0));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    jh = lead * sum;
    return;
  }
  // Miller: recur downward from well above l, normalize against jhat_0 or jhat_1.
  const unsigned top = l + 20 + static_cast<unsigned>(z);
  double up = 0.0, cur = 1e-30, at_l = 0.0;
  for (unsigned m = top; m >= 1; --m) {
    const double down = (2.0 * m + 1.0) / z * cur - up;  // jhat_{m-1}
    up = cur;
    cur = down;
    if (m - 1 == l) at_l = cur;
    if (std::abs(cur) > 1e250) {
      up *= 1e-250;
      cur *= 1e-250;
      at_l *= 1e-250;
    }
  }
  // cur = jhat_0, up = jhat_1 (unnormalized)
  const double j1 = s / z - c;
  jh = std::abs(s) > std::abs(j1) ? at_l * s / cur : at_l * j1 / up;
}

}  // namespace detail

double phase_shift(const RadialPotential& q, double k, int l) {
  if (!(k > 0.0)) throw ValidationError("phase_shift: k must be positive");
  if (l < 0) throw ValidationError("phase_shift: l must be nonnegative");
  if (q.is_zero()) return 0.0;
  const double a = q.support_radius();
  // Start where the skipped interval [0, r0] contributes below 1e-15 relative.
  const double r0 = a * std::pow(1e-15, 1.0 / (2.0 * l + 3.0));
  const auto ul = static_cast<unsigned>(l);

  using State = std::array<double, 1>;
  State y{0.0};
  const auto nodes = detail::integration_nodes(q, false);
  std::size_t hint = 0;
  try {
    for (std::size_t m = 0; m + 1 < nodes.size(); ++m) {
      const double x0 = std::max(nodes[m], r0), x1 = nodes[m + 1];
      if (x1 <= x0) continue;
      const PotentialSegment* seg = detail::segment_for(q, nodes[m], x1, hint);
      if (!seg) continue;
      auto sys = [&](const State& s, State& d, double r) {
        const double z = k * r;
        double jh, nh;
        detail::riccati_bessel(ul, z, jh, nh);
        const double u = jh * std::cos(s[0]) - nh * std::sin(s[0]);
        d[0] = -seg->at(r) / k * u * u;
      };
      detail::integrate(sys, y, x0, x1, 1e-300, 1e-12);
    }
  } catch (const StepSizeError& e) {
    throw MatchingSingularity("phase shift l = " + std::to_string(l) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw MatchingSingularity("phase shift l = " + std::to_string(l) + ": " + e.what());
  } catch (const std::overflow_error& e) {
    throw MatchingSingularity("phase shift l = " + std::to_string(l) + ": " + e.what());
  }
  if (!std::isfinite(y[0])) throw MatchingSingularity("phase shift l = " + std::to_string(l) + " is not finite");
  return y[0];
}

PhaseShiftSet phase_shifts(const RadialPotential& q, double k, int L) {
  if (L < 0) throw ValidationError("phase_shifts: L must be nonnegative");
  PhaseShiftSet out;
  out.k = k;
  out.L = L;
  const auto n = static_cast<std::size_t>(L) + 1;
  std::vector<double> raw(n);
  parallel_for(n, [&](std::size_t l) { raw[l] = phase_shift(q, k, static_cast<int>(l)); });
  constexpr double pi = std::numbers::pi;
  out.delta.resize(n);
  out.branch.resize(n);
  out.amplitudes.resize(n);
  out.support_radius_estimates.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    // Reduce to (-pi/2, pi/2].
    int b = static_cast<int>(std::ceil(raw[l] / pi - 0.5));
    double d = raw[l] - b * pi;
    if (d <= -pi / 2) {
      d += pi;
      --b;
    }
    out.delta[l] = d;
    out.branch[l] = b;
    out.amplitudes[l] = 4 * pi * std::polar(1.0, d) * std::sin(d);
    if (l >= 1 && d != 0.0) {
      out.support_radius_estimates[l] =
          2.0 / (std::numbers::e * k) * static_cast<double>(l) * std::pow(std::abs(d), 1.0 / (2.0 * l));
    }
  }
  return out;
}

double PhaseShiftSet::extrapolated_radius() const {
  std::vector<int> ls;
  for (int l = std::max(2, L / 2); l <= L; ++l) {
    if (support_radius_estimates[static_cast<std::size_t>(l)] > 0.0) ls.push_back(l);
  }
  if (ls.size() < 3) return 0.0;
  Eigen::MatrixXd a(ls.size(), 3);
  Eigen::VectorXd b(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const double l = ls[i];
    a(i, 0) = 1.0;
    a(i, 1) = std::log(l) / l;
    a(i, 2) = 1.0 / l;
    b(i) = std::log(support_radius_estimates[static_cast<std::size_t>(ls[i])]);
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  return std::exp(c(0));
}

}  // namespace isl
