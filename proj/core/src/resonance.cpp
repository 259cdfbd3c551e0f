#include "isl/resonance.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "isl/errors.hpp"

namespace isl {

double resonance_depth_cap(const RadialPotential& q) {
  const double a = q.support_radius();
  return a > 0.0 ? 30.0 / (2.0 * a) : std::numeric_limits<double>::infinity();
}

ResonanceSet find_resonances(const RadialPotential& q, const ComplexBox& box, const ResonanceOptions& opt,
                             OdeTolerance tol) {
  if (!(box.re_max > box.re_min) || !(box.im_max > box.im_min)) {
    throw ValidationError("find_resonances: empty box");
  }
  if (box.im_max >= 0.0) throw ValidationError("find_resonances: the box must lie in Im k < 0");
  const double cap = resonance_depth_cap(q);
  if (-box.im_min > cap) {
    throw ValidationError("find_resonances: box depth " + std::to_string(-box.im_min) + " exceeds the cap " +
                          std::to_string(cap) + " = 30 / (2a)");
  }
  auto f = [&](cd k) { return jost_function(q, k, tol); };
  const ZeroSearchResult found = find_zeros_in_box(f, box, opt.tol, opt.search);

  ResonanceSet set;
  set.search_box = box;
  set.count_by_argument_principle = found.argument_count;
  set.zeros = found.zeros;
  for (const cd z : set.zeros) {
    const double r = std::abs(f(z));
    if (r > opt.max_residual) {
      throw CountMismatch("resonance near " + std::to_string(z.real()) + std::to_string(z.imag()) +
                          "i has residual " + std::to_string(r));
    }
    set.residuals.push_back(r);
    const cd mirror = -std::conj(z);
    double e;
    if (box.contains(mirror, -1e-9)) {
      e = std::numeric_limits<double>::infinity();
      for (const cd w : set.zeros) e = std::min(e, std::abs(w - mirror));
    } else {
      e = std::abs(f(mirror));
    }
    set.symmetry_error = std::max(set.symmetry_error, e);
  }
  return set;
}

FreeRegionCheck resonance_free_region(const ResonanceSet& set, double b, double c) {
  double margin = std::numeric_limits<double>::infinity();
  for (const cd z : set.zeros) margin = std::min(margin, c - b * std::log(std::abs(z)) - z.imag());
  return {margin >= 0.0, margin};
}

FreeRegionFit fit_free_region(const ResonanceSet& set) {
  if (set.zeros.size() < 2) throw ValidationError("fit_free_region: need at least two zeros");
  std::vector<cd> z = set.zeros;
  std::sort(z.begin(), z.end(), [](cd u, cd v) { return std::abs(u) > std::abs(v); });
  const double l0 = std::log(std::abs(z[0])), l1 = std::log(std::abs(z[1]));
  if (std::abs(l0 - l1) < 1e-12) throw ValidationError("fit_free_region: the two largest zeros share |k|");
  // c - b l = Im k at both points.
  const double b = (z[1].imag() - z[0].imag()) / (l0 - l1);
  const double c = z[0].imag() + b * l0;
  ResonanceSet rest;
  rest.zeros.assign(z.begin() + 2, z.end());
  double envelope = -std::numeric_limits<double>::infinity();
  for (const cd w : z) envelope = std::max(envelope, w.imag() + b * std::log(std::abs(w)));
  return {b, c, resonance_free_region(rest, b, c), envelope};
}

std::vector<double> imaginary_axis_census(const RadialPotential& q, double depth, double step, OdeTolerance tol) {
  if (!(depth > 0.0) || !(step > 0.0)) throw ValidationError("imaginary_axis_census: depth and step must be positive");
  auto g = [&](double tau) { return jost_function(q, cd(0.0, -tau), tol).real(); };
  std::vector<double> out;
  double t0 = std::min(step, depth) * 1e-2;
  double g0 = g(t0);
  const auto n = static_cast<std::size_t>(std::ceil(depth / step));
  for (std::size_t i = 1; i <= n; ++i) {
    const double t1 = std::min(depth, static_cast<double>(i) * step);
    const double g1 = g(t1);
    if (g0 == 0.0) {
      out.push_back(t0);
    } else if (g0 * g1 < 0.0) {
      const auto r = boost::math::tools::bisect(
          g, t0, t1, [](double a, double b) { return std::abs(b - a) <= 1e-12; });
      out.push_back(0.5 * (r.first + r.second));
    }
    t0 = t1;
    g0 = g1;
  }
  return out;
}

GrowthProfile exponential_type_profile(const RadialPotential& q, double re_max, const std::vector<double>& depths,
                                       OdeTolerance tol) {
  if (depths.size() < 2) throw ValidationError("exponential_type_profile: need two or more depths");
  GrowthProfile p;
  constexpr int kSamples = 201;
  for (const double d : depths) {
    double m = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double re = -re_max + 2.0 * re_max * i / (kSamples - 1);
      m = std::max(m, std::abs(jost_function(q, cd(re, -d), tol)));
    }
    p.depth.push_back(d);
    p.log_max.push_back(std::log(m));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) {
    sx += p.depth[i];
    sy += p.log_max[i];
    sxx += p.depth[i] * p.depth[i];
    sxy += p.depth[i] * p.log_max[i];
  }
  p.fitted_type = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return p;
}

}  // namespace isl
