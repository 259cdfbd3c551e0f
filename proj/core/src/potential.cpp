#include "isl/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isl/errors.hpp"

namespace isl {
namespace {

// x1^m - x0^m for 0 <= x0 <= x1 without catastrophic cancellation.
double power_difference(double x0, double x1, int m) {
  if (x1 == 0.0) return 0.0;
  const double top = std::pow(x1, m);
  if (x0 == 0.0) return top;
  return -top * std::expm1(m * std::log(x0 / x1));
}

// Integral of x^n (alpha + beta x) over [x0, x1].
double linear_moment(double x0, double x1, double alpha, double beta, int n) {
  return alpha * power_difference(x0, x1, n + 1) / (n + 1) + beta * power_difference(x0, x1, n + 2) / (n + 2);
}

// Integral of x^n |q| over a segment where q is linear.
double segment_abs_moment(const PotentialSegment& s, int n) {
  auto piece = [n](double x0, double x1, double q0, double q1) {
    if (x1 <= x0) return 0.0;
    const double a0 = std::abs(q0), a1 = std::abs(q1);
    const double slope = (a1 - a0) / (x1 - x0);
    return linear_moment(x0, x1, a0 - slope * x0, slope, n);
  };
  if (s.q0 * s.q1 < 0.0) {
    const double xr = s.x0 + (s.x1 - s.x0) * s.q0 / (s.q0 - s.q1);
    return piece(s.x0, xr, s.q0, 0.0) + piece(xr, s.x1, 0.0, s.q1);
  }
  return piece(s.x0, s.x1, s.q0, s.q1);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

bool looks_complex(const std::string& tok) {
  if (tok.empty()) return false;
  const char last = tok.back();
  return last == 'i' || last == 'j' || tok.front() == '(' || tok.find("+i") != std::string::npos;
}

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e || !std::isfinite(v)) {
    if (looks_complex(tok)) {
      throw NonRealError("line " + std::to_string(line) + ": complex value '" + tok + "' in a real potential");
    }
    throw FormatError("line " + std::to_string(line) + ": cannot parse '" + tok + "' as a number");
  }
  return v;
}

}  // namespace

RadialPotential::RadialPotential(UniformGrid grid, std::vector<double> samples, std::string label)
    : RadialPotential(grid, std::move(samples), std::move(label), std::nullopt) {}

RadialPotential::RadialPotential(UniformGrid grid, std::vector<double> samples, std::string label,
                                 std::optional<PiecewiseConstant> pieces)
    : grid_(grid), samples_(std::move(samples)), label_(std::move(label)), pieces_(std::move(pieces)) {
  if (samples_.size() != grid_.size()) throw ValidationError("RadialPotential: sample count does not match grid");
  if (std::abs(grid_.start()) > 1e-12 * grid_.step()) throw ValidationError("RadialPotential: grid must start at 0");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw ValidationError("RadialPotential: non-finite sample");
  }
  finish();
}

void RadialPotential::finish() {
  std::size_t last = samples_.size();
  for (std::size_t i = samples_.size(); i-- > 0;) {
    if (samples_[i] != 0.0) {
      last = i;
      break;
    }
  }
  zero_ = (last == samples_.size()) && !pieces_;
  segments_.clear();
  if (pieces_) {
    a_ = pieces_->breaks.back();
    double x0 = 0.0;
    for (std::size_t i = 0; i < pieces_->breaks.size(); ++i) {
      const double x1 = pieces_->breaks[i];
      if (x1 > x0) segments_.push_back({x0, x1, pieces_->heights[i], pieces_->heights[i]});
      x0 = x1;
    }
  } else if (zero_) {
    a_ = grid_.back();
    fallback_ = true;
  } else {
    a_ = grid_[last];
    for (std::size_t i = 0; i < last; ++i) {
      segments_.push_back({grid_[i], grid_[i + 1], samples_[i], samples_[i + 1]});
    }
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (grid_[i] > a_ * (1.0 + 1e-12)) samples_[i] = 0.0;
  }
  first_moment_ = 0.0;
  for (const auto& s : segments_) first_moment_ += segment_abs_moment(s, 1);
}

RadialPotential RadialPotential::zero(double x_max, double step) {
  const UniformGrid g = UniformGrid::covering(0.0, x_max, step);
  return RadialPotential(g, std::vector<double>(g.size(), 0.0), "zero");
}

RadialPotential RadialPotential::square_well(double q0, double a, double x_max, double step) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "square_well(q0=%g,a=%g)", q0, a);
  return piecewise_constant({{a}, {q0}}, x_max, step, buf);
}

RadialPotential RadialPotential::piecewise_constant(const PiecewiseConstant& pc, double x_max, double step,
                                                    std::string label) {
  if (pc.breaks.empty() || pc.breaks.size() != pc.heights.size()) {
    throw ValidationError("piecewise_constant: breaks and heights must be non-empty and of equal length");
  }
  double prev = 0.0;
  for (double b : pc.breaks) {
    if (!(b > prev)) throw ValidationError("piecewise_constant: breaks must be positive and increasing");
    prev = b;
  }
  if (pc.breaks.back() > x_max) throw ValidationError("piecewise_constant: outermost break exceeds x_max");
  PiecewiseConstant trimmed = pc;
  while (trimmed.heights.size() > 1 && trimmed.heights.back() == 0.0) {
    trimmed.heights.pop_back();
    trimmed.breaks.pop_back();
  }
  const UniformGrid g = UniformGrid::covering(0.0, x_max, step);
  if (trimmed.heights.size() == 1 && trimmed.heights[0] == 0.0) {
    return RadialPotential(g, std::vector<double>(g.size(), 0.0), std::move(label));
  }
  std::vector<double> s(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    for (std::size_t j = 0; j < trimmed.breaks.size(); ++j) {
      if (x <= trimmed.breaks[j] * (1.0 + 1e-12)) {
        s[i] = trimmed.heights[j];
        break;
      }
    }
  }
  return RadialPotential(g, std::move(s), std::move(label), trimmed);
}

RadialPotential RadialPotential::from_reconstruction(UniformGrid grid, std::vector<double> samples,
                                                     double threshold, std::string label) {
  std::size_t last = 0;
  bool any = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (std::abs(samples[i]) >= threshold) {
      last = i;
      any = true;
    }
  }
  for (std::size_t i = any ? last + 1 : 0; i < samples.size(); ++i) samples[i] = 0.0;
  return RadialPotential(grid, std::move(samples), std::move(label));
}

double RadialPotential::value(double x) const noexcept {
  if (x > a_ || x < 0.0 || zero_) return 0.0;
  if (pieces_) {
    for (std::size_t j = 0; j < pieces_->breaks.size(); ++j) {
      if (x <= pieces_->breaks[j]) return pieces_->heights[j];
    }
    return 0.0;
  }
  const double r = x / grid_.step();
  const std::size_t i = std::min(static_cast<std::size_t>(r), samples_.size() - 2);
  const double t = r - static_cast<double>(i);
  return samples_[i] + t * (samples_[i + 1] - samples_[i]);
}

RadialPotential RadialPotential::scaled(double factor) const {
  std::vector<double> s = samples_;
  for (double& v : s) v *= factor;
  std::optional<PiecewiseConstant> p = pieces_;
  if (p) {
    for (double& h : p->heights) h *= factor;
  }
  if (factor == 0.0) return RadialPotential(grid_, std::move(s), label_);
  return RadialPotential(grid_, std::move(s), label_, std::move(p));
}

RadialPotential RadialPotential::with_label(std::string label) const {
  RadialPotential out = *this;
  out.label_ = std::move(label);
  return out;
}

RadialPotential load_potential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open potential file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> xs, qs;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact += c;
      }
      if (compact != "x,q") throw FormatError("potential file must start with the header \"x,q\"");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw FormatError("line " + std::to_string(lineno) + ": expected two comma-separated columns");
    }
    xs.push_back(parse_number(trim(line.substr(0, comma)), lineno));
    qs.push_back(parse_number(trim(line.substr(comma + 1)), lineno));
  }
  if (!header) throw FormatError("potential file is empty");
  if (xs.size() < 2) throw FormatError("potential file needs at least two samples");
  const double step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(step > 0.0)) throw FormatError("x must be strictly increasing");
  if (std::abs(xs.front()) > 1e-9 * step) throw FormatError("x must start at 0");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    if (!(d > 0.0)) throw FormatError("x must be strictly increasing (line " + std::to_string(i + 2) + ")");
    if (std::abs(xs[i] - static_cast<double>(i) * step) > 1e-9 * std::max(1.0, xs.back())) {
      throw FormatError("x grid is not uniform near x = " + std::to_string(xs[i]));
    }
  }
  return RadialPotential(UniformGrid(0.0, step, xs.size()), std::move(qs), path.stem().string());
}

void save_potential(const RadialPotential& q, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write potential file " + path.string());
  out << "x,q\n";
  char buf[64];
  for (std::size_t i = 0; i < q.grid().size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", q.grid()[i], q.samples()[i]);
    out << buf;
  }
}

MomentAnalysis moments(const RadialPotential& q, int n_max) {
  if (n_max < 2 || n_max > 200) throw ValidationError("moments: n_max must lie in [2, 200]");
  MomentAnalysis out;
  out.reports.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    double s = 0.0;
    if (!q.is_zero()) {
      for (const auto& seg : q.segments()) s += segment_abs_moment(seg, n);
    }
    out.reports.push_back({n, s, 0.0});
  }
  if (q.is_zero()) return out;

  std::vector<int> ns;
  for (int n = n_max / 2; n <= n_max; ++n) {
    if (out.reports[static_cast<std::size_t>(n)].Q > 0.0) ns.push_back(n);
  }
  if (ns.size() >= 3) {
    Eigen::MatrixXd a(ns.size(), 3);
    Eigen::VectorXd b(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double n = ns[i];
      a(i, 0) = n > 0 ? n * std::log(n) : 0.0;
      a(i, 1) = n;
      a(i, 2) = 1.0;
      b(i) = std::log(out.reports[static_cast<std::size_t>(ns[i])].Q);
    }
    const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
    out.growth_exponent_b = c(0);
  }
  for (auto& r : out.reports) r.growth_exponent_b = out.growth_exponent_b;
  out.infinitely_many_resonances_expected = out.growth_exponent_b < 1.0;
  return out;
}

}  // namespace isl
