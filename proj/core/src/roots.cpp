#include "isl/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isl/errors.hpp"

namespace isl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class ArgumentCounter {
 public:
  ArgumentCounter(const std::function<cd(cd)>& f, double tol, const ZeroSearchOptions& opt)
      : f_(f), tol_(tol), opt_(opt) {}

  int count(const ComplexBox& b) {
    const cd corners[4] = {{b.re_min, b.im_min}, {b.re_max, b.im_min}, {b.re_max, b.im_max}, {b.re_min, b.im_max}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
      const cd za = corners[e], zb = corners[(e + 1) % 4];
      const int pieces = std::max(4, static_cast<int>(std::ceil(std::abs(zb - za) / opt_.initial_spacing)));
      cd zp = za;
      cd fp = eval(za);
      for (int i = 1; i <= pieces; ++i) {
        const cd z = za + (zb - za) * (static_cast<double>(i) / pieces);
        const cd fz = eval(z);
        total += segment(zp, fp, z, fz, 0);
        zp = z;
        fp = fz;
      }
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.1) {
      throw UnderResolvedContour("argument principle gave a non-integer count " + std::to_string(turns));
    }
    return static_cast<int>(rounded);
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  cd eval(cd z) {
    ++evaluations_;
    const cd v = f_(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw UnderResolvedContour("function is not finite on the contour");
    }
    if (std::abs(v) < tol_) {
      throw BoundaryZero("zero on the contour near (" + std::to_string(z.real()) + ", " +
                         std::to_string(z.imag()) + ")");
    }
    return v;
  }

  double segment(cd za, cd fa, cd zb, cd fb, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) <= opt_.max_jump) return d;
    if (depth >= opt_.max_refine_depth) {
      throw UnderResolvedContour("contour refinement limit reached");
    }
    const cd zm = 0.5 * (za + zb);
    const cd fm = eval(zm);
    return segment(za, fa, zm, fm, depth + 1) + segment(zm, fm, zb, fb, depth + 1);
  }

  const std::function<cd(cd)>& f_;
  double tol_;
  const ZeroSearchOptions& opt_;
  std::size_t evaluations_ = 0;
};

class BoxSearch {
 public:
  BoxSearch(const std::function<cd(cd)>& f, double tol, const ZeroSearchOptions& opt)
      : f_(f), tol_(tol), opt_(opt), counter_(f, tol, opt) {}

  void search(const ComplexBox& b, int n, std::vector<cd>& out) {
    if (n == 0) return;
    if (n < 0) throw CountMismatch("negative argument-principle count");
    const cd center{0.5 * (b.re_min + b.re_max), 0.5 * (b.im_min + b.im_max)};
    const double size = std::max(b.width(), b.height());
    if (n == 1 || size <= opt_.min_box) {
      bool ok = false;
      const cd z = damped_newton(f_, center, tol_, opt_.max_newton, ok);
      if (ok && b.contains(z, 1e-9 * (1.0 + size))) {
        for (int i = 0; i < n; ++i) out.push_back(z);
        return;
      }
      if (size <= opt_.min_box) {
        throw CountMismatch("Newton refinement failed in a box of size " + std::to_string(size));
      }
    }
    static constexpr double fractions[] = {0.5, 0.46, 0.54, 0.42, 0.58, 0.38, 0.62};
    for (double frac : fractions) {
      ComplexBox lo = b, hi = b;
      if (b.width() >= b.height()) {
        lo.re_max = hi.re_min = b.re_min + frac * b.width();
      } else {
        lo.im_max = hi.im_min = b.im_min + frac * b.height();
      }
      int nl = 0, nh = 0;
      try {
        nl = counter_.count(lo);
        nh = counter_.count(hi);
      } catch (const BoundaryZero&) {
        continue;
      }
      if (nl + nh != n) continue;
      search(lo, nl, out);
      search(hi, nh, out);
      return;
    }
    throw CountMismatch("could not split a box holding " + std::to_string(n) + " zeros consistently");
  }

  ArgumentCounter& counter() { return counter_; }

 private:
  const std::function<cd(cd)>& f_;
  double tol_;
  const ZeroSearchOptions& opt_;
  ArgumentCounter counter_;
};

}  // namespace

bool ComplexBox::contains(cd z, double slack) const noexcept {
  return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
         z.imag() <= im_max + slack;
}

int winding_number(std::span<const cd> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw UnderResolvedContour("winding_number: need at least two samples");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cd a = samples[i], b = samples[(i + 1) % n];
    if (a == cd{} || b == cd{}) throw UnderResolvedContour("winding_number: zero sample on the contour");
    const double d = std::arg(b / a);
    if (std::abs(d) >= std::numbers::pi * (1.0 - 1e-12)) {
      throw UnderResolvedContour("winding_number: phase jump of pi or more between samples " +
                                 std::to_string(i) + " and " + std::to_string((i + 1) % n));
    }
    total += d;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

cd damped_newton(const std::function<cd(cd)>& f, cd z, double tol, int max_iter, bool& converged) {
  converged = false;
  cd fz = f(z);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fz) <= tol) {
      converged = true;
      return z;
    }
    const double h = 1e-6 * (1.0 + std::abs(z));
    const cd d = (f(z + h) - f(z - h)) / (2.0 * h);
    if (d == cd{} || !std::isfinite(std::abs(d))) return z;
    const cd step = fz / d;
    double lambda = 1.0;
    cd zn = z - step;
    cd fn = f(zn);
    for (int k = 0; k < 12 && !(std::abs(fn) < std::abs(fz)); ++k) {
      lambda *= 0.5;
      zn = z - lambda * step;
      fn = f(zn);
    }
    if (!std::isfinite(std::abs(fn))) return z;
    if (std::abs(zn - z) <= 1e-15 * (1.0 + std::abs(z)) && std::abs(fn) > tol) {
      z = zn;
      fz = fn;
      break;
    }
    z = zn;
    fz = fn;
  }
  converged = std::abs(fz) <= tol;
  return z;
}

ZeroSearchResult find_zeros_in_box(const std::function<cd(cd)>& f, const ComplexBox& box, double tol,
                                   const ZeroSearchOptions& opt) {
  if (!(box.re_max > box.re_min) || !(box.im_max > box.im_min)) {
    throw ValidationError("find_zeros_in_box: empty box");
  }
  BoxSearch search(f, tol, opt);
  ZeroSearchResult result;
  result.argument_count = search.counter().count(box);
  result.boundary_samples = search.counter().evaluations();
  search.search(box, result.argument_count, result.zeros);
  if (static_cast<int>(result.zeros.size()) != result.argument_count) {
    throw CountMismatch("found " + std::to_string(result.zeros.size()) + " zeros, argument principle counts " +
                        std::to_string(result.argument_count));
  }
  std::sort(result.zeros.begin(), result.zeros.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return result;
}

}  // namespace isl
