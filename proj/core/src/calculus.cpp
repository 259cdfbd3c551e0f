#include "isl/calculus.hpp"

#include "isl/errors.hpp"

namespace isl {

std::vector<double> derivative4(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  if (n < 5) throw ValidationError("derivative4: at least five samples are required");
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  d[0] = s * (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]);
  d[1] = s * (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = s * (v[i - 2] - 8 * v[i - 1] + 8 * v[i + 1] - v[i + 2]);
  }
  d[n - 2] = -s * (-3 * v[n - 1] - 10 * v[n - 2] + 18 * v[n - 3] - 6 * v[n - 4] + v[n - 5]);
  d[n - 1] = -s * (-25 * v[n - 1] + 48 * v[n - 2] - 36 * v[n - 3] + 16 * v[n - 4] - 3 * v[n - 5]);
  return d;
}

double trapezoid(std::span<const double> v, double h) {
  if (v.size() < 2) return 0.0;
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * h;
}

double simpson(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (v[0] + v[1]);
  if (n == 4) return 3.0 * h / 8.0 * (v[0] + 3 * v[1] + 3 * v[2] + v[3]);
  // Odd count: plain Simpson. Even count: Simpson on the first n-3 samples
  // plus the 3/8 rule on the last four.
  const std::size_t m = (n % 2 == 1) ? n : n - 3;
  double s = v[0] + v[m - 1];
  for (std::size_t i = 1; i + 1 < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
  s *= h / 3.0;
  if (m != n) {
    s += 3.0 * h / 8.0 * (v[n - 4] + 3 * v[n - 3] + 3 * v[n - 2] + v[n - 1]);
  }
  return s;
}

}  // namespace isl
