// One pass/fail line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "isl/born.hpp"
#include "isl/forward.hpp"
#include "isl/gelfand_levitan.hpp"
#include "isl/krein.hpp"
#include "isl/marchenko.hpp"
#include "isl/phase_ambiguity.hpp"
#include "isl/phase_shifts.hpp"
#include "isl/resonance.hpp"
#include "isl/roots.hpp"
#include "isl/serialization.hpp"

using namespace isl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

UniformGrid kgrid(double k_max, double step) {
  return UniformGrid(step, step, static_cast<std::size_t>(std::llround(k_max / step)));
}

RadialPotential well(double q0, double step = 0.01) { return RadialPotential::square_well(q0, 1.0, 2.0, step); }

cd well_jost(cd k, double q0) {
  const cd kap = std::sqrt(k * k - q0);
  return std::exp(cd(0, 1) * k) * (std::cos(kap) - cd(0, 1) * k * std::sin(kap) / kap);
}

double sup_error(const RadialPotential& r, const RadialPotential& q) {
  double e = 0.0;
  for (std::size_t i = 0; i < r.grid().size() && r.grid()[i] <= 0.9 + 1e-9; ++i) {
    e = std::max(e, std::abs(r.samples()[i] - q.value(r.grid()[i])));
  }
  return e;
}

double disagreement(const RadialPotential& a, const RadialPotential& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.grid().size() && a.grid()[i] <= 0.9 + 1e-9; ++i) {
    e = std::max(e, std::abs(a.samples()[i] - b.value(a.grid()[i])));
  }
  return e;
}

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

// Round-trip error at (x_step, k_max) and at half the step with twice the k range.
struct Refinement {
  double coarse, fine, order, fine_seconds;
};

Refinement refine(const std::function<RadialPotential(const RadialPotential&, double, double)>& invert, double q0) {
  const auto qc = well(q0, 0.02);
  const double ec = sup_error(invert(qc, 0.02, 30.0), qc);
  const auto qf = well(q0, 0.01);
  const auto t0 = Clock::now();
  const double ef = sup_error(invert(qf, 0.01, 60.0), qf);
  return {ec, ef, std::log2(ec / ef), seconds_since(t0)};
}

RadialPotential via_marchenko(const RadialPotential& q, double h, double k_max) {
  return invert_marchenko(forward_data(q, kgrid(k_max, 0.01)), UniformGrid::covering(0.0, 2.0, h)).q;
}

RadialPotential via_gl(const RadialPotential& q, double h, double k_max) {
  const auto d = forward_data(q, kgrid(k_max, 0.01));
  return invert_gl(spectral_from_data(q, d, k_max * k_max), UniformGrid::covering(0.0, 2.0, h)).q;
}

RadialPotential via_krein(const RadialPotential& q, double h, double k_max) {
  return invert_krein(forward_data(q, kgrid(k_max, h)), UniformGrid::covering(0.0, 2.0, h)).q;
}

Outcome round_trip(const std::function<RadialPotential(const RadialPotential&, double, double)>& invert,
                   const std::vector<double>& q0s) {
  bool ok = true;
  std::string detail;
  for (double q0 : q0s) {
    const Refinement r = refine(invert, q0);
    ok = ok && r.fine <= 5e-2 && r.order >= 1.0 && r.fine_seconds < 60.0;
    detail += "q0=" + fmt("%g", q0) + ": err " + fmt("%.3g", r.fine) + " (coarse " + fmt("%.3g", r.coarse) +
              ", order " + fmt("%.2f", r.order) + ", " + fmt("%.1f", r.fine_seconds) + " s); ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  report(1, "forward vs matching formula", [] {
    double err = 0.0;
    for (double q0 : {1.0, -4.0}) {
      const auto q = well(q0);
      for (double k = 0.05; k < 40.0; k += 0.37) {
        err = std::max(err, std::abs(jost_function(q, k) - well_jost(k, q0)));
      }
      const auto d = scattering_matrix(q, kgrid(20.0, 0.5));
      for (std::size_t i = 0; i < d.S.size(); ++i) {
        const cd f = well_jost(d.k_grid[i], q0);
        err = std::max(err, std::abs(d.S[i] - std::conj(f) / f));
      }
    }
    const auto kap = bound_states(well(-4.0), 3.0);
    const double bs = kap.size() == 1 ? std::abs(kap[0] - 0.638045048285237717) : 1.0;
    const auto t0 = Clock::now();
    const auto d = forward_data(well(1.0), kgrid(20.0, 0.01));
    const double t = seconds_since(t0);
    return Outcome{err <= 1e-8 && bs <= 1e-8 && d.S.size() == 2000 && t < 5.0,
                   "jost/S err " + fmt("%.2e", err) + ", bound state err " + fmt("%.2e", bs) + ", 2000 k in " +
                       fmt("%.2f", t) + " s"};
  });

  report(2, "unitarity and levinson index", [] {
    const std::vector<RadialPotential> qs{well(1.0), well(-1.0), well(-4.0), well(-25.0), well(6.0),
                                          RadialPotential::piecewise_constant({{0.5, 1.0}, {2.0, -6.0}}, 2.0, 0.01)};
    double defect = 0.0;
    int bad = 0;
    std::string js;
    for (const auto& q : qs) {
      const auto d = forward_data(q, kgrid(40.0, 0.01));
      defect = std::max(defect, d.unitarity_defect());
      if (winding_number(d.symmetric_samples()) != -2 * d.J()) ++bad;
      js += std::to_string(d.J());
    }
    return Outcome{defect <= 1e-8 && bad == 0, std::to_string(qs.size()) + " potentials (J = " + js +
                                                    "), max ||S|-1| " + fmt("%.1e", defect) + ", index mismatches " +
                                                    std::to_string(bad)};
  });

  report(3, "marchenko round trip", [] { return round_trip(via_marchenko, {1.0, -4.0}); });
  report(4, "gel'fand-levitan round trip", [] { return round_trip(via_gl, {1.0, -4.0}); });

  report(5, "krein round trip", [] {
    Outcome o = round_trip(via_krein, {1.0});
    const auto d = forward_data(well(1.0), kgrid(60.0, 0.01));
    const auto j = jost_from_S(d);
    double err = 0.0;
    for (std::size_t i = 0; i < j.f.size(); ++i) err = std::max(err, std::abs(j.f[i] - d.f0_values[i]));
    o.pass = o.pass && err <= 1e-4;
    o.detail += "f err " + fmt("%.2e", err);
    return o;
  });

  report(6, "cross-method agreement", [] {
    const auto xg = UniformGrid::covering(0.0, 2.0, 0.01);
    double worst = 0.0;
    std::string detail;
    for (double q0 : {1.0, -4.0}) {
      const auto q = well(q0);
      const auto d = forward_data(q, kgrid(60.0, 0.01));
      std::vector<RadialPotential> r{invert_marchenko(d, xg).q, invert_gl(spectral_from_data(q, d, 3600.0), xg).q};
      if (d.J() == 0) r.push_back(invert_krein(d, xg).q);
      for (std::size_t a = 0; a < r.size(); ++a) {
        for (std::size_t b = a + 1; b < r.size(); ++b) worst = std::max(worst, disagreement(r[a], r[b]));
      }
      detail += "q0=" + fmt("%g", q0) + " (" + std::to_string(r.size()) + " methods) ";
    }
    return Outcome{worst <= 2e-2, detail + "max pairwise " + fmt("%.2e", worst)};
  });

  report(7, "norming constant dual definition", [] {
    double gap = 0.0;
    int n = 0;
    for (const auto& q : {well(-4.0), well(-25.0), well(-60.0),
                          RadialPotential::piecewise_constant({{0.5, 1.0}, {2.0, -6.0}}, 2.0, 0.01)}) {
      for (double k : bound_states(q, default_kappa_max(q))) {
        gap = std::max(gap, norming_constant(q, k, 1.0).relative_gap);
        ++n;
      }
    }
    return Outcome{n > 0 && gap <= 1e-4, std::to_string(n) + " bound states, max relative gap " + fmt("%.2e", gap)};
  });

  report(8, "square-well resonances", [] {
    const auto set = find_resonances(well(1.0), ComplexBox{0.5, 6.0, -3.0, -0.01});
    // roots of kappa cos(kappa) = i k sin(kappa), kappa^2 = k^2 - 1, to 30 digits
    const std::vector<cd> oracle{{2.66633226653578729, -1.75481505668402198}, {5.94890829267559387, -2.52431958533074834}};
    double err = set.zeros.size() == oracle.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < std::min(set.zeros.size(), oracle.size()); ++i) {
      err = std::max(err, std::abs(set.zeros[i] - oracle[i]));
    }
    const bool count_ok = set.count_by_argument_principle == static_cast<int>(set.zeros.size());
    return Outcome{err <= 1e-6 && count_ok && set.symmetry_error <= 1e-8,
                   std::to_string(set.zeros.size()) + " zeros (argument count " +
                       std::to_string(set.count_by_argument_principle) + "), oracle err " + fmt("%.2e", err) +
                       ", symmetry err " + fmt("%.1e", set.symmetry_error)};
  });

  report(9, "radius from phase shifts", [] {
    const auto ps = phase_shifts(well(1.0), 1.0, 30);
    const double a30 = ps.support_radius_estimates[30];
    return Outcome{std::abs(a30 - 1.0) <= 0.1, "a_30 = " + fmt("%.5f", a30) + " (target within 10% of 1), " +
                                                   "extrapolated limit " + fmt("%.4f", ps.extrapolated_radius())};
  });

  report(10, "phase-shift ambiguity", [] {
    const PiecewiseConstant q1{{1.0}, {1.0}};
    AmbiguitySearchOptions opt;  // k = 1, L = 15, seed 1
    const auto r = search_ambiguous_pair(q1, opt);
    const auto p1 = phase_shifts(potential_from_pieces(r.pair.q1), opt.k, opt.L);
    const auto p2 = phase_shifts(potential_from_pieces(r.pair.q2), opt.k, opt.L);
    const double phase = phase_gap(p1, p2), pot = potential_gap(r.pair.q1, r.pair.q2);
    return Outcome{pot >= 0.5 && phase <= 1e-3, "phase gap " + fmt("%.3e", phase) + ", potential gap " +
                                                    fmt("%.3f", pot) + ", " + std::to_string(r.evaluations) +
                                                    " evaluations"};
  });

  report(11, "born ill-posedness", [] {
    const auto q1 = born_bump(1.0);
    const UniformGrid xg = UniformGrid::covering(0.0, 60.0, 0.05);
    std::vector<double> cutoffs;
    for (int c = 2; c <= 60; c += 2) cutoffs.push_back(c);
    const auto sweep = born_sweep(q1, 1.0, born_data(q1, xg), cutoffs, 1e-3, 1);
    const auto& t = sweep.error_growth_table;
    std::size_t best = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].error < t[best].error) best = i;
    }
    const bool interior = best > 0 && best + 1 < t.size();
    const bool grows = interior && t.back().error > t[best].error && t[best + 1].error >= t[best].error;
    const auto q5 = born_bump(5.0);
    const auto exact = born_sweep(q5, 5.0, exact_backscatter_data(q5, xg), cutoffs, 0.0, 1);
    return Outcome{interior && grows && exact.inversion_error_sup >= 0.30,
                   "noisy optimum at cutoff " + fmt("%g", t[best].cutoff) + " (err " + fmt("%.3g", t[best].error) +
                       ", at 60: " + fmt("%.3g", t.back().error) + "); exact data at scale 5: best err " +
                       fmt("%.3f", exact.inversion_error_sup) + " (target >= 0.30)"};
  });

  report(12, "optical theorem", [] {
    const auto q = well(1.0);
    double worst = 0.0;
    for (double k : {0.5, 1.0, 3.0}) worst = std::max(worst, optical_theorem(phase_shifts(q, k, 25)).residual);
    const auto born = born_optical_theorem(q, 1.0);
    return Outcome{worst <= 1e-8 && born.lhs == 0.0 && born.rhs > 0.0,
                   "partial-wave residual " + fmt("%.1e", worst) + "; born lhs " + fmt("%g", born.lhs) + ", rhs " +
                       fmt("%.4f", born.rhs)};
  });

  report(13, "deterministic reports", [] {
    std::filesystem::create_directories("acceptance_inputs");
    save_potential(well(1.0), "acceptance_inputs/barrier.csv");
    bool same = true;
    std::string cmds;
    for (const std::string cmd : {"roundtrip", "born-demo", "ambiguity", "resonances"}) {
      std::string first;
      for (int run = 0; run < 2; ++run) {
        cli::ExperimentConfig c;
        c.command = cmd;
        c.potential = "acceptance_inputs/barrier.csv";
        c.out = "acceptance_out/" + cmd;  // same directory: the report embeds it
        c.seed = 5;
        c.budget = 200;
        c.target_gap = 1e-4;
        c.L = 15;
        std::ostringstream err;
        cli::run(c, err);
        const std::string text = read_text(c.out + "/report.json");
        if (run == 0) first = text;
        same = same && text == first;
      }
      cmds += cmd + " ";
    }
    return Outcome{same, "two runs each of " + cmds + "with seed 5"};
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
