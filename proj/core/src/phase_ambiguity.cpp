#include "isl/phase_ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "isl/errors.hpp"

namespace isl {
namespace {

double piece_value(const PiecewiseConstant& p, double x) {
  for (std::size_t j = 0; j < p.breaks.size(); ++j) {
    if (x <= p.breaks[j]) return p.heights[j];
  }
  return 0.0;
}

// Heights plus inner breaks counted in quanta; the outer break stays at q1's
// support.
struct Candidate {
  std::vector<long> ticks;  // inner breaks, strictly increasing, in (0, n_outer)
  std::vector<double> heights;
};

struct Restart {
  Candidate best;
  double gap = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

class Objective {
 public:
  Objective(const PiecewiseConstant& q1, const AmbiguitySearchOptions& opt, long outer)
      : q1_(q1), opt_(opt), outer_(outer), ref_(phase_shifts(potential_from_pieces(q1), opt.k, opt.L)) {}

  PiecewiseConstant pieces(const Candidate& c) const {
    PiecewiseConstant p;
    for (long t : c.ticks) p.breaks.push_back(static_cast<double>(t) * opt_.break_quantum);
    p.breaks.push_back(static_cast<double>(outer_) * opt_.break_quantum);
    p.heights = c.heights;
    return p;
  }

  bool valid(const Candidate& c) const {
    long prev = 0;
    for (long t : c.ticks) {
      if (t <= prev) return false;
      prev = t;
    }
    return prev < outer_;
  }

  // phase gap, or infinity when the candidate violates the gap constraint
  double operator()(const Candidate& c) const {
    const PiecewiseConstant p = pieces(c);
    if (potential_gap(q1_, p) < opt_.min_potential_gap) return std::numeric_limits<double>::infinity();
    return phase_gap(ref_, phase_shifts(potential_from_pieces(p), opt_.k, opt_.L));
  }

 private:
  const PiecewiseConstant& q1_;
  const AmbiguitySearchOptions& opt_;
  long outer_;
  PhaseShiftSet ref_;
};

// Coordinate descent with step halving from x until the target, the budget,
// or the smallest steps stall.
Restart descend(const Objective& f, Candidate x, int budget, double target) {
  Restart r;
  r.best = std::move(x);
  r.gap = f(r.best);
  r.evaluations = 1;
  double hstep = 0.5;
  long bstep = 20;
  while (r.evaluations < budget && r.gap > target) {
    bool improved = false;
    const std::size_t nh = r.best.heights.size(), nb = r.best.ticks.size();
    for (std::size_t c = 0; c < nh + nb && r.evaluations < budget; ++c) {
      for (int dir : {1, -1}) {
        Candidate y = r.best;
        if (c < nh) {
          y.heights[c] += dir * hstep;
        } else {
          y.ticks[c - nh] += dir * bstep;
          if (!f.valid(y)) continue;
        }
        const double g = f(y);
        ++r.evaluations;
        if (g < r.gap) {
          r.best = std::move(y);
          r.gap = g;
          improved = true;
          break;
        }
        if (r.evaluations >= budget) break;
      }
    }
    if (!improved) {
      if (hstep < 1e-7 && bstep == 1) break;
      hstep *= 0.5;
      bstep = std::max(1L, bstep / 2);
    }
  }
  return r;
}

Candidate random_start(const PiecewiseConstant& q1, const AmbiguitySearchOptions& opt, long outer,
                       std::mt19937_64& rng) {
  const auto pieces = static_cast<std::size_t>(opt.max_pieces);
  Candidate c;
  std::uniform_int_distribution<long> tick(1, outer - 1);
  std::set<long> ticks;
  while (ticks.size() < pieces - 1) ticks.insert(tick(rng));
  c.ticks.assign(ticks.begin(), ticks.end());
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  for (std::size_t j = 0; j < pieces; ++j) {
    const double x = j == 0 ? 0.0 : static_cast<double>(c.ticks[j - 1]) * opt.break_quantum;
    c.heights.push_back(piece_value(q1, x + 1e-12) + u(rng));
  }
  // The innermost piece carries the required gap.
  const double sign = (rng() & 1U) != 0U ? 1.0 : -1.0;
  c.heights[0] = piece_value(q1, 0.0) + sign * opt.min_potential_gap * 1.2;
  return c;
}

// One restart: descents from fresh random points (the first may be given)
// until the target is met or the budget is spent.
Restart run_restart(const Objective& f, const PiecewiseConstant& q1, const AmbiguitySearchOptions& opt, long outer,
                    std::size_t index, std::optional<Candidate> first, int budget) {
  std::seed_seq seq{opt.seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  Restart best;
  int used = 0;
  while (used < budget && best.gap > opt.target_phase_gap) {
    Candidate x = first ? *first : random_start(q1, opt, outer, rng);
    first.reset();
    Restart r = descend(f, std::move(x), budget - used, opt.target_phase_gap);
    used += r.evaluations;
    if (r.gap < best.gap) best = std::move(r);
  }
  best.evaluations = used;
  return best;
}

}  // namespace

double potential_gap(const PiecewiseConstant& p, const PiecewiseConstant& q) {
  std::set<double> cuts{0.0};
  cuts.insert(p.breaks.begin(), p.breaks.end());
  cuts.insert(q.breaks.begin(), q.breaks.end());
  const std::vector<double> c(cuts.begin(), cuts.end());
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double mid = 0.5 * (c[i] + c[i + 1]);
    gap = std::max(gap, std::abs(piece_value(p, mid) - piece_value(q, mid)));
  }
  return gap;
}

double phase_gap(const PhaseShiftSet& p, const PhaseShiftSet& q) {
  if (p.delta.size() != q.delta.size()) throw ValidationError("phase_gap: the sets have different L");
  double gap = 0.0;
  for (std::size_t l = 0; l < p.delta.size(); ++l) {
    gap = std::max(gap, std::abs(std::remainder(p.delta[l] - q.delta[l], std::numbers::pi)));
  }
  return gap;
}

RadialPotential potential_from_pieces(const PiecewiseConstant& pc, double step) {
  if (pc.breaks.empty()) throw ValidationError("potential_from_pieces: no pieces");
  const double x_max = std::ceil(pc.breaks.back() * 1.5 / step) * step;
  return RadialPotential::piecewise_constant(pc, x_max, step);
}

AmbiguitySearchResult search_ambiguous_pair(const PiecewiseConstant& q1, const AmbiguitySearchOptions& opt) {
  if (opt.L < 10) throw ValidationError("search_ambiguous_pair: L must be at least 10");
  if (!(opt.k > 0.0)) throw ValidationError("search_ambiguous_pair: k must be positive");
  if (opt.target_phase_gap < 1e-4) throw ValidationError("search_ambiguous_pair: target phase gap below 1e-4");
  if (!(opt.min_potential_gap > 0.0)) throw ValidationError("search_ambiguous_pair: min potential gap must be positive");
  if (opt.max_pieces < 1 || opt.max_pieces > 4) throw ValidationError("search_ambiguous_pair: 1 to 4 pieces");
  if (opt.restarts < 1 || opt.budget < opt.restarts) throw ValidationError("search_ambiguous_pair: bad budget");
  if (q1.breaks.empty() || q1.breaks.size() != q1.heights.size()) {
    throw ValidationError("search_ambiguous_pair: q1 needs matching breaks and heights");
  }
  const double a = q1.breaks.back();
  const long outer = std::lround(a / opt.break_quantum);
  if (std::abs(static_cast<double>(outer) * opt.break_quantum - a) > 1e-9 * a) {
    throw ValidationError("search_ambiguous_pair: q1's support must be a multiple of the break quantum");
  }
  const auto pieces = static_cast<std::size_t>(opt.max_pieces);
  if (outer < static_cast<long>(pieces)) throw ValidationError("search_ambiguous_pair: support too short");

  const Objective f(q1, opt, outer);
  std::optional<Candidate> given;
  if (opt.initial_q2) {
    const PiecewiseConstant& p = *opt.initial_q2;
    if (p.breaks.empty() || p.breaks.size() > pieces || p.breaks.size() != p.heights.size() ||
        std::abs(p.breaks.back() - a) > 1e-9 * a) {
      throw ValidationError("search_ambiguous_pair: initial q2 must have 1 to 4 pieces ending at q1's support");
    }
    if (potential_gap(q1, p) < opt.min_potential_gap) {
      throw ValidationError("search_ambiguous_pair: initial q2 violates the potential-gap constraint");
    }
    Candidate c;
    for (std::size_t j = 0; j + 1 < p.breaks.size(); ++j) c.ticks.push_back(std::lround(p.breaks[j] / opt.break_quantum));
    c.heights = p.heights;
    if (!f.valid(c)) throw ValidationError("search_ambiguous_pair: initial q2 breaks collapse on the quantum grid");
    given = std::move(c);
  }

  std::vector<Restart> runs(static_cast<std::size_t>(opt.restarts));
  const int per = opt.budget / opt.restarts;
  parallel_for(runs.size(), [&](std::size_t r) {
    runs[r] = run_restart(f, q1, opt, outer, r, r == 0 ? given : std::nullopt, per);
  });

  std::size_t best = 0;
  int evaluations = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    evaluations += runs[r].evaluations;
    if (runs[r].gap < runs[best].gap) best = r;
  }
  AmbiguitySearchResult out;
  out.evaluations = evaluations;
  AmbiguityPair& pair = out.pair;
  pair.q1 = q1;
  pair.q2 = f.pieces(runs[best].best);
  pair.k = opt.k;
  pair.L = opt.L;
  // Fresh solves for the reported gaps.
  pair.potential_gap = potential_gap(pair.q1, pair.q2);
  pair.phase_gap = phase_gap(phase_shifts(potential_from_pieces(pair.q1), opt.k, opt.L),
                             phase_shifts(potential_from_pieces(pair.q2), opt.k, opt.L));
  out.budget_exhausted = !(pair.phase_gap <= opt.target_phase_gap) || pair.potential_gap < opt.min_potential_gap;
  return out;
}

}  // namespace isl
