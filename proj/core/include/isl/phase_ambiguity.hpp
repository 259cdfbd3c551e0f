#pragma once

#include <cstdint>
#include <optional>

#include "isl/phase_shifts.hpp"
#include "isl/potential.hpp"

namespace isl {

struct AmbiguityPair {
  PiecewiseConstant q1, q2;
  double k = 1.0;
  int L = 0;
  double phase_gap = 0.0;      // max over l <= L of |delta_l(q1) - delta_l(q2)| modulo pi
  double potential_gap = 0.0;  // sup |q1 - q2|
};

struct AmbiguitySearchOptions {
  double k = 1.0;
  int L = 15;
  double target_phase_gap = 1e-3;
  double min_potential_gap = 0.5;
  int budget = 4000;    // objective evaluations over all restarts
  int restarts = 4;
  std::uint64_t seed = 1;
  int max_pieces = 4;
  double break_quantum = 0.005;  // breaks are multiples of this
  /// Starting point of the first restart; later restarts draw at random.
  std::optional<PiecewiseConstant> initial_q2;
};

struct AmbiguitySearchResult {
  AmbiguityPair pair;  // gaps recomputed by fresh phase-shift solves
  int evaluations = 0;
  bool budget_exhausted = false;  // target not reached within the budget
};

/// sup |p - q| for two piecewise-constant potentials (zero beyond their last
/// break).
double potential_gap(const PiecewiseConstant& p, const PiecewiseConstant& q);

/// max over l <= L of |delta_l(p) - delta_l(q)|, with differences reduced
/// modulo pi (S_l = e^{2 i delta_l} only fixes delta_l modulo pi).
double phase_gap(const PhaseShiftSet& p, const PhaseShiftSet& q);

/// Piecewise-constant potential on a grid fine enough for phase shifts.
RadialPotential potential_from_pieces(const PiecewiseConstant& pc, double step = 0.005);

/// Derivative-free search for q2 (up to max_pieces pieces sharing q1's
/// support) whose phase shifts at k for l <= L match q1's, subject to
/// sup |q1 - q2| >= min_potential_gap. Coordinate descent over heights and
/// inner breaks with step halving; restarts are seeded and independent.
///
/// Throws ValidationError when options.initial_q2 violates the gap
/// constraint. A search that misses the target returns the best pair with
/// budget_exhausted set.
AmbiguitySearchResult search_ambiguous_pair(const PiecewiseConstant& q1, const AmbiguitySearchOptions& opt);

}  // namespace isl
