#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kcbs/measurement.hpp"

namespace kcbs {

/// Deterministic assignment of outcomes +-1 to the five settings.
using Assignment = std::array<int, kNumSettings>;

/// All 32 assignments, indexed by bit pattern: bit j-1 set means v_j = +1.
std::vector<Assignment> all_assignments();

/// kappa of one assignment: sum_j v_j v_{j+1}, cyclic.
int assignment_kappa(const Assignment& a);

/// S of one assignment: #{j : v_j = +1} - #{j : v_j = +1 and v_{j+1} = +1}.
int assignment_s(const Assignment& a);

struct AssignmentRecord {
  Assignment values{};
  int kappa = 0;
  int s = 0;
};

/// Enumeration table over all 32 assignments.
std::vector<AssignmentRecord> assignment_table();

struct KappaRange {
  double min = 0.0;
  double max = 0.0;
};

/// Extremes of kappa over all deterministic assignments: [-3, 5].
KappaRange classical_kappa_range();

/// Maximum S over deterministic assignments; 2 whether or not assignments
/// with adjacent simultaneous -1 outcomes are excluded.
double classical_s_max(bool exclusive_only);

/// Joint tables of the five adjacent pairs under a probability distribution
/// over the 32 assignments. Any such table set satisfies S <= 2; asserted
/// internally. Throws for negative weights or a sum away from 1.
std::array<JointProbTable, kNumSettings> fine_marginal_check(
    const std::vector<double>& distribution);

}  // namespace kcbs
