#include "kcbs/hidden_variable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kcbs/kcbs_eval.hpp"

namespace kcbs {

namespace {
constexpr std::size_t kNumAssignments = 32;
}

std::vector<Assignment> all_assignments() {
  std::vector<Assignment> out;
  out.reserve(kNumAssignments);
  for (std::uint32_t bits = 0; bits < kNumAssignments; ++bits) {
    Assignment a{};
    for (int j = 0; j < kNumSettings; ++j) {
      a[static_cast<std::size_t>(j)] = (bits >> j) & 1u ? +1 : -1;
    }
    out.push_back(a);
  }
  return out;
}

int assignment_kappa(const Assignment& a) {
  int kappa = 0;
  for (int j = 0; j < kNumSettings; ++j) {
    kappa += a[static_cast<std::size_t>(j)] *
             a[static_cast<std::size_t>((j + 1) % kNumSettings)];
  }
  return kappa;
}

int assignment_s(const Assignment& a) {
  int s = 0;
  for (int j = 0; j < kNumSettings; ++j) {
    const bool plus = a[static_cast<std::size_t>(j)] == +1;
    const bool next_plus =
        a[static_cast<std::size_t>((j + 1) % kNumSettings)] == +1;
    s += static_cast<int>(plus) - static_cast<int>(plus && next_plus);
  }
  return s;
}

std::vector<AssignmentRecord> assignment_table() {
  std::vector<AssignmentRecord> out;
  out.reserve(kNumAssignments);
  for (const auto& a : all_assignments()) {
    out.push_back({a, assignment_kappa(a), assignment_s(a)});
  }
  return out;
}

KappaRange classical_kappa_range() {
  KappaRange range{5.0, -5.0};
  for (const auto& a : all_assignments()) {
    const double kappa = assignment_kappa(a);
    range.min = std::min(range.min, kappa);
    range.max = std::max(range.max, kappa);
  }
  return range;
}

double classical_s_max(bool exclusive_only) {
  int best = 0;
  for (const auto& a : all_assignments()) {
    if (exclusive_only) {
      bool has_adjacent_minus = false;
      for (int j = 0; j < kNumSettings; ++j) {
        if (a[static_cast<std::size_t>(j)] == -1 &&
            a[static_cast<std::size_t>((j + 1) % kNumSettings)] == -1) {
          has_adjacent_minus = true;
          break;
        }
      }
      if (has_adjacent_minus) continue;
    }
    best = std::max(best, assignment_s(a));
  }
  return best;
}

std::array<JointProbTable, kNumSettings> fine_marginal_check(
    const std::vector<double>& distribution) {
  if (distribution.size() != kNumAssignments) {
    throw std::invalid_argument("fine_marginal_check: need 32 weights, got " +
                                std::to_string(distribution.size()));
  }
  for (double w : distribution) {
    if (w < 0.0) {
      throw std::invalid_argument("fine_marginal_check: negative weight");
    }
  }
  const double total =
      std::accumulate(distribution.begin(), distribution.end(), 0.0);
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw std::invalid_argument("fine_marginal_check: weights sum to " +
                                std::to_string(total));
  }

  const auto assignments = all_assignments();
  std::array<JointProbTable, kNumSettings> tables{};
  for (int j = 0; j < kNumSettings; ++j) {
    JointProbTable& t = tables[static_cast<std::size_t>(j)];
    t.context = j + 1;
    for (std::size_t i = 0; i < kNumAssignments; ++i) {
      const int v1 = assignments[i][static_cast<std::size_t>(j)];
      const int v2 =
          assignments[i][static_cast<std::size_t>((j + 1) % kNumSettings)];
      const double w = distribution[i];
      if (v1 == +1 && v2 == +1) t.p_pp += w;
      if (v1 == +1 && v2 == -1) t.p_pm += w;
      if (v1 == -1 && v2 == +1) t.p_mp += w;
      if (v1 == -1 && v2 == -1) t.p_mm += w;
    }
    t.marginal_first = t.p_pp + t.p_pm;
    t.marginal_second = t.p_pp + t.p_mp;
    t.p_minus_total = t.p_mp + t.p_mm;
    t.click_split_defined = true;
  }

  // Every global distribution yields marginal tables on the classical side
  // of the bound.
  if (s_from_tables(tables) > 2.0 + kProbabilityTol) {
    throw std::logic_error("fine_marginal_check: marginal tables exceed 2");
  }
  return tables;
}

}  // namespace kcbs
