// Capacity-region evaluation for arbitrary discrete models: the information
// bounds induced by a test channel, membership of a rate tuple, the maximum
// generated-key rate in closed form, and a randomized search for a witness
// test channel. The region is an existential statement over P_{U|Y}; search
// failure therefore never proves non-membership.
#pragma once

#include <cstdint>
#include <optional>

#include "bis/models.hpp"

namespace bis {

// Feasible-side tolerance for all region inequalities.
inline constexpr double kFeasibilityTol = 1e-9;

// Signed margins of the five region inequalities, >= 0 when satisfied:
//   sum_ic:  I(Z;U) - (R_I + R_C)
//   sum_ig:  I(Z;U) - (R_I + R_G)
//   sum_icg: I(Z;U) + min{Gamma, R_C, R_G} - (R_I + R_C + R_G)
//   storage: R_J - (I(Y;U) - I(Z;U) + R_I + R_C)
//   privacy: R_L - (I(X;U) - I(Z;U) + R_I)
struct RateCheck {
  double sum_ic, sum_ig, sum_icg, storage, privacy;

  double min_slack() const;
  bool ok() const { return min_slack() >= -kFeasibilityTol; }
};

RegionBounds region_bounds(const DiscreteBIS& bis, const TestChannel& test,
                             Unit unit);

// Throws if the query and bounds units differ.
RateCheck check_rates(const RateQuery& q, const RegionBounds& b);

// Supremum of R_G achievable with the given bounds, identification and
// chosen-key rates, and correlation budget, with storage/leakage unbounded:
//   min(izu - r_i, izu - r_i - r_c + min(gamma, r_c)).
// Empty when r_i + r_c exceeds izu.
std::optional<double> max_rg(const RegionBounds& b, double r_i, double r_c,
                             double gamma);
double max_rg_value(double izu, double r_i, double r_c, double gamma);

enum class ReducedVariant { chosen_key_only, single_user };

// Reduced inequality sets of the two zero-budget special cases:
// chosen_key_only requires r_g = 0, single_user requires r_i = 0; both
// require gamma = 0. Each agrees with check_rates under its restriction.
bool reduced_region(const RateQuery& q, const RegionBounds& b,
                    ReducedVariant variant);

struct SearchConfig {
  std::size_t restarts = 64;
  std::size_t steps = 500;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double step_init = 0.5;
  double step_final = 0.02;
};

struct SearchOutcome {
  // Witness channel for which check_rates passes; empty when the budget was
  // exhausted without one ("not found at this budget", never non-membership).
  std::optional<TestChannel> witness;
  std::size_t restart_index = 0;  // restart that produced the witness
  // Best min-slack seen across all restarts; only populated when no witness
  // was found (all restarts then run to completion, making it deterministic).
  std::optional<double> best_min_slack;
};

// Multi-start randomized hill climbing over row-stochastic P_{U|Y} with
// |U| = |Y| + 2. Restarts own private random substreams of (seed, index) and
// may run concurrently; the witness with the smallest restart index wins.
SearchOutcome search_test_channel(const DiscreteBIS& bis, const RateQuery& q,
                                  const SearchConfig& cfg);

}  // namespace bis
