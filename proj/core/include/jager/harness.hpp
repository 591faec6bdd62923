#ifndef JAGER_HARNESS_HPP
#define JAGER_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jager/big_real.hpp"
#include "jager/bounds.hpp"
#include "jager/expansion.hpp"
#include "jager/geometry.hpp"
#include "jager/params.hpp"

namespace jager {

struct ExperimentConfig {
  explicit ExperimentConfig(Params p) : params(std::move(p)) {}

  Params params;
  std::size_t seed_count = 1000;
  std::uint64_t rng_seed = 1;
  std::optional<std::vector<Digit>> prefix;
  std::size_t depth = 30;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
  // Violation counts are always exact; only this many records are kept.
  std::size_t max_violation_records = 100;

  // Throws DomainError unless seed_count >= 1 and 1 <= depth <= max_depth.
  void validate() const;
  // Params used for the orbits (max_depth = depth).
  Params orbit_params() const { return params.with_depth(depth); }
};

enum class ViolationKind { membership, upper, lower, corollary_upper, corollary_lower, classical };

const char* to_string(ViolationKind kind);

// Reproducible evidence: replaying x0_expr at the experiment's Params
// regenerates `observed` and `bound` exactly.
struct ViolationRecord {
  std::string x0_expr;
  std::size_t n = 0;
  ViolationKind kind = ViolationKind::membership;
  BigReal observed;
  BigReal bound;
};

// The i-th seed expression of an experiment: uniform decimal digits on (0,1)
// (or a prefix recipe when config.prefix is set), resampled deterministically
// while it falls within 2^-(p/2) of a cylinder endpoint.
std::string sample_seed_expr(const ExperimentConfig& config, std::size_t index);

// (theta_n, theta_{n+1}) = Psi(x_{n+1}, Y_{n+1}) with predicted indices
// (a_{n+1}, a_{n+2}), for every n with n + 2 <= trusted_depth.
struct JagerPair {
  std::size_t n = 0;
  JagerPoint point;
};
std::vector<JagerPair> jager_pairs(const Orbit& orbit, const Params& params);

// Runs `task(i)` for i in [0, count) on up to `threads` workers. The first
// exception thrown by a task is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task);

struct MembershipSummary {
  std::size_t seeds = 0;
  std::size_t pairs = 0;
  std::size_t inside = 0;
  std::size_t boundary = 0;
  std::size_t violations = 0;
  std::optional<BigReal> max_violation_distance;
  std::vector<ViolationRecord> records;
};

struct LabeledPair {
  std::string x0_expr;
  JagerPair pair;
};

// Checks every pair against closure(subdivision(predicted_a, predicted_b))
// at tolerance `tol`.
MembershipSummary check_membership(std::span<const LabeledPair> pairs, const Params& params,
                                   const BigReal& tol, std::size_t max_records);

// Default tolerance 2^-(p/4).
MembershipSummary run_membership(const ExperimentConfig& config);
MembershipSummary run_membership(const ExperimentConfig& config, const BigReal& tol);

// Extremum with the seed and index that produced it.
struct Witness {
  BigReal value;
  std::string x0_expr;
  std::size_t n = 0;
};

struct BoundsSummary {
  std::size_t seeds = 0;
  std::size_t windows = 0;
  std::size_t exception_skipped = 0;
  std::size_t upper_checked = 0;
  std::size_t upper_violations = 0;
  std::size_t corollary_upper_violations = 0;
  std::size_t lower_checked = 0;
  std::size_t lower_violations = 0;
  std::size_t corollary_lower_violations = 0;
  std::optional<Witness> max_upper_ratio;  // observed / theorem upper
  std::optional<Witness> min_lower_ratio;  // observed / theorem lower
  std::vector<ViolationRecord> records;
};

// Every window N with N + 3 <= trusted_depth: sum-of-squares against
// theorem_bounds, max/min differences against corollary_bounds. Upper
// checks skip classical-exception windows. Tolerance 2^-(p/4).
BoundsSummary run_bounds(const ExperimentConfig& config);

// Recomputes a record from its seed expression.
ViolationRecord replay(const ViolationRecord& record, const Params& params, std::size_t depth);

struct SharpnessReport {
  Digit l = 0, L = 0;
  std::size_t samples = 0;
  std::size_t exception_windows = 0;
  std::optional<BigReal> theorem_upper, theorem_lower;
  std::optional<BigReal> corollary_upper, corollary_lower;
  std::optional<Witness> sup_sum_sq, inf_sum_sq;
  std::optional<Witness> sup_max_diff, inf_min_diff;
  std::optional<Witness> sup_first_diff, sup_second_diff;  // |θ_{N+1}-θ_N|, |θ_{N+2}-θ_{N+1}|
  std::optional<Witness> inf_first_diff, inf_second_diff;
  // Sup of the sum of squares after 10, 100, 1000, ... samples.
  std::vector<std::pair<std::size_t, BigReal>> sup_growth;
};

// Targeted sampling: seeds realize one of `windows` at a_{N+1..N+3}, preceded
// and followed by extreme digits (0, a long run of zeros, or a large digit)
// and a random tail, pushing the Jager pairs towards the region corners.
SharpnessReport sharpness_scan(std::span<const DigitWindow> windows, const ExperimentConfig& config);
// All windows with min l and max L.
SharpnessReport sharpness_scan(Digit l, Digit L, const ExperimentConfig& config);

struct ClassicalSummary {
  int m = 0;
  std::size_t seeds = 0;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  std::optional<Witness> sup_pair_sum;   // m = 0: θ_n + θ_{n+1}
  std::optional<Witness> max_abs_diff;   // m = 1: |θ_{n+1} - θ_n|
  std::optional<Witness> max_theta;      // m = 1, over all seeds incl. zero-prefixed
  std::size_t zero_prefix_seeds = 0;
  std::vector<ViolationRecord> records;
};

// Requires k = 1. m = 0: θ_n + θ_{n+1} < 1. m = 1: |θ_{n+1} - θ_n| < 1, plus
// a batch of seeds whose digits start with a run of zeros (config.prefix when
// given, otherwise 20 zeros) to exhibit large θ_n.
ClassicalSummary classical_checks(const ExperimentConfig& config);

}  // namespace jager

#endif  // JAGER_HARNESS_HPP
