#include "jager/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "jager/errors.hpp"

namespace jager {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr int kSeedAttempts = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One independent stream per (experiment, purpose, index), so results do not
// depend on which thread handles which seed.
std::mt19937_64 stream_engine(std::uint64_t rng_seed, std::uint64_t purpose, std::size_t index) {
  const std::uint64_t s = splitmix64(splitmix64(rng_seed ^ (purpose * kGolden)) + index);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

enum Purpose : std::uint64_t { kPlainSeeds = 1, kZeroPrefixSeeds = 2, kSharpness = 3 };

std::size_t decimal_digits(const Params& params) {
  return static_cast<std::size_t>(params.precision_bits() * 0.30103) + 3;
}

std::string random_decimal(std::mt19937_64& rng, std::size_t digits) {
  std::uniform_int_distribution<int> digit(0, 9);
  std::string out = "0.";
  bool nonzero = false;
  for (std::size_t i = 0; i < digits; ++i) {
    const int d = digit(rng);
    nonzero = nonzero || d != 0;
    out.push_back(static_cast<char>('0' + d));
  }
  if (!nonzero) out.back() = '1';
  return out;
}

// Draws until the seed is clear of every cylinder endpoint.
std::string draw_seed(std::mt19937_64& rng, const std::optional<std::vector<Digit>>& prefix,
                      const Params& params) {
  for (int attempt = 0; attempt < kSeedAttempts; ++attempt) {
    const std::string tail = random_decimal(rng, decimal_digits(params));
    std::string expr = prefix ? prefix_recipe(*prefix, tail) : tail;
    try {
      const BigReal x0 = evaluate_seed(expr, params);
      if (!(x0 > 0L) || !(x0 < 1L)) continue;
      (void)step_map(x0, params);
      return expr;
    } catch (const PrecisionLoss&) {
    } catch (const ConstructionFailed&) {
    }
  }
  throw ConstructionFailed("could not draw a seed clear of the cylinder endpoints");
}

struct SeedRun {
  std::string expr;
  Orbit orbit;
  ThetaSeq thetas;
};

SeedRun run_seed(std::string expr, const Params& params) {
  const BigReal x0 = evaluate_seed(expr, params);
  Orbit orbit = expand(x0, params);
  ThetaSeq thetas = theta_sequence(orbit, params, ThetaMethod::perron);
  return SeedRun{std::move(expr), std::move(orbit), std::move(thetas)};
}

bool pair_available(const Orbit& orbit, std::size_t n) {
  return n >= 1 && n + 2 <= orbit.trusted_depth && !orbit.future(n + 1).is_zero();
}

JagerPair pair_at(const Orbit& orbit, std::size_t n, const Params& params) {
  JagerPoint p = psi(orbit.future(n + 1), orbit.past(n + 1), params);
  p.predicted_a = orbit.digit(n + 1);
  p.predicted_b = orbit.digit(n + 2);
  return JagerPair{n, std::move(p)};
}

BigReal membership_depth(const JagerPoint& p, const Params& params) {
  return depth_inside(subdivision(*p.predicted_a, *p.predicted_b, params), p);
}

bool window_available(const SeedRun& run, std::size_t N) {
  return N >= 1 && N + 3 <= run.orbit.trusted_depth && N + 2 <= run.thetas.size();
}

DigitWindow window_at(const Orbit& orbit, std::size_t N) {
  return {orbit.digit(N + 1), orbit.digit(N + 2), orbit.digit(N + 3)};
}

struct WindowMetrics {
  BigReal first, second;  // |θ_{N+1}-θ_N|, |θ_{N+2}-θ_{N+1}|
  BigReal sum_sq, max_diff, min_diff;
};

WindowMetrics window_metrics(const ThetaSeq& thetas, std::size_t N) {
  BigReal first = abs(thetas(N + 1) - thetas(N));
  BigReal second = abs(thetas(N + 2) - thetas(N + 1));
  BigReal sum_sq = first * first + second * second;
  BigReal hi = max(first, second);
  BigReal lo = min(first, second);
  return {std::move(first), std::move(second), std::move(sum_sq), std::move(hi), std::move(lo)};
}

BigReal classical_metric(const ThetaSeq& thetas, std::size_t n, int m) {
  return m == 0 ? thetas(n) + thetas(n + 1) : abs(thetas(n + 1) - thetas(n));
}

struct Observation {
  BigReal observed, bound;
};

// Shared by the experiments and replay so records reproduce bit for bit.
std::optional<Observation> observe(ViolationKind kind, const SeedRun& run, std::size_t n,
                                   const Params& params) {
  switch (kind) {
    case ViolationKind::membership: {
      if (!pair_available(run.orbit, n)) return std::nullopt;
      return Observation{membership_depth(pair_at(run.orbit, n, params).point, params),
                         params.real(0L)};
    }
    case ViolationKind::upper:
    case ViolationKind::lower:
    case ViolationKind::corollary_upper:
    case ViolationKind::corollary_lower: {
      if (!window_available(run, n)) return std::nullopt;
      const DigitWindow w = window_at(run.orbit, n);
      WindowMetrics mt = window_metrics(run.thetas, n);
      const bool theorem = kind == ViolationKind::upper || kind == ViolationKind::lower;
      const bool upper = kind == ViolationKind::upper || kind == ViolationKind::corollary_upper;
      BoundsReport b = theorem ? theorem_bounds(w, params) : corollary_bounds(w, params);
      std::optional<BigReal>& bound = upper ? b.upper : b.lower;
      if (!bound) return std::nullopt;
      BigReal observed = theorem ? std::move(mt.sum_sq) : upper ? std::move(mt.max_diff)
                                                                : std::move(mt.min_diff);
      return Observation{std::move(observed), std::move(*bound)};
    }
    case ViolationKind::classical: {
      if (n < 1 || n + 1 > run.thetas.size()) return std::nullopt;
      return Observation{classical_metric(run.thetas, n, params.m()), params.real(1L)};
    }
  }
  return std::nullopt;
}

void keep_record(std::vector<ViolationRecord>& records, std::size_t cap, const SeedRun& run,
                 std::size_t n, ViolationKind kind, Observation obs) {
  if (records.size() >= cap) return;
  records.push_back(ViolationRecord{run.expr, n, kind, std::move(obs.observed), std::move(obs.bound)});
}

void append_records(std::vector<ViolationRecord>& into, std::vector<ViolationRecord>& from,
                    std::size_t cap) {
  for (auto& r : from) {
    if (into.size() >= cap) break;
    into.push_back(std::move(r));
  }
}

// Ties keep the earlier witness, which makes merges in seed order stable.
void take_max(std::optional<Witness>& best, const BigReal& value, const std::string& expr,
              std::size_t n) {
  if (!best || value > best->value) best = Witness{value, expr, n};
}

void take_min(std::optional<Witness>& best, const BigReal& value, const std::string& expr,
              std::size_t n) {
  if (!best || value < best->value) best = Witness{value, expr, n};
}

void merge_max(std::optional<Witness>& best, std::optional<Witness>& other) {
  if (other && (!best || other->value > best->value)) best = std::move(other);
}

void merge_min(std::optional<Witness>& best, std::optional<Witness>& other) {
  if (other && (!best || other->value < best->value)) best = std::move(other);
}

template <typename Result, typename Fn>
std::vector<Result> per_seed(std::size_t count, std::size_t threads, Fn&& fn) {
  std::vector<std::optional<Result>> slots(count);
  parallel_for(count, threads, [&](std::size_t i) { slots[i].emplace(fn(i)); });
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<Digit> extreme_run(std::mt19937_64& rng, std::span<const Digit> singles) {
  std::uniform_int_distribution<int> kind(0, 2);
  if (kind(rng) == 0) {
    std::uniform_int_distribution<int> len(1, 16);
    return std::vector<Digit>(static_cast<std::size_t>(len(rng)), 0);
  }
  std::uniform_int_distribution<std::size_t> pick(0, singles.size() - 1);
  return {singles[pick(rng)]};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (seed_count < 1) throw DomainError("seed_count must be at least 1");
  if (depth < 1 || depth > params.max_depth()) {
    throw DomainError("depth must lie in [1, params.max_depth]");
  }
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::membership: return "membership";
    case ViolationKind::upper: return "upper";
    case ViolationKind::lower: return "lower";
    case ViolationKind::corollary_upper: return "corollary_upper";
    case ViolationKind::corollary_lower: return "corollary_lower";
    case ViolationKind::classical: return "classical";
  }
  return "unknown";
}

std::string sample_seed_expr(const ExperimentConfig& config, std::size_t index) {
  auto rng = stream_engine(config.rng_seed, kPlainSeeds, index);
  return draw_seed(rng, config.prefix, config.orbit_params());
}

std::vector<JagerPair> jager_pairs(const Orbit& orbit, const Params& params) {
  std::vector<JagerPair> out;
  for (std::size_t n = 1; pair_available(orbit, n); ++n) out.push_back(pair_at(orbit, n, params));
  return out;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

MembershipSummary check_membership(std::span<const LabeledPair> pairs, const Params& params,
                                   const BigReal& tol, std::size_t max_records) {
  MembershipSummary out;
  for (const LabeledPair& lp : pairs) {
    const JagerPoint& p = lp.pair.point;
    const SubdivisionRegion region = subdivision(*p.predicted_a, *p.predicted_b, params);
    ++out.pairs;
    switch (contains(region, p, tol)) {
      case Location::inside: ++out.inside; break;
      case Location::boundary: ++out.boundary; break;
      case Location::outside: {
        ++out.violations;
        BigReal depth = depth_inside(region, p);
        const BigReal distance = -depth;
        if (!out.max_violation_distance || distance > *out.max_violation_distance) {
          out.max_violation_distance = distance;
        }
        if (out.records.size() < max_records) {
          out.records.push_back(ViolationRecord{lp.x0_expr, lp.pair.n, ViolationKind::membership,
                                                std::move(depth), params.real(0L)});
        }
        break;
      }
    }
  }
  return out;
}

MembershipSummary run_membership(const ExperimentConfig& config) {
  return run_membership(config, config.params.tolerance(4));
}

MembershipSummary run_membership(const ExperimentConfig& config, const BigReal& tol) {
  config.validate();
  const Params params = config.orbit_params();
  auto parts = per_seed<MembershipSummary>(config.seed_count, config.threads, [&](std::size_t i) {
    const SeedRun run = run_seed(sample_seed_expr(config, i), params);
    std::vector<LabeledPair> labeled;
    for (JagerPair& jp : jager_pairs(run.orbit, params)) {
      labeled.push_back(LabeledPair{run.expr, std::move(jp)});
    }
    return check_membership(labeled, params, tol, config.max_violation_records);
  });
  MembershipSummary out;
  out.seeds = config.seed_count;
  for (auto& part : parts) {
    out.pairs += part.pairs;
    out.inside += part.inside;
    out.boundary += part.boundary;
    out.violations += part.violations;
    if (part.max_violation_distance &&
        (!out.max_violation_distance || *part.max_violation_distance > *out.max_violation_distance)) {
      out.max_violation_distance = std::move(part.max_violation_distance);
    }
    append_records(out.records, part.records, config.max_violation_records);
  }
  return out;
}

BoundsSummary run_bounds(const ExperimentConfig& config) {
  config.validate();
  const Params params = config.orbit_params();
  const BigReal tol = params.tolerance(4);
  const std::size_t cap = config.max_violation_records;
  auto parts = per_seed<BoundsSummary>(config.seed_count, config.threads, [&](std::size_t i) {
    const SeedRun run = run_seed(sample_seed_expr(config, i), params);
    BoundsSummary s;
    for (std::size_t N = 1; window_available(run, N); ++N) {
      ++s.windows;
      const DigitWindow w = window_at(run.orbit, N);
      if (classical_exception(w, params)) ++s.exception_skipped;
      auto check = [&](ViolationKind kind, std::size_t* checked, std::size_t& violations,
                       bool is_upper) -> std::optional<Observation> {
        auto obs = observe(kind, run, N, params);
        if (!obs) return std::nullopt;
        if (checked) ++*checked;
        const bool bad = is_upper ? obs->observed > obs->bound + tol : obs->observed < obs->bound - tol;
        if (bad) {
          ++violations;
          keep_record(s.records, cap, run, N, kind, Observation{obs->observed, obs->bound});
        }
        return obs;
      };
      if (auto up = check(ViolationKind::upper, &s.upper_checked, s.upper_violations, true)) {
        take_max(s.max_upper_ratio, up->observed / up->bound, run.expr, N);
      }
      check(ViolationKind::corollary_upper, nullptr, s.corollary_upper_violations, true);
      if (auto lo = check(ViolationKind::lower, &s.lower_checked, s.lower_violations, false)) {
        take_min(s.min_lower_ratio, lo->observed / lo->bound, run.expr, N);
      }
      check(ViolationKind::corollary_lower, nullptr, s.corollary_lower_violations, false);
    }
    return s;
  });
  BoundsSummary out;
  out.seeds = config.seed_count;
  for (auto& p : parts) {
    out.windows += p.windows;
    out.exception_skipped += p.exception_skipped;
    out.upper_checked += p.upper_checked;
    out.upper_violations += p.upper_violations;
    out.corollary_upper_violations += p.corollary_upper_violations;
    out.lower_checked += p.lower_checked;
    out.lower_violations += p.lower_violations;
    out.corollary_lower_violations += p.corollary_lower_violations;
    merge_max(out.max_upper_ratio, p.max_upper_ratio);
    merge_min(out.min_lower_ratio, p.min_lower_ratio);
    append_records(out.records, p.records, cap);
  }
  return out;
}

ViolationRecord replay(const ViolationRecord& record, const Params& params, std::size_t depth) {
  const Params orbit_params = params.with_depth(depth);
  const SeedRun run = run_seed(record.x0_expr, orbit_params);
  auto obs = observe(record.kind, run, record.n, orbit_params);
  if (!obs) throw DomainError("record index is outside the replayed orbit's trusted range");
  return ViolationRecord{record.x0_expr, record.n, record.kind, std::move(obs->observed),
                         std::move(obs->bound)};
}

SharpnessReport sharpness_scan(std::span<const DigitWindow> windows, const ExperimentConfig& config) {
  config.validate();
  if (windows.empty()) throw DomainError("sharpness_scan needs at least one window");
  const Params& base = config.params;
  static constexpr std::array<Digit, 6> kBefore = {0, 1, 2, 5, 50, 1000};
  static constexpr std::array<Digit, 4> kAfter = {0, 1, 5, 1000};

  SharpnessReport out;
  out.l = windows[0][0];
  out.L = windows[0][0];
  for (const auto& w : windows) {
    out.l = std::min({out.l, w[0], w[1], w[2]});
    out.L = std::max({out.L, w[0], w[1], w[2]});
    if (classical_exception(w, base)) ++out.exception_windows;
  }
  BoundsReport thm = theorem_bounds(out.l, out.L, base);
  BoundsReport cor = corollary_bounds(out.l, out.L, base);
  out.theorem_upper = std::move(thm.upper);
  out.theorem_lower = std::move(thm.lower);
  out.corollary_upper = std::move(cor.upper);
  out.corollary_lower = std::move(cor.lower);

  struct Sample {
    bool ok = false;
    std::string expr;
    std::size_t N = 0;
    std::optional<WindowMetrics> metrics;
  };
  auto samples = per_seed<Sample>(config.seed_count, config.threads, [&](std::size_t i) {
    auto rng = stream_engine(config.rng_seed, kSharpness, i);
    std::uniform_int_distribution<std::size_t> pick(0, windows.size() - 1);
    const DigitWindow& w = windows[pick(rng)];
    std::vector<Digit> prefix = extreme_run(rng, kBefore);
    const std::size_t N = prefix.size();
    prefix.insert(prefix.end(), w.begin(), w.end());
    const std::vector<Digit> after = extreme_run(rng, kAfter);
    prefix.insert(prefix.end(), after.begin(), after.end());
    const Params params = base.with_depth(prefix.size() + 4);
    Sample s;
    try {
      s.expr = draw_seed(rng, prefix, params);
    } catch (const ConstructionFailed&) {
      return s;
    }
    const SeedRun run = run_seed(s.expr, params);
    if (!window_available(run, N)) return s;
    s.ok = true;
    s.N = N;
    s.metrics = window_metrics(run.thetas, N);
    return s;
  });

  std::size_t next_checkpoint = 10;
  for (const Sample& s : samples) {
    if (!s.ok) continue;
    ++out.samples;
    const WindowMetrics& mt = *s.metrics;
    take_max(out.sup_sum_sq, mt.sum_sq, s.expr, s.N);
    take_min(out.inf_sum_sq, mt.sum_sq, s.expr, s.N);
    take_max(out.sup_max_diff, mt.max_diff, s.expr, s.N);
    take_min(out.inf_min_diff, mt.min_diff, s.expr, s.N);
    take_max(out.sup_first_diff, mt.first, s.expr, s.N);
    take_max(out.sup_second_diff, mt.second, s.expr, s.N);
    take_min(out.inf_first_diff, mt.first, s.expr, s.N);
    take_min(out.inf_second_diff, mt.second, s.expr, s.N);
    if (out.samples == next_checkpoint) {
      out.sup_growth.emplace_back(out.samples, out.sup_sum_sq->value);
      next_checkpoint *= 10;
    }
  }
  return out;
}

SharpnessReport sharpness_scan(Digit l, Digit L, const ExperimentConfig& config) {
  if (l > L) throw DomainError("sharpness_scan requires l <= L");
  std::vector<DigitWindow> windows;
  const std::array<Digit, 3> values = {l, L, l + (L - l) / 2};
  // Every window over {l, midpoint, L} whose extremes are exactly l and L.
  for (Digit a : values) {
    for (Digit b : values) {
      for (Digit c : values) {
        const DigitWindow w = {a, b, c};
        if (std::min({a, b, c}) == l && std::max({a, b, c}) == L &&
            std::find(windows.begin(), windows.end(), w) == windows.end()) {
          windows.push_back(w);
        }
      }
    }
  }
  return sharpness_scan(windows, config);
}

ClassicalSummary classical_checks(const ExperimentConfig& config) {
  config.validate();
  if (!config.params.classical()) throw DomainError("classical_checks requires k = 1");
  const Params params = config.orbit_params();
  const int m = params.m();
  const std::size_t cap = config.max_violation_records;
  const std::vector<Digit> zeros =
      config.prefix ? *config.prefix : std::vector<Digit>(std::min<std::size_t>(20, config.depth), 0);
  const std::size_t zero_count = std::max<std::size_t>(1, config.seed_count / 10);

  auto parts = per_seed<ClassicalSummary>(
      config.seed_count + zero_count, config.threads, [&](std::size_t i) {
        std::string expr;
        if (i < config.seed_count) {
          expr = sample_seed_expr(config, i);
        } else {
          auto rng = stream_engine(config.rng_seed, kZeroPrefixSeeds, i - config.seed_count);
          expr = draw_seed(rng, zeros, params);
        }
        const SeedRun run = run_seed(std::move(expr), params);
        ClassicalSummary s;
        for (std::size_t n = 1; n <= run.thetas.size(); ++n) {
          if (m == 1) take_max(s.max_theta, run.thetas(n), run.expr, n);
          auto obs = observe(ViolationKind::classical, run, n, params);
          if (!obs) continue;
          ++s.pairs;
          if (m == 0) {
            take_max(s.sup_pair_sum, obs->observed, run.expr, n);
          } else {
            take_max(s.max_abs_diff, obs->observed, run.expr, n);
          }
          if (obs->observed >= obs->bound) {
            ++s.violations;
            keep_record(s.records, cap, run, n, ViolationKind::classical, std::move(*obs));
          }
        }
        return s;
      });

  ClassicalSummary out;
  out.m = m;
  out.seeds = config.seed_count;
  out.zero_prefix_seeds = zero_count;
  for (auto& p : parts) {
    out.pairs += p.pairs;
    out.violations += p.violations;
    merge_max(out.sup_pair_sum, p.sup_pair_sum);
    merge_max(out.max_abs_diff, p.max_abs_diff);
    merge_max(out.max_theta, p.max_theta);
    append_records(out.records, p.records, cap);
  }
  return out;
}

}  // namespace jager
