#ifndef JAGER_EXPORT_HPP
#define JAGER_EXPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "jager/harness.hpp"

namespace jager {

using Json = nlohmann::ordered_json;

// Decimal with precision_bits/3 significant digits; enough to parse back to
// the same binary value at that precision.
std::string format_real(const BigReal& x, const Params& params);

// Header `m,k,a,b,vertex_index,u,v,degenerate,unbounded`, one row per finite
// vertex, regions in the given order.
void write_regions_csv(std::ostream& os, std::span<const SubdivisionRegion> regions,
                       const Params& params);

struct PairRecord {
  int m = 0;
  std::string k_expr;
  std::string x0_expr;
  std::size_t n = 0;
  Digit a_next = 0, a_next2 = 0;
  BigReal theta_n, theta_n1;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

// Jager pairs of every sampled seed, ordered by seed index then n.
std::vector<PairRecord> collect_pairs(const ExperimentConfig& config);

// Header `m,k,x0_expr,n,a_next,a_next2,theta_n,theta_n1`; fields containing
// commas or quotes are quoted.
void write_pairs_csv(std::ostream& os, std::span<const PairRecord> pairs, const Params& params);
// Inverse of write_pairs_csv; values are parsed at params' precision.
// Throws std::invalid_argument on malformed input.
std::vector<PairRecord> read_pairs_csv(std::istream& is, const Params& params);

Json config_json(const ExperimentConfig& config);
Json to_json(const ViolationRecord& record, const Params& params);
Json to_json(const MembershipSummary& summary, const Params& params);
Json to_json(const BoundsSummary& summary, const Params& params);
Json to_json(const SharpnessReport& report, const Params& params);
Json to_json(const ClassicalSummary& summary, const Params& params);
Json to_json(const SubdivisionRegion& region, const Params& params);

// Writes `content` to `path`; failures throw std::runtime_error naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace jager

#endif  // JAGER_EXPORT_HPP
