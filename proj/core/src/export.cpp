#include "jager/export.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace jager {
namespace {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return fields;
}

template <typename Int>
Int parse_int(const std::string& text, const char* what) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " field: '" + text + "'");
  }
  return value;
}

Json witness_json(const std::optional<Witness>& w, const Params& params) {
  if (!w) return nullptr;
  return Json{{"value", format_real(w->value, params)}, {"x0_expr", w->x0_expr}, {"n", w->n}};
}

Json optional_real(const std::optional<BigReal>& x, const Params& params) {
  if (!x) return nullptr;
  return format_real(*x, params);
}

Json records_json(const std::vector<ViolationRecord>& records, const Params& params) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(to_json(r, params));
  return out;
}

const std::string kPairsHeader = "m,k,x0_expr,n,a_next,a_next2,theta_n,theta_n1";

}  // namespace

std::string format_real(const BigReal& x, const Params& params) {
  return x.to_string(params.precision_bits() / 3);
}

void write_regions_csv(std::ostream& os, std::span<const SubdivisionRegion> regions,
                       const Params& params) {
  os << "m,k,a,b,vertex_index,u,v,degenerate,unbounded\n";
  const std::string k = csv_field(params.k_expr());
  for (const auto& r : regions) {
    for (std::size_t i = 0; i < r.vertices.size(); ++i) {
      os << params.m() << ',' << k << ',' << r.a << ',' << r.b << ',' << i << ','
         << format_real(r.vertices[i].u, params) << ',' << format_real(r.vertices[i].v, params)
         << ',' << (r.degenerate ? 1 : 0) << ',' << (r.unbounded ? 1 : 0) << '\n';
    }
  }
}

std::vector<PairRecord> collect_pairs(const ExperimentConfig& config) {
  config.validate();
  const Params params = config.orbit_params();
  std::vector<std::vector<PairRecord>> per_seed(config.seed_count);
  parallel_for(config.seed_count, config.threads, [&](std::size_t i) {
    const std::string expr = sample_seed_expr(config, i);
    const Orbit orbit = expand(evaluate_seed(expr, params), params);
    for (JagerPair& jp : jager_pairs(orbit, params)) {
      per_seed[i].push_back(PairRecord{params.m(), params.k_expr(), expr, jp.n,
                                       *jp.point.predicted_a, *jp.point.predicted_b,
                                       std::move(jp.point.u), std::move(jp.point.v)});
    }
  });
  std::vector<PairRecord> out;
  for (auto& seed : per_seed) {
    for (auto& p : seed) out.push_back(std::move(p));
  }
  return out;
}

void write_pairs_csv(std::ostream& os, std::span<const PairRecord> pairs, const Params& params) {
  os << kPairsHeader << '\n';
  for (const auto& p : pairs) {
    os << p.m << ',' << csv_field(p.k_expr) << ',' << csv_field(p.x0_expr) << ',' << p.n << ','
       << p.a_next << ',' << p.a_next2 << ',' << format_real(p.theta_n, params) << ','
       << format_real(p.theta_n1, params) << '\n';
  }
}

std::vector<PairRecord> read_pairs_csv(std::istream& is, const Params& params) {
  std::string line;
  if (!std::getline(is, line) || line != kPairsHeader) {
    throw std::invalid_argument("pairs CSV must start with header '" + kPairsHeader + "'");
  }
  std::vector<PairRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw std::invalid_argument("pairs CSV row needs 8 fields: " + line);
    const int precision = params.precision_bits();
    out.push_back(PairRecord{parse_int<int>(f[0], "m"), f[1], f[2],
                             parse_int<std::size_t>(f[3], "n"), parse_int<Digit>(f[4], "a_next"),
                             parse_int<Digit>(f[5], "a_next2"), BigReal::parse(f[6], precision),
                             BigReal::parse(f[7], precision)});
  }
  return out;
}

Json config_json(const ExperimentConfig& config) {
  const Params& p = config.params;
  Json prefix = nullptr;
  if (config.prefix) prefix = format_digit_list(*config.prefix);
  return Json{{"m", p.m()},
              {"k", p.k_expr()},
              {"precision_bits", p.precision_bits()},
              {"depth", config.depth},
              {"seeds", config.seed_count},
              {"rng_seed", config.rng_seed},
              {"prefix", prefix}};
}

Json to_json(const ViolationRecord& r, const Params& params) {
  return Json{{"x0_expr", r.x0_expr},
              {"n", r.n},
              {"kind", to_string(r.kind)},
              {"observed", format_real(r.observed, params)},
              {"bound", format_real(r.bound, params)}};
}

Json to_json(const MembershipSummary& s, const Params& params) {
  return Json{{"counts",
               {{"seeds", s.seeds},
                {"pairs", s.pairs},
                {"inside", s.inside},
                {"boundary", s.boundary},
                {"violations", s.violations}}},
              {"stats", {{"max_violation_distance", optional_real(s.max_violation_distance, params)}}},
              {"violations", records_json(s.records, params)}};
}

Json to_json(const BoundsSummary& s, const Params& params) {
  return Json{{"counts",
               {{"seeds", s.seeds},
                {"windows", s.windows},
                {"exception_skipped", s.exception_skipped},
                {"upper_checked", s.upper_checked},
                {"upper_violations", s.upper_violations},
                {"corollary_upper_violations", s.corollary_upper_violations},
                {"lower_checked", s.lower_checked},
                {"lower_violations", s.lower_violations},
                {"corollary_lower_violations", s.corollary_lower_violations}}},
              {"stats",
               {{"max_upper_ratio", witness_json(s.max_upper_ratio, params)},
                {"min_lower_ratio", witness_json(s.min_lower_ratio, params)}}},
              {"violations", records_json(s.records, params)}};
}

Json to_json(const SharpnessReport& r, const Params& params) {
  Json growth = Json::array();
  for (const auto& [samples, sup] : r.sup_growth) {
    growth.push_back(Json{{"samples", samples}, {"sup_sum_sq", format_real(sup, params)}});
  }
  return Json{{"counts",
               {{"l", r.l}, {"L", r.L}, {"samples", r.samples},
                {"exception_windows", r.exception_windows}}},
              {"bounds",
               {{"theorem_upper", optional_real(r.theorem_upper, params)},
                {"theorem_lower", optional_real(r.theorem_lower, params)},
                {"corollary_upper", optional_real(r.corollary_upper, params)},
                {"corollary_lower", optional_real(r.corollary_lower, params)}}},
              {"stats",
               {{"sup_sum_sq", witness_json(r.sup_sum_sq, params)},
                {"inf_sum_sq", witness_json(r.inf_sum_sq, params)},
                {"sup_max_diff", witness_json(r.sup_max_diff, params)},
                {"inf_min_diff", witness_json(r.inf_min_diff, params)},
                {"sup_first_diff", witness_json(r.sup_first_diff, params)},
                {"sup_second_diff", witness_json(r.sup_second_diff, params)},
                {"inf_first_diff", witness_json(r.inf_first_diff, params)},
                {"inf_second_diff", witness_json(r.inf_second_diff, params)},
                {"sup_growth", growth}}},
              {"violations", Json::array()}};
}

Json to_json(const ClassicalSummary& s, const Params& params) {
  return Json{{"counts",
               {{"seeds", s.seeds},
                {"zero_prefix_seeds", s.zero_prefix_seeds},
                {"pairs", s.pairs},
                {"violations", s.violations}}},
              {"stats",
               {{"sup_pair_sum", witness_json(s.sup_pair_sum, params)},
                {"max_abs_diff", witness_json(s.max_abs_diff, params)},
                {"max_theta", witness_json(s.max_theta, params)}}},
              {"violations", records_json(s.records, params)}};
}

Json to_json(const SubdivisionRegion& region, const Params& params) {
  Json vertices = Json::array();
  for (const auto& v : region.vertices) {
    vertices.push_back(Json{{"u", format_real(v.u, params)}, {"v", format_real(v.v, params)}});
  }
  return Json{{"a", region.a},
              {"b", region.b},
              {"degenerate", region.degenerate},
              {"unbounded", region.unbounded},
              {"area", format_real(polygon_area(region, params), params)},
              {"vertices", vertices}};
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace jager
