#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dzn/complex.hpp"
#include "dzn/harness.hpp"
#include "dzn/homology.hpp"
#include "dzn/homotopy.hpp"
#include "dzn/matrix.hpp"
#include "dzn/ring.hpp"
#include "dzn/search.hpp"

namespace dzn {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline std::uint64_t require_u64(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ParseError(std::string("key \"") + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("key \"") + key + "\" must be an integer");
  return v.get<int>();
}

inline void require_schema(const json& j) {
  const json& v = require(j, "schema_version");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
    throw ParseError("unsupported schema_version");
}

inline int parse_degree_key(const std::string& key) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ParseError("degree key \"" + key + "\" is not an integer");
  }
  if (used != key.size()) throw ParseError("degree key \"" + key + "\" is not an integer");
  return value;
}

}  // namespace detail

inline json matrix_to_json(const MatZn& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline MatZn matrix_from_json(const Modulus& mod, const json& j) {
  const std::uint64_t rows = detail::require_u64(j, "rows");
  const std::uint64_t cols = detail::require_u64(j, "cols");
  const json& entries = detail::require(j, "entries");
  if (!entries.is_array() || entries.size() != rows * cols)
    throw ParseError("matrix entries must be a row-major array of rows*cols numbers");
  MatZn m(mod, rows, cols);
  std::size_t idx = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = entries.at(idx++);
      if (!e.is_number_integer() && !e.is_number_unsigned())
        throw ParseError("matrix entries must be integers");
      m.set(r, c, mod.reduce(e.get<std::int64_t>()));
    }
  return m;
}

inline json complex_to_json(const ChainComplex& x) {
  json ranks = json::object();
  json boundaries = json::object();
  for (int i = x.lo(); i <= x.hi(); ++i) ranks[std::to_string(i)] = x.rank(i);
  for (int i = x.lo() + 1; i <= x.hi(); ++i) {
    const MatZn d = x.boundary(i);
    if (!d.is_zero()) boundaries[std::to_string(i)] = matrix_to_json(d);
  }
  return {{"schema_version", kSchemaVersion},
          {"modulus", x.modulus().n()},
          {"lo", x.lo()},
          {"hi", x.hi()},
          {"ranks", std::move(ranks)},
          {"boundaries", std::move(boundaries)}};
}

inline ChainComplex complex_from_json(const json& j) {
  detail::require_schema(j);
  const Modulus mod = [&] {
    try {
      return Modulus(detail::require_u64(j, "modulus"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();
  const int lo = detail::require_int(j, "lo");
  const int hi = detail::require_int(j, "hi");
  if (hi < lo - 1) throw ParseError("window must satisfy hi >= lo - 1");
  if (hi - lo > 4096) throw ParseError("window too wide");
  if (hi < lo) return ChainComplex::zero(mod);

  const json& ranks_j = detail::require(j, "ranks");
  if (!ranks_j.is_object()) throw ParseError("ranks must be an object keyed by degree");
  std::vector<std::size_t> ranks(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [key, value] : ranks_j.items()) {
    const int deg = detail::parse_degree_key(key);
    if (deg < lo || deg > hi) throw ParseError("rank given outside window at degree " + key);
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0))
      throw ParseError("rank at degree " + key + " must be a nonnegative integer");
    ranks[static_cast<std::size_t>(deg - lo)] = value.get<std::size_t>();
  }

  std::vector<MatZn> diffs;
  for (int i = lo + 1; i <= hi; ++i)
    diffs.emplace_back(mod, ranks[static_cast<std::size_t>(i - 1 - lo)],
                       ranks[static_cast<std::size_t>(i - lo)]);
  if (j.contains("boundaries")) {
    const json& bj = j.at("boundaries");
    if (!bj.is_object()) throw ParseError("boundaries must be an object keyed by degree");
    for (const auto& [key, value] : bj.items()) {
      const int deg = detail::parse_degree_key(key);
      if (deg <= lo || deg > hi) throw ParseError("boundary outside window at degree " + key);
      MatZn d = matrix_from_json(mod, value);
      MatZn& slot = diffs[static_cast<std::size_t>(deg - 1 - lo)];
      if (d.rows() != slot.rows() || d.cols() != slot.cols()) {
        std::ostringstream msg;
        msg << "boundary at degree " << deg << " must be " << slot.rows() << "x" << slot.cols();
        throw ParseError(msg.str());
      }
      slot = std::move(d);
    }
  }

  ChainComplex x(mod, lo, std::move(ranks), std::move(diffs));
  if (auto v = x.validate()) {
    std::ostringstream msg;
    msg << v->what << " at degree " << v->degree;
    throw ParseError(msg.str());
  }
  return x;
}

inline ChainComplex load_complex_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return complex_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// Maps carry their endpoints either inline (full complex object) or as a
/// path string resolved against the directory of the referencing document.
inline json map_to_json(const ChainMap& f) {
  json comps = json::object();
  for (const auto& [i, m] : f.components()) comps[std::to_string(i)] = matrix_to_json(m);
  return {{"schema_version", kSchemaVersion},
          {"source", complex_to_json(f.source())},
          {"target", complex_to_json(f.target())},
          {"degree", f.degree()},
          {"components", std::move(comps)}};
}

inline ChainMap map_from_json(const json& j, const std::filesystem::path& base_dir = ".") {
  detail::require_schema(j);
  auto endpoint = [&](const char* key) {
    const json& v = detail::require(j, key);
    if (v.is_string()) {
      std::filesystem::path ref(v.get<std::string>());
      return load_complex_file(ref.is_absolute() ? ref : base_dir / ref);
    }
    if (v.is_object()) return complex_from_json(v);
    throw ParseError(std::string(key) + " must be a complex object or a file path");
  };
  ChainComplex source = endpoint("source");
  ChainComplex target = endpoint("target");
  if (source.modulus() != target.modulus())
    throw ParseError("source and target modulus mismatch");
  const int degree = detail::require_int(j, "degree");

  std::map<int, MatZn> comps;
  if (j.contains("components")) {
    const json& cj = j.at("components");
    if (!cj.is_object()) throw ParseError("components must be an object keyed by degree");
    for (const auto& [key, value] : cj.items()) {
      const int deg = detail::parse_degree_key(key);
      MatZn m = matrix_from_json(source.modulus(), value);
      if (m.rows() != target.rank(deg + degree) || m.cols() != source.rank(deg)) {
        std::ostringstream msg;
        msg << "component at degree " << deg << " must be " << target.rank(deg + degree) << "x"
            << source.rank(deg);
        throw ParseError(msg.str());
      }
      comps.emplace(deg, std::move(m));
    }
  }
  ChainMap f(std::move(source), std::move(target), degree, std::move(comps));
  if (auto v = f.validate()) {
    std::ostringstream msg;
    msg << v->what << " at degree " << v->degree;
    throw ParseError(msg.str());
  }
  return f;
}

inline ChainMap load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return map_from_json(j, path.has_parent_path() ? path.parent_path() : ".");
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

inline json homotopy_to_json(const Homotopy& s) {
  json comps = json::object();
  for (const auto& [i, m] : s.comps) comps[std::to_string(i)] = matrix_to_json(m);
  return {{"components", std::move(comps)}};
}

inline Homotopy homotopy_from_json(const Modulus& mod, const json& j) {
  Homotopy s;
  const json& cj = detail::require(j, "components");
  if (!cj.is_object()) throw ParseError("components must be an object keyed by degree");
  for (const auto& [key, value] : cj.items())
    s.comps.emplace(detail::parse_degree_key(key), matrix_from_json(mod, value));
  return s;
}

inline json infeasibility_to_json(const InfeasibilityRecord& r) {
  return {{"equations", r.equations},
          {"unknowns", r.unknowns},
          {"column", r.column},
          {"residual", r.residual},
          {"pivot", r.pivot}};
}

inline InfeasibilityRecord infeasibility_from_json(const json& j) {
  InfeasibilityRecord r;
  r.equations = detail::require_u64(j, "equations");
  r.unknowns = detail::require_u64(j, "unknowns");
  r.column = detail::require_u64(j, "column");
  r.residual = detail::require_u64(j, "residual");
  r.pivot = detail::require_u64(j, "pivot");
  return r;
}

inline const char* search_mode_name(SearchMode m) {
  return m == SearchMode::target_sphere ? "target-sphere" : "general";
}

inline json search_config_to_json(const SearchConfig& c) {
  return {{"modulus", c.modulus_n},   {"seed", c.seed},
          {"samples", c.samples},     {"max_degrees", c.max_degrees},
          {"max_rank", c.max_rank},   {"mode", search_mode_name(c.mode)}};
}

inline SearchConfig search_config_from_json(const json& j) {
  SearchConfig c;
  c.modulus_n = detail::require_u64(j, "modulus");
  c.seed = detail::require_u64(j, "seed");
  c.samples = detail::require_u64(j, "samples");
  c.max_degrees = detail::require_u64(j, "max_degrees");
  c.max_rank = detail::require_u64(j, "max_rank");
  const std::string mode = detail::require(j, "mode").get<std::string>();
  if (mode == "general")
    c.mode = SearchMode::general;
  else if (mode == "target-sphere")
    c.mode = SearchMode::target_sphere;
  else
    throw ParseError("mode must be \"general\" or \"target-sphere\"");
  return c;
}

inline json search_witness_to_json(const SearchWitness& w) {
  return {{"instance_index", w.instance_index},
          {"infeasibility", infeasibility_to_json(w.infeasibility)},
          {"map", map_to_json(w.map)}};
}

inline SearchWitness search_witness_from_json(const json& j,
                                              const std::filesystem::path& base_dir = ".") {
  return {map_from_json(detail::require(j, "map"), base_dir),
          detail::require_u64(j, "instance_index"),
          infeasibility_from_json(detail::require(j, "infeasibility"))};
}

inline json search_report_to_json(const SearchReport& r) {
  json j{{"config", search_config_to_json(r.config)},
         {"counterexample_found", r.counterexample_found},
         {"instances_tested", r.instances_tested},
         {"instances_certified", r.instances_certified},
         {"elapsed_ms", r.elapsed_ms},
         {"witness", nullptr}};
  if (r.witness) j["witness"] = search_witness_to_json(*r.witness);
  return j;
}

inline json ring_report_to_json(const RingReport& r) {
  return {{"n", r.n},
          {"regular", r.regular},
          {"nilpotence_criterion", r.nilpotence},
          {"annihilator_criterion", r.annihilator_ok},
          {"squarefree", r.squarefree},
          {"prime_power_factors", r.prime_power_factors},
          {"nilradical_divisor", r.nilradical_divisor},
          {"method", r.method}};
}

inline json relative_gh_to_json(const RelativeGh& r) {
  json j{{"holds", r.holds}, {"reason", gh_failure_name(r.reason)}, {"idempotent", nullptr}};
  if (r.idempotent) j["idempotent"] = *r.idempotent;
  return j;
}

inline json koszul_suite_to_json(const KoszulSuiteReport& r) {
  return {{"n", r.n},
          {"generators", r.generators},
          {"ideal_divisor", r.ideal_divisor},
          {"variables", r.variables},
          {"homology_window_ok", r.homology_window_ok},
          {"unit_contract_ok", r.unit_contract_ok},
          {"counit_contract_ok", r.counit_contract_ok},
          {"membership_ok", r.membership_ok},
          {"multiplication_ok", r.multiplication_ok},
          {"double_annihilator_ok", r.double_annihilator_ok},
          {"relative_gh", relative_gh_to_json(r.relative)},
          {"all_ok", r.all_ok()}};
}

inline json canonical_counterexample_to_json(const CanonicalCounterexample& c) {
  return {{"n", c.n},
          {"prime", c.prime},
          {"nilpotent", c.nilpotent},
          {"map", map_to_json(c.map)},
          {"infeasibility", infeasibility_to_json(c.infeasibility)}};
}

/// Per-degree invariant factor lists, only degrees with nonzero homology.
inline json homology_factors_json(const HomologyData& h) {
  json j = json::object();
  for (int i = h.lo(); i <= h.hi(); ++i) {
    const InvariantFactors f = h.factors(i);
    if (!f.trivial()) j[std::to_string(i)] = f.factors;
  }
  return j;
}

}  // namespace dzn
