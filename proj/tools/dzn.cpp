// Command-line front end: exact chain-level computations over Z/n.
// stdout carries exactly one JSON document per invocation; logs go to stderr.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dzn/harness.hpp"
#include "dzn/io.hpp"

namespace {

void emit(const dzn::json& j) { std::cout << j.dump(2) << std::endl; }

std::vector<std::uint64_t> parse_generator_list(const std::string& text, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("generators", "\"" + item + "\" is not an integer");
    }
    if (used != item.size())
      throw CLI::ValidationError("generators", "\"" + item + "\" is not an integer");
    const long long m = static_cast<long long>(n);
    out.push_back(static_cast<std::uint64_t>(((v % m) + m) % m));
  }
  if (out.empty()) throw CLI::ValidationError("generators", "at least one generator required");
  return out;
}

int cmd_ring(std::uint64_t n, std::uint64_t max_brute) {
  const dzn::Modulus mod(n);
  emit(dzn::ring_report_to_json(dzn::ring_report(mod, max_brute)));
  return 0;
}

int cmd_example(std::uint64_t n, const std::string& out_dir) {
  const dzn::Modulus mod(n);
  const dzn::CanonicalCounterexample ce = dzn::canonical_counterexample(mod);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const std::string stem = "counterexample_z" + std::to_string(n);
  const std::string complex_name = stem + "_complex.json";
  const std::string map_name = stem + "_map.json";
  dzn::write_json_file(dir / complex_name, dzn::complex_to_json(ce.map.source()));
  dzn::json map_doc = dzn::map_to_json(ce.map);
  map_doc["source"] = complex_name;  // resolved relative to the map document
  map_doc["target"] = complex_name;
  dzn::write_json_file(dir / map_name, map_doc);

  const dzn::ChainMap reloaded = dzn::load_map_file(dir / map_name);
  const dzn::SearchWitness check{reloaded, 0, ce.infeasibility};
  if (!dzn::reverify_witness(check))
    throw std::logic_error("example: written witness failed re-verification");

  dzn::json report = dzn::canonical_counterexample_to_json(ce);
  report["files"] = {{"complex", (dir / complex_name).string()},
                     {"map", (dir / map_name).string()}};
  report["reverified"] = true;
  emit(report);
  std::cerr << "wrote " << (dir / complex_name).string() << " and " << (dir / map_name).string()
            << "\n";
  return 0;
}

int cmd_gh_search(dzn::SearchConfig config) {
  dzn::Modulus mod(config.modulus_n);  // validates n up front
  std::cerr << "searching modulus " << mod.n() << ", " << config.samples << " samples, seed "
            << config.seed << ", mode " << dzn::search_mode_name(config.mode) << "\n";
  const dzn::SearchReport report = dzn::run_search(config);
  emit(dzn::search_report_to_json(report));
  return report.counterexample_found ? 1 : 0;
}

int cmd_koszul(std::uint64_t n, const std::string& generators) {
  const dzn::Modulus mod(n);
  const auto gens = parse_generator_list(generators, n);
  const dzn::KoszulSuiteReport report = dzn::koszul_gh_suite(mod, gens);
  emit(dzn::koszul_suite_to_json(report));
  return report.all_ok() ? 0 : 1;
}

int cmd_nullhomotopy(const std::string& map_file) {
  const dzn::ChainMap f = dzn::load_map_file(map_file);
  const dzn::ChainMap f0 = f.degree() == 0 ? f : dzn::to_degree_zero(f);
  const auto outcome = dzn::null_homotopy_detailed(f0);
  dzn::json j{{"null_homotopic", outcome.homotopy.has_value()},
              {"equations", outcome.equations},
              {"unknowns", outcome.unknowns},
              {"homotopy", "none"},
              {"infeasibility", nullptr}};
  if (outcome.homotopy) j["homotopy"] = dzn::homotopy_to_json(*outcome.homotopy);
  if (outcome.infeasibility) j["infeasibility"] = dzn::infeasibility_to_json(*outcome.infeasibility);
  emit(j);
  return outcome.homotopy ? 0 : 1;
}

int cmd_homology(const std::string& complex_file) {
  const dzn::ChainComplex x = dzn::load_complex_file(complex_file);
  emit(dzn::homology_factors_json(dzn::HomologyData(x)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in the derived category of Z/n"};
  app.require_subcommand(1);

  std::uint64_t n = 0;
  std::uint64_t max_brute = dzn::kRegularBruteLimit;
  std::string out_dir = ".";
  std::string generators;
  std::string file_arg;
  dzn::SearchConfig config;
  bool target_sphere = false;

  auto* ring = app.add_subcommand("ring", "regularity report for Z/n");
  ring->add_option("n", n, "modulus, n >= 2")->required();
  ring->add_option("--max-brute", max_brute, "largest n checked by brute force");

  auto* example = app.add_subcommand("example", "canonical counterexample at a non-squarefree n");
  example->add_option("n", n, "modulus, n >= 2")->required();
  example->add_option("--out", out_dir, "directory for the witness documents");

  auto* search = app.add_subcommand("gh-search", "randomized search for counterexamples");
  search->add_option("n", config.modulus_n, "modulus, n >= 2")->required();
  search->add_option("--samples", config.samples, "instances to test");
  search->add_option("--seed", config.seed, "stream seed");
  search->add_option("--max-rank", config.max_rank, "per-degree rank bound");
  search->add_option("--max-degrees", config.max_degrees, "window width bound");
  search->add_flag("--target-sphere", target_sphere, "restrict targets to the sphere");

  auto* koszul = app.add_subcommand("koszul", "contract suite for a Koszul complex");
  koszul->add_option("n", n, "modulus, n >= 2")->required();
  koszul->add_option("generators", generators, "comma-separated ideal generators")->required();

  auto* nullh = app.add_subcommand("nullhomotopy", "decide null-homotopy of a map document");
  nullh->add_option("map-file", file_arg, "path to a map document")->required();

  auto* homology = app.add_subcommand("homology", "invariant factors of a complex document");
  homology->add_option("complex-file", file_arg, "path to a complex document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    if (*ring) return cmd_ring(n, max_brute);
    if (*example) return cmd_example(n, out_dir);
    if (*search) {
      config.mode = target_sphere ? dzn::SearchMode::target_sphere : dzn::SearchMode::general;
      return cmd_gh_search(config);
    }
    if (*koszul) return cmd_koszul(n, generators);
    if (*nullh) return cmd_nullhomotopy(file_arg);
    if (*homology) return cmd_homology(file_arg);
  } catch (const dzn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
