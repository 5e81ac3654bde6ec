#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ngramhash/bench.hpp"
#include "ngramhash/commands.hpp"
#include "ngramhash/config.hpp"
#include "ngramhash/distinct.hpp"
#include "ngramhash/verify.hpp"

namespace {

using ngram::HasherConfig;

// Flags shared by hash and distinct.
struct ConfigFlags {
  std::string scheme = "cyclic";
  int n = 1;
  int width = 19;
  std::uint64_t seed = 0;
  std::uint64_t base = 37;
  std::string poly;
  int k_split = 1;
  int drop_offset = 0;
  std::string config_path;
  std::string table_path;
  std::string input = "-";

  CLI::Option* scheme_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* width_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* base_opt = nullptr;
  CLI::Option* poly_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* drop_opt = nullptr;

  void add_to(CLI::App* app) {
    scheme_opt = app->add_option("--scheme", scheme, "threewise, karprabin (id37), general, rambuffered, cyclic, truncated");
    n_opt = app->add_option("-n", n, "n-gram length");
    width_opt = app->add_option("-L", width, "word width L (truncated-cyclic: internal width)");
    seed_opt = app->add_option("--seed", seed, "seed for the character tables");
    base_opt = app->add_option("-B,--base", base, "Karp-Rabin multiplier");
    poly_opt = app->add_option("-p,--poly", poly, "reduction polynomial of degree L, hex or x^19+x^5+x^2+x+1");
    k_opt = app->add_option("--k-split", k_split, "ram-general: number of shift tables (divides n)");
    drop_opt = app->add_option("--drop-offset", drop_offset, "truncated-cyclic: first dropped bit");
    app->add_option("--config", config_path, "key=value config file; flags override its entries");
    app->add_option("--table", table_path, "character tables of 256 entries, as written by save");
    app->add_option("--input", input, "input file, - for stdin")->capture_default_str();
  }

  HasherConfig build() const {
    HasherConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot read " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = HasherConfig::from_text(ss.str());
    }
    if (config_path.empty() || scheme_opt->count()) cfg.scheme = ngram::parse_scheme(scheme);
    if (config_path.empty() || n_opt->count()) cfg.n = n;
    if (config_path.empty() || width_opt->count()) cfg.width = width;
    if (seed_opt->count()) cfg.seed = seed;
    if (base_opt->count()) cfg.base = base;
    if (poly_opt->count()) cfg.poly = ngram::parse_poly(poly);
    if (k_opt->count()) cfg.k_split = k_split;
    if (drop_opt->count()) cfg.drop_offset = drop_offset;
    cfg.validate();
    return cfg;
  }

  std::optional<std::string> table() const {
    return table_path.empty() ? std::nullopt : std::optional<std::string>(table_path);
  }
};

std::vector<ngram::Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<ngram::Scheme> out;
  for (const auto& name : names) out.push_back(ngram::parse_scheme(name));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-gram hash families: benchmark, verify, hash, estimate distinct n-grams"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "time every (scheme, n) over a file");
  std::string bench_input;
  std::vector<std::string> bench_schemes{"threewise", "karprabin", "general", "rambuffered", "cyclic",
                                         "truncated"};
  std::vector<int> bench_ns{1, 2, 5, 10, 25};
  int bench_width = ngram::kDefaultBenchWidth;
  int reps = ngram::kDefaultBenchReps;
  std::uint64_t bench_seed = 0;
  bool csv = false;
  bench->add_option("--input", bench_input, "input file, - for stdin")->required();
  bench->add_option("--scheme", bench_schemes, "schemes to time")->delimiter(',')->capture_default_str();
  bench->add_option("-n", bench_ns, "n values")->delimiter(',')->capture_default_str();
  bench->add_option("-L", bench_width, "output width in bits")->capture_default_str();
  bench->add_option("--reps", reps, "timed repetitions; best is kept")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", bench_seed, "seed for the character tables");
  bench->add_flag("--csv", csv, "emit CSV");

  // verify
  auto* verify = app.add_subcommand("verify", "run an exhaustive verification suite");
  std::string suite = "all";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string suite_help = "all";
  for (const auto& s : ngram::suite_names()) suite_help += ", " + s;
  verify->add_option("suite,--suite", suite, suite_help);
  verify->add_option("-j,--jobs", jobs, "enumeration threads")->check(CLI::PositiveNumber);

  // hash
  auto* hash = app.add_subcommand("hash", "print one hex hash per complete n-gram");
  ConfigFlags hash_flags;
  hash_flags.add_to(hash);

  // distinct
  auto* distinct = app.add_subcommand("distinct", "estimate the number of distinct n-grams");
  ConfigFlags distinct_flags;
  distinct_flags.scheme = "truncated";
  distinct_flags.width = 32;
  distinct_flags.add_to(distinct);
  bool exact = false;
  distinct->add_flag("--exact", exact, "also count distinct n-grams exactly (memory grows with the count)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      const auto input = ngram::read_input(bench_input);
      std::vector<HasherConfig> cfgs;
      for (auto scheme : parse_schemes(bench_schemes)) {
        for (int n : bench_ns) cfgs.push_back(ngram::bench_config(scheme, n, bench_width, bench_seed));
      }
      const auto results = ngram::run_bench_suite(cfgs, input, reps);
      if (csv) std::cout << ngram::kBenchCsvHeader << '\n';
      for (const auto& r : results) std::cout << (csv ? ngram::to_csv_row(r) : ngram::to_human(r)) << '\n';
      return 0;
    }
    if (*verify) {
      return ngram::run_suite(suite, std::cout, jobs) ? 0 : 1;
    }
    if (*hash) {
      const auto cfg = hash_flags.build();
      auto hasher = ngram::make_byte_hasher(cfg, hash_flags.table());
      const auto input = ngram::read_input(hash_flags.input);
      ngram::write_hashes(hasher, input, std::cout);
      return 0;
    }
    if (*distinct) {
      const auto cfg = distinct_flags.build();
      auto hasher = ngram::make_byte_hasher(cfg, distinct_flags.table());
      const auto input = ngram::read_input(distinct_flags.input);
      const auto e = ngram::estimate_distinct(hasher, input, exact);
      std::cout << "grams: " << e.grams << '\n'
                << "output_width: " << e.output_width << '\n'
                << "max_zeros: " << e.max_zeros << '\n'
                << "estimate: " << e.estimate() << '\n';
      if (e.exact) std::cout << "exact: " << *e.exact << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
