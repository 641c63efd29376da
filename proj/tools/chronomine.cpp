// chronomine: discriminant chronicle mining from labeled event sequences.
//
//   chronomine mine      --input data.csv --min-support 0.05 --min-growth 2
//   chronomine match     --input data.csv --chronicles found.json
//   chronomine crossover --input timelines.csv --outcome SEIZURE
//   chronomine generate  --spec planted.json --seed 7
//
// Exit codes: 0 success, 1 input error, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chronomine/crossover.hpp"
#include "chronomine/export.hpp"
#include "chronomine/io.hpp"
#include "chronomine/pipeline.hpp"
#include "chronomine/synthetic.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kConfigError = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw chronomine::InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw chronomine::InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw chronomine::InputError("failed writing '" + path + "'");
}

struct MineOptions {
  std::string input;
  std::string min_support = "0.05";
  double min_growth = 2.0;
  std::size_t min_size = 2;
  std::size_t max_size = 0;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  bool strict_growth = false;
  std::size_t occurrence_cap = chronomine::kDefaultOccurrenceCap;
  std::size_t threads = 0;
  bool no_prune = false;
  std::string dump_tables;
};

int run_mine(const MineOptions& o) {
  chronomine::DcmConfig config;
  try {
    config.sigma_min = chronomine::SupportThreshold::parse(o.min_support);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  config.g_min = o.min_growth;
  config.min_size = o.min_size;
  if (o.max_size > 0) config.max_size = o.max_size;
  config.seed = o.seed;
  config.strict_growth = o.strict_growth;
  config.occurrence_cap = o.occurrence_cap;
  config.threads = o.threads;
  config.learner.prune = !o.no_prune;
  const auto format = chronomine::parse_output_format(o.format);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::size_t table_no = 0;
  if (!o.dump_tables.empty()) {
    std::filesystem::create_directories(o.dump_tables);
    config.table_sink = [&](const chronomine::DurationTable& table) {
      std::string name;
      for (const auto& item : table.multiset()) name += (name.empty() ? "" : "_") + item;
      const auto path = std::filesystem::path(o.dump_tables) /
                        (std::to_string(table_no++) + "_" + name + ".csv");
      std::ofstream out(path);
      table.write_csv(out);
    };
  }

  const auto dataset = chronomine::load_csv(o.input);
  if (dataset.positives().empty()) {
    throw chronomine::InputError("no positive sequences in '" + o.input + "'");
  }
  const auto result = chronomine::dcm(dataset, config);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << result.multisets << " frequent multisets, "
            << result.chronicles.size() << " discriminant chronicles\n";
  emit(o.output, chronomine::render(result.chronicles, format));
  return 0;
}

int run_match(const std::string& input, const std::string& chronicles,
              const std::string& format_name, const std::string& output) {
  const auto format = chronomine::parse_output_format(format_name);
  const auto dataset = chronomine::load_csv(input);
  std::vector<chronomine::MinedChronicle> results;
  for (const auto& c :
       chronomine::parse_chronicles_json(read_file(chronicles))) {
    results.push_back(chronomine::reevaluate(c, dataset));
  }
  emit(output, chronomine::render(results, format));
  return 0;
}

int run_crossover(const std::string& input, const chronomine::CrossoverConfig& cfg,
                  const std::string& output) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::ifstream in(input);
  if (!in) throw chronomine::InputError("cannot open '" + input + "'");
  const auto timelines = chronomine::read_timelines_csv(in);
  const auto result = chronomine::crossover_split(timelines, cfg);
  for (const auto& sid : result.skipped) {
    std::cerr << "warning: subject '" << sid << "' has no '" << cfg.outcome
              << "' event, skipped\n";
  }
  std::ostringstream os;
  chronomine::write_dataset_csv(os, result.sequences);
  emit(output, os.str());
  return 0;
}

int run_generate(const std::string& spec_path, std::uint64_t seed,
                 const std::string& output) {
  auto spec = chronomine::parse_synthetic_spec(read_file(spec_path));
  std::vector<chronomine::RawSequence> sequences;
  try {
    sequences = chronomine::generate_synthetic(spec, seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream os;
  chronomine::write_dataset_csv(os, sequences);
  emit(output, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminant chronicle mining"};
  app.require_subcommand(1);

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine discriminant chronicles");
  mine_cmd->add_option("--input", mine.input, "Dataset CSV (sid,event,timestamp,label)")
      ->required();
  mine_cmd->add_option("--min-support", mine.min_support,
                       "Minimal support in S+: count (42) or fraction (0.005)")
      ->capture_default_str();
  mine_cmd->add_option("--min-growth", mine.min_growth, "Minimal growth rate (>= 1)")
      ->capture_default_str();
  mine_cmd->add_option("--min-size", mine.min_size, "Minimal multiset size")
      ->capture_default_str();
  mine_cmd->add_option("--max-size", mine.max_size, "Maximal multiset size (0: unbounded)")
      ->capture_default_str();
  mine_cmd->add_option("--format", mine.format, "json, csv or dot")->capture_default_str();
  mine_cmd->add_option("--output,-o", mine.output, "Output file (default stdout)");
  mine_cmd->add_option("--seed", mine.seed, "Seed of the grow/prune split")
      ->capture_default_str();
  mine_cmd->add_flag("--strict-growth", mine.strict_growth,
                     "Constraint-free multisets must exceed the growth threshold strictly");
  mine_cmd->add_option("--occurrence-cap", mine.occurrence_cap,
                       "Occurrences enumerated per sequence and multiset")
      ->capture_default_str();
  mine_cmd->add_option("--threads", mine.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  mine_cmd->add_flag("--no-prune", mine.no_prune, "Grow rules on all rows, no pruning");
  mine_cmd->add_option("--dump-tables", mine.dump_tables,
                       "Directory receiving every duration table as CSV");

  std::string match_input, match_chronicles, match_format = "json", match_output;
  auto* match_cmd = app.add_subcommand("match", "Report supports of given chronicles");
  match_cmd->add_option("--input", match_input, "Dataset CSV")->required();
  match_cmd->add_option("--chronicles", match_chronicles, "Chronicles JSON")->required();
  match_cmd->add_option("--format", match_format, "json, csv or dot")->capture_default_str();
  match_cmd->add_option("--output,-o", match_output, "Output file (default stdout)");

  std::string cross_input, cross_output;
  chronomine::CrossoverConfig cross;
  auto* cross_cmd = app.add_subcommand(
      "crossover", "Build positive/negative windows before each subject's first outcome");
  cross_cmd->add_option("--input", cross_input, "Timelines CSV (sid,event,timestamp)")
      ->required();
  cross_cmd->add_option("--outcome", cross.outcome, "Outcome event type")->required();
  cross_cmd->add_option("--gap", cross.gap, "Induction period before the outcome")
      ->capture_default_str();
  cross_cmd->add_option("--window", cross.window, "Window length")->capture_default_str();
  cross_cmd->add_option("--output,-o", cross_output, "Output file (default stdout)");

  std::string gen_spec, gen_output;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a planted-pattern dataset");
  gen_cmd->add_option("--spec", gen_spec, "Generator spec JSON")->required();
  gen_cmd->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--output,-o", gen_output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*mine_cmd) return run_mine(mine);
    if (*match_cmd) {
      return run_match(match_input, match_chronicles, match_format, match_output);
    }
    if (*cross_cmd) return run_crossover(cross_input, cross, cross_output);
    if (*gen_cmd) return run_generate(gen_spec, gen_seed, gen_output);
  } catch (const chronomine::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
