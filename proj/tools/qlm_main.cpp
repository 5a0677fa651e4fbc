// qlm: run price-lattice scenarios and write plot-ready observation records.
//
//   qlm --config scenarios/paper_fig3.yaml --output fig3.csv
//   qlm --batch scenarios --output out/ --format json

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlm/error.hpp"
#include "qlm/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntimeError = 1;
constexpr int kExitConfigError = 2;

struct Options {
  std::string config;
  std::string batch;
  std::string output;
  std::string format = "csv";
  std::optional<std::string> integrator;
  std::optional<double> dt;
  bool quiet = false;
};

std::mutex g_stderr_mutex;

// One JSON object per line so callers can parse failures.
void report_error(const qlm::Error& e, const std::string& source) {
  nlohmann::json line{{"error", std::string(qlm::to_string(e.code()))}, {"message", e.what()}};
  if (!source.empty()) line["source"] = source;
  if (const auto* ce = dynamic_cast<const qlm::ConfigError*>(&e)) {
    if (!ce->field().empty()) line["field"] = ce->field();
    if (ce->position()) {
      line["line"] = ce->position()->line;
      line["column"] = ce->position()->column;
    }
  }
  std::lock_guard lock(g_stderr_mutex);
  std::cerr << line.dump() << '\n';
}

int exit_code_for(const qlm::Error& e) {
  switch (e.code()) {
    case qlm::ErrorCode::ParseError:
    case qlm::ErrorCode::ValidationError:
    case qlm::ErrorCode::UnknownKey:
      return kExitConfigError;
    default:
      return kExitRuntimeError;
  }
}

qlm::Scenario effective_scenario(const fs::path& path, const Options& opt) {
  qlm::Scenario s = qlm::load_scenario(path);
  if (opt.integrator) {
    const auto parsed = qlm::parse_integrator(*opt.integrator);
    if (!parsed) {
      throw qlm::ConfigError(qlm::ErrorCode::ValidationError,
                             "integrator: unknown integrator '" + *opt.integrator + "'",
                             std::nullopt, "integrator");
    }
    s.integrator = *parsed;
  }
  if (opt.dt) s.dt = *opt.dt;
  s.validate();
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text << '\n';
  if (!out) throw qlm::Error(qlm::ErrorCode::IoError, "failed writing " + path.string());
}

void summarize(const qlm::Scenario& s, const qlm::RunResult& r) {
  const auto& last = r.records.back();
  std::lock_guard lock(g_stderr_mutex);
  std::cerr << s.name << ": " << r.records.size() << " snapshot(s), t=" << last.time
            << " mode_price=" << last.mode_price << " mode_owner=" << last.mode_owner;
  if (!r.warnings.empty()) std::cerr << " norm-drift-warnings=" << r.warnings.size();
  std::cerr << '\n';
}

int run_single(const Options& opt, qlm::OutputFormat format, std::size_t max_steps) {
  const qlm::Scenario s = effective_scenario(opt.config, opt);
  const qlm::RunResult result = qlm::run_scenario(s, max_steps);
  if (opt.output.empty()) {
    qlm::emit_records(result.records, format, std::cout);
  } else {
    const fs::path out = opt.output;
    qlm::emit_records(result.records, format, out);
    write_text(fs::path(out.string() + ".meta.json"), qlm::metadata_json(s, result));
  }
  if (!opt.quiet) summarize(s, result);
  return EXIT_SUCCESS;
}

int run_batch(const Options& opt, qlm::OutputFormat format, std::size_t max_steps) {
  if (opt.output.empty()) {
    throw qlm::ConfigError(qlm::ErrorCode::ValidationError,
                           "--batch requires --output <directory>", std::nullopt, "output");
  }
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(opt.batch)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end());
  fs::create_directories(opt.output);

  const std::string suffix = format == qlm::OutputFormat::csv ? ".csv" : ".json";
  std::vector<std::future<int>> jobs;
  for (const fs::path& config : configs) {
    jobs.push_back(std::async(std::launch::async, [&, config] {
      try {
        const qlm::Scenario s = effective_scenario(config, opt);
        const qlm::RunResult result = qlm::run_scenario(s, max_steps);
        const fs::path out = fs::path(opt.output) / (config.stem().string() + suffix);
        qlm::emit_records(result.records, format, out);
        write_text(fs::path(out.string() + ".meta.json"), qlm::metadata_json(s, result));
        if (!opt.quiet) summarize(s, result);
        return 0;
      } catch (const qlm::Error& e) {
        report_error(e, config.string());
        return exit_code_for(e);
      }
    }));
  }
  int status = EXIT_SUCCESS;
  for (auto& job : jobs) status = std::max(status, job.get());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite price-lattice market simulator"};
  Options opt;
  auto* config = app.add_option("--config", opt.config, "Scenario file (YAML)");
  auto* batch = app.add_option("--batch", opt.batch, "Run every scenario in a directory concurrently")
                    ->check(CLI::ExistingDirectory);
  config->excludes(batch);
  app.add_option("--output", opt.output, "Output file (directory with --batch); stdout if omitted");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--integrator", opt.integrator, "Override integrator: split_step | expm_midpoint");
  app.add_option("--dt", opt.dt, "Override time step (minutes)");
  app.add_flag("--quiet", opt.quiet, "Suppress the run summary on stderr");
  CLI11_PARSE(app, argc, argv);

  if (opt.config.empty() && opt.batch.empty()) {
    std::cerr << app.help();
    return kExitConfigError;
  }

  try {
    const auto format = *qlm::parse_output_format(opt.format);
    const std::size_t max_steps = qlm::max_steps_from_env();
    return opt.batch.empty() ? run_single(opt, format, max_steps)
                             : run_batch(opt, format, max_steps);
  } catch (const qlm::Error& e) {
    report_error(e, opt.config);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    report_error(qlm::Error(qlm::ErrorCode::IoError, e.what()), opt.config);
    return kExitRuntimeError;
  }
}
