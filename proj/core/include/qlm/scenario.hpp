// scenario.hpp
// Scenario documents, run orchestration and record serialization.
//
// A scenario is a flat YAML mapping plus the nested `initial` list:
//
//   name: paper_fig3
//   n_sites: 21
//   initial:
//     - {index: 7, re: 1.0, im: 0.0}
//   mu: 1.0
//   potential: cosine_drive   # zero | cosine_drive | table
//   beta: 0.1
//   omega: 0.0001
//   t_end: 480
//   dt: 0.01
//   snapshot_every: 240
//   integrator: split_step    # split_step | expm_midpoint
//   alpha: 0.2                # optional, echoed only
//
// See scenarios/README.md for the full key reference.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlm/evolve.hpp"
#include "qlm/lattice.hpp"
#include "qlm/observe.hpp"
#include "qlm/potential.hpp"
#include "qlm/state.hpp"

namespace qlm {

struct Scenario {
  std::string name = "unnamed";
  std::size_t n_sites = 0;
  std::vector<SiteAmplitude> initial;
  double mu = 1.0;
  PotentialSpec potential;
  double t_end = 0.0;
  double dt = 0.01;
  double snapshot_every = 1.0;
  Integrator integrator = Integrator::split_step;
  std::optional<double> alpha;  // parsed and echoed; plays no role in the dynamics
  PriceLattice lattice;         // price_unit / price_origin, default level(n) = n

  HamiltonianParams hamiltonian() const;
  EvolutionConfig evolution_config(std::size_t max_steps = kDefaultMaxSteps) const;
  StateVector initial_state() const;

  // Field-level checks; throws ConfigError(ValidationError) naming the field.
  void validate() const;
};

// Throws ConfigError with code ParseError, UnknownKey or ValidationError.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Step budget, overridden by the QLM_MAX_STEPS environment variable.
std::size_t max_steps_from_env();

struct RunResult {
  std::vector<ObservationRecord> records;
  StateVector terminal;
  std::vector<NormDriftWarning> warnings;
};

RunResult run_scenario(const Scenario& scenario, std::size_t max_steps = kDefaultMaxSteps);

enum class OutputFormat { csv, json };

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept;

inline constexpr std::string_view kCsvHeader =
    "time,site,price_prob,owner_prob,mean_price,mean_owner,var_price,var_owner,"
    "mode_price,mode_owner";

// CSV: one row per (snapshot, site), floats at 12 significant digits.
// JSON: array of records with ObservationRecord field names.
void emit_records(std::span<const ObservationRecord> records, OutputFormat format,
                  std::ostream& out);
void emit_records(std::span<const ObservationRecord> records, OutputFormat format,
                  const std::filesystem::path& destination);

std::vector<ObservationRecord> read_records_json(std::istream& in);

// Effective configuration (plus run warnings) as a JSON document.
std::string metadata_json(const Scenario& scenario, const RunResult& result);

}  // namespace qlm
