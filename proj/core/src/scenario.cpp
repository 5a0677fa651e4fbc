#include "qlm/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include <yaml-cpp/yaml.h>

#include "qlm/error.hpp"

namespace qlm {
namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "name",  "n_sites",   "initial", "mu", "potential",      "beta",
    "omega", "table",     "t_end",   "dt", "snapshot_every", "integrator",
    "alpha", "price_unit", "price_origin",
};

SourcePosition position_of(const YAML::Mark& mark) {
  return {static_cast<std::size_t>(mark.line + 1), static_cast<std::size_t>(mark.column + 1)};
}

std::optional<SourcePosition> position_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return std::nullopt;
  return position_of(mark);
}

[[noreturn]] void invalid(const std::string& field, const std::string& message,
                          std::optional<SourcePosition> where = std::nullopt) {
  throw ConfigError(ErrorCode::ValidationError, field + ": " + message, where, field);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field, const char* expected) {
  if (!node.IsScalar()) invalid(field, std::string("expected ") + expected, position_of(node));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    invalid(field, std::string("expected ") + expected + ", got '" + node.Scalar() + "'",
            position_of(node));
  }
}

double finite_number(const YAML::Node& node, const std::string& field) {
  const double value = scalar<double>(node, field, "a number");
  if (!std::isfinite(value)) invalid(field, "must be finite", position_of(node));
  return value;
}

std::size_t positive_count(const YAML::Node& node, const std::string& field) {
  const long long value = scalar<long long>(node, field, "an integer");
  if (value < 1) invalid(field, "must be a positive integer", position_of(node));
  return static_cast<std::size_t>(value);
}

SiteAmplitude parse_site(const YAML::Node& node, std::size_t i) {
  const std::string field = "initial[" + std::to_string(i) + "]";
  if (node.IsSequence()) {
    if (node.size() < 2 || node.size() > 3) {
      invalid(field, "expected [index, re] or [index, re, im]", position_of(node));
    }
    const long long index = scalar<long long>(node[0], field + ".index", "an integer");
    if (index < 0) invalid(field + ".index", "must be nonnegative", position_of(node[0]));
    const double re = finite_number(node[1], field + ".re");
    const double im = node.size() == 3 ? finite_number(node[2], field + ".im") : 0.0;
    return {static_cast<std::size_t>(index), Complex(re, im)};
  }
  if (!node.IsMap()) invalid(field, "expected a mapping {index, re, im}", position_of(node));
  for (const auto& kv : node) {
    const std::string key = kv.first.Scalar();
    if (key != "index" && key != "re" && key != "im") {
      throw ConfigError(ErrorCode::UnknownKey, "unknown key '" + key + "' in " + field,
                        position_of(kv.first), field + "." + key);
    }
  }
  if (!node["index"]) invalid(field + ".index", "missing required field", position_of(node));
  if (!node["re"]) invalid(field + ".re", "missing required field", position_of(node));
  const long long index = scalar<long long>(node["index"], field + ".index", "an integer");
  if (index < 0) invalid(field + ".index", "must be nonnegative", position_of(node["index"]));
  const double re = finite_number(node["re"], field + ".re");
  const double im = node["im"] ? finite_number(node["im"], field + ".im") : 0.0;
  return {static_cast<std::size_t>(index), Complex(re, im)};
}

PotentialSpec parse_table(const YAML::Node& node) {
  if (!node.IsSequence() || node.size() == 0) {
    invalid("table", "expected a nonempty list of {t, values}", position_of(node));
  }
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const YAML::Node& row = node[i];
    const std::string field = "table[" + std::to_string(i) + "]";
    if (!row.IsMap() || !row["t"] || !row["values"] || !row["values"].IsSequence()) {
      invalid(field, "expected {t: <minutes>, values: [..]}", position_of(row));
    }
    for (const auto& kv : row) {
      const std::string key = kv.first.Scalar();
      if (key != "t" && key != "values") {
        throw ConfigError(ErrorCode::UnknownKey, "unknown key '" + key + "' in " + field,
                          position_of(kv.first), field + "." + key);
      }
    }
    TableRow parsed;
    parsed.time = finite_number(row["t"], field + ".t");
    for (std::size_t j = 0; j < row["values"].size(); ++j) {
      parsed.values.push_back(
          finite_number(row["values"][j], field + ".values[" + std::to_string(j) + "]"));
    }
    rows.push_back(std::move(parsed));
  }
  try {
    return PotentialSpec::table(std::move(rows));
  } catch (const Error& e) {
    invalid("table", e.what(), position_of(node));
  }
}

}  // namespace

HamiltonianParams Scenario::hamiltonian() const {
  return HamiltonianParams{mu, potential, lattice};
}

EvolutionConfig Scenario::evolution_config(std::size_t max_steps) const {
  EvolutionConfig config;
  config.integrator = integrator;
  config.dt = dt;
  config.t_start = 0.0;
  config.t_end = t_end;
  config.snapshot_every = snapshot_every;
  config.params = hamiltonian();
  config.max_steps = max_steps;
  return config;
}

StateVector Scenario::initial_state() const {
  return make_state(n_sites, initial);
}

void Scenario::validate() const {
  if (n_sites == 0) invalid("n_sites", "must be a positive integer");
  if (initial.empty()) invalid("initial", "must list at least one amplitude");
  try {
    (void)initial_state();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    invalid("initial", e.what());
  }
  if (!std::isfinite(t_end) || t_end < 0.0) invalid("t_end", "must be finite and >= 0");
  if (alpha && !std::isfinite(*alpha)) invalid("alpha", "must be finite");
  if (potential.kind() == PotentialKind::table &&
      potential.table_rows().front().values.size() != n_sites) {
    invalid("table", "each row needs n_sites = " + std::to_string(n_sites) + " values");
  }
  // Step budget is enforced when the run starts, not here.
  evolution_config(std::numeric_limits<std::size_t>::max()).validate();
}

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(ErrorCode::ParseError, "malformed scenario document: " + e.msg,
                      position_of(e.mark));
  }
  if (!root.IsMap()) {
    throw ConfigError(ErrorCode::ParseError, "scenario document must be a key-value mapping",
                      position_of(root));
  }
  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    if (!kKnownKeys.contains(key)) {
      throw ConfigError(ErrorCode::UnknownKey, "unknown key '" + key + "'",
                        position_of(kv.first), key);
    }
  }
  const auto required = [&](const char* key) {
    const YAML::Node node = root[key];
    if (!node) invalid(key, "missing required field");
    return node;
  };

  Scenario s;
  if (const YAML::Node node = root["name"]) s.name = scalar<std::string>(node, "name", "text");
  s.n_sites = positive_count(required("n_sites"), "n_sites");

  const YAML::Node initial = required("initial");
  if (!initial.IsSequence()) invalid("initial", "expected a list", position_of(initial));
  for (std::size_t i = 0; i < initial.size(); ++i) s.initial.push_back(parse_site(initial[i], i));

  s.mu = finite_number(required("mu"), "mu");
  if (s.mu <= 0.0) invalid("mu", "must be positive", position_of(root["mu"]));
  s.t_end = finite_number(required("t_end"), "t_end");
  s.dt = finite_number(required("dt"), "dt");
  s.snapshot_every = finite_number(required("snapshot_every"), "snapshot_every");

  if (const YAML::Node node = root["integrator"]) {
    const std::string name = scalar<std::string>(node, "integrator", "text");
    const auto parsed = parse_integrator(name);
    if (!parsed) {
      invalid("integrator", "unknown integrator '" + name + "' (split_step | expm_midpoint)",
              position_of(node));
    }
    s.integrator = *parsed;
  }

  std::string kind = "zero";
  if (const YAML::Node node = root["potential"]) kind = scalar<std::string>(node, "potential", "text");
  const auto forbid = [&](const char* key) {
    if (root[key]) {
      invalid(key, "only allowed with a matching potential kind (potential is '" + kind + "')",
              position_of(root[key]));
    }
  };
  if (kind == "zero") {
    forbid("beta");
    forbid("omega");
    forbid("table");
    s.potential = PotentialSpec::zero();
  } else if (kind == "cosine_drive") {
    forbid("table");
    s.potential = PotentialSpec::cosine_drive(finite_number(required("beta"), "beta"),
                                              finite_number(required("omega"), "omega"));
  } else if (kind == "table") {
    forbid("beta");
    forbid("omega");
    s.potential = parse_table(required("table"));
  } else {
    invalid("potential", "unknown kind '" + kind + "' (zero | cosine_drive | table)",
            position_of(root["potential"]));
  }

  if (const YAML::Node node = root["alpha"]) s.alpha = finite_number(node, "alpha");
  if (const YAML::Node node = root["price_unit"]) s.lattice.unit = finite_number(node, "price_unit");
  if (const YAML::Node node = root["price_origin"]) {
    s.lattice.origin = finite_number(node, "price_origin");
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::size_t max_steps_from_env() {
  const char* raw = std::getenv("QLM_MAX_STEPS");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxSteps;
  const std::string_view text(raw);
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || value == 0) {
    invalid("QLM_MAX_STEPS", "must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

RunResult run_scenario(const Scenario& scenario, std::size_t max_steps) {
  scenario.validate();
  const StateVector initial = scenario.initial_state();
  const Trajectory trajectory = evolve(initial, scenario.evolution_config(max_steps));
  return RunResult{observe_trajectory(trajectory), trajectory.terminal(), trajectory.warnings};
}

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

}  // namespace qlm
