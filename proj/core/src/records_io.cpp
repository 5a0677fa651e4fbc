#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "qlm/error.hpp"
#include "qlm/scenario.hpp"

namespace qlm {
namespace {

using nlohmann::json;

std::string g12(double value) {
  // Avoid "-0" for cells that round to zero.
  if (value == 0.0) value = 0.0;
  return fmt::format("{:.12g}", value);
}

json to_json(const ObservationRecord& r) {
  const auto weights = [](const Distribution& d) {
    return json(std::vector<double>(d.weights().begin(), d.weights().end()));
  };
  return json{
      {"time", r.time},
      {"price_weights", weights(r.price_weights)},
      {"owner_weights", weights(r.owner_weights)},
      {"mean_price", r.mean_price},
      {"mean_owner", r.mean_owner},
      {"var_price", r.var_price},
      {"var_owner", r.var_owner},
      {"mode_price", r.mode_price},
      {"mode_owner", r.mode_owner},
  };
}

ObservationRecord record_from_json(const json& j) {
  const auto weights = [&](const char* key) {
    return Distribution::from_weights(j.at(key).get<std::vector<double>>(),
                                      kNormDriftTolerance);
  };
  return ObservationRecord{
      j.at("time").get<double>(),
      weights("price_weights"),
      weights("owner_weights"),
      j.at("mean_price").get<double>(),
      j.at("mean_owner").get<double>(),
      j.at("var_price").get<double>(),
      j.at("var_owner").get<double>(),
      j.at("mode_price").get<std::size_t>(),
      j.at("mode_owner").get<std::size_t>(),
  };
}

json potential_json(const PotentialSpec& p) {
  switch (p.kind()) {
    case PotentialKind::zero:
      return json{{"kind", "zero"}};
    case PotentialKind::cosine_drive:
      return json{{"kind", "cosine_drive"}, {"beta", p.drive()->beta}, {"omega", p.drive()->omega}};
    case PotentialKind::table: {
      json rows = json::array();
      for (const TableRow& row : p.table_rows()) rows.push_back({{"t", row.time}, {"values", row.values}});
      return json{{"kind", "table"}, {"table", rows}};
    }
  }
  return json{};
}

}  // namespace

void emit_records(std::span<const ObservationRecord> records, OutputFormat format,
                  std::ostream& out) {
  if (records.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no records to emit");
  }
  if (format == OutputFormat::json) {
    json array = json::array();
    for (const ObservationRecord& r : records) array.push_back(to_json(r));
    out << array.dump(2) << '\n';
  } else {
    out << kCsvHeader << '\n';
    for (const ObservationRecord& r : records) {
      const std::string tail = fmt::format(
          "{},{},{},{},{},{}", g12(r.mean_price), g12(r.mean_owner), g12(r.var_price),
          g12(r.var_owner), r.mode_price, r.mode_owner);
      const std::string time = g12(r.time);
      for (std::size_t n = 0; n < r.price_weights.n_sites(); ++n) {
        out << time << ',' << n << ',' << g12(r.price_weights[n]) << ','
            << g12(r.owner_weights[n]) << ',' << tail << '\n';
      }
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing records");
}

void emit_records(std::span<const ObservationRecord> records, OutputFormat format,
                  const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + destination.string() + " for writing");
  emit_records(records, format, out);
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + destination.string());
}

std::vector<ObservationRecord> read_records_json(std::istream& in) {
  try {
    const json doc = json::parse(in);
    if (!doc.is_array()) throw Error(ErrorCode::ParseError, "records document must be an array");
    std::vector<ObservationRecord> records;
    for (const json& j : doc) records.push_back(record_from_json(j));
    return records;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed records document: ") + e.what());
  }
}

std::string metadata_json(const Scenario& s, const RunResult& result) {
  json initial = json::array();
  for (const SiteAmplitude& e : s.initial) {
    initial.push_back({{"index", e.index}, {"re", e.amplitude.real()}, {"im", e.amplitude.imag()}});
  }
  json warnings = json::array();
  for (const NormDriftWarning& w : result.warnings) {
    warnings.push_back({{"time", w.time}, {"norm", w.norm}});
  }
  json doc{
      {"scenario",
       {
           {"name", s.name},
           {"n_sites", s.n_sites},
           {"initial", initial},
           {"mu", s.mu},
           {"potential", potential_json(s.potential)},
           {"t_end", s.t_end},
           {"dt", s.dt},
           {"snapshot_every", s.snapshot_every},
           {"integrator", std::string(to_string(s.integrator))},
           {"alpha", s.alpha ? json(*s.alpha) : json(nullptr)},
           {"price_unit", s.lattice.unit},
           {"price_origin", s.lattice.origin},
       }},
      {"snapshots", result.records.size()},
      {"norm_drift_warnings", warnings},
  };
  return doc.dump(2);
}

}  // namespace qlm
