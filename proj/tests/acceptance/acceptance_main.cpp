// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qlm/evolve.hpp"
#include "qlm/fourier.hpp"
#include "qlm/observe.hpp"
#include "qlm/operators.hpp"
#include "qlm/scenario.hpp"

using namespace qlm;
using qlm::testing::max_abs_diff;

namespace {

const std::filesystem::path kScenarios = QLM_SCENARIO_DIR;

// Bar heights of the target price histograms at t = 240 and t = 480 for the
// rescaled-lattice scenario, read off the plot (axis: 12 units per 1.0).
constexpr double kPrice240[21] = {
    .20635, .10983, .07620, .06694, .07098, .09579, .20093, .98023, 9.28398, .75877, .08032,
    .01711, .00504, .00155, .00041, .00019, .00058, .00166, .00403, .00973, .02937};
constexpr double kPrice480[21] = {
    .67679, .10182, .00436, .03846, .08043, .14774, .30626, .79503, 2.22334, 5.44153, 1.71970,
    .27576, .05208, .01484, .00802, .00779, .00926, .01131, .01410, .02010, .05127};
constexpr double kPlotScale = 12.0;
// Reading error of the digitized bars, in probability units.
constexpr double kDigitizeTolerance = 2e-5;

class Criterion {
 public:
  Criterion(int id, std::string title, double budget_seconds)
      : id_(id), title_(std::move(title)), budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    details_.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
  void info(const std::string& what) { details_.push_back("info " + what); }

  bool finish() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream t;
    t << "runtime " << elapsed << " s (budget " << budget_ << " s)";
    check(elapsed < budget_, t.str());
    std::printf("%s %d %s\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str());
    for (const auto& d : details_) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
  std::vector<std::string> details_;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_of(const std::vector<ObservationRecord>& records) {
  std::ostringstream out;
  emit_records(records, OutputFormat::csv, out);
  return out.str();
}

double max_amplitude_diff(const StateVector& a, const StateVector& b) {
  return max_abs_diff(a.amplitudes(), b.amplitudes());
}

double distance(const StateVector& a, const StateVector& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.n_sites(); ++j) sum += std::norm(a[j] - b[j]);
  return std::sqrt(sum);
}

std::vector<std::size_t> top_indices(const Distribution& d, std::size_t count) {
  std::vector<std::size_t> idx(d.weights().size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return d[a] > d[b]; });
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

// |F[|psi|]|^2: ownership weights of the state with its phases discarded.
Distribution phase_stripped_owner(const StateVector& s) {
  std::vector<Complex> magnitudes(s.n_sites());
  for (std::size_t j = 0; j < s.n_sites(); ++j) magnitudes[j] = std::abs(s[j]);
  return probabilities(dft(StateVector(std::move(magnitudes), true)));
}

bool criterion1() {
  Criterion c(1, "sharp-price scenario (paper_fig1)", 1.0);
  const RunResult r = run_scenario(load_scenario(kScenarios / "paper_fig1.yaml"));
  const ObservationRecord& rec = r.records.front();
  double price_err = 0.0;
  for (std::size_t n = 0; n < 21; ++n) price_err = std::max(price_err, std::abs(rec.price_weights[n] - (n == 7 ? 1.0 : 0.0)));
  double owner_err = 0.0;
  for (double w : rec.owner_weights.weights()) owner_err = std::max(owner_err, std::abs(w - 1.0 / 21.0));
  c.check(r.records.size() == 1, "single snapshot at t = 0");
  c.check(price_err <= 1e-12, "price weight 1 at n = 7, max err " + num(price_err));
  c.check(owner_err <= 1e-12, "owner weights 1/21, max err " + num(owner_err));
  return c.finish();
}

bool criterion2() {
  Criterion c(2, "three-site superposition (paper_fig2)", 1.0);
  const RunResult r = run_scenario(load_scenario(kScenarios / "paper_fig2.yaml"));
  const ObservationRecord& rec = r.records.front();
  const double expected_price[3] = {0.25, 0.5, 0.25};
  double price_err = 0.0;
  for (std::size_t n = 0; n < 21; ++n) {
    const double want = (n >= 6 && n <= 8) ? expected_price[n - 6] : 0.0;
    price_err = std::max(price_err, std::abs(rec.price_weights[n] - want));
  }
  c.check(price_err <= 1e-12, "price weights 1/4, 1/2, 1/4 at 6, 7, 8, max err " + num(price_err));

  // Closed form and an independent 21-term sum.
  const StateVector psi = load_scenario(kScenarios / "paper_fig2.yaml").initial_state();
  const auto brute = qlm::testing::brute_dft(psi.amplitudes());
  double closed_err = 0.0;
  double brute_err = 0.0;
  for (std::size_t k = 0; k < 21; ++k) {
    const double closed = std::pow(1.0 / std::sqrt(2.0) + std::cos(2.0 * std::numbers::pi * k / 21.0), 2) / 21.0;
    closed_err = std::max(closed_err, std::abs(rec.owner_weights[k] - closed));
    brute_err = std::max(brute_err, std::abs(std::norm(brute[k]) - closed));
  }
  c.check(brute_err <= 1e-10, "brute-force sum matches the closed form, max err " + num(brute_err));
  c.check(closed_err <= 1e-10, "owner weights match the closed form, max err " + num(closed_err));
  c.info("owner weights k=0,1,10: " + num(rec.owner_weights[0]) + " " + num(rec.owner_weights[1]) + " " +
         num(rec.owner_weights[10]));
  return c.finish();
}

struct DrivenRun {
  RunResult split;
  RunResult expm;
};

DrivenRun run_both(const Scenario& s) {
  Scenario e = s;
  e.integrator = Integrator::expm_midpoint;
  return {run_scenario(s), run_scenario(e)};
}

bool criterion3() {
  Criterion c(3, "driven evolution (paper_fig3)", 60.0);
  const Scenario s = load_scenario(kScenarios / "paper_fig3.yaml");
  const DrivenRun run = run_both(s);
  const auto& recs = run.split.records;
  if (recs.size() != 3) {
    c.check(false, "expected snapshots at 0, 240, 480");
    return c.finish();
  }
  const auto modes = std::to_string(recs[0].mode_price) + ", " + std::to_string(recs[1].mode_price) +
                     ", " + std::to_string(recs[2].mode_price);
  c.info("mode_price at t = 0, 240, 480: " + modes);
  c.check(recs[1].mode_price == 8, "mode_price 8 at t = 240 (p = " + num(recs[1].price_weights[8]) + ")");
  c.check(recs[2].mode_price == 9, "mode_price 9 at t = 480 (got " + std::to_string(recs[2].mode_price) + ")");
  const double owner20 = recs[2].owner_weights[20];
  c.check(std::abs(owner20 - 0.43) <= 0.05, "owner weight k = 20 at t = 480 in 0.43 +- 0.05 (got " + num(owner20) + ")");
  const double cross = max_amplitude_diff(run.split.terminal, run.expm.terminal);
  c.check(cross <= 1e-4, "split_step vs expm_midpoint at dt = 0.01, max amplitude diff " + num(cross));
  c.info("owner top-7 at t = 240: " + list(top_indices(recs[1].owner_weights, 7)) +
         " (expected {0,1,2,17,18,19,20})");

  // Rescaled price lattice: level(n) = 0.01 (n + 1).
  const Scenario f = load_scenario(kScenarios / "paper_fig3_figure.yaml");
  const DrivenRun alt = run_both(f);
  const auto& ar = alt.split.records;
  double err240 = 0.0;
  double err480 = 0.0;
  for (std::size_t n = 0; n < 21; ++n) {
    err240 = std::max(err240, std::abs(ar[1].price_weights[n] - kPrice240[n] / kPlotScale));
    err480 = std::max(err480, std::abs(ar[2].price_weights[n] - kPrice480[n] / kPlotScale));
  }
  const bool alt_ok = ar[1].mode_price == 8 && ar[2].mode_price == 9 && err240 <= kDigitizeTolerance &&
                      err480 <= kDigitizeTolerance &&
                      max_amplitude_diff(alt.split.terminal, alt.expm.terminal) <= 1e-4;
  c.info("paper_fig3_figure (rescaled lattice) " + std::string(alt_ok ? "reproduces" : "does NOT reproduce") +
         " the target price histograms:");
  c.info("  mode_price at t = 240, 480: " + std::to_string(ar[1].mode_price) + ", " + std::to_string(ar[2].mode_price));
  c.info("  max |price - target| at t = 240: " + num(err240) + ", at t = 480: " + num(err480));
  c.info("  split_step vs expm_midpoint max amplitude diff " +
         num(max_amplitude_diff(alt.split.terminal, alt.expm.terminal)));
  c.info("  owner weight k = 20 at t = 480: " + num(ar[2].owner_weights[20]) +
         "; phase-stripped |F[|psi|]|^2 at k = 0: " + num(phase_stripped_owner(alt.split.terminal)[0]));
  c.info("  owner top-7 at t = 240: " + list(top_indices(ar[1].owner_weights, 7)));
  return c.finish();
}

bool criterion4() {
  Criterion c(4, "transform unitarity", 5.0);
  std::mt19937_64 rng(20240601);
  double norm_err = 0.0, round_err = 0.0, four_err = 0.0;
  for (std::size_t n : {2u, 3u, 8u, 13u, 21u, 64u}) {
    for (int i = 0; i < 100; ++i) {
      const StateVector s = qlm::testing::random_state(n, rng);
      const StateVector f = dft(s);
      norm_err = std::max(norm_err, std::abs(norm(f) - norm(s)));
      round_err = std::max(round_err, max_amplitude_diff(idft(f), s));
      four_err = std::max(four_err, max_amplitude_diff(dft(dft(dft(f))), s));
    }
  }
  c.check(norm_err <= 1e-12, "norm preserved, max err " + num(norm_err));
  c.check(round_err <= 1e-12, "idft(dft(s)) = s, max err " + num(round_err));
  c.check(four_err <= 1e-11, "dft^4 = identity, max err " + num(four_err));
  return c.finish();
}

bool criterion5() {
  Criterion c(5, "ownership operator identities", 5.0);
  std::mt19937_64 rng(7);
  double product_err = 0.0, spectrum_err = 0.0, duality_err = 0.0;
  for (std::size_t n : {2u, 3u, 8u, 13u, 21u, 64u}) {
    const Eigen::MatrixXcd f = qlm::testing::brute_dft_matrix(n);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = double(k);
    const LatticeOperator o = ownership_operator(n);
    product_err = std::max(product_err, (o.entries() - f.adjoint() * d * f).cwiseAbs().maxCoeff());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(o.entries(), Eigen::EigenvaluesOnly);
    Eigen::VectorXd values = solver.eigenvalues();
    std::sort(values.data(), values.data() + values.size());
    for (std::size_t k = 0; k < n; ++k) spectrum_err = std::max(spectrum_err, std::abs(values(k) - double(k)));

    const LatticeOperator p = price_operator(n);
    for (int i = 0; i < 50; ++i) {
      const StateVector s = qlm::testing::random_state(n, rng);
      duality_err = std::max(duality_err, std::abs(expectation(o, s) - expectation(p, dft(s))));
    }
  }
  c.check(product_err <= 1e-11, "O equals brute-force conjugation, max err " + num(product_err));
  c.check(spectrum_err <= 1e-8, "spectrum {0..N-1}, max err " + num(spectrum_err));
  c.check(duality_err <= 1e-10, "<O>_s = <P>_dft(s), max err " + num(duality_err));
  return c.finish();
}

bool criterion6() {
  Criterion c(6, "integrator quality", 120.0);
  const Scenario s = load_scenario(kScenarios / "paper_fig3.yaml");
  for (Integrator integrator : {Integrator::split_step, Integrator::expm_midpoint}) {
    EvolutionConfig config = s.evolution_config();
    config.integrator = integrator;
    config.snapshot_every = 10.0;
    const Trajectory tr = evolve(s.initial_state(), config);
    double drift = 0.0;
    for (const Snapshot& snap : tr.snapshots) drift = std::max(drift, std::abs(norm(snap.state) - 1.0));
    c.check(drift < 1e-9 && tr.warnings.empty(),
            std::string(to_string(integrator)) + " norm drift over 480 min " + num(drift));
  }

  const HamiltonianParams params = s.hamiltonian();
  const StateVector psi = s.initial_state();
  const auto march = [&](Integrator integrator, double dt, int steps) {
    Propagator prop(psi.n_sites(), params);
    StateVector out = psi;
    for (int i = 0; i < steps; ++i) out = prop.step(integrator, out, i * dt, dt);
    return out;
  };
  const auto error_at = [&](double dt) {
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    return distance(march(Integrator::split_step, dt, steps), march(Integrator::expm_midpoint, dt / 8.0, steps * 8));
  };
  const double e1 = error_at(0.01);
  const double e2 = error_at(0.005);
  c.check(e1 / e2 >= 3.5, "dt-halving error ratio " + num(e1 / e2) + " (errors " + num(e1) + ", " + num(e2) + ")");

  HamiltonianParams frozen = params;
  frozen.potential = PotentialSpec::cosine_drive(0.1, 0.0);
  double reversal = 0.0;
  std::mt19937_64 rng(3);
  const StateVector r = qlm::testing::random_state(21, rng);
  for (Integrator integrator : {Integrator::split_step, Integrator::expm_midpoint}) {
    Propagator prop(21, frozen);
    const StateVector back = prop.step(integrator, prop.step(integrator, r, 0.0, 0.01), 0.01, -0.01);
    reversal = std::max(reversal, max_amplitude_diff(back, r));
  }
  c.check(reversal <= 1e-10, "forward/backward step returns the state, max err " + num(reversal));
  return c.finish();
}

bool criterion7() {
  Criterion c(7, "determinism and serialization", 60.0);
  const Scenario s = load_scenario(kScenarios / "paper_fig3.yaml");
  const RunResult first = run_scenario(s);
  const std::string csv = csv_of(first.records);
  c.check(csv == csv_of(run_scenario(s).records), "repeated runs give byte-identical CSV");

  // Column sums per snapshot, read back from the CSV text.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<double> price_sum(first.records.size(), 0.0), owner_sum(first.records.size(), 0.0);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string time, site, price, owner;
    std::getline(cells, time, ',');
    std::getline(cells, site, ',');
    std::getline(cells, price, ',');
    std::getline(cells, owner, ',');
    price_sum[row / s.n_sites] += std::stod(price);
    owner_sum[row / s.n_sites] += std::stod(owner);
    ++row;
  }
  double sum_err = 0.0;
  for (std::size_t i = 0; i < price_sum.size(); ++i)
    sum_err = std::max({sum_err, std::abs(price_sum[i] - 1.0), std::abs(owner_sum[i] - 1.0)});
  c.check(row == first.records.size() * s.n_sites, "one CSV row per snapshot and site");
  c.check(sum_err <= 1e-9, "price_prob and owner_prob columns sum to 1, max err " + num(sum_err));

  std::stringstream json;
  emit_records(first.records, OutputFormat::json, json);
  const auto back = read_records_json(json);
  double trip = back.size() == first.records.size() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < std::min(back.size(), first.records.size()); ++i) {
    const auto& a = first.records[i];
    const auto& b = back[i];
    trip = std::max({trip, std::abs(a.time - b.time), max_abs_diff(a.price_weights.weights(), b.price_weights.weights()),
                     max_abs_diff(a.owner_weights.weights(), b.owner_weights.weights()),
                     std::abs(a.mean_price - b.mean_price), std::abs(a.mean_owner - b.mean_owner),
                     std::abs(a.var_price - b.var_price), std::abs(a.var_owner - b.var_owner)});
    if (a.mode_price != b.mode_price || a.mode_owner != b.mode_owner) trip = 1.0;
  }
  c.check(trip <= 1e-10, "JSON round trip, max err " + num(trip));
  return c.finish();
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7};
  int failed = 0;
  for (const auto& run : criteria) {
    try {
      if (!run()) ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL (exception) %s\n", e.what());
      ++failed;
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
