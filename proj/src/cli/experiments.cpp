#include "qmetro/cli/experiments.hpp"

#include "qmetro/cli/output.hpp"
#include "qmetro/interferom.hpp"
#include "qmetro/spinops.hpp"
#include "qmetro/squeeze.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace qmetro::cli {

namespace {

class Row {
 public:
  explicit Row(const std::vector<std::string>& columns) : columns_(columns) {}

  Row& set(const std::string& key, Cell value) {
    cells_[key] = std::move(value);
    return *this;
  }

  std::vector<Cell> finish() const {
    std::vector<Cell> out;
    out.reserve(columns_.size());
    std::size_t used = 0;
    for (const auto& c : columns_) {
      const auto it = cells_.find(c);
      if (it == cells_.end()) {
        out.emplace_back(std::monostate{});
      } else {
        out.push_back(it->second);
        ++used;
      }
    }
    if (used != cells_.size()) throw std::logic_error("row sets a column outside the experiment schema");
    return out;
  }

 private:
  const std::vector<std::string>& columns_;
  std::map<std::string, Cell> cells_;
};

std::vector<std::string> extras(Experiment e) {
  switch (e) {
    case Experiment::MzSingle: return {"p_a", "p_b"};
    case Experiment::RamseyCss: return {"jz_mean", "jz_variance"};
    case Experiment::RamseySss: return {"t", "chi", "readout_alpha", "jz_mean"};
    case Experiment::NoonQfi: return {"parity", "qfi_generator"};
    case Experiment::EcsQfi:
      return {"alpha", "mean_particle_number", "cutoff", "truncation_deficit", "qfi_closed_form", "parity"};
    case Experiment::TwinFockParity: return {"parity"};
    case Experiment::BjjGround:
      return {"jtun", "ec", "delta", "regime", "regime_flagged", "ground_energy", "gap", "degenerate_ground",
              "fidelity_x_css", "jz_mean"};
    case Experiment::OatSqueeze: return {"t", "chi", "omega", "delta", "gamma", "readout_alpha"};
    case Experiment::MonteCarlo: return {"v", "trials", "seed", "mean_estimate", "bias", "mse", "mse_ratio"};
  }
  return {};
}

void set_report(Row& row, const PrecisionReport& r) {
  row.set("classical_fisher", r.classical_fisher)
      .set("qfi", r.quantum_fisher)
      .set("crb", r.crb)
      .set("qcrb", r.qcrb)
      .set("delta_theta_errorprop", r.error_prop);
}

void set_squeezing(Row& row, const SqueezingReport& s) {
  row.set("xi_h_sq", s.xi_h_sq).set("xi_s_sq", s.xi_s_sq).set("xi_r_sq", s.xi_r_sq);
}

CollectiveSpinState twisted_input(int n, const SweepConfig& c, double t) {
  return oat_evolve(css(n, M_PI / 2.0, 0.0), {c.chi, c.omega, c.delta, c.gamma, t});
}

void run_mz_single(const SweepConfig& c, ResultTable& table) {
  const auto points = phase_sweep(mz_single_probe(), port_readout(), c.phi, c.v);
  for (const auto& p : points) {
    const PortProbabilities ports = mz_single_particle(p.phi);
    Row row(table.columns);
    row.set("N", 1LL).set("phi", p.phi).set("p_a", ports.p_a).set("p_b", ports.p_b);
    set_report(row, p.report);
    table.rows.push_back(row.finish());
  }
}

void run_ramsey_css(const SweepConfig& c, ResultTable& table) {
  for (int n : c.n) {
    const Observable jz = spin_component(n, {0.0, 0.0, 1.0});
    const Probe probe = css_ramsey_probe(n);
    for (const auto& p : phase_sweep(probe, jz_readout(n), c.phi, c.v)) {
      const Moments m = moments(probe.encoded(p.phi), jz);
      Row row(table.columns);
      row.set("N", static_cast<long long>(n)).set("phi", p.phi).set("jz_mean", m.mean).set("jz_variance", m.variance);
      set_report(row, p.report);
      table.rows.push_back(row.finish());
    }
  }
}

void run_ramsey_sss(const SweepConfig& c, ResultTable& table) {
  for (int n : c.n) {
    for (double t : c.t) {
      const CollectiveSpinState squeezed = twisted_input(n, c, t);
      const SqueezingReport sq = squeezing_parameters(squeezed);
      const CollectiveSpinState input = orient_ramsey_input(squeezed);
      const Probe probe = sss_ramsey_probe(input);
      const Observable jz = spin_component(n, {0.0, 0.0, 1.0});
      for (const auto& p : phase_sweep(probe, jz_readout(n), c.phi, c.v)) {
        const ReadoutRotation rr = optimal_readout_rotation(ramsey(input, p.phi));
        Row row(table.columns);
        row.set("N", static_cast<long long>(n)).set("phi", p.phi).set("t", t).set("chi", c.chi);
        row.set("readout_alpha", rr.alpha).set("jz_mean", p.signal);
        set_report(row, p.report);
        set_squeezing(row, sq);
        table.rows.push_back(row.finish());
      }
    }
  }
}

void run_noon(const SweepConfig& c, ResultTable& table) {
  for (int n : c.n) {
    const Probe probe = ghz_probe(n);
    const double qfi_gen = qfi_generator(ghz(n), spin_component(n, {0.0, 0.0, 1.0}));
    for (const auto& p : phase_sweep(probe, spin_flip_parity_readout(n), c.phi, c.v)) {
      Row row(table.columns);
      row.set("N", static_cast<long long>(n)).set("phi", p.phi).set("parity", p.signal).set("qfi_generator", qfi_gen);
      set_report(row, p.report);
      table.rows.push_back(row.finish());
    }
  }
}

void run_ecs(const SweepConfig& c, ResultTable& table) {
  for (double a : c.alpha) {
    const TwoModeFockState start = ecs(a);
    const EcsParams params = EcsParams::from_alpha(a);
    const double nn = params.norm_factor * params.norm_factor;
    const double a2 = a * a;
    const double closed = 4.0 * a2 * nn + 4.0 * (1.0 - nn) * a2 * a2 * nn;
    for (const auto& p : phase_sweep(ecs_probe(a), parity_readout(start.cutoff(), Mode::B), c.phi, c.v)) {
      Row row(table.columns);
      row.set("phi", p.phi).set("alpha", a).set("mean_particle_number", params.mean_particle_number());
      row.set("cutoff", static_cast<long long>(start.cutoff())).set("truncation_deficit", start.truncation_deficit());
      row.set("qfi_closed_form", closed).set("parity", p.signal);
      set_report(row, p.report);
      table.rows.push_back(row.finish());
    }
  }
}

void run_twin_fock(const SweepConfig& c, ResultTable& table) {
  for (int n : c.n) {
    for (const auto& p : phase_sweep(twin_fock_probe(n), parity_readout(2 * n, Mode::B), c.phi, c.v)) {
      Row row(table.columns);
      row.set("N", static_cast<long long>(n)).set("phi", p.phi).set("parity", p.signal);
      set_report(row, p.report);
      table.rows.push_back(row.finish());
    }
  }
}

void run_bjj(const SweepConfig& c, ResultTable& table) {
  for (int n : c.n) {
    const BjjParams params{n, c.jtun, c.delta, c.ec};
    const Spectrum spectrum = ground_state(bjj_hamiltonian(params));
    const CollectiveSpinState ground = ground_spin_state(spectrum);
    const RegimeClassification regime = classify_regime(params);
    Row row(table.columns);
    row.set("N", static_cast<long long>(n)).set("jtun", c.jtun).set("ec", c.ec).set("delta", c.delta);
    row.set("regime", std::string(regime_name(regime.regime))).set("regime_flagged", regime.flagged);
    row.set("ground_energy", spectrum.energies[0]).set("gap", spectrum.gap);
    row.set("degenerate_ground", spectrum.degenerate_ground);
    row.set("fidelity_x_css", fidelity(ground, css(n, M_PI / 2.0, 0.0)));
    row.set("jz_mean", mean_spin(ground)[2]);
    set_squeezing(row, squeezing_parameters(ground));
    table.rows.push_back(row.finish());
  }
}

void run_oat(const SweepConfig& c, ResultTable& table) {
  for (int n : c.n) {
    const Observable jz = spin_component(n, {0.0, 0.0, 1.0});
    for (double t : c.t) {
      const CollectiveSpinState squeezed = twisted_input(n, c, t);
      const SqueezingReport sq = squeezing_parameters(squeezed);
      const CollectiveSpinState input = orient_ramsey_input(squeezed);
      for (const auto& p : phase_sweep(sss_ramsey_probe(input), jz_readout(n), c.phi, c.v)) {
        Row row(table.columns);
        row.set("N", static_cast<long long>(n)).set("phi", p.phi).set("t", t).set("chi", c.chi);
        row.set("omega", c.omega).set("delta", c.delta).set("gamma", c.gamma);
        row.set("readout_alpha", optimal_readout_rotation(ramsey(input, p.phi)).alpha);
        set_report(row, p.report);
        set_squeezing(row, sq);
        table.rows.push_back(row.finish());
      }
    }
  }
}

void run_monte_carlo_sweep(const SweepConfig& c, ResultTable& table) {
  const Probe probe = mz_single_probe();
  const ReadoutSpec readout = port_readout();
  const DistributionFamily family = measured_family(probe.measured_near(0.0), readout.povm);
  for (const auto& p : phase_sweep(probe, readout, c.phi, c.v)) {
    const MonteCarloRun mc = run_monte_carlo(family, p.phi, c.v, c.trials, c.seed, {0.0, M_PI});
    const double f = p.report.classical_fisher;
    Row row(table.columns);
    row.set("N", 1LL).set("phi", p.phi).set("v", c.v).set("trials", static_cast<long long>(c.trials));
    row.set("seed", std::to_string(c.seed)).set("mean_estimate", mc.mean_estimate).set("bias", mc.bias);
    row.set("mse", mc.mse).set("mse_ratio", mc.mse * static_cast<double>(c.v) * f);
    set_report(row, p.report);
    table.rows.push_back(row.finish());
  }
}

}  // namespace

const std::vector<std::string>& base_columns() {
  static const std::vector<std::string> cols = {
      "experiment", "N",       "phi",     "classical_fisher", "qfi",    "crb",
      "qcrb",       "delta_theta_errorprop", "xi_h_sq", "xi_s_sq",   "xi_r_sq"};
  return cols;
}

std::vector<std::string> experiment_columns(Experiment e) {
  std::vector<std::string> cols = base_columns();
  for (auto& x : extras(e)) cols.push_back(std::move(x));
  return cols;
}

std::string experiment_description(Experiment e) {
  switch (e) {
    case Experiment::MzSingle: return "single particle through a Mach-Zehnder interferometer, swept over --phi";
    case Experiment::RamseyCss: return "coherent spin state Ramsey with Jz readout, --n by --phi";
    case Experiment::RamseySss: return "one-axis-twisted input (--chi, --t) Ramsey with optimal readout rotation";
    case Experiment::NoonQfi: return "GHZ/NOON phase accumulation with spin-flip parity readout";
    case Experiment::EcsQfi: return "entangled coherent state, --alpha by --phi, parity of mode b";
    case Experiment::TwinFockParity: return "twin Fock |N,N> through the Mach-Zehnder, parity of mode b";
    case Experiment::BjjGround: return "Bose-Josephson junction ground state and regime (--jtun, --ec, --delta)";
    case Experiment::OatSqueeze: return "squeezing parameters along a one-axis-twisting --t grid, with the Ramsey chain";
    case Experiment::MonteCarlo: return "maximum-likelihood Monte Carlo on the single-particle MZ (--v, --trials, --seed)";
  }
  return "";
}

ResultTable run_sweep(const SweepConfig& config) {
  ResultTable table;
  table.columns = experiment_columns(config.experiment);
  switch (config.experiment) {
    case Experiment::MzSingle: run_mz_single(config, table); break;
    case Experiment::RamseyCss: run_ramsey_css(config, table); break;
    case Experiment::RamseySss: run_ramsey_sss(config, table); break;
    case Experiment::NoonQfi: run_noon(config, table); break;
    case Experiment::EcsQfi: run_ecs(config, table); break;
    case Experiment::TwinFockParity: run_twin_fock(config, table); break;
    case Experiment::BjjGround: run_bjj(config, table); break;
    case Experiment::OatSqueeze: run_oat(config, table); break;
    case Experiment::MonteCarlo: run_monte_carlo_sweep(config, table); break;
  }
  for (auto& row : table.rows) row[0] = std::string(experiment_name(config.experiment));
  return table;
}

SweepSummary summarize(const ResultTable& table) {
  SweepSummary s;
  std::size_t col_dt = 0, col_phi = 0, col_n = 0;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == "delta_theta_errorprop") col_dt = i;
    if (table.columns[i] == "phi") col_phi = i;
    if (table.columns[i] == "N") col_n = i;
  }
  for (const auto& row : table.rows) {
    const double* dt = std::get_if<double>(&row[col_dt]);
    if (!dt || !std::isfinite(*dt)) continue;
    if (!s.found || *dt < s.min_delta_theta) {
      s.found = true;
      s.min_delta_theta = *dt;
      s.argmin_phi = row[col_phi];
      s.argmin_n = row[col_n];
    }
  }
  return s;
}

std::string summary_line(const SweepConfig& config, const SweepSummary& s) {
  std::string line = std::string(experiment_name(config.experiment)) + ": ";
  if (!s.found) return line + "no finite delta_theta_errorprop";
  const auto show = [](const Cell& c) -> std::string {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return "null";
  };
  return line + "min delta_theta_errorprop = " + format_double(s.min_delta_theta) + " at phi = " + show(s.argmin_phi) +
         ", N = " + show(s.argmin_n);
}

}  // namespace qmetro::cli
