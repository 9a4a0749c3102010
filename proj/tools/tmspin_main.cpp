#include "tmspin/config.hpp"
#include "tmspin/csv.hpp"
#include "tmspin/effective.hpp"
#include "tmspin/fitting.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

using namespace tmspin;

std::string out_stem(const std::string& out) {
  const auto dot = out.rfind(".csv");
  if (dot != std::string::npos && dot == out.size() - 4) return out.substr(0, dot);
  return out;
}

int cmd_sweep(const config::RunConfig& cfg, const std::string& out, int threads) {
  spectra::SweepSpec spec;
  spec.axis = cfg.sweep.axis;
  spec.b_min_T = cfg.sweep.b_min_mT * 1e-3;
  spec.b_max_T = cfg.sweep.b_max_mT * 1e-3;
  spec.n_points = cfg.sweep.n_points;
  spec.ground_only = cfg.sweep.ground_only;
  spec.threads = threads;
  const auto sr = spectra::sweep_field(cfg.model, cfg.field, spec);
  csv::write_file(out, csv::sweep_csv(sr));
  const int n_levels = sr.levels_Hz.empty() ? 0 : static_cast<int>(sr.levels_Hz[0].size());
  std::cerr << "sweep: " << n_levels << " levels, B = " << spec.b_min_T * 1e3
            << ".." << spec.b_max_T * 1e3 << " mT, " << spec.n_points
            << " points, hyperfine " << (cfg.model.include_hf ? "on" : "off")
            << "\n";
  return 0;
}

int cmd_transitions(const config::RunConfig& cfg, const std::string& out,
                    int threads) {
  (void)threads;
  const auto& o = cfg.transitions;
  spectra::TransitionTable all;
  for (int i = 0; i < o.n_points; ++i) {
    const double b_T =
        1e-3 * (o.n_points == 1
                    ? o.b_min_mT
                    : o.b_min_mT + (o.b_max_mT - o.b_min_mT) * i / (o.n_points - 1));
    ham::FieldConfig f = cfg.field;
    f.b_static = Eigen::Vector3d(0.0, 0.0, b_T);
    const auto t =
        spectra::transitions(cfg.model, f, o.drive, o.n_levels, o.rabi_floor_Hz);
    all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
  }
  csv::write_file(out, csv::transitions_csv(all));
  std::cerr << "transitions: " << all.rows.size() << " rows, drive "
            << spectra::drive_name(o.drive) << "\n";
  return 0;
}

int cmd_matrixmap(const config::RunConfig& cfg, const std::string& out) {
  const std::string stem = out_stem(out);
  ham::FieldConfig f = cfg.field;
  f.b_static = Eigen::Vector3d(0.0, 0.0, cfg.matrixmap.b0_mT * 1e-3);

  ham::ModelParams p_off = cfg.model;
  p_off.include_hf = false;
  ham::ModelParams p_on = cfg.model;
  p_on.include_hf = true;
  csv::write_file(stem + "_hf_off.csv",
                  csv::matrix_map_csv(spectra::matrix_map(p_off, f, cfg.matrixmap.n_states)));
  csv::write_file(stem + "_hf_on.csv",
                  csv::matrix_map_csv(spectra::matrix_map(p_on, f, cfg.matrixmap.n_states)));
  std::cerr << "matrixmap: " << cfg.matrixmap.n_states << " states at B0 = "
            << cfg.matrixmap.b0_mT << " mT -> " << stem << "_hf_{off,on}.csv\n";
  return 0;
}

int cmd_fit(const config::RunConfig& cfg, const std::string& out, int threads) {
  if (!cfg.targets) {
    std::cerr << "fit: config has no 'targets' section\n";
    return 1;
  }
  std::string body;
  bool first = true;
  for (double k : cfg.fit.k_values) {
    ham::ModelParams p = cfg.model;
    p.k = k;
    const auto grid = fitting::scan(p, *cfg.targets, cfg.fit.grid, threads);
    std::string chunk = csv::scan_csv(grid);
    if (!first) chunk.erase(0, chunk.find('\n') + 1); // keep one header
    body += chunk;
    first = false;

    double se = 0.0, sl = 0.0;
    int n = 0;
    for (const auto& c : grid.cells)
      if (c.match_all()) {
        ++n;
        se += c.eta;
        sl += c.lambda_meV;
      }
    if (n == 0)
      std::cerr << "fit: k = " << k << ": no overlap of the three criteria\n";
    else
      std::cerr << "fit: k = " << k << ": " << n
                << " matching cells, centroid (eta, lambda) = (" << se / n << ", "
                << sl / n << " meV)\n";
  }
  csv::write_file(out, body);
  return 0;
}

int cmd_effective(const config::RunConfig& cfg, const std::string& out) {
  const std::string stem = out_stem(out);
  const auto ep = effective::extract(cfg.model, cfg.effective.doublet);
  if (cfg.model.a_hf_Hz == 0.0)
    std::cerr << "effective: A = 0, hyperfine parameters are identically zero\n";

  std::string j = "{\n";
  j += "  \"irrep\": \"" + std::string(eig::irrep_name(ep.irrep)) + "\",\n";
  j += "  \"a_par_Hz\": " + csv::format_number(ep.a_par_Hz) + ",\n";
  j += "  \"a_perp_Hz\": " + csv::format_number(ep.a_perp_Hz) + ",\n";
  j += "  \"g_par\": " + csv::format_number(ep.g_par) + ",\n";
  j += "  \"g_perp\": " + csv::format_number(ep.g_perp) + ",\n";
  j += "  \"residual_Hz\": " + csv::format_number(ep.fit_residual_Hz) + ",\n";
  j += "  \"alt_residual_Hz\": " + csv::format_number(ep.alt_residual_Hz) + "\n";
  j += "}\n";
  csv::write_file(stem + ".json", j);

  // Side-by-side full vs effective levels of the chosen doublet manifold,
  // each block centered at its per-field mean.
  const int nlev = 2 * static_cast<int>(std::lround(2.0 * cfg.model.nuclear_spin + 1.0));
  const auto basis = effective::doublet_basis(cfg.model, cfg.effective.doublet);
  const int skip = 0; // manifold located via energy window below
  (void)skip;
  std::string outcsv = "B_T";
  char head[24];
  for (int l = 0; l < nlev; ++l) {
    std::snprintf(head, sizeof head, ",full_%02d", l);
    outcsv += head;
  }
  for (int l = 0; l < nlev; ++l) {
    std::snprintf(head, sizeof head, ",eff_%02d", l);
    outcsv += head;
  }
  outcsv += '\n';

  ham::ModelParams p_full = cfg.model;
  p_full.include_hf = true;
  for (int i = 0; i < cfg.effective.n_points; ++i) {
    const double b_T = 1e-3 * cfg.effective.b_max_mT *
                       (cfg.effective.n_points == 1
                            ? 1.0
                            : static_cast<double>(i) / (cfg.effective.n_points - 1));
    ham::FieldConfig f = cfg.field;
    f.b_static = Eigen::Vector3d(0.0, 0.0, b_T);
    const auto es = eig::eig_hermitian(ham::assemble(p_full, f));

    // pick the nlev full-model levels nearest the doublet centroid
    int first = 0;
    double best = std::numeric_limits<double>::max();
    for (int s = 0; s + nlev <= es.values.size(); ++s) {
      double mean = es.values.segment(s, nlev).mean();
      const double d = std::abs(mean - basis.centroid_Hz);
      if (d < best) {
        best = d;
        first = s;
      }
    }
    Eigen::VectorXd full = es.values.segment(first, nlev);
    full.array() -= full.mean();
    Eigen::VectorXd eff =
        effective::effective_energies(ep, cfg.model.nuclear_spin, b_T, cfg.model.g_n);
    eff.array() -= eff.mean();

    outcsv += csv::format_number(b_T);
    for (int l = 0; l < nlev; ++l) {
      outcsv += ',';
      outcsv += csv::format_number(full(l));
    }
    for (int l = 0; l < nlev; ++l) {
      outcsv += ',';
      outcsv += csv::format_number(eff(l));
    }
    outcsv += '\n';
  }
  csv::write_file(stem + ".csv", outcsv);
  std::cerr << "effective: " << eig::irrep_name(ep.irrep) << " doublet, a_par = "
            << ep.a_par_Hz / 1e6 << " MHz, a_perp = " << ep.a_perp_Hz / 1e6
            << " MHz -> " << stem << ".{json,csv}\n";
  return 0;
}

int cmd_wavefunction(const config::RunConfig& cfg, const std::string& out) {
  const auto amps = spectra::ground_orbital_amplitudes(cfg.model);
  const auto grid =
      spectra::wavefunction_grid(amps, cfg.wavefunction.n_theta, cfg.wavefunction.n_phi);
  csv::write_file(out, csv::wavefunction_csv(grid));
  std::cerr << "wavefunction: " << grid.n_theta << "x" << grid.n_phi
            << " grid, azimuthal winding " << grid.winding << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-Hamiltonian model of transition-metal defect doublets"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_path = "out.csv";
  int threads = 1;
  bool dump_config = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output file (stem for multi-file commands)");
  app.add_option("--threads", threads, "worker threads for sweeps/scans")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dump-config", dump_config,
               "print the parsed configuration as canonical JSON and exit");

  auto* sc_sweep = app.add_subcommand("sweep", "eigenvalues vs static field");
  auto* sc_trans = app.add_subcommand("transitions", "resonance lines with Rabi rates");
  auto* sc_map = app.add_subcommand("matrixmap", "drive matrix-element maps");
  auto* sc_fit = app.add_subcommand("fit", "(eta, lambda) consistency scan");
  auto* sc_eff = app.add_subcommand("effective", "effective doublet parameters");
  auto* sc_wf = app.add_subcommand("wavefunction", "ground-state angular density");

  CLI11_PARSE(app, argc, argv);

  try {
    if (config_path.empty()) throw std::runtime_error("--config is required");
    std::vector<std::string> warnings;
    const auto cfg = config::load(config_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    if (dump_config) {
      std::cout << config::dump(cfg);
      return 0;
    }
    if (sc_sweep->parsed()) return cmd_sweep(cfg, out_path, threads);
    if (sc_trans->parsed()) return cmd_transitions(cfg, out_path, threads);
    if (sc_map->parsed()) return cmd_matrixmap(cfg, out_path);
    if (sc_fit->parsed()) return cmd_fit(cfg, out_path, threads);
    if (sc_eff->parsed()) return cmd_effective(cfg, out_path);
    if (sc_wf->parsed()) return cmd_wavefunction(cfg, out_path);
    std::cerr << "no subcommand given (see --help)\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
