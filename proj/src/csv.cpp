#include "tmspin/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tmspin::csv {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sweep_csv(const spectra::SweepResult& sr) {
  std::string out = "B_T";
  const int n_levels = sr.levels_Hz.empty() ? 0 : static_cast<int>(sr.levels_Hz[0].size());
  char head[24];
  for (int l = 0; l < n_levels; ++l) {
    std::snprintf(head, sizeof head, ",level_%02d", l);
    out += head;
  }
  out += '\n';
  for (size_t i = 0; i < sr.b_T.size(); ++i) {
    out += format_number(sr.b_T[i]);
    for (int l = 0; l < n_levels; ++l) {
      out += ',';
      out += format_number(sr.levels_Hz[i][l]);
    }
    out += '\n';
  }
  return out;
}

std::string transitions_csv(const spectra::TransitionTable& t) {
  std::string out = "i,f,freq_Hz,rabi_Hz,drive,B_T\n";
  for (const auto& r : t.rows) {
    out += std::to_string(r.i);
    out += ',';
    out += std::to_string(r.f);
    out += ',';
    out += format_number(r.frequency_Hz);
    out += ',';
    out += format_number(r.rabi_Hz);
    out += ',';
    out += spectra::drive_name(r.drive);
    out += ',';
    out += format_number(r.b_static_T);
    out += '\n';
  }
  return out;
}

std::string matrix_map_csv(const spectra::MatrixMap& m) {
  std::string out = "i,f,energy_i_Hz,energy_f_Hz,magnitude_Hz\n";
  const int n = static_cast<int>(m.magnitude_Hz.rows());
  for (int i = 0; i < n; ++i)
    for (int f = 0; f < n; ++f) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(f);
      out += ',';
      out += format_number(m.energies_Hz[i]);
      out += ',';
      out += format_number(m.energies_Hz[f]);
      out += ',';
      out += format_number(m.magnitude_Hz(i, f));
      out += '\n';
    }
  return out;
}

std::string wavefunction_csv(const spectra::WavefunctionGrid& g) {
  std::string out = "theta,phi,density,phase\n";
  for (size_t i = 0; i < g.theta.size(); ++i) {
    out += format_number(g.theta[i]);
    out += ',';
    out += format_number(g.phi[i]);
    out += ',';
    out += format_number(g.density[i]);
    out += ',';
    out += format_number(g.phase[i]);
    out += '\n';
  }
  return out;
}

std::string scan_csv(const fitting::ScanGrid& grid) {
  std::string out =
      "k,eta,lambda_meV,delta_gs_Hz,g_par,g_perp,match_dgs,match_gpar,"
      "match_gperp,match_all\n";
  for (const auto& c : grid.cells) {
    out += format_number(grid.k);
    out += ',';
    out += format_number(c.eta);
    out += ',';
    out += format_number(c.lambda_meV);
    out += ',';
    out += format_number(c.delta_gs_Hz);
    out += ',';
    out += format_number(c.g_par);
    out += ',';
    out += format_number(c.g_perp);
    out += ',';
    out += c.match_dgs ? '1' : '0';
    out += ',';
    out += c.match_gpar ? '1' : '0';
    out += ',';
    out += c.match_gperp ? '1' : '0';
    out += ',';
    out += c.match_all() ? '1' : '0';
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace tmspin::csv
