#pragma once

#include "tmspin/fitting.hpp"
#include "tmspin/spectra.hpp"

#include <string>

// Deterministic CSV emission: 12 significant digits, '.' decimal separator,
// LF line endings.
namespace tmspin::csv {

std::string format_number(double v);

std::string sweep_csv(const spectra::SweepResult& sr);
std::string transitions_csv(const spectra::TransitionTable& t);
std::string matrix_map_csv(const spectra::MatrixMap& m);
std::string wavefunction_csv(const spectra::WavefunctionGrid& g);
std::string scan_csv(const fitting::ScanGrid& grid);

// Writes with LF endings regardless of platform; throws std::runtime_error
// on failure.
void write_file(const std::string& path, const std::string& content);

} // namespace tmspin::csv
