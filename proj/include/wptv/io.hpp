#pragma once

#include <filesystem>
#include <string>

#include "wptv/phase.hpp"
#include "wptv/solvers.hpp"

namespace wptv {

// PHF2 raw field format: 16-byte header — magic "PHF2", u32 version = 1,
// u32 rows, u32 cols, all little-endian — followed by rows*cols IEEE-754
// binary64 values, little-endian, row-major. Lossless and bit-exact.

void write_field(const std::filesystem::path& path, const Field2D& field);
Field2D read_field(const std::filesystem::path& path);

/// 16-bit binary PGM export of a phase-like field, mapping [-pi, pi] linearly
/// onto [0, 65535] (values outside are clamped). For figures only; lossy.
void write_phase_pgm16(const std::filesystem::path& path, const Field2D& field);

/// Imports an 8- or 16-bit binary PGM as a wrapped phase via the linear map
/// [0, maxval] -> [-pi, pi] (a zero sample folds onto +pi, same phase).
struct PgmImport {
  WrappedPhase psi;
  int maxval;
  double scale;   // radians per gray level
  double offset;  // radians at gray level 0
};
PgmImport import_pgm_phase(const std::filesystem::path& path);

/// Convergence trace. Columns: iter, rel_change, energy_total,
/// energy_fit_real, energy_fit_im, energy_pyth, energy_tv_real, energy_tv_im.
/// Row 0 carries the initial energy and an empty rel_change; energy columns
/// are empty when the report has no recorded energies. Doubles are printed
/// with round-trip precision.
void write_trace_csv(const std::filesystem::path& path,
                     const SolveReport& report);

/// Round-trip formatting used by the text outputs ("%.17g").
std::string format_double(double value);

}  // namespace wptv
