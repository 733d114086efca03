#ifndef GABORLAT_IO_HPP
#define GABORLAT_IO_HPP

#include <string>
#include <vector>

#include "gaborlat/lattice.hpp"

namespace gaborlat {

/// Read a lattice descriptor: JSON object {"dim": int, "basis": row-major
/// array of dim*dim floats, "name": optional string}. NaN/Inf rejected.
Lattice lattice_from_json(const std::string& path);

/// Write the JSON descriptor for a lattice.
void lattice_to_json(const Lattice& L, const std::string& path);

/// Read a theta-series table: CSV with header "norm2,count".
ThetaSeries theta_from_csv(const std::string& path);

/// Write a theta-series table in the same format.
void theta_to_csv(const ThetaSeries& t, const std::string& path);

/// Minimal CSV writer: one header row then data rows; caller formats cells.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

/// Format a double with enough digits to round-trip (max_digits10).
std::string csv_num(double v);

/**
 * @brief Write an 8-bit RGB PNG (zlib-compressed) for landscape heatmaps.
 *
 * Optional output path for the CLI only; the numeric core never needs it.
 * Values are mapped through a blue-white-red colormap over [vmin, vmax].
 */
void write_heatmap_png(const std::string& path, const std::vector<double>& values,
                       int width, int height, double vmin, double vmax);

} // namespace gaborlat

#endif // GABORLAT_IO_HPP
