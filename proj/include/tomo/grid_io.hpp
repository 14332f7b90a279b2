#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tomo/field.hpp"

namespace tomo {

/// On-disk layout shared by fields, tomogram tables and phase grids:
///
///   bytes 0..7   magic "TOMOGRD1"
///   bytes 8..11  header length L, unsigned 32-bit little endian
///   L bytes      UTF-8 JSON header
///                {"version":1,"shape":[...],"lo":[...],"hi":[...],
///                 "dtype":"f64-le"|"c128-le","order":"row-major",
///                 "axes":[...] (optional), "attrs":{...} (optional strings)}
///   payload      little-endian IEEE doubles; complex samples are (re, im) pairs
inline constexpr char grid_magic[8] = {'T', 'O', 'M', 'O', 'G', 'R', 'D', '1'};

struct GridFile {
  BoxDomain domain;
  std::vector<std::string> axes;  // empty for plain fields
  bool is_complex = false;
  std::vector<double> payload;    // size() or 2 * size() doubles
  std::map<std::string, std::string> attrs;  // provenance of tables (geometry, source box)
};

void write_grid_file(const GridFile& file, std::ostream& out);
GridFile read_grid_file(std::istream& in);

/// Writes to `path` through a temporary file in the same directory followed by
/// a rename, so an interrupted write never leaves a partial target.
void write_grid_file(const GridFile& file, const std::string& path);
GridFile read_grid_file(const std::string& path);

void write_grid(const ScalarField& f, const std::string& path);
ScalarField read_grid(const std::string& path);

GridFile to_grid_file(const ScalarField& f);
ScalarField field_from(const GridFile& file);
GridFile to_grid_file(const TomogramTable& table);
TomogramTable table_from(const GridFile& file);

/// Atomic text write (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& contents);

/// CSV: one row per node, the coordinate columns followed by `value`.
std::string field_csv(const ScalarField& f, const std::vector<std::string>& coord_names = {});
std::string table_csv(const TomogramTable& table);

}  // namespace tomo
