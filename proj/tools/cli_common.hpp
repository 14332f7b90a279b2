#pragma once

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tomo/cstomo.hpp"
#include "tomo/error.hpp"
#include "tomo/field.hpp"
#include "tomo/grid_io.hpp"

namespace tomo::cli {

/// Exit statuses.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_budget = 3;

/// Adds --config FILE to a subcommand. After parsing, every key of the JSON
/// object is applied to the option of the same long name unless that option
/// was given on the command line; unknown keys are validation errors.
void add_config_option(CLI::App* sub);
void apply_config(CLI::App* sub);

/// "-" or empty means stdin / stdout.
GridFile read_input_grid(const std::string& path);
void write_output_grid(const GridFile& file, const std::string& path);
std::string read_input_text(const std::string& path);
void write_output_text(const std::string& text, const std::string& path);

/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text, const std::string& what);

/// Box from "lo0,hi0[,lo1,hi1[,lo2,hi2]]" and "n" or "n0,n1[,n2]".
BoxDomain parse_box(const std::string& box, const std::string& shape);
std::string box_to_string(const BoxDomain& d);
std::string shape_to_string(const BoxDomain& d);

/// Density matrix from a JSON file or a keyword: vacuum, fock:N,
/// coherent:U,V, mixed, random (seeded), for dimension dim.
OperatorMatrix load_state(const std::string& spec, int dim, std::uint64_t seed);

/// Formats a number with full round-trip precision.
std::string fmt(double v);

/// Prints warnings to stderr.
void print_warnings(const Diagnostics& diag);

}  // namespace tomo::cli
