#pragma once

#include <CLI11.hpp>

namespace tomo::cli {

void register_radon_commands(CLI::App& app);
void register_quantum_commands(CLI::App& app);

}  // namespace tomo::cli
