#include <iostream>

#include "cli_common.hpp"
#include "commands.hpp"
#include "tomo/parallel.hpp"

int main(int argc, char** argv) {
  using namespace tomo::cli;
  CLI::App app{"Tomographic transforms, inversions and quantum tomograms"};
  app.require_subcommand(1);
  register_radon_commands(app);
  register_quantum_commands(app);
  try {
    tomo::apply_thread_limit();
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_validation;
  } catch (const tomo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == tomo::ErrorCode::budget_exceeded ? exit_budget : exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_ok;
}
