#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>

#include "cli_common.hpp"
#include "commands.hpp"
#include "tomo/group_tomo.hpp"

namespace tomo::cli {

namespace {

struct PhaseOpts {
  int nmax = -1;
  double cutoff = 0.0;
};

int resolve_nmax(int given, const GridFile& file) {
  if (given >= 0) return given;
  require(file.attrs.count("n_max") > 0, "give --nmax (the input grid does not record it)");
  const auto v = parse_list(file.attrs.at("n_max"), "n_max");
  require(v.size() == 1 && v[0] >= 0 && v[0] == std::floor(v[0]), "bad n_max attribute",
          ErrorCode::bad_header);
  return int(v[0]);
}

GridFile phase_file(const PhaseGrid& g, int nmax, const std::string& kind) {
  GridFile file = to_grid_file(g);
  file.attrs["n_max"] = std::to_string(nmax);
  file.attrs["symbol"] = kind;
  return file;
}

void register_qtomo(CLI::App& app) {
  CLI::App* q = app.add_subcommand("qtomo", "Coherent-state tomography on a truncated Fock space");
  q->require_subcommand(1);

  {
    struct Opts {
      int nmax = -1, grid_n = 129;
      double radius = 0.0;
      std::string state, out = "-";
      std::uint64_t seed = 1;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = q->add_subcommand("husimi", "Husimi symbol K(z) = <z|rho|z> on a phase grid");
    sub->add_option("--nmax", o->nmax, "Fock truncation n_max");
    sub->add_option("--state", o->state, "vacuum | fock:N | coherent:U,V | mixed | random | JSON");
    sub->add_option("--grid-n", o->grid_n, "Nodes per axis");
    sub->add_option("--radius", o->radius, "Half width R (0: 2 sqrt(n_max) + 3)");
    sub->add_option("--seed", o->seed, "Seed for --state random");
    sub->add_option("-o,--output", o->out, "Output phase grid (default stdout)");
    add_config_option(sub);
    sub->callback([sub, o] {
      apply_config(sub);
      require(o->nmax >= 0 && !o->state.empty(), "husimi: --nmax and --state are required");
      require(o->grid_n >= 2 && o->radius >= 0.0, "husimi: --grid-n >= 2 and --radius >= 0");
      if (o->state == "random") std::cerr << "seed: " << o->seed << "\n";
      const OperatorMatrix rho = load_state(o->state, o->nmax + 1, o->seed);
      validate_density(rho);
      PhaseGrid geometry = default_phase_grid(o->nmax, std::size_t(o->grid_n));
      if (o->radius > 0.0) geometry = PhaseGrid(o->radius, std::size_t(o->grid_n));
      Diagnostics diag;
      const double norm = husimi_normalization(rho, geometry, &diag);
      print_warnings(diag);
      std::cerr << "normalization: " << fmt(norm) << "\n";
      write_output_grid(phase_file(husimi_grid(rho, geometry), o->nmax, "K"), o->out);
    });
  }
  {
    auto o = std::make_shared<PhaseOpts>();
    auto io = std::make_shared<std::pair<std::string, std::string>>("-", "-");
    CLI::App* sub = q->add_subcommand("phi", "Band-limited Sudarshan symbol from a Husimi grid");
    sub->add_option("-i,--input", io->first, "Husimi grid (default stdin)");
    sub->add_option("-o,--output", io->second, "Output phase grid (default stdout)");
    sub->add_option("--nmax", o->nmax, "Fock truncation (default: from the input)");
    sub->add_option("--cutoff", o->cutoff, "Band limit (0: 2 sqrt(n_max) + 2)");
    add_config_option(sub);
    sub->callback([sub, o, io] {
      apply_config(sub);
      const GridFile file = read_input_grid(io->first);
      const int nmax = resolve_nmax(o->nmax, file);
      const double cutoff = o->cutoff > 0.0 ? o->cutoff : default_cutoff(nmax);
      Diagnostics diag;
      const PhaseGrid phi = phi_from_K(phase_grid_from(file), cutoff, &diag);
      print_warnings(diag);
      write_output_grid(phase_file(phi, nmax, "phi"), io->second);
    });
  }
  {
    auto o = std::make_shared<PhaseOpts>();
    auto io = std::make_shared<std::pair<std::string, std::string>>("-", "-");
    CLI::App* sub = q->add_subcommand("quantize", "Operator from a Husimi grid via the quantizer");
    sub->add_option("-i,--input", io->first, "Husimi grid (default stdin)");
    sub->add_option("-o,--output", io->second, "Output matrix JSON (default stdout)");
    sub->add_option("--nmax", o->nmax, "Fock truncation (default: from the input)");
    sub->add_option("--cutoff", o->cutoff, "Band limit (0: 2 sqrt(2 n_max) + 5)");
    add_config_option(sub);
    sub->callback([sub, o, io] {
      apply_config(sub);
      const GridFile file = read_input_grid(io->first);
      const int nmax = resolve_nmax(o->nmax, file);
      const PhaseGrid K = phase_grid_from(file);
      const double cutoff = o->cutoff > 0.0 ? o->cutoff : default_quantizer_cutoff(nmax);
      const QuantizerField quantizer(FockSpace(nmax), K, cutoff);
      write_output_text(matrix_to_json(quantizer.reconstruct(K)) + "\n", io->second);
    });
  }
  {
    auto o = std::make_shared<PhaseOpts>();
    auto io = std::make_shared<std::pair<std::string, std::string>>("-", "-");
    CLI::App* sub = q->add_subcommand("reconstruct", "Least-squares operator fit to a Husimi grid");
    sub->add_option("-i,--input", io->first, "Husimi grid (default stdin)");
    sub->add_option("-o,--output", io->second, "Output matrix JSON (default stdout)");
    sub->add_option("--nmax", o->nmax, "Fock truncation (default: from the input)");
    add_config_option(sub);
    sub->callback([sub, o, io] {
      apply_config(sub);
      const GridFile file = read_input_grid(io->first);
      const int nmax = resolve_nmax(o->nmax, file);
      const Reconstruction r = reconstruct_from_K(phase_grid_from(file), FockSpace(nmax));
      std::cerr << "condition_number: " << fmt(r.condition_number) << " samples: " << r.samples
                << "\n";
      write_output_text(matrix_to_json(r.A) + "\n", io->second);
    });
  }
  {
    struct Opts {
      std::string k1, k2, out = "-";
    };
    auto o = std::make_shared<Opts>();
    auto p = std::make_shared<PhaseOpts>();
    CLI::App* sub = q->add_subcommand("star", "Star product of two Husimi symbols");
    sub->add_option("--k1", o->k1, "First Husimi grid");
    sub->add_option("--k2", o->k2, "Second Husimi grid (same geometry)");
    sub->add_option("--nmax", p->nmax, "Fock truncation (default: from the inputs)");
    sub->add_option("--cutoff", p->cutoff, "Band limit (0: 2 sqrt(2 n_max) + 5)");
    sub->add_option("-o,--output", o->out, "Output phase grid (default stdout)");
    add_config_option(sub);
    sub->callback([sub, o, p] {
      apply_config(sub);
      require(!o->k1.empty() && !o->k2.empty(), "star: --k1 and --k2 are required");
      const GridFile f1 = read_grid_file(o->k1), f2 = read_grid_file(o->k2);
      const int nmax = resolve_nmax(p->nmax, f1);
      const PhaseGrid K1 = phase_grid_from(f1), K2 = phase_grid_from(f2);
      const double cutoff = p->cutoff > 0.0 ? p->cutoff : default_quantizer_cutoff(nmax);
      const FockSpace space(nmax);
      require(space.dim() <= 5,
              "star: budget exceeded for n_max = " + std::to_string(nmax) + " (limit 4)",
              ErrorCode::budget_exceeded);
      const QuantizerField quantizer(space, K1, cutoff);
      write_output_grid(phase_file(star_product(K1, K2, quantizer), nmax, "K"), o->out);
    });
  }
}

// -- group tomography ------------------------------------------------------------------

struct SpinOpts {
  double j = 0.5, scale = 1.0;
  std::string state = "up", axis = "0,0,1", out = "-";
  std::uint64_t seed = 1;
};

void add_spin_options(CLI::App* sub, SpinOpts& o) {
  sub->add_option("--j", o.j, "Spin (half-integer)");
  sub->add_option("--state", o.state, "up | down | mixed | random | JSON matrix");
  sub->add_option("--axis", o.axis, "Rotation axis x,y,z (normalized)");
  sub->add_option("--scale", o.scale, "Algebra element = scale * axis . J");
  sub->add_option("--seed", o.seed, "Seed for random states and elements");
  sub->add_option("-o,--output", o.out, "Output path (default stdout)");
  add_config_option(sub);
}

struct SpinSetup {
  UnitaryRep rep;
  OperatorMatrix rho;
  AlgebraElement xi;
};

SpinSetup spin_setup(const SpinOpts& o) {
  require(o.j > 0.0 && std::abs(2.0 * o.j - std::round(2.0 * o.j)) < 1e-12 && o.j <= 50.0,
          "--j must be a positive half-integer <= 50");
  const auto axis = parse_list(o.axis, "--axis");
  require(axis.size() == 3, "--axis needs three components");
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  require(norm > 0.0, "--axis must be non-zero");
  require(o.scale != 0.0, "--scale must be non-zero");
  SpinSetup s{su2_rep(o.j), {}, {}};
  if (o.state == "random") std::cerr << "seed: " << o.seed << "\n";
  s.rho = load_state(o.state, s.rep.dim, o.seed);
  validate_density(s.rho);
  s.xi = s.rep.element({o.scale * axis[0] / norm, o.scale * axis[1] / norm,
                        o.scale * axis[2] / norm});
  return s;
}

void register_gtomo(CLI::App& app) {
  CLI::App* g = app.add_subcommand("gtomo", "Group tomography of spin states");
  g->require_subcommand(1);
  {
    auto o = std::make_shared<SpinOpts>();
    auto csv = std::make_shared<bool>(false);
    CLI::App* sub = g->add_subcommand("spin", "Discrete spectral tomogram of a spin state");
    add_spin_options(sub, *o);
    sub->add_flag("--csv", *csv, "Write lambda,weight CSV instead of JSON");
    sub->callback([sub, o, csv] {
      apply_config(sub);
      const SpinSetup s = spin_setup(*o);
      const DiscreteTomogram t = tomogram_spectral(s.rho, s.xi);
      if (*csv) {
        std::string text = "lambda,weight\n";
        for (const Atom& a : t.atoms) text += fmt(a.lambda) + "," + fmt(a.weight) + "\n";
        write_output_text(text, o->out);
      } else {
        write_output_text(tomogram_to_json(t) + "\n", o->out);
      }
    });
  }
  {
    struct Opts {
      double window = 0.0, lambda_lo = 0.0, lambda_hi = 0.0;
      int ns = 1025, lambda_n = 2001;
    };
    auto o = std::make_shared<SpinOpts>();
    auto f = std::make_shared<Opts>();
    CLI::App* sub = g->add_subcommand("fourier", "Windowed Fourier tomogram W(lambda) as CSV");
    add_spin_options(sub, *o);
    sub->add_option("--window", f->window, "Window length L (0: 10 pi / gap)");
    sub->add_option("--ns", f->ns, "Number of s samples");
    sub->add_option("--lambda-n", f->lambda_n, "Number of lambda samples");
    sub->add_option("--lambda-lo", f->lambda_lo, "Lambda range start (default: -(|scale| j + 1))");
    sub->add_option("--lambda-hi", f->lambda_hi, "Lambda range end (default: |scale| j + 1)");
    sub->callback([sub, o, f] {
      apply_config(sub);
      const SpinSetup s = spin_setup(*o);
      require(f->ns >= 3 && f->lambda_n >= 2 && f->window >= 0.0,
              "fourier: --ns >= 3, --lambda-n >= 2, --window >= 0");
      const double gap = eigenvalue_gap(s.xi);
      const double L = f->window > 0.0 ? f->window
                                         : (std::isfinite(gap) ? 10.0 * std::numbers::pi / gap
                                                               : 20.0 * std::numbers::pi);
      const double reach = std::abs(o->scale) * o->j + 1.0;
      double lo = f->lambda_lo, hi = f->lambda_hi;
      if (lo == 0.0 && hi == 0.0) lo = -reach, hi = reach;
      require(hi > lo, "fourier: lambda range must be increasing");
      Diagnostics diag;
      const FourierTomogram t =
          tomogram_fourier(s.rho, s.rep, s.xi, uniform_grid(lo, hi, std::size_t(f->lambda_n)),
                           uniform_grid(-L / 2.0, L / 2.0, std::size_t(f->ns)), &diag);
      print_warnings(diag);
      std::string text = "lambda,W\n";
      for (std::size_t k = 0; k < t.lambda.size(); ++k)
        text += fmt(t.lambda[k]) + "," + fmt(t.W[k]) + "\n";
      write_output_text(text, o->out);
    });
  }
  {
    auto o = std::make_shared<SpinOpts>();
    auto count = std::make_shared<int>(20);
    CLI::App* sub = g->add_subcommand("gram", "Positive-definiteness check of the sampling function");
    add_spin_options(sub, *o);
    sub->add_option("--elements", *count, "Number of random group elements");
    sub->callback([sub, o, count] {
      apply_config(sub);
      require(*count >= 1, "gram: --elements must be positive");
      const SpinSetup s = spin_setup(*o);
      if (o->state != "random") std::cerr << "seed: " << o->seed << "\n";
      std::mt19937_64 rng(o->seed ^ 0x9e3779b97f4a7c15ULL);
      std::vector<SU2> elements;
      for (int k = 0; k < *count; ++k) elements.push_back(SU2::random(rng));
      const double min_eig = gram_psd_check(s.rho, s.rep, elements);
      nlohmann::ordered_json j;
      j["elements"] = *count;
      j["min_eigenvalue"] = min_eig;
      j["positive_semidefinite"] = min_eig >= -1e-10;
      j["seed"] = o->seed;
      write_output_text(j.dump(1) + "\n", o->out);
    });
  }
}

}  // namespace

void register_quantum_commands(CLI::App& app) {
  register_qtomo(app);
  register_gtomo(app);
}

}  // namespace tomo::cli
