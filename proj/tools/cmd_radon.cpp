#include <chrono>
#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>

#include "cli_common.hpp"
#include "commands.hpp"
#include "tomo/group_tomo.hpp"
#include "tomo/radon_affine.hpp"
#include "tomo/radon_deformed.hpp"

namespace tomo::cli {

namespace {

constexpr double pi = std::numbers::pi;

bool is_deformed(const std::string& g) {
  return g == "circle" || g == "hyperbola" || g == "bertrand";
}

Diffeomorphism geometry_diffeo(const std::string& g) {
  if (g == "circle") return conformal_inversion();
  if (g == "hyperbola") return axis_inversion();
  if (g == "bertrand") return bertrand(1);
  fail(ErrorCode::invalid_argument, "unknown deformed geometry '" + g + "'");
}

void check_geometry(const std::string& g) {
  require(g == "line" || g == "quadric" || is_deformed(g),
          "--geometry must be line, circle, hyperbola, bertrand or quadric (got '" + g + "')");
}

QuadricSpec parse_quadric(const std::string& b, const std::string& a) {
  const auto bv = parse_list(b, "--B");
  const auto av = parse_list(a, "--a");
  require(bv.size() == 4 && av.size() == 2, "--B needs 4 entries and --a needs 2 (planar quadric)");
  Eigen::MatrixXd B(2, 2);
  B << bv[0], bv[1], bv[2], bv[3];
  Eigen::VectorXd av2(2);
  av2 << av[0], av[1];
  return QuadricSpec(B, av2);
}

std::string report_json(const std::string& geometry, const BoxDomain& d, double err,
                        double seconds, const nlohmann::json& invariants,
                        const std::optional<std::uint64_t>& seed) {
  nlohmann::ordered_json j;
  j["geometry"] = geometry;
  j["grid_shape"] = d.shape();
  j["l2_relative_error"] = err;
  if (!invariants.is_null()) j["invariants"] = invariants;
  if (seed) j["seed"] = *seed;
  j["wall_time_s"] = seconds;
  return j.dump(1) + "\n";
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// -- phantom ----------------------------------------------------------------------

struct PhantomOpts {
  std::string kind = "gaussian", box = "-6,6,-6,6", shape = "128", center, cov, out = "-";
  bool gaussian = false, bump = false;
  double sigma = 1.0, mass = 1.0, radius = 1.0, height = 1.0;
};

void register_phantom(CLI::App& app) {
  auto o = std::make_shared<PhantomOpts>();
  CLI::App* sub = app.add_subcommand("phantom", "Generate a test phantom grid");
  sub->add_option("--kind", o->kind, "gaussian | bump | two-gaussian");
  sub->add_flag("--gaussian", o->gaussian, "Shortcut for --kind gaussian");
  sub->add_flag("--bump", o->bump, "Shortcut for --kind bump");
  sub->add_option("--box", o->box, "lo,hi per axis (2 or 3 axes)");
  sub->add_option("--shape", o->shape, "Nodes per axis (one value or one per axis)");
  sub->add_option("--center", o->center, "Centre (comma list; two centres for two-gaussian)");
  sub->add_option("--sigma", o->sigma, "Isotropic standard deviation");
  sub->add_option("--cov", o->cov, "Covariance, row-major comma list (overrides --sigma)");
  sub->add_option("--mass", o->mass, "Total mass of each Gaussian");
  sub->add_option("--radius", o->radius, "Bump support radius");
  sub->add_option("--height", o->height, "Bump height");
  sub->add_option("-o,--output", o->out, "Output grid (default stdout)");
  add_config_option(sub);
  sub->callback([sub, o] {
    apply_config(sub);
    if (o->gaussian) o->kind = "gaussian";
    if (o->bump) o->kind = "bump";
    const BoxDomain dom = parse_box(o->box, o->shape);
    const std::size_t n = std::size_t(dom.dim());
    std::vector<double> c =
        o->center.empty() ? std::vector<double>(n, 0.0) : parse_list(o->center, "--center");
    ScalarField f;
    if (o->kind == "gaussian" || o->kind == "two-gaussian") {
      const std::size_t count = o->kind == "gaussian" ? 1 : 2;
      if (o->center.empty() && count == 2) {
        c = std::vector<double>(2 * n, 0.0);
        c[0] = -1.0, c[n] = 1.0;
      }
      require(c.size() == count * n, "--center needs " + std::to_string(count * n) + " values");
      Eigen::MatrixXd cov = o->sigma * o->sigma * Eigen::MatrixXd::Identity(Eigen::Index(n),
                                                                            Eigen::Index(n));
      if (!o->cov.empty()) {
        const auto cv = parse_list(o->cov, "--cov");
        require(cv.size() == n * n, "--cov needs dim^2 entries");
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k) cov(Eigen::Index(i), Eigen::Index(k)) = cv[i * n + k];
      }
      f = ScalarField(dom);
      for (std::size_t k = 0; k < count; ++k)
        f += make_gaussian_phantom(dom, std::vector<double>(c.begin() + long(k * n),
                                                            c.begin() + long((k + 1) * n)),
                                   cov, o->mass);
    } else if (o->kind == "bump") {
      require(c.size() == n, "--center needs " + std::to_string(n) + " values");
      f = make_bump_phantom(dom, c, o->radius, o->height);
    } else {
      fail(ErrorCode::invalid_argument, "unknown phantom kind '" + o->kind + "'");
    }
    write_output_grid(to_grid_file(f), o->out);
  });
}

// -- forward ------------------------------------------------------------------------

struct ForwardOpts {
  std::string in = "-", out = "-", geometry = "line", B = "1,0,0,1", a = "0,0";
  int angles = 0, offsets = 0, refine = 2;
  double dmax = 0.0, mu_pad = 2.0, mu_step = 0.25, lambda_step = 0.25;
};

GridFile forward_table(const ScalarField& f, const ForwardOpts& o) {
  check_geometry(o.geometry);
  require(f.dim() == 2, "forward: the file-based pipeline handles 2-D fields",
          ErrorCode::domain_mismatch);
  GridFile file;
  if (o.geometry == "line") {
    SinogramSpec spec;
    spec.n_angles = o.angles > 0 ? o.angles : 180;
    spec.n_offsets = o.offsets;
    spec.d_max = o.dmax;
    file = to_grid_file(sinogram(f, spec));
  } else if (o.geometry == "quadric") {
    const QuadricSpec q = parse_quadric(o.B, o.a);
    require(o.mu_pad >= 0.0 && o.mu_step > 0.0 && o.lambda_step > 0.0,
            "--mu-pad must be >= 0 and the steps positive");
    const BoxDomain& d = f.domain();
    std::vector<double> lo, hi;
    std::vector<std::size_t> n;
    for (int ax = 0; ax < 2; ++ax) {
      lo.push_back(d.lo()[ax] - o.mu_pad);
      hi.push_back(d.hi()[ax] + o.mu_pad);
      n.push_back(std::size_t(std::ceil((hi.back() - lo.back()) / o.mu_step)) + 1);
    }
    const BoxDomain mu_box(lo, hi, n);
    double gmin = INFINITY, gmax = -INFINITY;
    const std::size_t stride = std::max<std::size_t>(1, d.shape()[0] / 16);
    for (std::size_t m = 0; m < mu_box.size(); ++m) {
      const Coord mu = mu_box.node(m);
      for (std::size_t i = 0; i < d.shape()[0]; i += stride)
        for (std::size_t j = 0; j < d.shape()[1]; j += stride) {
          const double g = q.g({d.coord(0, i), d.coord(1, j), 0.0}, mu);
          gmin = std::min(gmin, g), gmax = std::max(gmax, g);
        }
      for (std::size_t k : {std::size_t(0), d.size() - 1, d.shape()[1] - 1, d.size() - d.shape()[1]}) {
        const double g = q.g(d.node(k), mu);
        gmin = std::min(gmin, g), gmax = std::max(gmax, g);
      }
    }
    const double margin = 2.0 * o.lambda_step, ls = q.stationary_value();
    lo.push_back(ls + std::floor((gmin - margin - ls) / o.lambda_step) * o.lambda_step);
    n.push_back(std::size_t(std::ceil((gmax + margin - lo.back()) / o.lambda_step)) + 1);
    hi.push_back(lo.back() + double(n.back() - 1) * o.lambda_step);
    file = to_grid_file(quadric_table(f, q, BoxDomain(lo, hi, n), 1));
    file.attrs["B"] = o.B;
    file.attrs["a"] = o.a;
    file.attrs["mu_pad"] = fmt(o.mu_pad);
  } else {
    const Diffeomorphism phi = geometry_diffeo(o.geometry);
    QuadratureSpec quad = deformed_quadrature(phi, f.domain());
    if (o.angles > 0) quad.n_angles = o.angles;
    if (o.offsets > 0) {
      quad.n_lambda = o.offsets;
      quad.rho_max = pi * double(o.offsets - 1) / (2.0 * quad.lambda_max);
    }
    const DeformedFieldSampler sampler(f, phi, o.refine);
    file = to_grid_file(tabulate_sampler(sampler, quad));
  }
  file.attrs["geometry"] = o.geometry;
  file.attrs["source_box"] = box_to_string(f.domain());
  file.attrs["source_shape"] = shape_to_string(f.domain());
  return file;
}

void register_forward(CLI::App& app) {
  auto o = std::make_shared<ForwardOpts>();
  CLI::App* sub = app.add_subcommand("forward", "Forward tomographic transform of a 2-D field");
  sub->add_option("-i,--input", o->in, "Input field grid (default stdin)");
  sub->add_option("-o,--output", o->out, "Output table (default stdout)");
  sub->add_option("--geometry", o->geometry, "line | circle | hyperbola | bertrand | quadric");
  sub->add_option("--angles", o->angles, "Number of directions (0: geometry default)");
  sub->add_option("--offsets", o->offsets, "Number of lambda samples (0: geometry default)");
  sub->add_option("--dmax", o->dmax, "Largest |d| for line sinograms (0: bounding radius)");
  sub->add_option("--refine", o->refine, "Level-set marching refinement (deformed geometries)");
  sub->add_option("--B", o->B, "Quadric matrix, row-major comma list");
  sub->add_option("--a", o->a, "Quadric linear term, comma list");
  sub->add_option("--mu-pad", o->mu_pad, "Quadric: mu box padding around the field box");
  sub->add_option("--mu-step", o->mu_step, "Quadric: mu grid step");
  sub->add_option("--lambda-step", o->lambda_step, "Quadric: lambda grid step");
  add_config_option(sub);
  sub->callback([sub, o] {
    apply_config(sub);
    require(o->angles >= 0 && o->offsets >= 0 && o->refine >= 1,
            "--angles/--offsets must be >= 0 and --refine >= 1");
    const ScalarField f = field_from(read_input_grid(o->in));
    write_output_grid(forward_table(f, *o), o->out);
  });
}

// -- invert ------------------------------------------------------------------------

struct InvertOpts {
  std::string in = "-", out = "-", method = "affine", geometry, box, shape, reference, report;
  double sigma = 0.5, damping = 0.0;
};

ScalarField invert_table(const GridFile& file, const std::string& geometry,
                         const std::string& method, const BoxDomain& out, double sigma,
                         double damping, Diagnostics& diag) {
  check_geometry(geometry);
  const TomogramTable table = table_from(file);
  if (geometry == "line") {
    if (method == "hilbert") return invert_radon_hilbert(table, out);
    require(method == "affine", "--method must be affine or hilbert");
    const SinogramSampler sampler(table);
    return invert_affine(sampler, out, table_quadrature(table));
  }
  if (geometry == "quadric") {
    require(file.attrs.count("B") && file.attrs.count("a") && file.attrs.count("mu_pad"),
            "quadric table lacks its B, a and mu_pad attributes", ErrorCode::bad_header);
    const QuadricSpec q = parse_quadric(file.attrs.at("B"), file.attrs.at("a"));
    const QuadricTableSampler sampler(table, q.stationary_value());
    QuadricInverseOptions opts;
    opts.sigma = sigma;
    opts.mu_padding = parse_list(file.attrs.at("mu_pad"), "mu_pad").at(0);
    opts.damping = damping;
    require(opts.mu_padding > 0.0, "quadric inversion needs a positive mu padding");
    return quadric_invert(sampler, q, out, opts, &diag);
  }
  const SinogramSampler sampler(table);
  const QuadratureSpec quad = table_quadrature(table);
  if (geometry == "bertrand") return bertrand_invert(sampler, out, quad, &diag);
  return deformed_invert(sampler, geometry_diffeo(geometry), out, quad);
}

void register_invert(CLI::App& app) {
  auto o = std::make_shared<InvertOpts>();
  CLI::App* sub = app.add_subcommand("invert", "Reconstruct a field from a tomogram table");
  sub->add_option("-i,--input", o->in, "Input table (default stdin)");
  sub->add_option("-o,--output", o->out, "Output field grid (default stdout)");
  sub->add_option("--geometry", o->geometry, "Geometry of the table (default: from the table)");
  sub->add_option("--method", o->method, "Line geometry: affine | hilbert");
  sub->add_option("--box", o->box, "Output box lo,hi per axis (default: source box)");
  sub->add_option("--shape", o->shape, "Output nodes per axis (default: source shape)");
  sub->add_option("--reference", o->reference, "Reference field for the round-trip report");
  sub->add_option("--report", o->report, "Write the round-trip report JSON here");
  sub->add_option("--sigma", o->sigma, "Quadric: phantom scale for the default mu padding");
  sub->add_option("--damping", o->damping, "Quadric: Gaussian damping epsilon (0: none)");
  add_config_option(sub);
  sub->callback([sub, o] {
    apply_config(sub);
    const auto t0 = std::chrono::steady_clock::now();
    const GridFile file = read_input_grid(o->in);
    std::string geometry = o->geometry;
    if (geometry.empty()) geometry = file.attrs.count("geometry") ? file.attrs.at("geometry") : "line";
    std::optional<ScalarField> reference;
    if (!o->reference.empty()) reference = read_grid(o->reference);
    std::string box = o->box, shape = o->shape;
    if (box.empty()) {
      if (reference) box = box_to_string(reference->domain());
      else if (file.attrs.count("source_box")) box = file.attrs.at("source_box");
    }
    if (shape.empty()) {
      if (reference) shape = shape_to_string(reference->domain());
      else if (file.attrs.count("source_shape")) shape = file.attrs.at("source_shape");
    }
    require(!box.empty() && !shape.empty(), "invert: give --box and --shape (or --reference)");
    const BoxDomain out = parse_box(box, shape);
    Diagnostics diag;
    const ScalarField rec = invert_table(file, geometry, o->method, out, o->sigma, o->damping, diag);
    print_warnings(diag);
    write_output_grid(to_grid_file(rec), o->out);
    if (reference) {
      const double err = l2_relative_error(*reference, rec);
      const std::string rep = report_json(geometry, out, err, elapsed(t0), nullptr, std::nullopt);
      if (o->report.empty()) std::cerr << rep;
      else write_output_text(rep, o->report);
    }
  });
}

// -- backproject ------------------------------------------------------------------

void register_backproject(CLI::App& app) {
  struct Opts {
    std::string in = "-", out = "-", box, shape;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("backproject", "Unfiltered backprojection of a sinogram");
  sub->add_option("-i,--input", o->in, "Input sinogram (default stdin)");
  sub->add_option("-o,--output", o->out, "Output field grid (default stdout)");
  sub->add_option("--box", o->box, "Output box (default: source box)");
  sub->add_option("--shape", o->shape, "Output nodes per axis (default: source shape)");
  add_config_option(sub);
  sub->callback([sub, o] {
    apply_config(sub);
    const GridFile file = read_input_grid(o->in);
    std::string box = o->box, shape = o->shape;
    if (box.empty() && file.attrs.count("source_box")) box = file.attrs.at("source_box");
    if (shape.empty() && file.attrs.count("source_shape")) shape = file.attrs.at("source_shape");
    require(!box.empty() && !shape.empty(), "backproject: give --box and --shape");
    write_output_grid(to_grid_file(backproject(table_from(file), parse_box(box, shape))), o->out);
  });
}

// -- report ---------------------------------------------------------------------------

struct ReportOpts {
  std::string geometry = "line", out = "-";
  std::uint64_t seed = 1;
  int shape = 0;
  bool timing = true;
};

nlohmann::json homogeneity_invariant(const TomogramSampler& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double lam = 2.0 * u(rng);
    Coord mu{u(rng), u(rng), 0.0};
    if (std::hypot(mu[0], mu[1]) < 0.2) mu[0] += 0.5;
    const double base = s({lam, {mu[0], mu[1]}});
    for (double sc : {-3.0, 0.5, 2.0}) {
      const double v = s({sc * lam, {sc * mu[0], sc * mu[1]}});
      const double scale = std::max(std::abs(base), 1e-12);
      worst = std::max(worst, std::abs(v - base / std::abs(sc)) / scale);
    }
  }
  return {{"worst_relative", worst}, {"pass", worst <= 1e-6}};
}

void register_report(CLI::App& app) {
  auto o = std::make_shared<ReportOpts>();
  CLI::App* sub = app.add_subcommand("report", "In-memory round trip with invariant checks");
  sub->add_option("--geometry", o->geometry,
                  "line | hilbert | affine3d | circle | hyperbola | bertrand | quadric | "
                  "quadric-hyperbolic");
  sub->add_option("--shape", o->shape, "Nodes per axis (0: geometry default)");
  sub->add_option("--seed", o->seed, "Seed for randomized invariant checks");
  sub->add_option("--timing", o->timing, "Include wall time (true/false)");
  sub->add_option("-o,--output", o->out, "Report path (default stdout)");
  add_config_option(sub);
  sub->callback([sub, o] {
    apply_config(sub);
    std::cerr << "seed: " << o->seed << "\n";
    std::mt19937_64 rng(o->seed);
    const auto t0 = std::chrono::steady_clock::now();
    const std::string& g = o->geometry;
    nlohmann::json inv = nlohmann::json::object();
    ScalarField f, rec;
    Diagnostics diag;
    auto n_or = [&](int d) { return std::size_t(o->shape > 0 ? o->shape : d); };
    if (g == "line" || g == "hilbert") {
      const BoxDomain dom = BoxDomain::cube(2, -6.0, 6.0, n_or(128));
      f = make_gaussian_phantom(dom, {0.0, 0.0}, 1.0, 1.0);
      const TomogramTable sino = sinogram(f, {});
      const SinogramSampler sampler(sino);
      rec = invert_affine(sampler, dom, table_quadrature(sino));
      ScalarField hil = invert_radon_hilbert(sino, dom);
      const double agree = l2_relative_error(rec, hil);
      inv["dual_path_agreement"] = {{"l2", agree}, {"pass", agree < 0.05}};
      if (g == "hilbert") rec = std::move(hil);
      const AffineFieldSampler fs(f);
      inv["homogeneity"] = homogeneity_invariant(fs, rng);
    } else if (g == "affine3d") {
      const BoxDomain dom = BoxDomain::cube(3, -6.0, 6.0, n_or(48));
      f = make_gaussian_phantom(dom, {0.0, 0.0, 0.0}, 1.0, 1.0);
      const AffineFieldSampler fs(f);
      QuadratureSpec q;
      q.n_polar = 12, q.n_angles = 24, q.n_lambda = 49, q.lambda_max = 6.0 * std::sqrt(3.0);
      q.rho_max = pi / (2.0 * q.lambda_max / (q.n_lambda - 1));
      rec = invert_affine(fs, dom, q);
    } else if (is_deformed(g)) {
      const double cy = g == "circle" ? 0.25 : 0.0;
      const BoxDomain dom({0.75, cy - 1.0}, {2.75, cy + 1.0}, {n_or(128), n_or(128)});
      f = make_gaussian_phantom(dom, {1.75, cy}, 0.25, 1.0);
      const Diffeomorphism phi = geometry_diffeo(g);
      const DeformedFieldSampler fs(f, phi);
      const QuadratureSpec q = deformed_quadrature(phi, dom);
      rec = g == "bertrand" ? bertrand_invert(fs, dom, q, &diag) : deformed_invert(fs, phi, dom, q);
      inv["homogeneity"] = homogeneity_invariant(fs, rng);
    } else if (g == "quadric" || g == "quadric-hyperbolic") {
      const BoxDomain dom = BoxDomain::cube(2, -3.0, 3.0, n_or(96));
      Eigen::MatrixXd B = Eigen::MatrixXd::Identity(2, 2);
      QuadricInverseOptions opts;
      opts.mu_padding = 2.0;
      if (g == "quadric") {
        f = make_gaussian_phantom(dom, {0.3, -0.2}, 0.5, 1.0);
      } else {
        B(1, 1) = -1.0;
        f = make_bump_phantom(dom, {0.3, -0.2}, 1.5, 1.0);
      }
      const QuadricSpec spec(B, Eigen::VectorXd::Zero(2));
      const QuadricFieldSampler fs(f, spec);
      rec = quadric_invert(fs, spec, dom, opts, &diag);
      const bool empty = quadric_tomogram(f, spec, -1.0, {0.0, 0.0}) == 0.0;
      if (g == "quadric") inv["empty_level_set_zero"] = {{"pass", empty}};
    } else {
      fail(ErrorCode::invalid_argument, "unknown report geometry '" + g + "'");
    }
    print_warnings(diag);
    const double err = l2_relative_error(f, rec);
    const double limit = g == "affine3d" || is_deformed(g) || g == "quadric" ? 0.10
                         : g == "quadric-hyperbolic"                        ? 0.15
                                                                            : 0.05;
    inv["round_trip"] = {{"l2", err}, {"limit", limit}, {"pass", err < limit}};
    nlohmann::ordered_json j;
    j["geometry"] = g;
    j["grid_shape"] = f.domain().shape();
    j["l2_relative_error"] = err;
    j["invariants"] = inv;
    j["seed"] = o->seed;
    if (o->timing) j["wall_time_s"] = elapsed(t0);
    write_output_text(j.dump(1) + "\n", o->out);
  });
}

// -- export ---------------------------------------------------------------------------

void register_export(CLI::App& app) {
  struct Opts {
    std::string in, tomogram, lambda, mu, nu, out = "-";
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("export", "Export plot data as CSV");
  sub->add_option("-i,--input", o->in, "Grid file (field, table or phase grid)");
  sub->add_option("--tomogram", o->tomogram, "Discrete tomogram JSON");
  sub->add_option("--lambda", o->lambda, "Circle family sweep: lambda values");
  sub->add_option("--mu", o->mu, "Circle family sweep: mu values");
  sub->add_option("--nu", o->nu, "Circle family sweep: nu values");
  sub->add_option("-o,--output", o->out, "CSV path (default stdout)");
  add_config_option(sub);
  sub->callback([sub, o] {
    apply_config(sub);
    const int modes = int(!o->in.empty()) + int(!o->tomogram.empty()) + int(!o->lambda.empty());
    require(modes == 1, "export: give exactly one of --input, --tomogram or --lambda/--mu/--nu");
    std::string csv;
    if (!o->in.empty()) {
      const GridFile file = read_input_grid(o->in);
      if (file.is_complex) {
        const PhaseGrid g = phase_grid_from(file);
        csv = "u,v,re,im\n";
        for (std::size_t i = 0; i < g.size(); ++i)
          csv += fmt(g.z(i).real()) + "," + fmt(g.z(i).imag()) + "," + fmt(g.values[i].real()) +
                 "," + fmt(g.values[i].imag()) + "\n";
      } else if (!file.axes.empty()) {
        csv = table_csv(table_from(file));
      } else {
        csv = field_csv(field_from(file));
      }
    } else if (!o->tomogram.empty()) {
      const DiscreteTomogram t = tomogram_from_json(read_input_text(o->tomogram));
      csv = "lambda,weight\n";
      for (const Atom& a : t.atoms) csv += fmt(a.lambda) + "," + fmt(a.weight) + "\n";
    } else {
      require(!o->mu.empty() && !o->nu.empty(), "circle sweep needs --lambda, --mu and --nu");
      csv = "lambda,mu,nu,center_x,center_y,radius,degenerate\n";
      for (double l : parse_list(o->lambda, "--lambda"))
        for (double m : parse_list(o->mu, "--mu"))
          for (double n : parse_list(o->nu, "--nu")) {
            const CircleGeometry c = circle_geometry(l, m, n);
            csv += fmt(l) + "," + fmt(m) + "," + fmt(n) + "," + fmt(c.center[0]) + "," +
                   fmt(c.center[1]) + "," + fmt(c.radius) + "," + (c.degenerate ? "1" : "0") +
                   "\n";
          }
    }
    write_output_text(csv, o->out);
  });
}

}  // namespace

void register_radon_commands(CLI::App& app) {
  register_phantom(app);
  register_forward(app);
  register_invert(app);
  register_backproject(app);
  register_report(app);
  register_export(app);
}

}  // namespace tomo::cli
