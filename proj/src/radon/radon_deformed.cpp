#include "tomo/radon_deformed.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "tomo/quadrature.hpp"

namespace tomo {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

Coord to_coord(const std::vector<double>& v) {
  Coord c{0.0, 0.0, 0.0};
  for (std::size_t a = 0; a < v.size() && a < max_dim; ++a) c[a] = v[a];
  return c;
}

void check_mu(const std::vector<double>& mu, int dim) {
  require(int(mu.size()) == dim, "mu has the wrong dimension");
  double s = 0.0;
  for (double m : mu) s += m * m;
  require(s > 0.0, "mu must be nonzero");
}

}  // namespace

// -- diffeomorphisms ------------------------------------------------------------

Diffeomorphism identity_diffeo(int dim) {
  require(dim >= 1 && dim <= max_dim, "identity_diffeo: dimension must be 1, 2 or 3");
  Diffeomorphism d;
  d.name = "identity";
  d.dim = dim;
  d.forward = [](const Coord& q) { return q; };
  d.jacobian_det = [](const Coord&) { return 1.0; };
  d.jacobian = [](const Coord&) -> Eigen::Matrix3d { return Eigen::Matrix3d::Identity(); };
  d.singular_distance = [](const Coord&) { return inf; };
  d.epsilon = 0.0;
  return d;
}

Diffeomorphism conformal_inversion() {
  Diffeomorphism d;
  d.name = "conformal_inversion";
  d.dim = 2;
  d.forward = [](const Coord& q) {
    const double r2 = q[0] * q[0] + q[1] * q[1];
    return Coord{q[0] / r2, q[1] / r2, 0.0};
  };
  d.jacobian_det = [](const Coord& q) {
    const double r2 = q[0] * q[0] + q[1] * q[1];
    return 1.0 / (r2 * r2);
  };
  d.jacobian = [](const Coord& q) -> Eigen::Matrix3d {
    const double r2 = q[0] * q[0] + q[1] * q[1], r4 = r2 * r2;
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = (r2 - 2.0 * q[0] * q[0]) / r4;
    m(0, 1) = m(1, 0) = -2.0 * q[0] * q[1] / r4;
    m(1, 1) = (r2 - 2.0 * q[1] * q[1]) / r4;
    return m;
  };
  d.singular_distance = [](const Coord& q) { return std::hypot(q[0], q[1]); };
  return d;
}

Diffeomorphism axis_inversion() {
  Diffeomorphism d;
  d.name = "axis_inversion";
  d.dim = 2;
  d.forward = [](const Coord& q) { return Coord{1.0 / q[0], q[1], 0.0}; };
  d.jacobian_det = [](const Coord& q) { return 1.0 / (q[0] * q[0]); };
  d.jacobian = [](const Coord& q) -> Eigen::Matrix3d {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = -1.0 / (q[0] * q[0]);
    m(1, 1) = 1.0;
    return m;
  };
  d.singular_distance = [](const Coord& q) { return std::abs(q[0]); };
  return d;
}

Diffeomorphism bertrand(int n) {
  require(n == 1, "bertrand: only the planar map (n = 1, (q, p) -> (q, q p)) fits the "
                  "grid types (dimension 2n <= 3)");
  Diffeomorphism d;
  d.name = "bertrand";
  d.dim = 2;
  d.forward = [](const Coord& q) { return Coord{q[0], q[0] * q[1], 0.0}; };
  d.jacobian_det = [](const Coord& q) { return std::abs(q[0]); };
  d.jacobian = [](const Coord& q) -> Eigen::Matrix3d {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = 1.0;
    m(1, 0) = q[1];
    m(1, 1) = q[0];
    return m;
  };
  d.singular_distance = [](const Coord& q) { return std::abs(q[0]); };
  return d;
}

BuiltinDiffeos builtin_diffeos() { return {conformal_inversion(), axis_inversion(), bertrand(1)}; }

Diffeomorphism diffeo_by_name(const std::string& name) {
  if (name == "identity" || name == "line") return identity_diffeo(2);
  if (name == "circle" || name == "conformal_inversion") return conformal_inversion();
  if (name == "hyperbola" || name == "axis_inversion") return axis_inversion();
  if (name == "bertrand") return bertrand(1);
  fail(ErrorCode::invalid_argument, "unknown diffeomorphism '" + name + "'");
}

LevelFunction deformed_level(const Diffeomorphism& phi, const Coord& mu) {
  LevelFunction g;
  const int n = phi.dim;
  g.value = [&phi, mu, n](const Coord& q) {
    const Coord x = phi.forward(q);
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += mu[a] * x[a];
    return s;
  };
  g.gradient = [&phi, mu, n](const Coord& q) {
    const Eigen::Matrix3d j = phi.jacobian(q);
    Coord out{0.0, 0.0, 0.0};
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) out[b] += j(a, b) * mu[a];
    return out;
  };
  if (phi.epsilon > 0.0) g.masked = [&phi](const Coord& q) { return phi.near_singular(q); };
  return g;
}

double deformed_tomogram(const ScalarField& f, const Diffeomorphism& phi, double lambda,
                         const std::vector<double>& mu, int refine) {
  require(f.dim() == 2 && phi.dim == 2, "deformed_tomogram: planar fields and maps only");
  check_mu(mu, 2);
  return level_set_integral(f, deformed_level(phi, to_coord(mu)), lambda, refine);
}

DeformedFieldSampler::DeformedFieldSampler(const ScalarField& f, Diffeomorphism phi, int refine)
    : field_(f), phi_(std::move(phi)), refine_(refine) {
  require(f.dim() == 2 && phi_.dim == 2, "DeformedFieldSampler: planar fields and maps only");
}

void DeformedFieldSampler::sample(const Coord& mu, std::span<const double> lambdas,
                                  std::span<double> out) const {
  require(mu[0] != 0.0 || mu[1] != 0.0, "deformed tomogram: mu must be nonzero");
  level_set_integrals(field_, deformed_level(phi_, mu), lambdas, out, refine_);
}

QuadratureSpec deformed_quadrature(const Diffeomorphism& phi, const BoxDomain& out_domain) {
  require(out_domain.dim() == phi.dim, "deformed_quadrature: dimension mismatch",
          ErrorCode::domain_mismatch);
  double radius = 0.0;
  std::vector<double> scales;
  scales.reserve(out_domain.size());
  for (std::size_t i = 0; i < out_domain.size(); ++i) {
    const Coord q = out_domain.node(i);
    if (phi.near_singular(q)) continue;
    const Coord x = phi.forward(q);
    double r2 = 0.0;
    for (int a = 0; a < phi.dim; ++a) r2 += x[a] * x[a];
    radius = std::max(radius, std::sqrt(r2));
    const Eigen::MatrixXd j = phi.jacobian(q).topLeftCorner(phi.dim, phi.dim);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    scales.push_back(svd.singularValues().minCoeff());
  }
  require(!scales.empty(), "deformed_quadrature: domain lies inside the singular set",
          ErrorCode::singular_set);
  std::nth_element(scales.begin(), scales.begin() + scales.size() / 2, scales.end());
  const double step = 4.0 * out_domain.min_spacing() * scales[scales.size() / 2];
  return default_quadrature(phi.dim, radius * 1.02, step);
}

ScalarField deformed_invert(const TomogramSampler& sampler, const Diffeomorphism& phi,
                            const BoxDomain& out_domain, const QuadratureSpec& quad, Exec exec) {
  require(sampler.dim() == phi.dim && out_domain.dim() == phi.dim,
          "deformed_invert: dimension mismatch", ErrorCode::domain_mismatch);
  for (std::size_t i = 0; i < out_domain.size(); ++i)
    if (phi.near_singular(out_domain.node(i))) {
      std::ostringstream msg;
      msg << "deformed_invert: output domain intersects the singular set of " << phi.name
          << " (epsilon " << phi.epsilon << ")";
      fail(ErrorCode::singular_set, msg.str());
    }
  const AffineInverse inverse(sampler, quad, exec);
  ScalarField out(out_domain);
  for_each_index(exec, std::int64_t(out_domain.size()), [&](std::int64_t i) {
    const Coord q = out_domain.node(std::size_t(i));
    out[std::size_t(i)] = phi.jacobian_det(q) * inverse.evaluate(phi.forward(q));
  });
  return out;
}

CircleGeometry circle_geometry(double lambda, double mu, double nu) {
  require(mu != 0.0 || nu != 0.0, "circle_geometry: (mu, nu) must be nonzero");
  CircleGeometry c;
  if (lambda == 0.0) {
    c.degenerate = true;
    const double n = std::hypot(mu, nu);
    c.normal = {mu / n, nu / n, 0.0};
    return c;
  }
  c.center = {mu / (2.0 * lambda), nu / (2.0 * lambda), 0.0};
  c.radius = std::hypot(c.center[0], c.center[1]);
  return c;
}

namespace {

void warn_bertrand_support(const ScalarField& f, Diagnostics* diag) {
  if (!diag) return;
  const BoxDomain& d = f.domain();
  const double h = d.spacing(0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0 && std::abs(d.node(i)[0]) < h) {
      diag->warn("bertrand: support crosses q = 0, the singular set of (q, q p)");
      return;
    }
}

}  // namespace

double bertrand_tomogram(const ScalarField& f, double xi, double nu, double lambda,
                         Diagnostics* diag, int refine) {
  require(nu != 0.0, "bertrand_tomogram: nu must be nonzero");
  warn_bertrand_support(f, diag);
  return deformed_tomogram(f, bertrand(1), lambda, {xi, nu}, refine);
}

ScalarField bertrand_invert(const TomogramSampler& sampler, const BoxDomain& out_domain,
                            const QuadratureSpec& quad, Diagnostics* diag, Exec exec) {
  const Diffeomorphism phi = bertrand(1);
  if (diag && out_domain.lo()[0] < phi.epsilon && out_domain.hi()[0] > -phi.epsilon)
    diag->warn("bertrand: output domain crosses q = 0, the singular set of (q, q p)");
  return deformed_invert(sampler, phi, out_domain, quad, exec);
}

// -- quadrics -------------------------------------------------------------------

QuadricSpec::QuadricSpec(Eigen::MatrixXd b, Eigen::VectorXd a_) : B(std::move(b)), a(std::move(a_)) {
  require(B.rows() == B.cols() && B.rows() >= 1 && B.rows() <= max_dim,
          "QuadricSpec: B must be square of size 1..3");
  require(a.size() == B.rows(), "QuadricSpec: a must match B");
  require(B.allFinite() && a.allFinite(), "QuadricSpec: non-finite entries");
  require((B - B.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + B.cwiseAbs().maxCoeff()),
          "QuadricSpec: B must be symmetric");
  require(std::abs(B.determinant()) > 1e-12, "QuadricSpec: det B must be nonzero");
}

double QuadricSpec::g(const Coord& q, const Coord& mu) const {
  const int n = dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double di = q[i] - mu[i];
    double bi = 0.0;
    for (int j = 0; j < n; ++j) bi += B(i, j) * (q[j] - mu[j]);
    s += di * bi + a(i) * di;
  }
  return s;
}

LevelFunction quadric_level(const QuadricSpec& spec, const Coord& mu) {
  LevelFunction g;
  g.value = [&spec, mu](const Coord& q) { return spec.g(q, mu); };
  g.gradient = [&spec, mu](const Coord& q) {
    const int n = spec.dim();
    Coord out{0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      double s = spec.a(i);
      for (int j = 0; j < n; ++j) s += 2.0 * spec.B(i, j) * (q[j] - mu[j]);
      out[i] = s;
    }
    return out;
  };
  return g;
}

double quadric_tomogram(const ScalarField& f, const QuadricSpec& spec, double lambda,
                        const std::vector<double>& mu, int refine) {
  require(f.dim() == 2 && spec.dim() == 2, "quadric_tomogram: planar fields only");
  require(mu.size() == 2, "quadric_tomogram: mu must have 2 components");
  return level_set_integral(f, quadric_level(spec, to_coord(mu)), lambda, refine);
}

QuadricFieldSampler::QuadricFieldSampler(const ScalarField& f, QuadricSpec spec, int refine)
    : field_(f), spec_(std::move(spec)), refine_(refine) {
  require(f.dim() == 2 && spec_.dim() == 2, "QuadricFieldSampler: planar fields only");
}

void QuadricFieldSampler::sample(const Coord& mu, std::span<const double> lambdas,
                                 std::span<double> out) const {
  level_set_integrals(field_, quadric_level(spec_, mu), lambdas, out, refine_);
}

TomogramTable quadric_table(const ScalarField& f, const QuadricSpec& spec, const BoxDomain& grid,
                            int refine, Exec exec) {
  require(f.dim() == 2 && spec.dim() == 2 && grid.dim() == 3,
          "quadric_table: planar field and a (mu_u, mu_v, lambda) grid required",
          ErrorCode::domain_mismatch);
  const std::size_t n0 = grid.shape()[0], n1 = grid.shape()[1], nl = grid.shape()[2];
  TomogramTable t{{"mu_u", "mu_v", "lambda"}, grid, std::vector<double>(grid.size(), 0.0)};
  std::vector<double> lambdas(nl);
  for (std::size_t k = 0; k < nl; ++k) lambdas[k] = grid.coord(2, k);
  for_each_index(exec, std::int64_t(n0 * n1), [&](std::int64_t idx) {
    const std::size_t i = std::size_t(idx) / n1, j = std::size_t(idx) % n1;
    const Coord mu{grid.coord(0, i), grid.coord(1, j), 0.0};
    level_set_integrals(f, quadric_level(spec, mu), lambdas,
                        std::span<double>(t.values.data() + std::size_t(idx) * nl, nl), refine);
  });
  return t;
}

double QuadricSpec::stationary_value() const { return -0.25 * a.dot(B.ldlt().solve(a)); }

QuadricTableSampler::QuadricTableSampler(const TomogramTable& table, double breakpoint)
    : table_(table), breakpoint_(breakpoint) {
  require(table.grid.dim() == 3 && table.axes.size() == 3 && table.axes[0] == "mu_u" &&
              table.axes[1] == "mu_v" && table.axes[2] == "lambda",
          "quadric table must have axes mu_u, mu_v, lambda", ErrorCode::bad_header);
}

namespace {

// Cubic Lagrange weights at position u for nodes first .. first + 3.
void lagrange4(double u, std::ptrdiff_t first, double w[4]) {
  for (int m = 0; m < 4; ++m) {
    w[m] = 1.0;
    for (int r = 0; r < 4; ++r)
      if (r != m) w[m] *= (u - double(first + r)) / double(m - r);
  }
}

}  // namespace

void QuadricTableSampler::sample(const Coord& mu, std::span<const double> lambdas,
                                 std::span<double> out) const {
  const BoxDomain& g = table_.grid;
  double w[2][4];
  std::ptrdiff_t c[2];
  for (int a = 0; a < 2; ++a) {
    const double u = (mu[a] - g.lo()[a]) / g.spacing(a);
    const auto n = std::ptrdiff_t(g.shape()[a]);
    require(u >= -1e-9 && u <= double(n - 1) + 1e-9, "quadric table: mu outside the tabulated box",
            ErrorCode::domain_mismatch);
    if (n < 4) {
      const double cell = std::clamp(std::floor(u), 0.0, double(n - 2));
      const double t = std::clamp(u - cell, 0.0, 1.0);
      c[a] = std::ptrdiff_t(cell);
      w[a][0] = 1.0 - t, w[a][1] = t, w[a][2] = w[a][3] = 0.0;
    } else {
      c[a] = std::clamp(std::ptrdiff_t(std::floor(u)) - 1, std::ptrdiff_t(0), n - 4);
      lagrange4(u, c[a], w[a]);
    }
  }
  const std::size_t nl = g.shape()[2], n1 = g.shape()[1];
  const double lam0 = g.lo()[2], dl = g.spacing(2);
  const bool split = std::isfinite(breakpoint_);
  const double bu = split ? (breakpoint_ - lam0) / dl : 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double u = (lambdas[k] - lam0) / dl;
    if (!(u >= 0.0 && u <= double(nl - 1))) {
      out[k] = 0.0;
      continue;
    }
    auto first = std::ptrdiff_t(std::floor(u)) - 1;
    if (split) {
      if (u > bu) first = std::max(first, std::ptrdiff_t(std::floor(bu + 1e-9)) + 1);
      else first = std::min(first, std::ptrdiff_t(std::ceil(bu - 1e-9)) - 4);
    }
    double lw[4];
    lagrange4(u, first, lw);
    double v = 0.0;
    for (int di = 0; di < 4; ++di)
      for (int dj = 0; dj < 4; ++dj) {
        const double wt = w[0][di] * w[1][dj];
        if (wt == 0.0) continue;
        const std::size_t base = (std::size_t(c[0] + di) * n1 + std::size_t(c[1] + dj)) * nl;
        for (int m = 0; m < 4; ++m) {
          const std::ptrdiff_t idx = first + m;
          if (idx >= 0 && idx < std::ptrdiff_t(nl))
            v += wt * lw[m] * table_.values[base + std::size_t(idx)];
        }
      }
    out[k] = v;
  }
}

ScalarField quadric_invert(const TomogramSampler& sampler, const QuadricSpec& spec,
                           const BoxDomain& out_domain, const QuadricInverseOptions& opts,
                           Diagnostics* diag, Exec exec) {
  const int n = spec.dim();
  require(n == 2 && sampler.dim() == 2 && out_domain.dim() == 2,
          "quadric_invert: planar quadrics only", ErrorCode::domain_mismatch);
  require(opts.order >= 2 && opts.mu_panel > 0.0 && opts.lambda_panel > 0.0 && opts.sigma > 0.0,
          "quadric_invert: invalid options");
  require(opts.damping >= 0.0, "quadric_invert: damping must be >= 0");
  const double pad = opts.mu_padding > 0.0 ? opts.mu_padding : 4.0 * opts.sigma;

  QuadratureRule axis[2];
  for (int a = 0; a < 2; ++a)
    axis[a] = composite_gauss_legendre({out_domain.lo()[a] - pad, out_domain.hi()[a] + pad},
                                       opts.order, opts.mu_panel);
  const std::size_t m0 = axis[0].size(), m1 = axis[1].size(), nmu = m0 * m1;

  const double stationary = spec.stationary_value();

  std::vector<std::complex<double>> phi(nmu);
  std::vector<Coord> mus(nmu);
  std::vector<double> wmu(nmu);
  for_each_index(exec, std::int64_t(nmu), [&](std::int64_t idx) {
    const std::size_t i = std::size_t(idx) / m1, j = std::size_t(idx) % m1;
    const Coord mu{axis[0].nodes[i], axis[1].nodes[j], 0.0};
    mus[std::size_t(idx)] = mu;
    wmu[std::size_t(idx)] = axis[0].weights[i] * axis[1].weights[j];
    double gmin = inf, gmax = -inf;
    for (std::size_t k = 0; k < out_domain.size(); ++k) {
      const double g = spec.g(out_domain.node(k), mu);
      gmin = std::min(gmin, g);
      gmax = std::max(gmax, g);
    }
    std::vector<double> breaks{gmin};
    if (stationary > gmin && stationary < gmax) breaks.push_back(stationary);
    breaks.push_back(gmax);
    const QuadratureRule lam = composite_gauss_legendre(breaks, opts.order, opts.lambda_panel);
    std::vector<double> fh(lam.size());
    sampler.sample(mu, lam.nodes, fh);
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < lam.size(); ++k)
      s += lam.weights[k] * fh[k] * std::polar(1.0, lam.nodes[k]);
    phi[std::size_t(idx)] = s;
  });

  if (diag) {
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < m0; ++i)
      for (std::size_t j = 0; j < m1; ++j) {
        const double v = std::abs(phi[i * m1 + j]);
        peak = std::max(peak, v);
        if (i < std::size_t(opts.order) || i + opts.order >= m0 || j < std::size_t(opts.order) ||
            j + opts.order >= m1)
          edge = std::max(edge, v);
      }
    if (peak > 0.0 && edge > 1e-3 * peak) {
      std::ostringstream msg;
      msg << "quadric_invert: insufficient mu range; |Phi| at the edge is " << edge / peak
          << " of its peak (estimated relative truncation error)";
      diag->warn(msg.str());
    }
  }

  const double prefactor = std::abs(spec.B.determinant()) / (pi * pi);
  const double eps = opts.damping;
  ScalarField out(out_domain);
  for_each_index(exec, std::int64_t(out_domain.size()), [&](std::int64_t idx) {
    const Coord q = out_domain.node(std::size_t(idx));
    double s_full = 0.0, s_half = 0.0;
    for (std::size_t k = 0; k < nmu; ++k) {
      const double term = wmu[k] * (phi[k] * std::polar(1.0, -spec.g(q, mus[k]))).real();
      if (eps > 0.0) {
        const double r2 = mus[k][0] * mus[k][0] + mus[k][1] * mus[k][1];
        s_full += term * std::exp(-eps * r2);
        s_half += term * std::exp(-0.5 * eps * r2);
      } else {
        s_full += term;
      }
    }
    out[std::size_t(idx)] = prefactor * (eps > 0.0 ? 2.0 * s_half - s_full : s_full);
  });
  return out;
}

}  // namespace tomo
