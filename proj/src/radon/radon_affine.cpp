#include "tomo/radon_affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tomo/quadrature.hpp"

namespace tomo {

namespace {

constexpr double pi = std::numbers::pi;

double norm_of(const Coord& mu, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += mu[a] * mu[a];
  return std::sqrt(s);
}

Coord to_coord(const std::vector<double>& v) {
  Coord c{0.0, 0.0, 0.0};
  for (std::size_t a = 0; a < v.size() && a < max_dim; ++a) c[a] = v[a];
  return c;
}

// Flips (n, d) so the first nonzero component of n is positive.
void canonicalize(Coord& n, double& d, int dim) {
  for (int a = 0; a < dim; ++a) {
    if (n[a] > 0.0) return;
    if (n[a] < 0.0) {
      for (int b = 0; b < dim; ++b) n[b] = -n[b];
      d = -d;
      return;
    }
  }
}

// Exact integral of the bilinear interpolant along p + s u (|u| = 1).
double bilinear_line_integral(const ScalarField& f, double px, double py, double ux,
                              double uy) {
  const BoxDomain& dom = f.domain();
  const double p[2] = {px, py};
  const double u[2] = {ux, uy};
  double s0 = -std::numeric_limits<double>::infinity();
  double s1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 2; ++a) {
    const double lo = dom.lo()[a], hi = dom.hi()[a];
    if (std::abs(u[a]) < 1e-300) {
      if (p[a] < lo || p[a] > hi) return 0.0;
      continue;
    }
    double t0 = (lo - p[a]) / u[a], t1 = (hi - p[a]) / u[a];
    if (t0 > t1) std::swap(t0, t1);
    s0 = std::max(s0, t0);
    s1 = std::min(s1, t1);
  }
  if (!(s1 > s0)) return 0.0;

  // Cell-boundary crossings per axis, each produced in ascending order.
  std::vector<double> cuts[2];
  for (int a = 0; a < 2; ++a) {
    if (std::abs(u[a]) < 1e-300) continue;
    const std::size_t n = dom.shape()[a];
    auto& c = cuts[a];
    c.reserve(n);
    auto push = [&](std::size_t i) {
      const double s = (dom.coord(a, i) - p[a]) / u[a];
      if (s > s0 && s < s1) c.push_back(s);
    };
    if (u[a] > 0)
      for (std::size_t i = 1; i + 1 < n; ++i) push(i);
    else
      for (std::size_t i = n - 2; i >= 1; --i) push(i);
  }
  std::vector<double> knots;
  knots.reserve(cuts[0].size() + cuts[1].size() + 2);
  knots.push_back(s0);
  std::merge(cuts[0].begin(), cuts[0].end(), cuts[1].begin(), cuts[1].end(),
             std::back_inserter(knots));
  knots.push_back(s1);

  const double lo0 = dom.lo()[0], lo1 = dom.lo()[1];
  const double h0 = dom.spacing(0), h1 = dom.spacing(1);
  const auto n0 = static_cast<long>(dom.shape()[0]), n1 = static_cast<long>(dom.shape()[1]);
  const std::size_t st0 = dom.stride(0);
  const auto& v = f.values();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    if (!(b > a)) continue;
    const double m = 0.5 * (a + b);
    long i = static_cast<long>(std::floor((px + m * ux - lo0) / h0));
    long j = static_cast<long>(std::floor((py + m * uy - lo1) / h1));
    i = std::clamp(i, 0L, n0 - 2);
    j = std::clamp(j, 0L, n1 - 2);
    const std::size_t o = std::size_t(i) * st0 + std::size_t(j);
    const double f00 = v[o], f01 = v[o + 1], f10 = v[o + st0], f11 = v[o + st0 + 1];
    const double x0 = lo0 + double(i) * h0, y0 = lo1 + double(j) * h1;
    auto patch = [&](double s) {
      const double tx = (px + s * ux - x0) / h0, ty = (py + s * uy - y0) / h1;
      return (1 - tx) * ((1 - ty) * f00 + ty * f01) + tx * ((1 - ty) * f10 + ty * f11);
    };
    total += (b - a) / 6.0 * (patch(a) + 4.0 * patch(m) + patch(b));
  }
  return total;
}

// Orthonormal pair spanning the plane orthogonal to unit n.
void plane_basis(const Coord& n, Coord& e1, Coord& e2) {
  int k = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(n[a]) < std::abs(n[k])) k = a;
  Coord ax{0.0, 0.0, 0.0};
  ax[k] = 1.0;
  e1 = {n[1] * ax[2] - n[2] * ax[1], n[2] * ax[0] - n[0] * ax[2], n[0] * ax[1] - n[1] * ax[0]};
  const double l = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& c : e1) c /= l;
  e2 = {n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]};
}

// Plane {x . n = d} (unit n) integral of the trilinear interpolant.
double plane_integral(const ScalarField& f, const Coord& n, double d, const Coord& e1,
                      const Coord& e2, double step) {
  const BoxDomain& dom = f.domain();
  Coord c{0.0, 0.0, 0.0};
  double r2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    c[a] = 0.5 * (dom.lo()[a] + dom.hi()[a]);
    const double half = 0.5 * (dom.hi()[a] - dom.lo()[a]);
    r2 += half * half;
  }
  const double off = d - (c[0] * n[0] + c[1] * n[1] + c[2] * n[2]);
  const double rr = r2 - off * off;
  if (rr <= 0.0) return 0.0;
  Coord p0;
  for (int a = 0; a < 3; ++a) p0[a] = c[a] + off * n[a];
  const long k = static_cast<long>(std::ceil(std::sqrt(rr) / step));
  double total = 0.0;
  for (long i = -k; i <= k; ++i) {
    const double s = double(i) * step;
    // Clip the lattice row p0 + s e1 + t e2 to the box.
    double t0 = -double(k) * step, t1 = double(k) * step;
    bool empty = false;
    for (int a = 0; a < 3 && !empty; ++a) {
      const double base = p0[a] + s * e1[a];
      if (std::abs(e2[a]) < 1e-14) {
        empty = base < dom.lo()[a] || base > dom.hi()[a];
        continue;
      }
      double u0 = (dom.lo()[a] - base) / e2[a], u1 = (dom.hi()[a] - base) / e2[a];
      if (u0 > u1) std::swap(u0, u1);
      t0 = std::max(t0, u0);
      t1 = std::min(t1, u1);
    }
    if (empty || t1 < t0) continue;
    const long j0 = static_cast<long>(std::floor(t0 / step)), j1 = static_cast<long>(std::ceil(t1 / step));
    double row = 0.0;
    for (long j = j0; j <= j1; ++j) {
      const double t = double(j) * step;
      const Coord x{p0[0] + s * e1[0] + t * e2[0], p0[1] + s * e1[1] + t * e2[1],
                    p0[2] + s * e1[2] + t * e2[2]};
      row += f.interpolate(x);
    }
    total += row;
  }
  return total * step * step;
}

// Unit-normal hyperplane integral at offset d; n must be canonical and unit.
double unit_hyperplane(const ScalarField& f, const Coord& n, double d, double step_factor) {
  switch (f.dim()) {
    case 1:
      return f.interpolate({d * n[0], 0.0, 0.0});
    case 2:
      return bilinear_line_integral(f, d * n[0], d * n[1], n[1], -n[0]);
    default: {
      Coord e1, e2;
      plane_basis(n, e1, e2);
      return plane_integral(f, n, d, e1, e2, step_factor * f.domain().min_spacing());
    }
  }
}

class FunctionSampler final : public TomogramSampler {
 public:
  FunctionSampler(int dim, std::function<double(const AffineParam&)> fn)
      : dim_(dim), fn_(std::move(fn)) {}
  int dim() const override { return dim_; }
  void sample(const Coord& mu, std::span<const double> lambdas,
              std::span<double> out) const override {
    AffineParam p;
    p.mu.assign(mu.begin(), mu.begin() + dim_);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      p.lambda = lambdas[i];
      out[i] = fn_(p);
    }
  }

 private:
  int dim_;
  std::function<double(const AffineParam&)> fn_;
};

void check_sinogram(const TomogramTable& sino) {
  require(sino.grid.dim() == 2, "sinogram must be a 2-D (lambda, theta) table");
  require(sino.values.size() == sino.grid.size(), "sinogram payload does not match its grid",
          ErrorCode::payload_size_mismatch);
  if (!sino.axes.empty())
    require(sino.axes.size() == 2 && sino.axes[0] == "lambda" && sino.axes[1] == "theta",
            "sinogram axes must be {lambda, theta}", ErrorCode::bad_header);
  const double n = double(sino.grid.shape()[1]);
  require(sino.grid.lo()[1] == 0.0 &&
              std::abs(sino.grid.hi()[1] - pi * (n - 1.0) / n) <= 1e-9,
          "sinogram theta axis must be k*pi/N on [0, pi)", ErrorCode::bad_header);
}

// Linear interpolation of column k at offset d; zero outside the offsets.
double column_at(const TomogramTable& sino, std::size_t k, double d) {
  const BoxDomain& g = sino.grid;
  const double u = (d - g.lo()[0]) / g.spacing(0);
  const auto last = double(g.shape()[0] - 1);
  if (!(u >= 0.0 && u <= last)) return 0.0;
  double cell = std::floor(u);
  if (cell >= last) cell = last - 1.0;
  const auto i = static_cast<std::size_t>(cell);
  const double w = u - cell;
  const std::size_t nt = g.shape()[1];
  return (1.0 - w) * sino.values[i * nt + k] + w * sino.values[(i + 1) * nt + k];
}

double series_kernel(int n, double p, double a) {
  // sum_k (-1)^k a^{2k} p^{n+2k} / ((2k)! (n+2k))
  double term = std::pow(p, n), total = 0.0, fact = 1.0, a2p2 = a * a * p * p;
  for (int k = 0; k < 6; ++k) {
    total += (k % 2 ? -1.0 : 1.0) * term / (fact * double(n + 2 * k));
    term *= a2p2;
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return total;
}

void filter_projection(double dt, std::span<const double> fh,
                       std::span<double> q, std::span<const double> kernel) {
  const auto n = static_cast<long>(fh.size());
  for (long i = 0; i < n; ++i) {
    double s = 0.0;
    for (long j = 0; j < n; ++j) {
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      s += w * fh[j] * kernel[std::size_t(j - i + n - 1)];
    }
    q[i] = dt * s;
  }
}

}  // namespace

double TomogramSampler::operator()(const AffineParam& p) const {
  require(int(p.mu.size()) == dim(), "AffineParam: mu has the wrong dimension");
  const double l = p.lambda;
  double out = 0.0;
  sample(to_coord(p.mu), std::span<const double>(&l, 1), std::span<double>(&out, 1));
  return out;
}

std::unique_ptr<TomogramSampler> make_sampler(int dim,
                                              std::function<double(const AffineParam&)> fn) {
  require(dim >= 1 && dim <= max_dim, "make_sampler: dimension must be 1, 2 or 3");
  return std::make_unique<FunctionSampler>(dim, std::move(fn));
}

void AffineFieldSampler::sample(const Coord& mu, std::span<const double> lambdas,
                                std::span<double> out) const {
  const int n = field_.dim();
  const double m = norm_of(mu, n);
  require(m > 0.0, "affine tomogram: mu must be nonzero");
  Coord u{0.0, 0.0, 0.0};
  for (int a = 0; a < n; ++a) u[a] = mu[a] / m;
  double sign = 1.0;
  canonicalize(u, sign, n);
  Coord e1{}, e2{};
  if (n == 3) plane_basis(u, e1, e2);
  const double step = 0.5 * field_.domain().min_spacing();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double d = sign * lambdas[i] / m;
    double v;
    if (n == 3)
      v = plane_integral(field_, u, d, e1, e2, step);
    else
      v = unit_hyperplane(field_, u, d, 0.5);
    out[i] = v / m;
  }
}

SinogramSampler::SinogramSampler(const TomogramTable& sino) : sino_(sino) {
  check_sinogram(sino);
}

void SinogramSampler::sample(const Coord& mu, std::span<const double> lambdas,
                             std::span<double> out) const {
  const double m = std::hypot(mu[0], mu[1]);
  require(m > 0.0, "affine tomogram: mu must be nonzero");
  double theta = std::atan2(mu[1], mu[0]);
  double sign = 1.0;
  if (theta < 0.0) {
    theta += pi;
    sign = -1.0;
  }
  if (theta >= pi) {
    theta -= pi;
    sign = -sign;
  }
  const std::size_t nt = sino_.grid.shape()[1];
  const double x = theta / (pi / double(nt));
  auto k0 = static_cast<std::size_t>(std::floor(x));
  if (k0 >= nt) k0 = nt - 1;
  const double w = x - double(k0);
  const std::size_t k1 = (k0 + 1) % nt;
  const double sign1 = (k0 + 1 == nt) ? -1.0 : 1.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double d = sign * lambdas[i] / m;
    double v = (1.0 - w) * column_at(sino_, k0, d);
    if (w > 0.0) v += w * column_at(sino_, k1, sign1 * d);
    out[i] = v / m;
  }
}

double radon_line(const ScalarField& f, const LineParam& line) {
  require(f.dim() == 2, "radon_line: field must be 2-D");
  require(std::isfinite(line.d) && std::isfinite(line.theta), "radon_line: non-finite line");
  const double c = std::cos(line.theta), s = std::sin(line.theta);
  return bilinear_line_integral(f, line.d * c, line.d * s, s, -c);
}

double radon_hyperplane(const ScalarField& f, const AffineParam& p, double step_factor) {
  const int n = f.dim();
  require(n == 2 || n == 3, "radon_hyperplane: field must be 2-D or 3-D");
  require(int(p.mu.size()) == n, "radon_hyperplane: mu has the wrong dimension");
  require(step_factor > 0.0 && step_factor <= 1.0, "radon_hyperplane: step factor in (0, 1]");
  const Coord mu = to_coord(p.mu);
  const double m = norm_of(mu, n);
  require(m > 0.0, "radon_hyperplane: mu must be nonzero");
  Coord u{0.0, 0.0, 0.0};
  for (int a = 0; a < n; ++a) u[a] = mu[a] / m;
  double d = p.lambda / m;
  canonicalize(u, d, n);
  return unit_hyperplane(f, u, d, step_factor) / m;
}

double affine_tomogram(const ScalarField& f, const AffineParam& p) {
  require(int(p.mu.size()) == f.dim(), "affine_tomogram: mu has the wrong dimension");
  require(norm_of(to_coord(p.mu), f.dim()) > 0.0, "affine_tomogram: mu must be nonzero");
  if (f.dim() == 1) return f.interpolate({p.lambda / p.mu[0], 0.0, 0.0}) / std::abs(p.mu[0]);
  return radon_hyperplane(f, p);
}

TomogramTable sinogram(const ScalarField& f, SinogramSpec spec, Exec exec) {
  require(f.dim() == 2, "sinogram: field must be 2-D");
  require(spec.n_angles >= 2, "sinogram: need at least 2 angles");
  double d_max = spec.d_max > 0.0 ? spec.d_max : f.domain().bounding_radius();
  std::size_t nd;
  if (spec.n_offsets > 0) {
    require(spec.n_offsets >= 2, "sinogram: need at least 2 offsets");
    nd = std::size_t(spec.n_offsets);
  } else {
    const double h = f.domain().min_spacing();
    const auto half = static_cast<std::size_t>(std::ceil(d_max / h));
    nd = 2 * half + 1;
    d_max = double(half) * h;
  }
  const auto na = std::size_t(spec.n_angles);
  TomogramTable t;
  t.axes = {"lambda", "theta"};
  t.grid = BoxDomain({-d_max, 0.0}, {d_max, pi * double(na - 1) / double(na)}, {nd, na});
  t.values.assign(nd * na, 0.0);
  for_each_index(exec, std::int64_t(nd * na), [&](std::int64_t idx) {
    const auto i = std::size_t(idx) / na, k = std::size_t(idx) % na;
    t.values[std::size_t(idx)] = radon_line(f, {t.grid.coord(0, i), t.grid.coord(1, k)});
  });
  return t;
}

std::vector<double> sinogram_offsets(const TomogramTable& sino) {
  std::vector<double> d(sino.grid.shape()[0]);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sino.grid.coord(0, i);
  return d;
}

std::vector<double> sinogram_angles(const TomogramTable& sino) {
  std::vector<double> th(sino.grid.shape()[1]);
  for (std::size_t k = 0; k < th.size(); ++k) th[k] = sino.grid.coord(1, k);
  return th;
}

double tangent_circle_average(const TomogramTable& sino, double q, double p, double r) {
  check_sinogram(sino);
  const auto nt = sino.grid.shape()[1];
  const double lo = sino.grid.lo()[0], hi = sino.grid.hi()[0];
  double total = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    const double th = sino.grid.coord(1, k);
    const double s = q * std::cos(th) + p * std::sin(th);
    for (double d : {s + r, s - r}) {
      if (d < lo - 1e-12 || d > hi + 1e-12) {
        std::ostringstream msg;
        msg << "tangent_circle_average: offset " << d << " outside sinogram range [" << lo
            << ", " << hi << "]";
        fail(ErrorCode::invalid_argument, msg.str());
      }
      total += column_at(sino, k, std::clamp(d, lo, hi));
    }
  }
  return total / double(2 * nt);
}

namespace {

// -(1/pi) int_0^inf [D(t+r) - D(t-r)] / r dr on every offset node, with D the
// central-difference derivative at pitch `stride` nodes.
void hilbert_filter(std::span<const double> f, double h, int stride, std::span<double> out) {
  const auto n = static_cast<long>(f.size());
  const long s = stride;
  const double delta = h * double(s);
  auto fv = [&](long i) { return (i >= 0 && i < n) ? f[std::size_t(i)] : 0.0; };
  // D on [-s, n-1+s]
  std::vector<double> dv(std::size_t(n + 2 * s));
  for (long i = -s; i < n + s; ++i) dv[std::size_t(i + s)] = (fv(i + s) - fv(i - s)) / (2.0 * delta);
  auto D = [&](long i) { return (i >= -s && i < n + s) ? dv[std::size_t(i + s)] : 0.0; };
  for (long i = 0; i < n; ++i) {
    const double g0 = (D(i + s) - D(i - s)) / delta;
    double sum = 0.5 * g0;
    const long m_max = std::max(i + s, n - 1 + s - i) / s + 1;
    for (long m = 1; m <= m_max; ++m) sum += (D(i + m * s) - D(i - m * s)) / (double(m) * delta);
    out[std::size_t(i)] = -sum * delta / pi;
  }
}

}  // namespace

ScalarField invert_radon_hilbert(const TomogramTable& sino, const BoxDomain& out_domain,
                                 Exec exec) {
  check_sinogram(sino);
  require(out_domain.dim() == 2, "invert_radon_hilbert: output domain must be 2-D");
  const std::size_t nd = sino.grid.shape()[0], nt = sino.grid.shape()[1];
  require(nt >= 8, "invert_radon_hilbert: angular undersampling (need at least 8 angles)");
  const double h = sino.grid.spacing(0);
  TomogramTable filtered = sino;
  for_each_index(exec, std::int64_t(nt), [&](std::int64_t kk) {
    const auto k = std::size_t(kk);
    std::vector<double> col(nd), h1(nd), h2(nd);
    for (std::size_t i = 0; i < nd; ++i) col[i] = sino.values[i * nt + k];
    hilbert_filter(col, h, 1, h1);
    hilbert_filter(col, h, 2, h2);
    for (std::size_t i = 0; i < nd; ++i)
      filtered.values[i * nt + k] = (4.0 * h1[i] - h2[i]) / 3.0;
  });
  ScalarField out(out_domain);
  std::vector<double> cs(nt), sn(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    cs[k] = std::cos(sino.grid.coord(1, k));
    sn[k] = std::sin(sino.grid.coord(1, k));
  }
  for_each_index(exec, std::int64_t(out_domain.size()), [&](std::int64_t idx) {
    const Coord x = out_domain.node(std::size_t(idx));
    double s = 0.0;
    for (std::size_t k = 0; k < nt; ++k) s += column_at(filtered, k, x[0] * cs[k] + x[1] * sn[k]);
    out[std::size_t(idx)] = s / double(2 * nt);
  });
  return out;
}

ScalarField backproject(const TomogramTable& sino, const BoxDomain& out_domain, Exec exec) {
  check_sinogram(sino);
  require(out_domain.dim() == 2, "backproject: output domain must be 2-D");
  const std::size_t nt = sino.grid.shape()[1];
  std::vector<double> cs(nt), sn(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    cs[k] = std::cos(sino.grid.coord(1, k));
    sn[k] = std::sin(sino.grid.coord(1, k));
  }
  ScalarField out(out_domain);
  for_each_index(exec, std::int64_t(out_domain.size()), [&](std::int64_t idx) {
    const Coord x = out_domain.node(std::size_t(idx));
    double s = 0.0;
    for (std::size_t k = 0; k < nt; ++k) s += column_at(sino, k, x[0] * cs[k] + x[1] * sn[k]);
    out[std::size_t(idx)] = s / double(nt);
  });
  return out;
}

// -- affine inverse -----------------------------------------------------------

double radial_filter_kernel(int dim, double band_limit, double a) {
  require(dim >= 1 && dim <= 3, "radial_filter_kernel: dimension must be 1, 2 or 3");
  const double p = band_limit;
  const double x = p * a;
  if (std::abs(x) < 0.05) return series_kernel(dim, p, a);
  const double s = std::sin(x), c = std::cos(x);
  switch (dim) {
    case 1:
      return s / a;
    case 2:
      return p * s / a + (c - 1.0) / (a * a);
    default:
      return p * p * s / a + 2.0 * p * c / (a * a) - 2.0 * s / (a * a * a);
  }
}

void validate_quadrature(const QuadratureSpec& q, int dim) {
  auto budget = [](bool ok, const std::string& msg) {
    require(ok, "quadrature budget below minimum: " + msg, ErrorCode::budget_exceeded);
  };
  require(dim >= 1 && dim <= 3, "affine inverse: dimension must be 1, 2 or 3");
  if (dim >= 2) budget(q.n_angles >= 8, "n_angles >= 8");
  if (dim == 3) budget(q.n_polar >= 4, "n_polar >= 4");
  budget(q.n_lambda >= 16, "n_lambda >= 16");
  require(std::isfinite(q.lambda_max) && q.lambda_max > 0.0, "lambda_max must be positive");
  const double dt = 2.0 * q.lambda_max / double(q.n_lambda - 1);
  require(std::isfinite(q.rho_max) && q.rho_max > 0.0, "rho_max must be positive");
  budget(q.rho_max <= pi / dt * (1.0 + 1e-12), "rho_max <= pi / offset step (Nyquist)");
}

QuadratureSpec default_quadrature(int dim, double support_radius, double step) {
  require(support_radius > 0.0 && step > 0.0, "default_quadrature: positive radius and step");
  QuadratureSpec q;
  const auto half = static_cast<int>(std::ceil(support_radius / step));
  q.n_lambda = std::max(16, 2 * half + 1);
  q.lambda_max = double(q.n_lambda - 1) / 2.0 * step;
  q.rho_max = pi / step;
  if (dim == 2) q.n_angles = std::max(8, static_cast<int>(std::ceil(pi * support_radius / (2.0 * step))));
  if (dim == 3) {
    q.n_polar = std::max(4, static_cast<int>(std::ceil(support_radius / (2.0 * step))));
    q.n_angles = std::max(8, 2 * q.n_polar);
  }
  return q;
}

AffineInverse::AffineInverse(const TomogramSampler& sampler, const QuadratureSpec& quad,
                             Exec exec)
    : dim_(sampler.dim()), quad_(quad) {
  validate_quadrature(quad, dim_);
  const auto nl = std::size_t(quad.n_lambda);
  t0_ = -quad.lambda_max;
  dt_ = 2.0 * quad.lambda_max / double(nl - 1);
  if (dim_ == 1) {
    directions_ = {{1.0, 0.0, 0.0}};
    weights_ = {1.0};
  } else if (dim_ == 2) {
    const int na = quad.n_angles;
    for (int k = 0; k < na; ++k) {
      const double th = pi * double(k) / double(na);
      directions_.push_back({std::cos(th), std::sin(th), 0.0});
      weights_.push_back(pi / double(na));
    }
  } else {
    const QuadratureRule polar = gauss_legendre(quad.n_polar, 0.0, 1.0);
    const int na = quad.n_angles;
    for (std::size_t i = 0; i < polar.size(); ++i) {
      const double u = polar.nodes[i], r = std::sqrt(1.0 - u * u);
      for (int k = 0; k < na; ++k) {
        const double ph = 2.0 * pi * double(k) / double(na);
        directions_.push_back({r * std::cos(ph), r * std::sin(ph), u});
        weights_.push_back(polar.weights[i] * 2.0 * pi / double(na));
      }
    }
  }
  std::vector<double> ts(nl), kernel(2 * nl - 1);
  for (std::size_t i = 0; i < nl; ++i) ts[i] = t0_ + double(i) * dt_;
  for (std::size_t m = 0; m < kernel.size(); ++m)
    kernel[m] = radial_filter_kernel(dim_, quad.rho_max, (double(m) - double(nl - 1)) * dt_);
  filtered_.assign(directions_.size() * nl, 0.0);
  for_each_index(exec, std::int64_t(directions_.size()), [&](std::int64_t w) {
    std::vector<double> fh(nl);
    sampler.sample(directions_[std::size_t(w)], ts, fh);
    filter_projection(dt_, fh,
                      std::span<double>(filtered_.data() + std::size_t(w) * nl, nl), kernel);
  });
}

double AffineInverse::evaluate(const Coord& x) const {
  const auto nl = std::size_t(quad_.n_lambda);
  const double last = double(nl - 1);
  double total = 0.0;
  for (std::size_t w = 0; w < directions_.size(); ++w) {
    const Coord& n = directions_[w];
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) s += x[a] * n[a];
    const double u = (s - t0_) / dt_;
    if (!(u >= 0.0 && u <= last)) continue;
    double cell = std::floor(u);
    if (cell >= last) cell = last - 1.0;
    const auto i = std::size_t(cell);
    const double f = u - cell;
    const double* q = filtered_.data() + w * nl;
    total += weights_[w] * ((1.0 - f) * q[i] + f * q[i + 1]);
  }
  return 2.0 * total / std::pow(2.0 * pi, dim_);
}

void AffineInverse::evaluate(std::span<const Coord> points, std::span<double> out,
                             Exec exec) const {
  require(points.size() == out.size(), "AffineInverse: output size mismatch");
  for_each_index(exec, std::int64_t(points.size()),
                 [&](std::int64_t i) { out[std::size_t(i)] = evaluate(points[std::size_t(i)]); });
}

ScalarField AffineInverse::evaluate(const BoxDomain& domain, Exec exec) const {
  require(domain.dim() == dim_, "AffineInverse: output domain has the wrong dimension",
          ErrorCode::domain_mismatch);
  ScalarField out(domain);
  for_each_index(exec, std::int64_t(domain.size()), [&](std::int64_t i) {
    out[std::size_t(i)] = evaluate(domain.node(std::size_t(i)));
  });
  return out;
}

ScalarField invert_affine(const TomogramSampler& sampler, const BoxDomain& out_domain,
                          const QuadratureSpec& quad, Exec exec) {
  require(out_domain.dim() == sampler.dim(), "invert_affine: output domain has the wrong dimension",
          ErrorCode::domain_mismatch);
  return AffineInverse(sampler, quad, exec).evaluate(out_domain, exec);
}

TomogramTable tabulate_sampler(const TomogramSampler& sampler, const QuadratureSpec& quad,
                               Exec exec) {
  require(sampler.dim() == 2, "tabulate_sampler: 2-D samplers only", ErrorCode::domain_mismatch);
  validate_quadrature(quad, 2);
  const auto nl = std::size_t(quad.n_lambda), na = std::size_t(quad.n_angles);
  const double hi_theta = pi * double(na - 1) / double(na);
  TomogramTable t{{"lambda", "theta"},
                  BoxDomain({-quad.lambda_max, 0.0}, {quad.lambda_max, hi_theta}, {nl, na}),
                  std::vector<double>(nl * na, 0.0)};
  std::vector<double> lambdas(nl);
  for (std::size_t i = 0; i < nl; ++i) lambdas[i] = t.grid.coord(0, i);
  for_each_index(exec, std::int64_t(na), [&](std::int64_t k) {
    const double th = pi * double(k) / double(na);
    std::vector<double> col(nl);
    sampler.sample({std::cos(th), std::sin(th), 0.0}, lambdas, col);
    for (std::size_t i = 0; i < nl; ++i) t.values[i * na + std::size_t(k)] = col[i];
  });
  return t;
}

QuadratureSpec table_quadrature(const TomogramTable& table) {
  check_sinogram(table);
  const BoxDomain& g = table.grid;
  require(std::abs(g.lo()[0] + g.hi()[0]) <= 1e-9 * g.hi()[0],
          "table_quadrature: lambda axis must be symmetric about 0", ErrorCode::bad_header);
  QuadratureSpec q;
  q.n_angles = int(g.shape()[1]);
  q.n_lambda = int(g.shape()[0]);
  q.lambda_max = g.hi()[0];
  q.rho_max = pi / g.spacing(0);
  validate_quadrature(q, 2);
  return q;
}

}  // namespace tomo
