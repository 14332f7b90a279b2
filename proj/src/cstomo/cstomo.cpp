#include "tomo/cstomo.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>
#include <nlohmann/json.hpp>


namespace tomo {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXcd coherent(cplx z, int dim) {
  Eigen::VectorXcd c(dim);
  c(0) = std::exp(-0.5 * std::norm(z));
  for (int j = 1; j < dim; ++j) c(j) = c(j - 1) * z / std::sqrt(double(j));
  return c;
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

// Radial Fourier multiplier applied through FFTW on an n x n periodic grid.
class SpectralFilter {
 public:
  SpectralFilter(std::size_t n, double spacing) : n_(n), spacing_(spacing) {
    buf_ = fftw_alloc_complex(n * n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_2d(int(n), int(n), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_2d(int(n), int(n), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~SpectralFilter() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(buf_);
  }
  SpectralFilter(const SpectralFilter&) = delete;
  SpectralFilter& operator=(const SpectralFilter&) = delete;

  double frequency(std::size_t k) const {
    const double kk = k <= n_ / 2 ? double(k) : double(k) - double(n_);
    return 2.0 * pi * kk / (double(n_) * spacing_);
  }

  // FFT of the values times multiplier(|xi|); `inspect` sees each filtered mode.
  template <class Multiplier, class Inspect>
  std::vector<cplx> spectrum(const std::vector<cplx>& values, Multiplier&& multiplier,
                             Inspect&& inspect) const {
    std::vector<cplx> spec(values);
    execute(fwd_, spec);
    for (std::size_t i = 0; i < n_; ++i) {
      const double xi = frequency(i);
      for (std::size_t j = 0; j < n_; ++j) {
        const double r = std::hypot(xi, frequency(j));
        cplx& c = spec[i * n_ + j];
        c *= multiplier(r);
        inspect(r, std::abs(c));
      }
    }
    return spec;
  }

  std::vector<cplx> inverse(std::vector<cplx> spec) const {
    execute(inv_, spec);
    const double scale = 1.0 / double(n_ * n_);
    for (cplx& v : spec) v *= scale;
    return spec;
  }

  // Fourier series of the spectrum at a point offset from the first node.
  cplx evaluate(const std::vector<cplx>& spec, double du, double dv) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const cplx eu = std::polar(1.0, frequency(i) * du);
      for (std::size_t j = 0; j < n_; ++j) {
        const cplx c = spec[i * n_ + j];
        if (c != 0.0) s += c * eu * std::polar(1.0, frequency(j) * dv);
      }
    }
    return s / double(n_ * n_);
  }

 private:
  void execute(fftw_plan plan, std::vector<cplx>& data) const {
    fftw_complex* work = fftw_alloc_complex(n_ * n_);
    std::copy(data.begin(), data.end(), reinterpret_cast<cplx*>(work));
    fftw_execute_dft(plan, work, work);
    std::copy(reinterpret_cast<cplx*>(work), reinterpret_cast<cplx*>(work) + n_ * n_,
              data.begin());
    fftw_free(work);
  }
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
  std::size_t n_;
  double spacing_;
  fftw_complex* buf_;
  fftw_plan fwd_, inv_;
};

double band_multiplier(double r, double cutoff) {
  return r <= cutoff ? std::exp(0.25 * r * r) : 0.0;
}

void check_cutoff(double cutoff, const PhaseGrid& grid, const char* what) {
  require(std::isfinite(cutoff) && cutoff > 0.0, std::string(what) + ": cutoff must be positive");
  const double nyquist = pi / grid.spacing();
  if (!(cutoff < nyquist)) {
    std::ostringstream msg;
    msg << what << ": cutoff " << cutoff << " is not below the grid Nyquist frequency " << nyquist;
    fail(ErrorCode::invalid_argument, msg.str());
  }
}

// <n|z><z|m> = e^{-|z|^2} z^n conj(z)^m / sqrt(n! m!) on the grid.
std::vector<cplx> coherent_element(const PhaseGrid& grid, int n, int m) {
  std::vector<cplx> h(grid.size());
  const double norm = std::exp(-0.5 * (log_factorial(n) + log_factorial(m)));
  for (std::size_t i = 0; i < h.size(); ++i) {
    const cplx z = grid.z(i);
    h[i] = std::exp(-std::norm(z)) * norm * std::pow(z, n) * std::pow(std::conj(z), m);
  }
  return h;
}

void require_same(const PhaseGrid& a, const PhaseGrid& b, const char* what) {
  require(a.same_geometry(b), std::string(what) + ": phase grids differ",
          ErrorCode::domain_mismatch);
}

}  // namespace

// -- Fock space and states --------------------------------------------------------

FockSpace::FockSpace(int n_max) : n_max_(n_max) {
  require(n_max >= 1, "FockSpace: n_max must be >= 1");
  a_ = OperatorMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a_(n - 1, n) = std::sqrt(double(n));
}

void validate_density(const OperatorMatrix& rho) {
  require(rho.rows() == rho.cols() && rho.rows() >= 1, "density matrix must be square");
  require(rho.allFinite(), "density matrix has non-finite entries", ErrorCode::non_finite_sample);
  require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-12, "density matrix not Hermitian");
  const double tr = rho.trace().real();
  require(std::abs(tr - 1.0) <= 1e-12, "density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(rho);
  require(es.eigenvalues().minCoeff() >= -1e-10, "density matrix has a negative eigenvalue");
}

bool is_density(const OperatorMatrix& rho) {
  try {
    validate_density(rho);
    return true;
  } catch (const Error&) {
    return false;
  }
}

OperatorMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  OperatorMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  OperatorMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return rho;
}

OperatorMatrix projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

std::string matrix_to_json(const OperatorMatrix& m) {
  nlohmann::json j;
  j["dim"] = m.rows();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> rr, ii;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump(1) + "\n";
}

OperatorMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::bad_header, std::string("matrix JSON: ") + e.what());
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    require(it.key() == "dim" || it.key() == "re" || it.key() == "im",
            "matrix JSON: unknown key '" + it.key() + "'", ErrorCode::bad_header);
  try {
    const int dim = j.at("dim").get<int>();
    require(dim >= 1, "matrix JSON: dim must be positive", ErrorCode::bad_header);
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
    if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();
    require(int(re.size()) == dim && int(im.size()) == dim, "matrix JSON: row count != dim",
            ErrorCode::bad_header);
    OperatorMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      require(int(re[r].size()) == dim && int(im[r].size()) == dim,
              "matrix JSON: column count != dim", ErrorCode::bad_header);
      for (int c = 0; c < dim; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
    }
    require(m.allFinite(), "matrix JSON: non-finite entry", ErrorCode::non_finite_sample);
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::bad_header, std::string("matrix JSON: ") + e.what());
  }
}

// -- phase grids ----------------------------------------------------------------

PhaseGrid::PhaseGrid(double r, std::size_t nodes) : half_width(r), n(nodes) {
  require(std::isfinite(r) && r > 0.0, "PhaseGrid: half-width must be positive");
  require(nodes >= 2, "PhaseGrid: need at least 2 nodes per axis");
  values.assign(nodes * nodes, cplx(0.0, 0.0));
}

double PhaseGrid::weight(std::size_t flat) const {
  const std::size_t i = flat / n, j = flat % n;
  const double h = spacing();
  double w = h * h;
  if (i == 0 || i + 1 == n) w *= 0.5;
  if (j == 0 || j + 1 == n) w *= 0.5;
  return w;
}

bool PhaseGrid::same_geometry(const PhaseGrid& other) const {
  return n == other.n && half_width == other.half_width;
}

BoxDomain PhaseGrid::domain() const {
  return BoxDomain({-half_width, -half_width}, {half_width, half_width}, {n, n});
}

PhaseGrid default_phase_grid(int n_max, std::size_t n) {
  require(n_max >= 1, "default_phase_grid: n_max must be >= 1");
  return PhaseGrid(2.0 * std::sqrt(double(n_max)) + 3.0, n);
}

double default_cutoff(int n_max) { return 2.0 * std::sqrt(double(n_max)) + 2.0; }

double default_quantizer_cutoff(int n_max) { return 2.0 * std::sqrt(2.0 * double(n_max)) + 5.0; }

GridFile to_grid_file(const PhaseGrid& g) {
  GridFile f;
  f.domain = g.domain();
  f.axes = {"u", "v"};
  f.is_complex = true;
  f.payload.reserve(2 * g.size());
  for (const cplx& v : g.values) {
    f.payload.push_back(v.real());
    f.payload.push_back(v.imag());
  }
  return f;
}

PhaseGrid phase_grid_from(const GridFile& file) {
  const BoxDomain& d = file.domain;
  require(d.dim() == 2 && d.shape()[0] == d.shape()[1] && d.lo()[0] == -d.hi()[0] &&
              d.lo()[1] == d.lo()[0] && d.hi()[1] == d.hi()[0],
          "phase grid must be a centred square", ErrorCode::bad_header);
  PhaseGrid g(d.hi()[0], d.shape()[0]);
  if (file.is_complex) {
    for (std::size_t i = 0; i < g.size(); ++i)
      g.values[i] = cplx(file.payload[2 * i], file.payload[2 * i + 1]);
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = file.payload[i];
  }
  return g;
}

double phase_l2_relative_error(const PhaseGrid& a, const PhaseGrid& b) {
  require_same(a, b, "phase_l2_relative_error");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(a.values[i]);
  }
  require(den > 0.0, "phase_l2_relative_error: reference grid is zero");
  return std::sqrt(num / den);
}

// -- coherent states ------------------------------------------------------------

Eigen::VectorXcd coherent_vector(cplx z, const FockSpace& space, Diagnostics* diag) {
  Eigen::VectorXcd c = coherent(z, space.dim());
  if (diag && std::norm(z) > space.n_max() / 4.0) {
    std::ostringstream msg;
    msg << "coherent_vector: |z|^2 = " << std::norm(z) << " exceeds n_max/4; truncation defect "
        << 1.0 - c.squaredNorm();
    diag->warn(msg.str());
  }
  return c;
}

OperatorMatrix displacement_matrix(cplx z, const FockSpace& space) {
  const OperatorMatrix& a = space.a();
  const OperatorMatrix x = z * a.adjoint() - std::conj(z) * a;
  const OperatorMatrix h = cplx(0.0, 1.0) * x;
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd phase(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) phase(k) = std::polar(1.0, -lam(k));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

cplx husimi_K(const OperatorMatrix& A, cplx z) {
  require(A.rows() == A.cols() && A.rows() >= 1, "husimi_K: operator must be square");
  const Eigen::VectorXcd c = coherent(z, int(A.rows()));
  return c.dot(A * c);
}

PhaseGrid husimi_grid(const OperatorMatrix& A, const PhaseGrid& geometry, Exec exec) {
  PhaseGrid out(geometry.half_width, geometry.n);
  for_each_index(exec, std::int64_t(out.size()), [&](std::int64_t i) {
    out.values[std::size_t(i)] = husimi_K(A, out.z(std::size_t(i)));
  });
  return out;
}

double husimi_normalization(const OperatorMatrix& rho, const PhaseGrid& geometry,
                            Diagnostics* diag) {
  const int n_max = int(rho.rows()) - 1;
  if (diag && n_max >= 1 && geometry.half_width < 2.0 * std::sqrt(double(n_max))) {
    std::ostringstream msg;
    msg << "husimi_normalization: grid half-width " << geometry.half_width
        << " is below 2 sqrt(n_max) = " << 2.0 * std::sqrt(double(n_max));
    diag->warn(msg.str());
  }
  const PhaseGrid k = husimi_grid(rho, geometry, Exec::serial);
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += k.weight(i) * k.values[i].real();
  return s / pi;
}

// -- reconstruction -----------------------------------------------------------------

Reconstruction reconstruct_from_samples(const std::vector<cplx>& z, const std::vector<cplx>& K,
                                        const FockSpace& space) {
  require(z.size() == K.size(), "reconstruct_from_samples: z and K sizes differ");
  const int dim = space.dim();
  const std::size_t unknowns = std::size_t(dim) * std::size_t(dim);
  if (z.size() < unknowns) {
    std::ostringstream msg;
    msg << "reconstruct_from_K: " << z.size() << " samples for " << unknowns << " unknowns";
    fail(ErrorCode::rank_deficient, msg.str());
  }
  Eigen::MatrixXcd design(z.size(), unknowns);
  Eigen::VectorXcd rhs(z.size());
  for (std::size_t s = 0; s < z.size(); ++s) {
    const double g = std::exp(-std::norm(z[s]));
    for (int n = 0; n < dim; ++n)
      for (int m = 0; m < dim; ++m) {
        const double norm = std::exp(-0.5 * (log_factorial(n) + log_factorial(m)));
        design(Eigen::Index(s), n * dim + m) =
            g * norm * std::pow(std::conj(z[s]), n) * std::pow(z[s], m);
      }
    rhs(Eigen::Index(s)) = K[s];
  }
  Eigen::VectorXd scale(unknowns);
  for (std::size_t c = 0; c < unknowns; ++c) {
    scale(Eigen::Index(c)) = design.col(Eigen::Index(c)).norm();
    if (scale(Eigen::Index(c)) == 0.0) scale(Eigen::Index(c)) = 1.0;
    design.col(Eigen::Index(c)) /= scale(Eigen::Index(c));
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond <= 1e10)) {
    std::ostringstream msg;
    msg << "reconstruct_from_K: rank-deficient sample design (condition number " << cond << ")";
    fail(ErrorCode::rank_deficient, msg.str());
  }
  const Eigen::VectorXcd x = svd.solve(rhs);
  Reconstruction r;
  r.A = OperatorMatrix(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) r.A(n, m) = x(n * dim + m) / scale(n * dim + m);
  r.condition_number = cond;
  r.samples = z.size();
  return r;
}

Reconstruction reconstruct_from_K(const PhaseGrid& K, const FockSpace& space) {
  const double radius = std::sqrt(double(space.n_max())) + 2.5;
  std::vector<cplx> z, k;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const cplx zi = K.z(i);
    if (std::abs(zi) <= radius) {
      z.push_back(zi);
      k.push_back(K.values[i]);
    }
  }
  return reconstruct_from_samples(z, k, space);
}

OperatorMatrix reconstruct_by_derivatives(const std::function<cplx(cplx)>& K,
                                          const FockSpace& space) {
  const int n_max = space.n_max(), dim = space.dim();
  require(n_max <= 3, "reconstruct_by_derivatives: cross-check limited to n_max <= 3");
  const int na = 4 * dim;
  auto F = [&](cplx z) { return std::exp(std::norm(z)) * K(z); };
  OperatorMatrix A = OperatorMatrix::Zero(dim, dim);
  for (int k = -n_max; k <= n_max; ++k) {
    const int n0 = std::max(0, -k), n1 = std::min(n_max, n_max - k);
    const int p = n1 - n0 + 1;
    Eigen::MatrixXd V(p, p);
    Eigen::VectorXcd rhs(p);
    for (int i = 0; i < p; ++i) {
      const double r = 0.6 + 0.3 * i;
      cplx mode = 0.0;
      for (int t = 0; t < na; ++t) {
        const double th = 2.0 * pi * t / na;
        mode += F(std::polar(r, th)) * std::polar(1.0, -k * th);
      }
      rhs(i) = mode / double(na);
      for (int c = 0; c < p; ++c) V(i, c) = std::pow(r, 2 * (n0 + c) + k);
    }
    const Eigen::VectorXcd coef = V.cast<cplx>().colPivHouseholderQr().solve(rhs);
    for (int c = 0; c < p; ++c) {
      const int n = n0 + c, m = n + k;
      A(n, m) = coef(c) * std::exp(0.5 * (log_factorial(n) + log_factorial(m)));
    }
  }
  return A;
}

// -- Sudarshan symbol -----------------------------------------------------------------

PhaseGrid phi_from_K(const PhaseGrid& K, double cutoff, Diagnostics* diag) {
  check_cutoff(cutoff, K, "phi_from_K");
  const SpectralFilter filter(K.n, K.spacing());
  double peak = 0.0, rim = 0.0;
  auto spec = filter.spectrum(
      K.values, [&](double r) { return band_multiplier(r, cutoff); },
      [&](double r, double mag) {
        peak = std::max(peak, mag);
        if (r <= cutoff && r >= 0.9 * cutoff) rim = std::max(rim, mag);
      });
  if (diag && peak > 0.0 && rim > 0.01 * peak) {
    std::ostringstream msg;
    msg << "phi_from_K: distributional regime; amplified spectrum at the cutoff Xi = " << cutoff
        << " is " << rim / peak << " of its peak";
    diag->warn(msg.str());
  }
  PhaseGrid out(K.half_width, K.n);
  out.values = filter.inverse(std::move(spec));
  out.cutoff = cutoff;
  return out;
}

PhaseGrid K_from_phi(const PhaseGrid& phi) {
  const SpectralFilter filter(phi.n, phi.spacing());
  PhaseGrid out(phi.half_width, phi.n);
  out.values = filter.inverse(filter.spectrum(
      phi.values, [](double r) { return std::exp(-0.25 * r * r); }, [](double, double) {}));
  return out;
}

// -- quantizer ------------------------------------------------------------------------

OperatorMatrix quantizer_G(cplx zp, const PhaseGrid& geometry, double cutoff,
                           const FockSpace& space, Diagnostics* diag) {
  check_cutoff(cutoff, geometry, "quantizer_G");
  const double edge = geometry.half_width - std::max(std::abs(zp.real()), std::abs(zp.imag()));
  if (diag && edge < 3.0) {
    std::ostringstream msg;
    msg << "quantizer_G: z' lies " << edge
        << " from the grid edge; result is truncation-dominated";
    diag->warn(msg.str());
  }
  const SpectralFilter filter(geometry.n, geometry.spacing());
  const int dim = space.dim();
  const double du = zp.real() + geometry.half_width, dv = zp.imag() + geometry.half_width;
  OperatorMatrix g(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) {
      const auto spec = filter.spectrum(
          coherent_element(geometry, n, m), [&](double r) { return band_multiplier(r, cutoff); },
          [](double, double) {});
      g(n, m) = filter.evaluate(spec, du, dv);
    }
  return g;
}

PhaseGrid quantizer_K_symbol(cplx zp, const PhaseGrid& geometry, double cutoff) {
  check_cutoff(cutoff, geometry, "quantizer_K_symbol");
  const SpectralFilter filter(geometry.n, geometry.spacing());
  const double du = zp.real() + geometry.half_width, dv = zp.imag() + geometry.half_width;
  std::vector<cplx> spec(geometry.size(), cplx(0.0, 0.0));
  const double scale = pi / (geometry.spacing() * geometry.spacing());
  for (std::size_t i = 0; i < geometry.n; ++i)
    for (std::size_t j = 0; j < geometry.n; ++j) {
      const double xi = filter.frequency(i), eta = filter.frequency(j);
      if (std::hypot(xi, eta) <= cutoff)
        spec[i * geometry.n + j] = scale * std::polar(1.0, -(xi * du + eta * dv));
    }
  PhaseGrid out(geometry.half_width, geometry.n);
  out.values = filter.inverse(std::move(spec));
  out.cutoff = cutoff;
  return out;
}

QuantizerField::QuantizerField(const FockSpace& space, const PhaseGrid& geometry, double cutoff)
    : dim_(space.dim()), geometry_(geometry.half_width, geometry.n), cutoff_(cutoff) {
  check_cutoff(cutoff, geometry_, "QuantizerField");
  const SpectralFilter filter(geometry_.n, geometry_.spacing());
  elements_.resize(std::size_t(dim_ * dim_));
  for_each_index(Exec::parallel, std::int64_t(dim_ * dim_), [&](std::int64_t idx) {
    const int n = int(idx) / dim_, m = int(idx) % dim_;
    PhaseGrid h(geometry_.half_width, geometry_.n);
    h.values = filter.inverse(filter.spectrum(
        coherent_element(geometry_, n, m), [&](double r) { return band_multiplier(r, cutoff); },
        [](double, double) {}));
    h.cutoff = cutoff;
    elements_[std::size_t(idx)] = std::move(h);
  });
}

OperatorMatrix QuantizerField::G(std::size_t flat) const {
  OperatorMatrix g(dim_, dim_);
  for (int n = 0; n < dim_; ++n)
    for (int m = 0; m < dim_; ++m) g(n, m) = elements_[std::size_t(n * dim_ + m)].values[flat];
  return g;
}

OperatorMatrix QuantizerField::reconstruct(const PhaseGrid& K) const {
  require_same(geometry_, K, "QuantizerField::reconstruct");
  OperatorMatrix a(dim_, dim_);
  for (int n = 0; n < dim_; ++n)
    for (int m = 0; m < dim_; ++m) {
      const auto& e = elements_[std::size_t(n * dim_ + m)].values;
      cplx s = 0.0;
      for (std::size_t i = 0; i < K.size(); ++i) s += K.weight(i) * K.values[i] * e[i];
      a(n, m) = s / pi;
    }
  return a;
}

cplx pair_expectation(const PhaseGrid& K_rho, const PhaseGrid& phi_A) {
  require_same(K_rho, phi_A, "pair_expectation");
  cplx s = 0.0;
  for (std::size_t i = 0; i < K_rho.size(); ++i)
    s += K_rho.weight(i) * K_rho.values[i] * phi_A.values[i];
  return s / pi;
}

PhaseGrid star_product(const PhaseGrid& K1, const PhaseGrid& K2, const QuantizerField& quantizer,
                       Exec exec) {
  require_same(K1, K2, "star_product");
  require_same(quantizer.geometry(), K1, "star_product");
  const int dim = quantizer.dim();
  if (dim > 5) {
    const double nodes = double(K1.size());
    std::ostringstream msg;
    msg << "star_product: budget exceeded for n_max = " << dim - 1
        << " (limit 4); kernel cost ~ nodes^2 * dim^3 = " << nodes * nodes * dim * dim * dim
        << " operations";
    fail(ErrorCode::budget_exceeded, msg.str());
  }
  const OperatorMatrix a1 = quantizer.reconstruct(K1);
  const OperatorMatrix a2 = quantizer.reconstruct(K2);
  const OperatorMatrix prod = a1 * a2;
  PhaseGrid out = husimi_grid(prod, K1, exec);
  return out;
}

cplx star_kernel(const QuantizerField& quantizer, std::size_t z1, std::size_t z2, cplx z) {
  const Eigen::VectorXcd c = coherent(z, quantizer.dim());
  return c.dot(quantizer.G(z1) * (quantizer.G(z2) * c));
}

cplx star_product_bruteforce(const PhaseGrid& K1, const PhaseGrid& K2,
                             const QuantizerField& quantizer, cplx z) {
  require_same(K1, K2, "star_product_bruteforce");
  require_same(quantizer.geometry(), K1, "star_product_bruteforce");
  const std::size_t n = K1.size();
  const Eigen::VectorXcd c = coherent(z, quantizer.dim());
  std::vector<Eigen::RowVectorXcd> left(n);
  std::vector<Eigen::VectorXcd> right(n);
  for (std::size_t i = 0; i < n; ++i) {
    const OperatorMatrix g = quantizer.G(i);
    left[i] = c.adjoint() * g;
    right[i] = g * c;
  }
  cplx total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx w1 = K1.weight(i) * K1.values[i];
    if (w1 == 0.0) continue;
    cplx row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx q = (left[i] * right[j])(0, 0);
      row += K2.weight(j) * K2.values[j] * q;
    }
    total += w1 * row;
  }
  return total / (pi * pi);
}

}  // namespace tomo
