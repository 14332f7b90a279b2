#include "tomo/group_tomo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tomo {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double merge_tol = 1e-9;

void require_hermitian(const OperatorMatrix& m, const char* what) {
  require(m.rows() == m.cols() && m.rows() >= 1, std::string(what) + ": matrix must be square");
  require(m.allFinite(), std::string(what) + ": non-finite entries", ErrorCode::non_finite_sample);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          std::string(what) + ": matrix is not Hermitian");
}

void require_dims(const OperatorMatrix& a, int dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim) {
    std::ostringstream msg;
    msg << what << ": matrix is " << a.rows() << "x" << a.cols() << ", representation dimension "
        << dim;
    fail(ErrorCode::invalid_argument, msg.str());
  }
}

struct Eigen3 {
  Eigen::VectorXd values;
  OperatorMatrix vectors;
};

Eigen3 hermitian_eigen(const OperatorMatrix& h) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(0.5 * (h + h.adjoint()));
  return {es.eigenvalues(), es.eigenvectors()};
}

// Consecutive eigenvalues within merge_tol share a group; returns group starts.
std::vector<Eigen::Index> merge_groups(const Eigen::VectorXd& values) {
  std::vector<Eigen::Index> starts{0};
  for (Eigen::Index k = 1; k < values.size(); ++k)
    if (values(k) - values(k - 1) > merge_tol) starts.push_back(k);
  starts.push_back(values.size());
  return starts;
}

bool is_su2(const UnitaryRep& rep) { return rep.group_id == "SU2_spin_j"; }

}  // namespace

// -- SU(2) ------------------------------------------------------------------------

SU2::SU2(const Eigen::Matrix2cd& v) : v_(v) {
  require(v.allFinite(), "SU2: non-finite matrix", ErrorCode::non_finite_sample);
  require((v * v.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-10 &&
              std::abs(v.determinant() - 1.0) <= 1e-10,
          "SU2: matrix is not special unitary");
}

SU2 SU2::from_axis_angle(const Eigen::Vector3d& axis, double s) {
  const double len = axis.norm();
  require(std::isfinite(len) && len > 0.0 && std::isfinite(s), "SU2: axis must be nonzero");
  const Eigen::Vector3d n = axis / len;
  const double c = std::cos(0.5 * s), sn = std::sin(0.5 * s);
  Eigen::Matrix2cd v;
  v << cplx(c, sn * n.z()), cplx(sn * n.y(), sn * n.x()), cplx(-sn * n.y(), sn * n.x()),
      cplx(c, -sn * n.z());
  return SU2(v);
}

SU2 SU2::random(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector4d q;
  do {
    q = Eigen::Vector4d(g(rng), g(rng), g(rng), g(rng));
  } while (q.norm() < 1e-8);
  q.normalize();
  Eigen::Matrix2cd v;
  v << cplx(q(0), q(1)), cplx(q(2), q(3)), cplx(-q(2), q(3)), cplx(q(0), -q(1));
  return SU2(v);
}

void SU2::axis_angle(Eigen::Vector3d& axis, double& s) const {
  const double a = 0.5 * (v_(0, 0).real() + v_(1, 1).real());
  const Eigen::Vector3d b(0.5 * (v_(0, 1).imag() + v_(1, 0).imag()),
                          0.5 * (v_(0, 1).real() - v_(1, 0).real()),
                          0.5 * (v_(0, 0).imag() - v_(1, 1).imag()));
  const double bn = b.norm();
  s = 2.0 * std::atan2(bn, a);
  axis = bn > 0.0 ? Eigen::Vector3d(b / bn) : Eigen::Vector3d(0.0, 0.0, 1.0);
}

// -- representations --------------------------------------------------------------

OperatorMatrix unitary_exp(const OperatorMatrix& hermitian) {
  const Eigen3 e = hermitian_eigen(hermitian);
  Eigen::VectorXcd phase(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k) phase(k) = std::polar(1.0, e.values(k));
  return e.vectors * phase.asDiagonal() * e.vectors.adjoint();
}

AlgebraElement UnitaryRep::element(const std::vector<double>& coeffs) const {
  require(coeffs.size() == generators.size(), "algebra element: coefficient count must equal "
                                              "the number of generators");
  AlgebraElement xi{coeffs, OperatorMatrix::Zero(dim, dim)};
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    require(std::isfinite(coeffs[k]), "algebra element: non-finite coefficient");
    xi.matrix += coeffs[k] * generators[k];
  }
  return xi;
}

OperatorMatrix UnitaryRep::exp(const AlgebraElement& xi, double s) const {
  require_dims(xi.matrix, dim, "exp");
  return unitary_exp(s * xi.matrix);
}

OperatorMatrix UnitaryRep::evaluate(const Eigen::Vector3d& axis, double s) const {
  require(is_su2(*this), "evaluate(axis, angle) needs an SU(2) representation");
  const double len = axis.norm();
  require(std::isfinite(len) && len > 0.0, "evaluate: axis must be nonzero");
  const Eigen::Vector3d n = axis / len;
  return unitary_exp(s * (n.x() * generators[0] + n.y() * generators[1] + n.z() * generators[2]));
}

OperatorMatrix UnitaryRep::evaluate(const SU2& g) const {
  Eigen::Vector3d axis;
  double s = 0.0;
  g.axis_angle(axis, s);
  return evaluate(axis, s);
}

double UnitaryRep::structure_residual() const {
  const std::size_t n = generators.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      OperatorMatrix r = generators[a] * generators[b] - generators[b] * generators[a];
      for (std::size_t c = 0; c < n; ++c)
        r -= cplx(0.0, structure[(a * n + b) * n + c]) * generators[c];
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  return worst;
}

UnitaryRep su2_rep(double j) {
  const double twoj = 2.0 * j;
  require(std::isfinite(j) && twoj >= 1.0 && std::abs(twoj - std::round(twoj)) < 1e-12,
          "su2_rep: 2j must be a positive integer");
  UnitaryRep rep;
  rep.group_id = "SU2_spin_j";
  rep.j = std::round(twoj) / 2.0;
  rep.dim = int(std::round(twoj)) + 1;
  const int d = rep.dim;
  OperatorMatrix jp = OperatorMatrix::Zero(d, d), jz = OperatorMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = rep.j - a;
    jz(a, a) = m;
    if (a > 0) jp(a - 1, a) = std::sqrt(rep.j * (rep.j + 1.0) - m * (m + 1.0));
  }
  const OperatorMatrix jm = jp.adjoint();
  rep.generators = {0.5 * (jp + jm), cplx(0.0, -0.5) * (jp - jm), jz};
  rep.structure.assign(27, 0.0);
  auto f = [&](int a, int b, int c, double v) { rep.structure[(a * 3 + b) * 3 + c] = v; };
  f(0, 1, 2, 1.0), f(1, 2, 0, 1.0), f(2, 0, 1, 1.0);
  f(1, 0, 2, -1.0), f(2, 1, 0, -1.0), f(0, 2, 1, -1.0);
  return rep;
}

UnitaryRep custom_rep(std::vector<OperatorMatrix> generators, std::vector<double> structure) {
  require(!generators.empty(), "custom_rep: need at least one generator");
  const std::size_t n = generators.size();
  require(structure.size() == n * n * n, "custom_rep: structure constants must have n^3 entries");
  UnitaryRep rep;
  rep.group_id = "custom";
  rep.dim = int(generators[0].rows());
  for (const auto& g : generators) {
    require_hermitian(g, "custom_rep generator");
    require_dims(g, rep.dim, "custom_rep generator");
  }
  rep.generators = std::move(generators);
  rep.structure = std::move(structure);
  const double r = rep.structure_residual();
  if (!(r <= 1e-10)) {
    std::ostringstream msg;
    msg << "custom_rep: generators do not close under the structure constants (residual " << r
        << ")";
    fail(ErrorCode::invalid_argument, msg.str());
  }
  return rep;
}

// -- sampling and positivity ------------------------------------------------------------

cplx sampling_function(const OperatorMatrix& rho, const OperatorMatrix& U) {
  require_dims(rho, int(U.rows()), "sampling_function");
  return (rho * U).trace();
}

cplx sampling_function(const OperatorMatrix& rho, const UnitaryRep& rep, const SU2& g) {
  require_dims(rho, rep.dim, "sampling_function");
  return (rho * rep.evaluate(g)).trace();
}

Eigen::MatrixXcd gram_matrix(const OperatorMatrix& rho, const UnitaryRep& rep,
                             const std::vector<SU2>& elements) {
  require_dims(rho, rep.dim, "gram_psd_check");
  require_hermitian(rho, "gram_psd_check");
  require(!elements.empty(), "gram_psd_check: need at least one group element");
  const auto n = Eigen::Index(elements.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      g(a, b) = sampling_function(rho, rep, elements[std::size_t(a)].inverse() *
                                                elements[std::size_t(b)]);
  return g;
}

double gram_psd_check(const OperatorMatrix& rho, const UnitaryRep& rep,
                      const std::vector<SU2>& elements) {
  const Eigen::MatrixXcd g = gram_matrix(rho, rep, elements);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// -- tomograms ----------------------------------------------------------------------

double DiscreteTomogram::total_weight() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.weight;
  return s;
}

std::string tomogram_to_json(const DiscreteTomogram& t) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : t.atoms) atoms.push_back({{"lambda", a.lambda}, {"weight", a.weight}});
  return nlohmann::json{{"atoms", atoms}}.dump(1) + "\n";
}

DiscreteTomogram tomogram_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DiscreteTomogram t;
    for (const auto& a : j.at("atoms"))
      t.atoms.push_back({a.at("lambda").get<double>(), a.at("weight").get<double>()});
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::bad_header, std::string("tomogram JSON: ") + e.what());
  }
}

DiscreteTomogram tomogram_spectral(const OperatorMatrix& omega, const AlgebraElement& xi) {
  require_hermitian(xi.matrix, "tomogram_spectral");
  require_dims(omega, int(xi.matrix.rows()), "tomogram_spectral");
  const Eigen3 e = hermitian_eigen(xi.matrix);
  const auto starts = merge_groups(e.values);
  DiscreteTomogram t;
  for (std::size_t g = 0; g + 1 < starts.size(); ++g) {
    double lam = 0.0, w = 0.0;
    for (Eigen::Index k = starts[g]; k < starts[g + 1]; ++k) {
      lam += e.values(k);
      w += e.vectors.col(k).dot(omega * e.vectors.col(k)).real();
    }
    t.atoms.push_back({lam / double(starts[g + 1] - starts[g]), w});
  }
  return t;
}

double eigenvalue_gap(const AlgebraElement& xi) {
  const Eigen3 e = hermitian_eigen(xi.matrix);
  const auto starts = merge_groups(e.values);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t g = 1; g + 1 < starts.size(); ++g)
    gap = std::min(gap, e.values(starts[g]) - e.values(starts[g] - 1));
  return gap;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  require(n >= 2 && hi > lo, "uniform_grid: need n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return g;
}

std::vector<double> FourierTomogram::peak_masses(const std::vector<double>& centers) const {
  require(std::is_sorted(centers.begin(), centers.end()), "peak_masses: centers must be sorted");
  require(lambda.size() >= 2, "peak_masses: lambda grid too short");
  const double bin = 2.0 * pi / window_length;
  std::vector<double> masses(centers.size(), 0.0);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    double half = 3.0 * bin;
    if (c > 0) half = std::min(half, 0.5 * (centers[c] - centers[c - 1]));
    if (c + 1 < centers.size()) half = std::min(half, 0.5 * (centers[c + 1] - centers[c]));
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (std::abs(lambda[i] - centers[c]) > half) continue;
      const double lo = i > 0 ? lambda[i - 1] : lambda[i];
      const double hi = i + 1 < lambda.size() ? lambda[i + 1] : lambda[i];
      masses[c] += W[i] * 0.5 * (hi - lo);
    }
  }
  return masses;
}

FourierTomogram tomogram_fourier(const OperatorMatrix& omega, const UnitaryRep& rep,
                                 const AlgebraElement& xi, const std::vector<double>& lambda_grid,
                                 const std::vector<double>& s_grid, Diagnostics* diag) {
  require_dims(omega, rep.dim, "tomogram_fourier");
  require_dims(xi.matrix, rep.dim, "tomogram_fourier");
  require(s_grid.size() >= 3, "tomogram_fourier: s grid needs at least 3 points");
  require(!lambda_grid.empty(), "tomogram_fourier: empty lambda grid");
  const std::size_t ns = s_grid.size();
  const double smax = s_grid.back();
  const double ds = (s_grid.back() - s_grid.front()) / double(ns - 1);
  require(smax > 0.0, "tomogram_fourier: s grid must extend to positive s");
  for (std::size_t i = 0; i < ns; ++i) {
    require(std::abs(s_grid[i] + s_grid[ns - 1 - i]) <= 1e-9 * smax,
            "tomogram_fourier: s grid must be symmetric about 0");
    require(std::abs(s_grid[i] - (s_grid.front() + double(i) * ds)) <= 1e-9 * smax,
            "tomogram_fourier: s grid must be uniform");
  }
  FourierTomogram out;
  out.window_length = 2.0 * smax;
  const double gap = eigenvalue_gap(xi);
  if (diag && std::isfinite(gap) && out.window_length < 4.0 * 2.0 * pi / gap) {
    std::ostringstream msg;
    msg << "tomogram_fourier: window length " << out.window_length
        << " is shorter than 4 * 2pi / gap = " << 8.0 * pi / gap
        << "; smallest resolvable gap is " << 8.0 * pi / out.window_length;
    diag->warn(msg.str());
  }
  const Eigen3 e = hermitian_eigen(xi.matrix);
  if (diag && e.values.cwiseAbs().maxCoeff() >= pi / ds) {
    std::ostringstream msg;
    msg << "tomogram_fourier: s spacing " << ds << " aliases eigenvalues beyond " << pi / ds;
    diag->warn(msg.str());
  }
  std::vector<cplx> weighted(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const double hann = 0.5 * (1.0 + std::cos(pi * s_grid[i] / smax));
    const double trap = (i == 0 || i + 1 == ns) ? 0.5 : 1.0;
    weighted[i] = trap * ds * hann * (omega * rep.exp(xi, s_grid[i])).trace();
  }
  out.lambda = lambda_grid;
  out.W.resize(lambda_grid.size());
  for (std::size_t l = 0; l < lambda_grid.size(); ++l) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < ns; ++i) s += weighted[i] * std::polar(1.0, -s_grid[i] * lambda_grid[l]);
    out.W[l] = s.real() / (2.0 * pi);
  }
  return out;
}

// -- equivariance ---------------------------------------------------------------------

EquivarianceResiduals equivariance_check(const UnitaryRep& rep, const OperatorMatrix& rho,
                                         const SU2& g, const SU2& h) {
  require_dims(rho, rep.dim, "equivariance_check");
  const OperatorMatrix ug = rep.evaluate(g), uh = rep.evaluate(h);
  const OperatorMatrix conj = rep.evaluate(g.inverse() * h * g);
  EquivarianceResiduals r;
  r.operator_residual = (conj - ug.adjoint() * uh * ug).cwiseAbs().maxCoeff();
  const OperatorMatrix transported = ug * rho * ug.adjoint();
  r.sampling_residual = std::abs(sampling_function(rho, conj) - sampling_function(transported, uh));
  return r;
}

// -- biorthogonal pairs -----------------------------------------------------------------

std::vector<cplx> TomographicPair::sample(const OperatorMatrix& rho) const {
  std::vector<cplx> f;
  f.reserve(U.size());
  for (const auto& u : U) f.push_back(sampling_function(rho, u));
  return f;
}

OperatorMatrix TomographicPair::reconstruct(const std::vector<cplx>& samples) const {
  require(samples.size() == D.size(), "reconstruct: sample count must match the pair size");
  OperatorMatrix rho = OperatorMatrix::Zero(D[0].rows(), D[0].cols());
  for (std::size_t i = 0; i < D.size(); ++i) rho += samples[i] * D[i];
  return rho;
}

TomographicPair build_biorthogonal_pair(const std::vector<OperatorMatrix>& U_set) {
  require(!U_set.empty(), "build_biorthogonal_pair: empty element set");
  const Eigen::Index d = U_set[0].rows();
  for (const auto& u : U_set) require_dims(u, int(d), "build_biorthogonal_pair");
  const auto n = Eigen::Index(U_set.size());
  Eigen::MatrixXcd vec(d * d, n);
  for (Eigen::Index i = 0; i < n; ++i)
    vec.col(i) = Eigen::Map<const Eigen::VectorXcd>(U_set[std::size_t(i)].data(), d * d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vec);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-10 * sv(0)) ++rank;
  if (n != d * d || rank != d * d) {
    std::ostringstream msg;
    msg << "build_biorthogonal_pair: rank " << rank << " from " << n << " elements; need "
        << d * d << " linearly independent elements";
    fail(ErrorCode::rank_deficient, msg.str());
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      m(k, j) = (U_set[std::size_t(k)] * U_set[std::size_t(j)]).trace();
  const Eigen::MatrixXcd c = m.fullPivLu().inverse();
  TomographicPair pair;
  pair.U = U_set;
  pair.D.assign(std::size_t(n), OperatorMatrix::Zero(d, d));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) pair.D[std::size_t(i)] += c(i, k) * U_set[std::size_t(k)];
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx p = (pair.D[std::size_t(i)] * U_set[std::size_t(j)]).trace();
      worst = std::max(worst, std::abs(p - (i == j ? 1.0 : 0.0)));
    }
  pair.biorthogonality_residual = worst;
  return pair;
}

std::vector<OperatorMatrix> pauli_set() {
  OperatorMatrix i2 = OperatorMatrix::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  return {i2, x, y, z};
}

std::vector<OperatorMatrix> matrix_units(int dim) {
  require(dim >= 1, "matrix_units: dim must be positive");
  std::vector<OperatorMatrix> e;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
      m(a, b) = 1.0;
      e.push_back(m);
    }
  return e;
}

}  // namespace tomo
