#include "tomo/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tomo {

BoxDomain::BoxDomain(std::vector<double> lo, std::vector<double> hi,
                     std::vector<std::size_t> shape)
    : lo_(std::move(lo)), hi_(std::move(hi)), shape_(std::move(shape)) {
  const std::size_t n = shape_.size();
  require(n >= 1 && n <= max_dim, "BoxDomain: dimension must be 1, 2 or 3");
  require(lo_.size() == n && hi_.size() == n, "BoxDomain: lo/hi/shape lengths differ");
  spacing_.resize(n);
  stride_.resize(n);
  size_ = 1;
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(lo_[i]) && std::isfinite(hi_[i]) && hi_[i] > lo_[i],
            "BoxDomain: need finite hi > lo on every axis");
    require(shape_[i] >= 2, "BoxDomain: need at least 2 samples per axis");
    spacing_[i] = (hi_[i] - lo_[i]) / double(shape_[i] - 1);
    require(std::isfinite(spacing_[i]) && spacing_[i] > 0.0, "BoxDomain: degenerate spacing");
    size_ *= shape_[i];
  }
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    stride_[i] = s;
    s *= shape_[i];
  }
}

BoxDomain BoxDomain::cube(int dim, double lo, double hi, std::size_t n) {
  return BoxDomain(std::vector<double>(dim, lo), std::vector<double>(dim, hi),
                   std::vector<std::size_t>(dim, n));
}

double BoxDomain::min_spacing() const {
  return *std::min_element(spacing_.begin(), spacing_.end());
}

std::array<std::size_t, max_dim> BoxDomain::unflatten(std::size_t flat) const {
  std::array<std::size_t, max_dim> idx{0, 0, 0};
  for (int a = 0; a < dim(); ++a) {
    idx[a] = flat / stride_[a];
    flat %= stride_[a];
  }
  return idx;
}

Coord BoxDomain::node(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Coord x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim(); ++a) x[a] = coord(a, idx[a]);
  return x;
}

bool BoxDomain::contains(const Coord& x, double slack) const {
  for (int a = 0; a < dim(); ++a)
    if (x[a] < lo_[a] - slack || x[a] > hi_[a] + slack) return false;
  return true;
}

double BoxDomain::bounding_radius() const {
  double r2 = 0.0;
  for (int a = 0; a < dim(); ++a) {
    const double m = std::max(std::abs(lo_[a]), std::abs(hi_[a]));
    r2 += m * m;
  }
  return std::sqrt(r2);
}

double BoxDomain::cell_volume() const {
  double v = 1.0;
  for (double h : spacing_) v *= h;
  return v;
}

bool BoxDomain::operator==(const BoxDomain& other) const {
  return lo_ == other.lo_ && hi_ == other.hi_ && shape_ == other.shape_;
}

ScalarField::ScalarField(BoxDomain domain)
    : domain_(std::move(domain)), values_(domain_.size(), 0.0) {}

ScalarField::ScalarField(BoxDomain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  require(values_.size() == domain_.size(), "ScalarField: value count does not match domain");
  for (double v : values_)
    require(std::isfinite(v), "ScalarField: non-finite sample", ErrorCode::non_finite_sample);
}

double ScalarField::interpolate(const Coord& x) const {
  const int n = dim();
  std::array<std::size_t, max_dim> base{0, 0, 0};
  std::array<double, max_dim> frac{0.0, 0.0, 0.0};
  for (int a = 0; a < n; ++a) {
    const double u = (x[a] - domain_.lo()[a]) / domain_.spacing(a);
    const auto last = static_cast<double>(domain_.shape()[a] - 1);
    if (!(u >= 0.0 && u <= last)) return 0.0;
    double cell = std::floor(u);
    if (cell >= last) cell = last - 1.0;
    base[a] = static_cast<std::size_t>(cell);
    frac[a] = u - cell;
  }
  std::size_t origin = 0;
  for (int a = 0; a < n; ++a) origin += base[a] * domain_.stride(a);
  double sum = 0.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    std::size_t offset = origin;
    for (int a = 0; a < n; ++a) {
      if (corner & (1 << a)) {
        w *= frac[a];
        offset += domain_.stride(a);
      } else {
        w *= 1.0 - frac[a];
      }
    }
    if (w != 0.0) sum += w * values_[offset];
  }
  return sum;
}

std::size_t ScalarField::argmax() const {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

double ScalarField::max_value() const { return values_[argmax()]; }

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require(domain_ == other.domain_, "ScalarField: adding fields on different domains",
          ErrorCode::domain_mismatch);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

int TomogramTable::axis_index(const std::string& name) const {
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (axes[i] == name) return static_cast<int>(i);
  return -1;
}

ScalarField make_gaussian_phantom(const BoxDomain& domain, const std::vector<double>& center,
                                  const Eigen::MatrixXd& covariance, double mass) {
  const int n = domain.dim();
  require(static_cast<int>(center.size()) == n, "gaussian phantom: center dimension mismatch");
  require(covariance.rows() == n && covariance.cols() == n,
          "gaussian phantom: covariance must be n x n");
  require((covariance - covariance.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * std::max(1.0, covariance.cwiseAbs().maxCoeff()),
          "gaussian phantom: covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "gaussian phantom: covariance is not positive definite (eigenvalues "
        << Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(covariance).eigenvalues().transpose()
        << ")";
    fail(ErrorCode::invalid_argument, msg.str());
  }
  Coord c{0.0, 0.0, 0.0};
  for (int a = 0; a < n; ++a) c[a] = center[a];
  require(domain.contains(c), "gaussian phantom: center lies outside the domain");

  const Eigen::MatrixXd inv = covariance.inverse();
  const double det = covariance.determinant();
  const double norm = mass / std::sqrt(std::pow(2.0 * std::numbers::pi, n) * det);
  ScalarField f(domain);
  Eigen::VectorXd d(n);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const Coord x = domain.node(i);
    for (int a = 0; a < n; ++a) d[a] = x[a] - c[a];
    f[i] = norm * std::exp(-0.5 * d.dot(inv * d));
  }
  return f;
}

ScalarField make_gaussian_phantom(const BoxDomain& domain, const std::vector<double>& center,
                                  double sigma, double mass) {
  require(sigma > 0.0, "gaussian phantom: sigma must be positive");
  const int n = domain.dim();
  return make_gaussian_phantom(domain, center,
                               Eigen::MatrixXd::Identity(n, n) * (sigma * sigma), mass);
}

ScalarField make_bump_phantom(const BoxDomain& domain, const std::vector<double>& center,
                              double radius, double height) {
  const int n = domain.dim();
  require(static_cast<int>(center.size()) == n, "bump phantom: center dimension mismatch");
  require(radius > 0.0, "bump phantom: radius must be positive");
  ScalarField f(domain);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const Coord x = domain.node(i);
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += (x[a] - center[a]) * (x[a] - center[a]);
    const double s = r2 / (radius * radius);
    f[i] = s < 1.0 ? height * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
  }
  return f;
}

double integrate(const ScalarField& f) {
  const BoxDomain& d = f.domain();
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto idx = d.unflatten(i);
    double w = 1.0;
    for (int a = 0; a < d.dim(); ++a)
      if (idx[a] == 0 || idx[a] + 1 == d.shape()[a]) w *= 0.5;
    sum += w * f[i];
  }
  return sum * d.cell_volume();
}

namespace {
void require_same_domain(const ScalarField& a, const ScalarField& b, const char* what) {
  require(a.domain() == b.domain(), std::string(what) + ": fields live on different domains",
          ErrorCode::domain_mismatch);
}
}  // namespace

double l2_relative_error(const ScalarField& a, const ScalarField& b) {
  require_same_domain(a, b, "l2_relative_error");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    num += d * d;
    den += a[i] * a[i];
  }
  if (num == 0.0) return 0.0;
  require(den > 0.0, "l2_relative_error: reference field is identically zero");
  return std::sqrt(num / den);
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  require_same_domain(a, b, "max_abs_difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace tomo
