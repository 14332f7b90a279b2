#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tomo/error.hpp"

namespace tomo {

inline constexpr int max_dim = 3;

/// A point of R^n, n <= 3; unused trailing components are ignored.
using Coord = std::array<double, max_dim>;

/// Axis-aligned box sampled on a uniform node lattice (endpoints included).
class BoxDomain {
 public:
  BoxDomain() = default;
  BoxDomain(std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> shape);

  /// Square/cubic convenience: [lo, hi]^dim with n nodes per axis.
  static BoxDomain cube(int dim, double lo, double hi, std::size_t n);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  const std::vector<std::size_t>& shape() const { return shape_; }

  double spacing(int axis) const { return spacing_[axis]; }
  double min_spacing() const;
  double coord(int axis, std::size_t i) const { return lo_[axis] + spacing_[axis] * double(i); }
  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return stride_[axis]; }

  /// Coordinates of the node with the given row-major flat index.
  Coord node(std::size_t flat) const;
  std::array<std::size_t, max_dim> unflatten(std::size_t flat) const;
  bool contains(const Coord& x, double slack = 0.0) const;
  /// Radius of the smallest origin-centred ball containing the box.
  double bounding_radius() const;
  double cell_volume() const;

  bool operator==(const BoxDomain& other) const;
  bool operator!=(const BoxDomain& other) const { return !(*this == other); }

 private:
  std::vector<double> lo_, hi_, spacing_;
  std::vector<std::size_t> shape_, stride_;
  std::size_t size_ = 0;
};

/// Real function sampled on a BoxDomain, row-major, zero outside the box.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(BoxDomain domain);  // zero field
  ScalarField(BoxDomain domain, std::vector<double> values);

  const BoxDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double& operator[](std::size_t flat) { return values_[flat]; }

  /// Multilinear interpolation; exactly zero outside the box.
  double interpolate(const Coord& x) const;
  /// Flat index of the largest sample.
  std::size_t argmax() const;
  double max_value() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator*=(double factor);

 private:
  BoxDomain domain_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);

/// Values tabulated over a product of uniform named axes (e.g. lambda x theta).
struct TomogramTable {
  std::vector<std::string> axes;
  BoxDomain grid;
  std::vector<double> values;

  int axis_index(const std::string& name) const;
  double at(std::size_t i, std::size_t j) const { return values[i * grid.stride(0) + j]; }
};

// -- phantoms ---------------------------------------------------------------

/// mass * N(center, covariance) sampled on the grid.
ScalarField make_gaussian_phantom(const BoxDomain& domain, const std::vector<double>& center,
                                  const Eigen::MatrixXd& covariance, double mass);

/// Isotropic shortcut: covariance sigma^2 I.
ScalarField make_gaussian_phantom(const BoxDomain& domain, const std::vector<double>& center,
                                  double sigma, double mass);

/// C-infinity bump height * exp(1 - 1/(1 - |x-c|^2/r^2)) with compact support |x-c| < r.
ScalarField make_bump_phantom(const BoxDomain& domain, const std::vector<double>& center,
                              double radius, double height);

// -- reductions ---------------------------------------------------------------

/// Composite trapezoid on every axis, summed in a fixed sequential order.
double integrate(const ScalarField& f);

/// ||a - b||_2 / ||a||_2 over the nodes.
double l2_relative_error(const ScalarField& a, const ScalarField& b);

/// max |a - b| over the nodes.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

}  // namespace tomo
