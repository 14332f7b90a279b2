#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tomo/cstomo.hpp"
#include "tomo/error.hpp"

/// Tomography of states on full matrix algebras through unitary group
/// representations. Conventions: U(exp(s xi)) = exp(i s xi_hat), the sampling
/// function is F_rho(g) = Tr(rho U(g)) and the operator pairing is
/// <A, B> = Tr(A B).
namespace tomo {

/// Element of SU(2) stored as its defining 2x2 matrix.
class SU2 {
 public:
  SU2() : v_(Eigen::Matrix2cd::Identity()) {}
  explicit SU2(const Eigen::Matrix2cd& v);

  /// exp(i s n.sigma / 2) for a unit axis n.
  static SU2 from_axis_angle(const Eigen::Vector3d& axis, double s);
  /// Haar-distributed element.
  static SU2 random(std::mt19937_64& rng);

  /// Axis-angle form with s in [0, 2 pi]; the axis is z when s is 0 or 2 pi.
  void axis_angle(Eigen::Vector3d& axis, double& s) const;

  SU2 inverse() const { return SU2(v_.adjoint()); }
  SU2 operator*(const SU2& other) const { return SU2(v_ * other.v_); }
  const Eigen::Matrix2cd& matrix() const { return v_; }

 private:
  Eigen::Matrix2cd v_;
};

/// Algebra element: coefficients in the generator basis and the Hermitian
/// matrix xi_hat = sum_k coeffs_k xi_k.
struct AlgebraElement {
  std::vector<double> coeffs;
  OperatorMatrix matrix;
};

/// Finite-dimensional unitary representation given by Hermitian generators
/// with [xi_i, xi_j] = i sum_k f_ijk xi_k.
struct UnitaryRep {
  std::string group_id;  // "SU2_spin_j" or "custom"
  double j = 0.0;        // spin for SU2_spin_j
  int dim = 0;
  std::vector<OperatorMatrix> generators;
  std::vector<double> structure;  // f_ijk at index (i * n + j) * n + k

  AlgebraElement element(const std::vector<double>& coeffs) const;
  /// exp(i s xi_hat).
  OperatorMatrix exp(const AlgebraElement& xi, double s = 1.0) const;
  /// U(g) for an SU(2) element (SU2_spin_j only).
  OperatorMatrix evaluate(const SU2& g) const;
  /// exp(i s n.J) (SU2_spin_j only).
  OperatorMatrix evaluate(const Eigen::Vector3d& axis, double s) const;

  /// max-abs of [xi_i, xi_j] - i sum_k f_ijk xi_k.
  double structure_residual() const;
};

/// Spin-j representation: J_z diagonal (m = j, ..., -j), J_+- by the ladder
/// formula, generators (J_x, J_y, J_z), f = epsilon.
UnitaryRep su2_rep(double j);

/// Validates Hermiticity and closure (residual <= 1e-10).
UnitaryRep custom_rep(std::vector<OperatorMatrix> generators, std::vector<double> structure);

/// exp(i H) for Hermitian H by eigendecomposition.
OperatorMatrix unitary_exp(const OperatorMatrix& hermitian);

/// Tr(rho U).
cplx sampling_function(const OperatorMatrix& rho, const OperatorMatrix& U);
cplx sampling_function(const OperatorMatrix& rho, const UnitaryRep& rep, const SU2& g);

/// Gram matrix F_rho(g_i^-1 g_j) and its smallest eigenvalue. rho must be
/// Hermitian (not necessarily positive).
Eigen::MatrixXcd gram_matrix(const OperatorMatrix& rho, const UnitaryRep& rep,
                             const std::vector<SU2>& elements);
double gram_psd_check(const OperatorMatrix& rho, const UnitaryRep& rep,
                      const std::vector<SU2>& elements);

struct Atom {
  double lambda = 0.0;
  double weight = 0.0;
};

struct DiscreteTomogram {
  std::vector<Atom> atoms;  // lambda strictly increasing
  double total_weight() const;
};

std::string tomogram_to_json(const DiscreteTomogram& t);
DiscreteTomogram tomogram_from_json(const std::string& text);

/// Eigenvalues of xi_hat merged within 1e-9; w_k = Tr(omega P_k).
DiscreteTomogram tomogram_spectral(const OperatorMatrix& omega, const AlgebraElement& xi);

/// Smallest gap between distinct (merged) eigenvalues of xi_hat, +inf if one.
double eigenvalue_gap(const AlgebraElement& xi);

struct FourierTomogram {
  std::vector<double> lambda;
  std::vector<double> W;
  double window_length = 0.0;  // L = s_max - s_min
  /// sum over lambda of W near each center, within +-min(3 * 2 pi / L, half the
  /// distance to the neighbouring centers).
  std::vector<double> peak_masses(const std::vector<double>& centers) const;
};

/// W(lambda) = (1 / 2pi) sum_s ds hann(s) e^{-i s lambda} Tr(omega e^{i s xi_hat})
/// on a uniform s grid symmetric about 0. Warns when the window is shorter than
/// 4 * 2pi / gap, reporting the smallest resolvable gap.
FourierTomogram tomogram_fourier(const OperatorMatrix& omega, const UnitaryRep& rep,
                                 const AlgebraElement& xi, const std::vector<double>& lambda_grid,
                                 const std::vector<double>& s_grid,
                                 Diagnostics* diag = nullptr);

/// Uniform grid of n points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

struct EquivarianceResiduals {
  double operator_residual = 0.0;  // max-abs U(g^-1 h g) - U(g)^dag U(h) U(g)
  double sampling_residual = 0.0;  // |F_rho(g^-1 h g) - F_{U(g) rho U(g)^dag}(h)|
};

EquivarianceResiduals equivariance_check(const UnitaryRep& rep, const OperatorMatrix& rho,
                                         const SU2& g, const SU2& h);

struct TomographicPair {
  std::vector<OperatorMatrix> U;
  std::vector<OperatorMatrix> D;
  double biorthogonality_residual = 0.0;  // max |Tr(D_i U_j) - delta_ij|

  /// F_i = Tr(rho U_i).
  std::vector<cplx> sample(const OperatorMatrix& rho) const;
  /// rho = sum_i F_i D_i.
  OperatorMatrix reconstruct(const std::vector<cplx>& samples) const;
};

/// Dual basis under Tr(A B): D_i = sum_k (M^-1)_ik U_k with M_kj = Tr(U_k U_j).
/// Requires exactly dim^2 linearly independent elements.
TomographicPair build_biorthogonal_pair(const std::vector<OperatorMatrix>& U_set);

/// {I, sigma_x, sigma_y, sigma_z}.
std::vector<OperatorMatrix> pauli_set();
/// E_ij in row-major order.
std::vector<OperatorMatrix> matrix_units(int dim);

}  // namespace tomo
