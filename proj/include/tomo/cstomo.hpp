#pragma once

#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tomo/error.hpp"
#include "tomo/field.hpp"
#include "tomo/grid_io.hpp"
#include "tomo/parallel.hpp"

/// Coherent-state tomography on the truncated Fock space span{|0>, ..., |n_max>}.
///
/// Phase-space convention: z = u + i v, |z|^2 = u^2 + v^2, and the Fourier
/// variables (xi, eta) are conjugate to (u, v). With this convention
///     K_A(z) = \int d^2z'/pi phi_A(z') e^{-|z - z'|^2},
///     Ktilde(xi, eta) = phitilde(xi, eta) e^{-(xi^2 + eta^2)/4},
/// so phi is recovered by the anti-Gaussian factor e^{+(xi^2+eta^2)/4}. Every
/// phi output is band-limited to |(xi, eta)| <= Xi.
///
/// The quantizer G(z') has matrix elements
///     <n|G(z')|m> = (k_Xi * h_nm)(z'),  h_nm(z) = e^{-|z|^2} z^n conj(z)^m / sqrt(n! m!),
/// with k_Xi the band-limited kernel whose spectrum is e^{|xi|^2/4} on the
/// disk. Band limiting is done with the discrete Fourier series of the
/// (periodic) phase grid, so Xi must lie below the grid Nyquist frequency pi/h.
namespace tomo {

using cplx = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;

class FockSpace {
 public:
  explicit FockSpace(int n_max);

  int n_max() const { return n_max_; }
  int dim() const { return n_max_ + 1; }
  /// Annihilation operator: sqrt(n) on the superdiagonal (a|n> = sqrt(n)|n-1>).
  const OperatorMatrix& a() const { return a_; }
  OperatorMatrix adag() const { return a_.adjoint(); }

 private:
  int n_max_;
  OperatorMatrix a_;
};

/// Hermitian to 1e-12, eigenvalues >= -1e-10, trace 1 +- 1e-12.
void validate_density(const OperatorMatrix& rho);
bool is_density(const OperatorMatrix& rho);

/// Haar-like random mixed state G G^dag / Tr, G with Gaussian entries.
OperatorMatrix random_density(int dim, std::mt19937_64& rng);
OperatorMatrix projector(const Eigen::VectorXcd& v);

/// JSON {"dim": d, "re": [[...]], "im": [[...]]}.
std::string matrix_to_json(const OperatorMatrix& m);
OperatorMatrix matrix_from_json(const std::string& text);

// -- phase grids ----------------------------------------------------------------

/// Square z-plane box [-R, R]^2 (u outer axis, v inner) with complex samples.
struct PhaseGrid {
  double half_width = 0.0;
  std::size_t n = 0;
  std::vector<cplx> values;
  double cutoff = 0.0;  // band limit Xi of phi-type outputs, 0 if not band-limited

  PhaseGrid() = default;
  PhaseGrid(double half_width, std::size_t n);

  double spacing() const { return 2.0 * half_width / double(n - 1); }
  double coord(std::size_t i) const { return -half_width + double(i) * spacing(); }
  cplx z(std::size_t flat) const { return {coord(flat / n), coord(flat % n)}; }
  std::size_t size() const { return n * n; }
  /// 2-D trapezoid weight of a node.
  double weight(std::size_t flat) const;
  bool same_geometry(const PhaseGrid& other) const;
  BoxDomain domain() const;
};

/// R = 2 sqrt(n_max) + 3, 128 nodes.
PhaseGrid default_phase_grid(int n_max, std::size_t n = 128);
/// Band limit for phi symbols: Xi = 2 sqrt(n_max) + 2.
double default_cutoff(int n_max);
/// Band limit for quantizer reconstruction and star products:
/// Xi = 2 sqrt(2 n_max) + 5, wide enough that the resolution of unity holds
/// for every matrix unit |n><m| of the truncation.
double default_quantizer_cutoff(int n_max);

GridFile to_grid_file(const PhaseGrid& g);
PhaseGrid phase_grid_from(const GridFile& file);

/// sum w |values|^2 over the nodes, and the L2 relative error ||a-b|| / ||a||.
double phase_l2_relative_error(const PhaseGrid& a, const PhaseGrid& b);

// -- coherent states and symbols --------------------------------------------------

/// c_j = e^{-|z|^2/2} z^j / sqrt(j!). When |z|^2 > n_max/4 a warning reports
/// the truncation defect 1 - sum |c_j|^2.
Eigen::VectorXcd coherent_vector(cplx z, const FockSpace& space, Diagnostics* diag = nullptr);

/// exp(z a^dag - conj(z) a) through the Hermitian eigendecomposition of
/// i (z a^dag - conj(z) a).
OperatorMatrix displacement_matrix(cplx z, const FockSpace& space);

/// <z|A|z>.
cplx husimi_K(const OperatorMatrix& A, cplx z);
/// K_A on every node of the grid.
PhaseGrid husimi_grid(const OperatorMatrix& A, const PhaseGrid& geometry,
                      Exec exec = Exec::parallel);

/// \int d^2z / pi K_rho(z) by trapezoid quadrature; warns when R < 2 sqrt(n_max).
double husimi_normalization(const OperatorMatrix& rho, const PhaseGrid& geometry,
                            Diagnostics* diag = nullptr);

struct Reconstruction {
  OperatorMatrix A;
  double condition_number = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of K(z) = sum_{nm} A_nm e^{-|z|^2} conj(z)^n z^m / sqrt(n! m!)
/// to the samples (the polynomial form of e^{|z|^2} K). Rejects designs whose
/// condition number exceeds 1e10 or that have fewer than dim^2 samples.
Reconstruction reconstruct_from_samples(const std::vector<cplx>& z, const std::vector<cplx>& K,
                                        const FockSpace& space);

/// Uses the grid nodes with |z| <= sqrt(n_max) + 2.5.
Reconstruction reconstruct_from_K(const PhaseGrid& K, const FockSpace& space);

/// Cross-check of the derivative formula: the Taylor coefficients of
/// e^{|z|^2} K(z) in (conj z, z) are read off by angular FFTs on circles and a
/// radial Vandermonde solve. n_max <= 3.
OperatorMatrix reconstruct_by_derivatives(const std::function<cplx(cplx)>& K,
                                          const FockSpace& space);

/// Band-limited Sudarshan symbol: FFT, multiply by e^{|xi|^2/4} on |xi| <= Xi,
/// zero outside, inverse FFT. Warns "distributional regime" when the amplified
/// spectrum near the cutoff carries more than 1% of its peak.
PhaseGrid phi_from_K(const PhaseGrid& K, double cutoff, Diagnostics* diag = nullptr);

/// Forward map back to K: convolution with e^{-|z|^2} / pi (done spectrally).
PhaseGrid K_from_phi(const PhaseGrid& phi);

/// G(z') at an arbitrary point: the band-limited Fourier series of each
/// matrix element evaluated at z'. Warns when z' is closer to the grid edge
/// than 3 (truncation-dominated).
OperatorMatrix quantizer_G(cplx zp, const PhaseGrid& geometry, double cutoff,
                           const FockSpace& space, Diagnostics* diag = nullptr);

/// K-symbol z -> Tr(|z><z| G(z')) of the untruncated quantizer on the grid:
/// the band-limited pi delta at z' (spectrum pi e^{-i xi.z'} on the disk).
PhaseGrid quantizer_K_symbol(cplx zp, const PhaseGrid& geometry, double cutoff);

/// G(z') at every grid node, computed spectrally.
class QuantizerField {
 public:
  QuantizerField(const FockSpace& space, const PhaseGrid& geometry, double cutoff);

  OperatorMatrix G(std::size_t flat) const;
  /// A = \int d^2z'/pi G(z') K_A(z').
  OperatorMatrix reconstruct(const PhaseGrid& K) const;

  const PhaseGrid& geometry() const { return geometry_; }
  double cutoff() const { return cutoff_; }
  int dim() const { return dim_; }

 private:
  int dim_;
  PhaseGrid geometry_;
  double cutoff_;
  std::vector<PhaseGrid> elements_;  // <n|G|m> at index n * dim + m
};

/// \int d^2z/pi K_rho(z) phi_A(z).
cplx pair_expectation(const PhaseGrid& K_rho, const PhaseGrid& phi_A);

/// Star product with kernel Q(z1, z2, z) = Tr(G(z1) G(z2) |z><z|); evaluated as
/// <z| (\int K1 G / pi) (\int K2 G / pi) |z>. Rejects n_max > 4 with a cost
/// estimate.
PhaseGrid star_product(const PhaseGrid& K1, const PhaseGrid& K2, const QuantizerField& quantizer,
                       Exec exec = Exec::parallel);

/// Q(z1, z2, z) for grid nodes z1, z2.
cplx star_kernel(const QuantizerField& quantizer, std::size_t z1, std::size_t z2, cplx z);

/// The double integral \int\int d^2z1 d^2z2 / pi^2 K1(z1) K2(z2) Q(z1, z2, z),
/// summed literally over node pairs.
cplx star_product_bruteforce(const PhaseGrid& K1, const PhaseGrid& K2,
                             const QuantizerField& quantizer, cplx z);

}  // namespace tomo
