#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "tomo/field.hpp"
#include "tomo/level_set.hpp"
#include "tomo/radon_affine.hpp"

/// Tomography along deformed hyperplanes {q : mu . phi(q) = lambda} and along
/// shifted quadrics {q : (q - mu) . B (q - mu) + a . (q - mu) = lambda}.
///
/// Deformed inverse. With x = phi(q) and J = |det dphi/dq|,
///     \int f(q) delta(lambda - mu . phi(q)) dq = \int F(x) delta(lambda - mu . x) dx,
///     F(x) = f(q) / J(q),
/// so the deformed tomogram of f is the affine tomogram of F. The inverse runs
/// the affine inverse on F and pulls it back: f(q) = J(q) F(phi(q)), which is
/// the modified-kernel formula with the lambda integral done first.
///
/// Level-set integrals are evaluated in the plane (n = 2).
namespace tomo {

struct Diffeomorphism {
  std::string name;
  int dim = 2;
  std::function<Coord(const Coord&)> forward;
  /// |det d phi_i / d q_j|
  std::function<double(const Coord&)> jacobian_det;
  /// d phi_i / d q_j in the leading dim x dim block.
  std::function<Eigen::Matrix3d(const Coord&)> jacobian;
  /// Distance from q to the singular set (infinity when there is none).
  std::function<double(const Coord&)> singular_distance;
  /// Width of the masked neighbourhood around the singular set.
  double epsilon = 1e-3;

  bool near_singular(const Coord& q) const { return singular_distance(q) < epsilon; }
};

Diffeomorphism identity_diffeo(int dim);
/// (q, p) -> (q, p) / (q^2 + p^2); circles through the origin.
Diffeomorphism conformal_inversion();
/// (q, p) -> (1/q, p); hyperbolas.
Diffeomorphism axis_inversion();
/// (q, p) -> (q, q p), Jacobian |q|. Only the planar member (n = 1) fits the
/// grid types; other n are rejected.
Diffeomorphism bertrand(int n = 1);

struct BuiltinDiffeos {
  Diffeomorphism conformal_inversion;
  Diffeomorphism axis_inversion;
  Diffeomorphism bertrand;
};
BuiltinDiffeos builtin_diffeos();

/// Looks up "identity", "circle"/"conformal_inversion", "hyperbola"/"axis_inversion",
/// "bertrand".
Diffeomorphism diffeo_by_name(const std::string& name);

/// g(q) = mu . phi(q) with gradient J^T mu.
LevelFunction deformed_level(const Diffeomorphism& phi, const Coord& mu);

/// \int f(q) delta(lambda - mu . phi(q)) d^2q.
double deformed_tomogram(const ScalarField& f, const Diffeomorphism& phi, double lambda,
                         const std::vector<double>& mu, int refine = 2);

/// Deformed tomogram of a field, batched over lambda per direction.
class DeformedFieldSampler final : public TomogramSampler {
 public:
  DeformedFieldSampler(const ScalarField& f, Diffeomorphism phi, int refine = 2);
  int dim() const override { return 2; }
  void sample(const Coord& mu, std::span<const double> lambdas,
              std::span<double> out) const override;

 private:
  const ScalarField& field_;
  Diffeomorphism phi_;
  int refine_;
};

/// Quadrature for the affine inverse in x = phi(q) coordinates: offsets span
/// the image of the domain with a pitch of four median image cells.
QuadratureSpec deformed_quadrature(const Diffeomorphism& phi, const BoxDomain& out_domain);

/// f(q) = J(q) F(phi(q)) with F the affine inverse of the sampled tomogram.
/// Rejects output domains whose nodes come within epsilon of the singular set.
ScalarField deformed_invert(const TomogramSampler& sampler, const Diffeomorphism& phi,
                            const BoxDomain& out_domain, const QuadratureSpec& quad,
                            Exec exec = Exec::parallel);

struct CircleGeometry {
  Coord center{0.0, 0.0, 0.0};
  double radius = 0.0;
  bool degenerate = false;       // lambda = 0: line through the origin
  Coord normal{0.0, 0.0, 0.0};   // (mu, nu) for the degenerate case
};

/// Circle {lambda (q^2 + p^2) = mu q + nu p}.
CircleGeometry circle_geometry(double lambda, double mu, double nu);

/// lambda = xi q + nu q p, i.e. the deformed tomogram with bertrand(1).
double bertrand_tomogram(const ScalarField& f, double xi, double nu, double lambda,
                         Diagnostics* diag = nullptr, int refine = 2);
ScalarField bertrand_invert(const TomogramSampler& sampler, const BoxDomain& out_domain,
                            const QuadratureSpec& quad, Diagnostics* diag = nullptr,
                            Exec exec = Exec::parallel);

// -- quadrics -------------------------------------------------------------------

struct QuadricSpec {
  Eigen::MatrixXd B;  // symmetric, det != 0
  Eigen::VectorXd a;

  QuadricSpec(Eigen::MatrixXd B, Eigen::VectorXd a);
  int dim() const { return int(B.rows()); }
  /// (q - mu) . B (q - mu) + a . (q - mu)
  double g(const Coord& q, const Coord& mu) const;
  /// Value of g_mu at its critical point, -a . B^-1 a / 4 (independent of mu).
  double stationary_value() const;
};

LevelFunction quadric_level(const QuadricSpec& spec, const Coord& mu);

/// \int f(q) delta(lambda - g_mu(q)) d^2q; exactly 0 for an empty level set.
double quadric_tomogram(const ScalarField& f, const QuadricSpec& spec, double lambda,
                        const std::vector<double>& mu, int refine = 2);

/// Quadric tomogram of a field; the sampler's mu argument is the shift.
class QuadricFieldSampler final : public TomogramSampler {
 public:
  QuadricFieldSampler(const ScalarField& f, QuadricSpec spec, int refine = 1);
  int dim() const override { return 2; }
  void sample(const Coord& mu, std::span<const double> lambdas,
              std::span<double> out) const override;

 private:
  const ScalarField& field_;
  QuadricSpec spec_;
  int refine_;
};

/// Quadric tomogram tabulated on `grid`, whose axes are {"mu_u","mu_v","lambda"}
/// (lambda innermost).
TomogramTable quadric_table(const ScalarField& f, const QuadricSpec& spec, const BoxDomain& grid,
                            int refine = 1, Exec exec = Exec::parallel);

/// Reads a quadric table: cubic Lagrange in mu and lambda, with lambda
/// stencils that never straddle `breakpoint` (the tomogram jumps there); zero
/// outside the lambda range. Requests outside the mu box are rejected.
class QuadricTableSampler final : public TomogramSampler {
 public:
  explicit QuadricTableSampler(const TomogramTable& table,
                               double breakpoint = std::numeric_limits<double>::quiet_NaN());
  int dim() const override { return 2; }
  void sample(const Coord& mu, std::span<const double> lambdas,
              std::span<double> out) const override;

 private:
  const TomogramTable& table_;
  double breakpoint_;
};

struct QuadricInverseOptions {
  /// Phantom length scale; the shift range is out_domain padded by
  /// mu_padding, or by 4 sigma when mu_padding is not positive.
  double sigma = 0.5;
  double mu_padding = 0.0;
  /// Gauss-Legendre order and maximum panel widths in mu and lambda.
  int order = 8;
  double mu_panel = 1.5;
  double lambda_panel = 4.0;
  /// Damping e^{-eps |mu|^2}; when positive the result is extrapolated to
  /// eps -> 0 from eps and eps / 2.
  double damping = 0.0;
};

/// f(q) = (|det B| / pi^n) \int d^n mu Phi(mu) e^{-i g_mu(q)},
/// Phi(mu) = \int dlambda fhat(lambda, mu) e^{i lambda}.
/// The lambda integral runs over the range of g_mu on out_domain (assumed to
/// contain the support), split at the stationary value of g_mu. A warning
/// with an estimate of the neglected part is added when |Phi| has not decayed
/// at the edge of the shift range.
ScalarField quadric_invert(const TomogramSampler& sampler, const QuadricSpec& spec,
                           const BoxDomain& out_domain, const QuadricInverseOptions& opts = {},
                           Diagnostics* diag = nullptr, Exec exec = Exec::parallel);

}  // namespace tomo
