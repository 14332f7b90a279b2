#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "tomo/field.hpp"
#include "tomo/parallel.hpp"

/// Classical and affine Radon transforms.
///
/// Conventions. A planar line is {x : d = x . n(theta)} with n = (cos theta,
/// sin theta) the unit normal; signed d is allowed, (d, theta) and
/// (-d, theta + pi) name the same line. Sinogram tables store theta on the
/// half-open half circle theta_k = k pi / N_theta and signed d on a uniform
/// grid; their axes are named {"lambda", "theta"}.
///
/// The affine tomogram  fhat(lambda, mu) = \int f(x) delta(lambda - mu . x) dx
/// is evaluated as a hyperplane integral with the 1/|mu| density, so
/// fhat(s lambda, s mu) = fhat(lambda, mu) / |s| holds by construction.
///
/// Affine inverse. Writing mu = rho w (|w| = 1) and using homogeneity, the
/// lambda integral of
///     f(x) = (2 pi)^-n \int dlambda d^n mu fhat(lambda, mu) e^{i(lambda - mu . x)}
/// collapses to a per-direction radial filter:
///     f(x) = 2 (2 pi)^-n \int_{half sphere} dw q_w(w . x),
///     q_w(s) = \int dt fhat(t, w) K(t - s),  K(a) = \int_0^P rho^{n-1} cos(rho a) drho,
/// with the band limit P = rho_max. K has a closed form, so the only numerical
/// quadratures are the offset sum (trapezoid) and the direction sum.
namespace tomo {

struct LineParam {
  double d = 0.0;
  double theta = 0.0;
};

struct AffineParam {
  double lambda = 0.0;
  std::vector<double> mu;  // n components, not all zero
};

/// Values of a tomogram fhat(lambda, mu) along one direction mu for many
/// lambdas. Implementations may assume lambdas are sorted ascending.
class TomogramSampler {
 public:
  virtual ~TomogramSampler() = default;
  virtual int dim() const = 0;
  virtual void sample(const Coord& mu, std::span<const double> lambdas,
                      std::span<double> out) const = 0;

  double operator()(const AffineParam& p) const;
};

/// Adapts a plain callable AffineParam -> real.
std::unique_ptr<TomogramSampler> make_sampler(int dim,
                                              std::function<double(const AffineParam&)> fn);

/// Exact affine tomogram of a field (line/plane integrals).
class AffineFieldSampler final : public TomogramSampler {
 public:
  explicit AffineFieldSampler(const ScalarField& f) : field_(f) {}
  int dim() const override { return field_.dim(); }
  void sample(const Coord& mu, std::span<const double> lambdas,
              std::span<double> out) const override;

 private:
  const ScalarField& field_;
};

/// Affine tomogram read from a (lambda, theta) sinogram table by linear
/// interpolation in offset and angle; zero outside the tabulated offsets.
class SinogramSampler final : public TomogramSampler {
 public:
  explicit SinogramSampler(const TomogramTable& sino);
  int dim() const override { return 2; }
  void sample(const Coord& mu, std::span<const double> lambdas,
              std::span<double> out) const override;

 private:
  const TomogramTable& sino_;
};

// -- forward transforms -------------------------------------------------------

/// \int ds f(s sin theta + d cos theta, -s cos theta + d sin theta). The
/// bilinear interpolant of f is integrated exactly, piece by piece between
/// cell-boundary crossings (Simpson on each piece).
double radon_line(const ScalarField& f, const LineParam& line);

/// \int f(x) delta(lambda - mu . x) d^n x for n = 2 or 3.
double affine_tomogram(const ScalarField& f, const AffineParam& p);

/// Hyperplane integral with the 1/|mu| density (n = 2 or 3). In 3-D the plane
/// is sampled on a square lattice of pitch `step_factor` times the smallest
/// cell spacing with trilinear interpolation.
double radon_hyperplane(const ScalarField& f, const AffineParam& p, double step_factor = 0.5);

struct SinogramSpec {
  int n_angles = 180;
  int n_offsets = 0;    // 0: choose spacing equal to the smallest cell spacing
  double d_max = 0.0;   // 0: bounding radius of the field box
};

/// Sinogram over signed offsets x half-circle angles; axes {"lambda", "theta"}.
TomogramTable sinogram(const ScalarField& f, SinogramSpec spec, Exec exec = Exec::parallel);

/// Offset and angle grids of a sinogram table.
std::vector<double> sinogram_offsets(const TomogramTable& sino);
std::vector<double> sinogram_angles(const TomogramTable& sino);

/// (1/2pi) \int_0^{2pi} fhat(q cos theta + p sin theta + r, theta) dtheta.
/// Rejects requests whose offsets leave the tabulated range.
double tangent_circle_average(const TomogramTable& sino, double q, double p, double r);

/// f(q,p) = -(1/pi) \int_0^inf (dr/r) d/dr ftilde_r(q,p), computed with the
/// angular average moved outside the r integral. Opposite angles are paired so
/// the 1/r kernel acts on the odd part of the offset derivative, which is
/// regular at r = 0; the derivative is a central difference on the sinogram
/// grid, the r integral a trapezoid starting at r = 0 with the r -> 0 limit
/// filled in, and the whole filter is Richardson-extrapolated against the same
/// filter at twice the step.
ScalarField invert_radon_hilbert(const TomogramTable& sino, const BoxDomain& out_domain,
                                 Exec exec = Exec::parallel);

/// Unfiltered backprojection: theta-average of fhat(x . n(theta), theta).
ScalarField backproject(const TomogramTable& sino, const BoxDomain& out_domain,
                        Exec exec = Exec::parallel);

// -- affine inverse -------------------------------------------------------------

struct QuadratureSpec {
  int n_angles = 0;        // 2-D: half-circle directions; 3-D: azimuths on [0, 2pi)
  int n_polar = 0;         // 3-D only: Gauss-Legendre nodes in cos(polar) on [0, 1]
  int n_lambda = 0;        // offsets per direction, uniform on [-lambda_max, lambda_max]
  double lambda_max = 0.0;
  double rho_max = 0.0;    // radial band limit, at most pi / offset step
};

/// Minimum accepted budget: 8 angles, 4 polar nodes (3-D), 16 offsets, and a
/// band limit no larger than the offset Nyquist frequency.
void validate_quadrature(const QuadratureSpec& q, int dim);

/// Offsets with pitch `step`, spanning the ball of radius `support_radius`,
/// band limit at the offset Nyquist frequency, and roughly pi * r / step
/// directions.
QuadratureSpec default_quadrature(int dim, double support_radius, double step);

/// Filtered projections q_w(s) for every quadrature direction; evaluating
/// them at points is the backprojection half of the affine inverse.
class AffineInverse {
 public:
  AffineInverse(const TomogramSampler& sampler, const QuadratureSpec& quad,
                Exec exec = Exec::parallel);

  double evaluate(const Coord& x) const;
  ScalarField evaluate(const BoxDomain& domain, Exec exec = Exec::parallel) const;
  void evaluate(std::span<const Coord> points, std::span<double> out,
                Exec exec = Exec::parallel) const;

  int dim() const { return dim_; }
  const QuadratureSpec& quadrature() const { return quad_; }

 private:
  int dim_;
  QuadratureSpec quad_;
  double t0_, dt_;
  std::vector<Coord> directions_;
  std::vector<double> weights_;
  std::vector<double> filtered_;  // directions x n_lambda
};

/// Closed form of \int_0^P rho^{n-1} cos(rho a) drho for n = 2, 3.
double radial_filter_kernel(int dim, double band_limit, double a);

/// Tabulates a 2-D sampler on the quadrature nodes as a table with axes
/// {"lambda","theta"}: theta_k = k pi / n_angles, mu = (cos theta, sin theta),
/// lambda uniform on [-lambda_max, lambda_max].
TomogramTable tabulate_sampler(const TomogramSampler& sampler, const QuadratureSpec& quad,
                               Exec exec = Exec::parallel);

/// Quadrature whose nodes are those of a (lambda, theta) table with a
/// symmetric lambda axis; rho_max = pi / lambda step.
QuadratureSpec table_quadrature(const TomogramTable& table);

ScalarField invert_affine(const TomogramSampler& sampler, const BoxDomain& out_domain,
                          const QuadratureSpec& quad, Exec exec = Exec::parallel);

}  // namespace tomo
