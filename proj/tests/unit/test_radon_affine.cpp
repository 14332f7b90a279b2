#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "tomo/radon_affine.hpp"

using namespace tomo;

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

const ScalarField& unit_gaussian() {
  static const ScalarField f =
      make_gaussian_phantom(BoxDomain::cube(2, -6.0, 6.0, 385), {0.0, 0.0}, 1.0, 1.0);
  return f;
}

ScalarField zero_field() { return ScalarField(BoxDomain::cube(2, -2.0, 2.0, 33)); }

}  // namespace

TEST(RadonLine, ZeroField) {
  const ScalarField z = zero_field();
  for (double th : {0.0, 1.0, 2.5}) EXPECT_EQ(radon_line(z, {0.3, th}), 0.0);
}

TEST(RadonLine, GaussianMarginals) {
  for (double th : {0.0, 0.7, 2.0, 4.5}) {
    EXPECT_NEAR(radon_line(unit_gaussian(), {0.0, th}), inv_sqrt_2pi, 1e-4);
    EXPECT_NEAR(radon_line(unit_gaussian(), {2.0, th}), std::exp(-2.0) * inv_sqrt_2pi, 1e-4);
  }
}

TEST(RadonLine, LineMissingSupportIsZero) {
  EXPECT_EQ(radon_line(unit_gaussian(), {20.0, 0.3}), 0.0);
}

TEST(AffineTomogram, VerticalLineMarginal) {
  EXPECT_NEAR(affine_tomogram(unit_gaussian(), {0.0, {1.0, 0.0}}), inv_sqrt_2pi, 1e-4);
}

TEST(AffineTomogram, ZeroMuRejected) {
  EXPECT_TOMO_ERROR(affine_tomogram(unit_gaussian(), {0.0, {0.0, 0.0}}),
                    ErrorCode::invalid_argument);
}

TEST(AffineTomogram, ZeroFieldGivesZero) {
  EXPECT_EQ(affine_tomogram(zero_field(), {0.2, {1.0, 0.5}}), 0.0);
}

TEST(AffineTomogram, Homogeneity) {
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 0.3, 0.3, 0.6;
  const ScalarField f =
      make_gaussian_phantom(BoxDomain::cube(2, -6.0, 6.0, 97), {0.5, -0.3}, cov, 1.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const AffineParam p{u(rng), {u(rng) + 1.5, u(rng)}};
    const double base = affine_tomogram(f, p);
    for (double s : {-3.0, 0.5, 2.0}) {
      const AffineParam q{s * p.lambda, {s * p.mu[0], s * p.mu[1]}};
      EXPECT_NEAR(affine_tomogram(f, q), base / std::abs(s), 1e-6 * std::abs(base));
    }
  }
}

TEST(AffineTomogram, UnitNormalMatchesRadonLine) {
  Eigen::MatrixXd cov(2, 2);
  cov << 0.8, -0.2, -0.2, 1.2;
  const ScalarField f =
      make_gaussian_phantom(BoxDomain::cube(2, -6.0, 6.0, 97), {0.2, 0.4}, cov, 1.0);
  for (double th : {0.1, 1.3, 2.9, 5.0})
    for (double lam : {-1.0, 0.0, 0.7}) {
      const double a = affine_tomogram(f, {lam, {std::cos(th), std::sin(th)}});
      EXPECT_NEAR(a, radon_line(f, {lam, th}), 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST(AffineTomogram, MarginalsConserveMass) {
  const ScalarField f =
      make_gaussian_phantom(BoxDomain::cube(2, -6.0, 6.0, 97), {0.5, -0.5}, 0.8, 1.7);
  const double mass = integrate(f);
  for (double th : {0.0, 0.9, 2.2}) {
    const double h = 0.02;
    double sum = 0.0;
    for (int k = -500; k <= 500; ++k)
      sum += h * affine_tomogram(f, {k * h, {std::cos(th), std::sin(th)}});
    EXPECT_NEAR(sum, mass, 1e-4 * mass);
  }
}

TEST(Sinogram, ShiftEquivariance) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 97);
  const ScalarField f = make_gaussian_phantom(d, {0.0, 0.0}, 0.7, 1.0);
  const double tx = 0.6, ty = -0.4;
  const ScalarField g = make_gaussian_phantom(d, {tx, ty}, 0.7, 1.0);
  for (double th : {0.0, 1.1, 2.4})
    for (double dd : {-1.0, 0.0, 0.8}) {
      const double shifted = radon_line(g, {dd, th});
      const double ref = radon_line(f, {dd - (tx * std::cos(th) + ty * std::sin(th)), th});
      EXPECT_NEAR(shifted, ref, 1e-3 * radon_line(f, {0.0, th}));
    }
}

TEST(Sinogram, AxesAndShape) {
  SinogramSpec spec;
  spec.n_angles = 36;
  const TomogramTable s = sinogram(unit_gaussian(), spec);
  EXPECT_EQ(s.axes, (std::vector<std::string>{"lambda", "theta"}));
  EXPECT_EQ(sinogram_angles(s).size(), 36u);
}

TEST(TangentCircleAverage, ZeroAndGaussian) {
  SinogramSpec spec;
  spec.n_angles = 180;
  const TomogramTable z = sinogram(zero_field(), spec);
  EXPECT_EQ(tangent_circle_average(z, 0.0, 0.0, 0.5), 0.0);

  const TomogramTable s = sinogram(unit_gaussian(), spec);
  EXPECT_NEAR(tangent_circle_average(s, 0.0, 0.0, 1.0), std::exp(-0.5) * inv_sqrt_2pi, 1e-3);
  EXPECT_NEAR(tangent_circle_average(s, 0.0, 0.0, 0.0), radon_line(unit_gaussian(), {0.0, 0.4}),
              1e-3);
  EXPECT_TOMO_ERROR(tangent_circle_average(s, 0.0, 0.0, 100.0), ErrorCode::invalid_argument);
}

TEST(InvertHilbert, ZeroSinogramGivesZeroField) {
  SinogramSpec spec;
  spec.n_angles = 64;
  const ScalarField z = zero_field();
  const ScalarField rec = invert_radon_hilbert(sinogram(z, spec), z.domain());
  for (double v : rec.values()) EXPECT_EQ(v, 0.0);
}

TEST(InvertHilbert, AngularUndersamplingRejected) {
  SinogramSpec spec;
  spec.n_angles = 6;
  const TomogramTable s = sinogram(unit_gaussian(), spec);
  EXPECT_TOMO_ERROR(invert_radon_hilbert(s, unit_gaussian().domain()),
                    ErrorCode::invalid_argument);
}

TEST(InvertHilbert, TwoGaussianPeaksWithinOneCell) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 97);
  const ScalarField left = make_gaussian_phantom(d, {-2.0, 0.5}, 0.6, 1.0);
  const ScalarField right = make_gaussian_phantom(d, {2.0, -1.0}, 0.6, 1.0);
  SinogramSpec spec;
  spec.n_angles = 120;
  const ScalarField rec = invert_radon_hilbert(sinogram(left + right, spec), d);
  const double h = d.spacing(0);
  for (const auto& [cx, cy] : {std::pair{-2.0, 0.5}, std::pair{2.0, -1.0}}) {
    std::size_t best = 0;
    double best_val = -INFINITY;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const Coord x = d.node(i);
      if (std::hypot(x[0] - cx, x[1] - cy) < 1.5 && rec[i] > best_val) best_val = rec[i], best = i;
    }
    const Coord x = d.node(best);
    EXPECT_LE(std::abs(x[0] - cx), h);
    EXPECT_LE(std::abs(x[1] - cy), h);
  }
}

TEST(InvertAffine, GaussianRoundTripAndDualPath) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 128);
  const ScalarField f = make_gaussian_phantom(d, {0.3, -0.4}, 1.0, 1.0);
  const AffineFieldSampler sampler(f);
  const ScalarField rec =
      invert_affine(sampler, d, default_quadrature(2, d.bounding_radius(), d.min_spacing()));
  EXPECT_LT(l2_relative_error(f, rec), 0.05);

  SinogramSpec spec;
  spec.n_angles = 180;
  const ScalarField hil = invert_radon_hilbert(sinogram(f, spec), d);
  EXPECT_LT(l2_relative_error(rec, hil), 0.05);
}

TEST(InvertAffine, ZeroSamplerGivesZero) {
  const ScalarField z = zero_field();
  const AffineFieldSampler sampler(z);
  const ScalarField rec = invert_affine(
      sampler, z.domain(), default_quadrature(2, z.domain().bounding_radius(), 0.125));
  for (double v : rec.values()) EXPECT_EQ(v, 0.0);
}

TEST(InvertAffine, UndersizedQuadratureRejected) {
  QuadratureSpec q = default_quadrature(2, 8.0, 0.1);
  q.n_angles = 2;
  EXPECT_TOMO_ERROR(validate_quadrature(q, 2), ErrorCode::budget_exceeded);
}

TEST(RadonHyperplane, PlanarMarginalAndHomogeneity) {
  const ScalarField f =
      make_gaussian_phantom(BoxDomain::cube(3, -5.0, 5.0, 41), {0.0, 0.0, 0.0}, 1.0, 1.0);
  EXPECT_NEAR(radon_hyperplane(f, {0.0, {0.0, 0.0, 1.0}}), inv_sqrt_2pi, 1e-3);
  const AffineParam p{0.3, {0.4, -0.7, 0.5}};
  const double base = radon_hyperplane(f, p);
  for (double s : {-3.0, 0.5, 2.0})
    EXPECT_NEAR(radon_hyperplane(f, {s * 0.3, {s * 0.4, -s * 0.7, s * 0.5}}), base / std::abs(s),
                1e-6 * base);
  EXPECT_EQ(radon_hyperplane(ScalarField(f.domain()), p), 0.0);
  EXPECT_TOMO_ERROR(radon_hyperplane(f, {0.0, {0.0, 0.0, 0.0}}), ErrorCode::invalid_argument);
}

TEST(Backproject, ZeroConstantAndPointLike) {
  const BoxDomain d = BoxDomain::cube(2, -3.0, 3.0, 49);
  SinogramSpec spec;
  spec.n_angles = 90;
  TomogramTable s = sinogram(ScalarField(d), spec);
  const ScalarField zero = backproject(s, d);
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);

  std::fill(s.values.begin(), s.values.end(), 2.5);
  const ScalarField constant = backproject(s, d);
  for (double v : constant.values()) EXPECT_NEAR(v, 2.5, 1e-12);

  const ScalarField point = make_gaussian_phantom(d, {0.75, -0.5}, 0.15, 1.0);
  const ScalarField blur = backproject(sinogram(point, spec), d);
  const Coord x = d.node(blur.argmax());
  EXPECT_LE(std::abs(x[0] - 0.75), d.spacing(0));
  EXPECT_LE(std::abs(x[1] + 0.5), d.spacing(1));
}
