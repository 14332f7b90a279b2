#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "tomo/group_tomo.hpp"

using namespace tomo;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

OperatorMatrix up_state() {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

}  // namespace

TEST(Su2Rep, GeneratorsAndCommutators) {
  const UnitaryRep r = su2_rep(0.5);
  EXPECT_EQ(r.dim, 2);
  const auto& J = r.generators;
  EXPECT_LT(max_abs(J[0] * J[1] - J[1] * J[0] - cplx(0.0, 1.0) * J[2]), 1e-12);
  for (const auto& g : J) EXPECT_LT(max_abs(g - g.adjoint()), 1e-15);
  EXPECT_NEAR(std::abs(J[2](0, 0)), 0.5, 1e-15);
  for (double j : {0.5, 1.0, 1.5, 2.0}) EXPECT_LT(su2_rep(j).structure_residual(), 1e-10);
}

TEST(Su2Rep, InvalidSpinRejected) {
  EXPECT_TOMO_ERROR(su2_rep(0.0), ErrorCode::invalid_argument);
  EXPECT_TOMO_ERROR(su2_rep(0.3), ErrorCode::invalid_argument);
}

TEST(Su2Rep, DoubleCover) {
  const Eigen::Vector3d z(0.0, 0.0, 1.0);
  EXPECT_LT(max_abs(su2_rep(0.5).evaluate(z, 2.0 * pi) + OperatorMatrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(max_abs(su2_rep(1.0).evaluate(z, 2.0 * pi) - OperatorMatrix::Identity(3, 3)), 1e-12);
}

TEST(Su2Rep, UnitaryAndIdentity) {
  std::mt19937_64 rng(1);
  for (double j : {0.5, 1.0, 1.5}) {
    const UnitaryRep r = su2_rep(j);
    EXPECT_LT(max_abs(r.evaluate(SU2()) - OperatorMatrix::Identity(r.dim, r.dim)), 1e-12);
    for (int t = 0; t < 10; ++t) {
      const OperatorMatrix U = r.evaluate(SU2::random(rng));
      EXPECT_LT(max_abs(U * U.adjoint() - OperatorMatrix::Identity(r.dim, r.dim)), 1e-12);
    }
  }
}

TEST(Su2Rep, HomomorphismOnGroupProducts) {
  std::mt19937_64 rng(2);
  const UnitaryRep r = su2_rep(1.5);
  for (int t = 0; t < 10; ++t) {
    const SU2 g = SU2::random(rng), h = SU2::random(rng);
    EXPECT_LT(max_abs(r.evaluate(g * h) - r.evaluate(g) * r.evaluate(h)), 1e-10);
  }
}

TEST(SamplingFunction, Examples) {
  std::mt19937_64 rng(3);
  const UnitaryRep r = su2_rep(0.5);
  const OperatorMatrix rho = random_density(2, rng);
  EXPECT_NEAR(std::abs(sampling_function(rho, r, SU2()) - 1.0), 0.0, 1e-12);
  const OperatorMatrix mixed = OperatorMatrix::Identity(2, 2) / 2.0;
  for (double s : {0.3, 1.0, 2.5})
    EXPECT_NEAR(std::abs(sampling_function(mixed, r.evaluate(Eigen::Vector3d(0, 0, 1), s)) -
                         std::cos(s / 2.0)),
                0.0, 1e-12);
  for (int t = 0; t < 20; ++t) EXPECT_LE(std::abs(sampling_function(rho, r, SU2::random(rng))), 1.0 + 1e-12);
  EXPECT_TOMO_ERROR(sampling_function(rho, su2_rep(1.0), SU2()), ErrorCode::invalid_argument);
}

TEST(GramPsd, Examples) {
  std::mt19937_64 rng(4);
  const UnitaryRep r = su2_rep(1.0);
  const OperatorMatrix rho = random_density(3, rng);
  EXPECT_NEAR(gram_psd_check(rho, r, {SU2()}), 1.0, 1e-12);
  for (double j : {0.5, 1.0, 2.0}) {
    const UnitaryRep rj = su2_rep(j);
    std::vector<SU2> els;
    for (int k = 0; k < 20; ++k) els.push_back(SU2::random(rng));
    EXPECT_GE(gram_psd_check(random_density(rj.dim, rng), rj, els), -1e-10);
  }
}

TEST(GramPsd, MatchesQuadraticForm) {
  std::mt19937_64 rng(5);
  const UnitaryRep r = su2_rep(1.0);
  const OperatorMatrix rho = random_density(3, rng);
  std::vector<SU2> els;
  for (int k = 0; k < 6; ++k) els.push_back(SU2::random(rng));
  const Eigen::MatrixXcd G = gram_matrix(rho, r, els);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd c(6);
  for (int k = 0; k < 6; ++k) c(k) = cplx(n(rng), n(rng));
  OperatorMatrix S = OperatorMatrix::Zero(3, 3);
  for (int k = 0; k < 6; ++k) S += c(k) * r.evaluate(els[std::size_t(k)]);
  const cplx direct = (rho * S.adjoint() * S).trace();
  const cplx form = c.dot(G * c);
  EXPECT_NEAR(std::abs(direct - form), 0.0, 1e-10 * std::abs(direct));
}

TEST(GramPsd, DetectsNonPositiveMatrix) {
  std::mt19937_64 rng(6);
  const UnitaryRep r = su2_rep(0.5);
  OperatorMatrix bad(2, 2);
  bad << 1.5, 0.0, 0.0, -0.5;
  double worst = INFINITY;
  for (int t = 0; t < 50 && worst >= 0.0; ++t) {
    std::vector<SU2> els;
    for (int k = 0; k < 8; ++k) els.push_back(SU2::random(rng));
    worst = std::min(worst, gram_psd_check(bad, r, els));
  }
  EXPECT_LT(worst, 0.0);
}

TEST(TomogramSpectral, Examples) {
  const UnitaryRep r = su2_rep(0.5);
  const OperatorMatrix mixed = OperatorMatrix::Identity(2, 2) / 2.0;
  DiscreteTomogram t = tomogram_spectral(mixed, r.element({0.0, 0.0, 1.0}));
  ASSERT_EQ(t.atoms.size(), 2u);
  EXPECT_NEAR(t.atoms[0].lambda, -0.5, 1e-12);
  EXPECT_NEAR(t.atoms[1].lambda, 0.5, 1e-12);
  EXPECT_NEAR(t.atoms[0].weight, 0.5, 1e-12);

  t = tomogram_spectral(up_state(), r.element({1.0, 0.0, 0.0}));
  ASSERT_EQ(t.atoms.size(), 2u);
  EXPECT_NEAR(t.atoms[0].weight, 0.5, 1e-12);
  EXPECT_NEAR(t.atoms[1].weight, 0.5, 1e-12);

  t = tomogram_spectral(up_state(), r.element({0.0, 0.0, 1.0}));
  double up_weight = 0.0;
  for (const Atom& a : t.atoms)
    if (std::abs(a.lambda - 0.5) < 1e-12) up_weight = a.weight;
  EXPECT_NEAR(up_weight, 1.0, 1e-12);
}

TEST(TomogramSpectral, ProbabilityLinearityAndScaling) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  const UnitaryRep r = su2_rep(1.5);
  for (int t = 0; t < 20; ++t) {
    const OperatorMatrix w1 = random_density(4, rng), w2 = random_density(4, rng);
    const AlgebraElement xi = r.element({n(rng), n(rng), n(rng)});
    const DiscreteTomogram a = tomogram_spectral(w1, xi), b = tomogram_spectral(w2, xi);
    EXPECT_NEAR(a.total_weight(), 1.0, 1e-10);
    for (const Atom& atom : a.atoms) EXPECT_GE(atom.weight, -1e-12);
    const double alpha = 0.3;
    const DiscreteTomogram mix = tomogram_spectral(alpha * w1 + (1.0 - alpha) * w2, xi);
    ASSERT_EQ(mix.atoms.size(), a.atoms.size());
    for (std::size_t k = 0; k < mix.atoms.size(); ++k)
      EXPECT_NEAR(mix.atoms[k].weight, alpha * a.atoms[k].weight + (1 - alpha) * b.atoms[k].weight,
                  1e-12);
    const double c = 2.5;
    const DiscreteTomogram scaled =
        tomogram_spectral(w1, r.element({c * xi.coeffs[0], c * xi.coeffs[1], c * xi.coeffs[2]}));
    ASSERT_EQ(scaled.atoms.size(), a.atoms.size());
    for (std::size_t k = 0; k < a.atoms.size(); ++k) {
      EXPECT_NEAR(scaled.atoms[k].lambda, c * a.atoms[k].lambda, 1e-12);
      EXPECT_NEAR(scaled.atoms[k].weight, a.atoms[k].weight, 1e-10);
    }
  }
}

TEST(TomogramSpectral, DegenerateEigenvaluesMerged) {
  const UnitaryRep r = su2_rep(1.0);
  const OperatorMatrix mixed = OperatorMatrix::Identity(3, 3) / 3.0;
  const DiscreteTomogram t = tomogram_spectral(mixed, r.element({0.0, 0.0, 0.0}));
  ASSERT_EQ(t.atoms.size(), 1u);
  EXPECT_NEAR(t.atoms[0].weight, 1.0, 1e-12);
}

TEST(TomogramSpectral, JsonRoundTrip) {
  const DiscreteTomogram t{{{-0.5, 0.25}, {0.5, 0.75}}};
  const DiscreteTomogram back = tomogram_from_json(tomogram_to_json(t));
  ASSERT_EQ(back.atoms.size(), 2u);
  EXPECT_EQ(back.atoms[1].lambda, 0.5);
  EXPECT_EQ(back.atoms[1].weight, 0.75);
}

TEST(TomogramFourier, MixedQubitPeaks) {
  const UnitaryRep r = su2_rep(0.5);
  const AlgebraElement xi = r.element({0.0, 0.0, 1.0});
  const double L = 10.0 * pi / eigenvalue_gap(xi);
  const FourierTomogram ft =
      tomogram_fourier(OperatorMatrix::Identity(2, 2) / 2.0, r, xi, uniform_grid(-1.0, 1.0, 2001),
                       uniform_grid(-0.5 * L, 0.5 * L, 1025));
  const std::vector<double> m = ft.peak_masses({-0.5, 0.5});
  EXPECT_NEAR(m[0], 0.5, 0.01);
  EXPECT_NEAR(m[1], 0.5, 0.01);
}

TEST(TomogramFourier, ZeroElementSinglePeak) {
  const UnitaryRep r = su2_rep(1.0);
  std::mt19937_64 rng(8);
  const FourierTomogram ft =
      tomogram_fourier(random_density(3, rng), r, r.element({0.0, 0.0, 0.0}),
                       uniform_grid(-1.0, 1.0, 2001), uniform_grid(-30.0, 30.0, 1025));
  EXPECT_NEAR(ft.peak_masses({0.0})[0], 1.0, 0.01);
}

TEST(TomogramFourier, SpectralRoundTrip) {
  std::mt19937_64 rng(9);
  const UnitaryRep r = su2_rep(1.0);
  const OperatorMatrix w = random_density(3, rng);
  const AlgebraElement xi = r.element({0.3, -0.5, 0.8});
  const DiscreteTomogram t = tomogram_spectral(w, xi);
  for (double s : uniform_grid(-20.0, 20.0, 41)) {
    cplx sum = 0.0;
    for (const Atom& a : t.atoms) sum += a.weight * std::polar(1.0, s * a.lambda);
    EXPECT_LT(std::abs(sum - sampling_function(w, r.exp(xi, s))), 1e-6);
  }
}

TEST(TomogramFourier, ShortWindowWarns) {
  const UnitaryRep r = su2_rep(0.5);
  const AlgebraElement xi = r.element({0.0, 0.0, 1.0});
  Diagnostics diag;
  tomogram_fourier(up_state(), r, xi, uniform_grid(-1.0, 1.0, 101), uniform_grid(-1.0, 1.0, 65),
                   &diag);
  EXPECT_FALSE(diag.empty());
}

TEST(Equivariance, Examples) {
  std::mt19937_64 rng(10);
  const UnitaryRep r = su2_rep(0.5);
  const OperatorMatrix rho = random_density(2, rng);
  EquivarianceResiduals e = equivariance_check(r, rho, SU2(), SU2::random(rng));
  EXPECT_LT(e.operator_residual, 1e-12);
  EXPECT_LT(e.sampling_residual, 1e-12);
  for (int t = 0; t < 20; ++t) {
    e = equivariance_check(r, rho, SU2::random(rng), SU2::random(rng));
    EXPECT_LT(e.operator_residual, 1e-10);
    EXPECT_LT(e.sampling_residual, 1e-10);
  }
  const OperatorMatrix inv = OperatorMatrix::Identity(2, 2) / 2.0;
  const SU2 g = SU2::random(rng), h = SU2::random(rng);
  EXPECT_NEAR(std::abs(sampling_function(inv, r, g.inverse() * h * g) - sampling_function(inv, r, h)),
              0.0, 1e-12);
}

TEST(BiorthogonalPair, MatrixUnits) {
  const std::vector<OperatorMatrix> E = matrix_units(2);
  const TomographicPair p = build_biorthogonal_pair(E);
  EXPECT_LT(p.biorthogonality_residual, 1e-12);
  for (std::size_t i = 0; i < E.size(); ++i) EXPECT_LT(max_abs(p.D[i] - E[i].transpose()), 1e-12);
  std::mt19937_64 rng(11);
  const OperatorMatrix rho = random_density(2, rng);
  EXPECT_LT(max_abs(p.reconstruct(p.sample(rho)) - rho), 1e-12);
}

TEST(BiorthogonalPair, PauliSetAndSeparation) {
  const std::vector<OperatorMatrix> P = pauli_set();
  const TomographicPair p = build_biorthogonal_pair(P);
  for (std::size_t i = 0; i < P.size(); ++i) EXPECT_LT(max_abs(p.D[i] - P[i] / 2.0), 1e-12);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const OperatorMatrix rho = random_density(2, rng);
    EXPECT_LT(max_abs(p.reconstruct(p.sample(rho)) - rho), 1e-12);
    const OperatorMatrix other = random_density(2, rng);
    const auto a = p.sample(rho), b = p.sample(other);
    double gap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
    EXPECT_GT(gap, 0.0);
  }
}

TEST(BiorthogonalPair, RepeatedElementRejected) {
  std::vector<OperatorMatrix> P = pauli_set();
  P[3] = P[2];
  EXPECT_TOMO_ERROR(build_biorthogonal_pair(P), ErrorCode::rank_deficient);
}

TEST(CustomRep, ValidatesGenerators) {
  OperatorMatrix nonherm = OperatorMatrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  EXPECT_TOMO_ERROR(custom_rep({nonherm}, {0.0}), ErrorCode::invalid_argument);
  const UnitaryRep su2 = su2_rep(0.5);
  const UnitaryRep c = custom_rep(su2.generators, su2.structure);
  EXPECT_LT(c.structure_residual(), 1e-12);
}
