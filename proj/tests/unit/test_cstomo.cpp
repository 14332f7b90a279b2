#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "tomo/cstomo.hpp"

using namespace tomo;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

OperatorMatrix basis_projector(int dim, int k) {
  OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return m;
}

cplx grid_mass(const PhaseGrid& g) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * g.values[i];
  return s;
}

std::size_t nearest_node(const PhaseGrid& g, cplx z) {
  const auto idx = [&](double x) {
    return std::size_t(std::lround((x + g.half_width) / g.spacing()));
  };
  return idx(z.real()) * g.n + idx(z.imag());
}

}  // namespace

TEST(FockSpace, LadderOperators) {
  const FockSpace s(5);
  const OperatorMatrix comm = s.a() * s.adag() - s.adag() * s.a();
  for (int i = 0; i < s.n_max(); ++i)
    for (int j = 0; j < s.n_max(); ++j)
      EXPECT_NEAR(std::abs(comm(i, j) - (i == j ? 1.0 : 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(comm(5, 5) + 5.0), 0.0, 1e-14);  // truncation defect
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(6);
  vac(0) = 1.0;
  EXPECT_EQ((s.a() * vac).norm(), 0.0);
}

TEST(DensityMatrix, Validation) {
  std::mt19937_64 rng(1);
  const OperatorMatrix rho = random_density(4, rng);
  EXPECT_TRUE(is_density(rho));
  EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-12);
  OperatorMatrix bad = rho;
  bad(0, 1) += 0.1;
  EXPECT_FALSE(is_density(bad));
  EXPECT_TOMO_ERROR(validate_density(bad), ErrorCode::invalid_argument);
  EXPECT_FALSE(is_density(2.0 * rho));
}

TEST(DensityMatrix, JsonRoundTrip) {
  std::mt19937_64 rng(2);
  const OperatorMatrix rho = random_density(3, rng);
  EXPECT_EQ(matrix_from_json(matrix_to_json(rho)), rho);
  EXPECT_TOMO_ERROR(matrix_from_json("{\"dim\": 2}"), ErrorCode::bad_header);
}

TEST(CoherentVector, Examples) {
  const FockSpace s4(4);
  const Eigen::VectorXcd v0 = coherent_vector(0.0, s4);
  EXPECT_EQ(v0(0), cplx(1.0));
  EXPECT_EQ(v0.tail(4).norm(), 0.0);

  const FockSpace s32(32);
  const cplx ov = coherent_vector(0.0, s32).dot(coherent_vector(1.0, s32));
  EXPECT_NEAR(std::norm(ov), std::exp(-1.0), 1e-8);
  for (cplx z : {cplx(2.0, 0.0), cplx(1.2, -1.6), cplx(0.0, 0.5)})
    EXPECT_NEAR(coherent_vector(z, s32).squaredNorm(), 1.0, 1e-10);
}

TEST(CoherentVector, TruncationGuardWarns) {
  Diagnostics diag;
  coherent_vector(cplx(1.5, 0.0), FockSpace(4), &diag);
  EXPECT_FALSE(diag.empty());
  Diagnostics quiet;
  coherent_vector(cplx(0.5, 0.5), FockSpace(4), &quiet);
  EXPECT_TRUE(quiet.empty());
}

TEST(Displacement, Examples) {
  const FockSpace s(32);
  EXPECT_LT(max_abs(displacement_matrix(0.0, s) - OperatorMatrix::Identity(33, 33)), 1e-15);
  const cplx z(0.8, -0.6);
  const OperatorMatrix prod = displacement_matrix(z, s) * displacement_matrix(-z, s);
  // D(z)D(-z) is the identity up to the truncation corner.
  EXPECT_LT(max_abs(prod.topLeftCorner(20, 20) - OperatorMatrix::Identity(20, 20)), 1e-8);
  const Eigen::VectorXcd col = displacement_matrix(1.0, s).col(0);
  EXPECT_LT((col - coherent_vector(1.0, s)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(HusimiK, Examples) {
  const FockSpace s(32);
  const cplx z(0.6, -0.4);
  EXPECT_NEAR(std::abs(husimi_K(OperatorMatrix::Identity(33, 33), z) - 1.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(husimi_K(basis_projector(33, 0), z) - std::exp(-std::norm(z))), 0.0,
              1e-14);
  const cplx z0(0.3, 0.5);
  const OperatorMatrix p0 = projector(coherent_vector(z0, s));
  EXPECT_NEAR(std::abs(husimi_K(p0, z) - std::exp(-std::norm(z - z0))), 0.0, 1e-8);
}

TEST(HusimiK, PositivityOnDensities) {
  std::mt19937_64 rng(3);
  const PhaseGrid grid = default_phase_grid(4, 48);
  for (int t = 0; t < 5; ++t) {
    const PhaseGrid K = husimi_grid(random_density(5, rng), grid);
    for (const cplx& v : K.values) {
      EXPECT_GE(v.real(), -1e-12);
      EXPECT_NEAR(v.imag(), 0.0, 1e-12);
    }
  }
}

TEST(HusimiNormalization, Examples) {
  const PhaseGrid grid = default_phase_grid(4);
  EXPECT_NEAR(husimi_normalization(basis_projector(5, 0), grid), 1.0, 1e-3);
  EXPECT_NEAR(husimi_normalization(OperatorMatrix::Identity(5, 5) / 5.0, grid), 1.0, 1e-3);
  EXPECT_EQ(husimi_normalization(OperatorMatrix::Zero(5, 5), grid), 0.0);
  Diagnostics diag;
  husimi_normalization(basis_projector(5, 0), PhaseGrid(2.0, 32), &diag);
  EXPECT_FALSE(diag.empty());
}

TEST(ReconstructFromK, Examples) {
  for (int n_max = 1; n_max <= 6; ++n_max) {
    const FockSpace s(n_max);
    const OperatorMatrix vac = basis_projector(s.dim(), 0);
    const Reconstruction r = reconstruct_from_K(husimi_grid(vac, default_phase_grid(n_max, 32)), s);
    EXPECT_LT(max_abs(r.A - vac), 1e-8) << n_max;
  }
  std::mt19937_64 rng(4);
  const FockSpace s4(4);
  const PhaseGrid grid = default_phase_grid(4, 32);
  const OperatorMatrix rho = random_density(5, rng);
  EXPECT_LT(max_abs(reconstruct_from_K(husimi_grid(rho, grid), s4).A - rho), 1e-6);
  const PhaseGrid zero(grid.half_width, grid.n);
  EXPECT_EQ(max_abs(reconstruct_from_K(zero, s4).A), 0.0);
}

TEST(ReconstructFromK, InjectiveOnOperatorBasis) {
  const FockSpace s(3);
  const PhaseGrid grid = default_phase_grid(3, 32);
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      OperatorMatrix e = OperatorMatrix::Zero(4, 4);
      e(n, m) = 1.0;
      EXPECT_LT(max_abs(reconstruct_from_K(husimi_grid(e, grid), s).A - e), 1e-8);
    }
}

TEST(ReconstructFromK, RankDeficientDesignRejected) {
  const FockSpace s(3);
  const std::vector<cplx> z{0.1, 0.2, cplx(0.0, 0.3)};
  const std::vector<cplx> K{1.0, 1.0, 1.0};
  EXPECT_TOMO_ERROR(reconstruct_from_samples(z, K, s), ErrorCode::rank_deficient);
  const std::vector<cplx> same(16, cplx(0.5, 0.5));
  EXPECT_TOMO_ERROR(reconstruct_from_samples(same, std::vector<cplx>(16, 1.0), s),
                    ErrorCode::rank_deficient);
}

TEST(ReconstructFromK, DerivativeCrossCheck) {
  std::mt19937_64 rng(5);
  const FockSpace s(3);
  const OperatorMatrix rho = random_density(4, rng);
  const OperatorMatrix rec =
      reconstruct_by_derivatives([&](cplx z) { return husimi_K(rho, z); }, s);
  EXPECT_LT(max_abs(rec - rho), 1e-6);
}

TEST(PhiFromK, ZeroGivesZero) {
  const PhaseGrid zero(5.0, 64);
  const PhaseGrid phi = phi_from_K(zero, 4.0);
  for (const cplx& v : phi.values) EXPECT_EQ(v, cplx(0.0));
  EXPECT_EQ(phi.cutoff, 4.0);
}

TEST(PhiFromK, CoherentStateIsMollifiedDelta) {
  const int n_max = 4;
  const FockSpace s(n_max);
  const PhaseGrid grid = default_phase_grid(n_max);
  const cplx z0(0.8, -0.3);
  Diagnostics guard;
  const OperatorMatrix rho = projector(coherent_vector(z0, s, &guard).normalized());
  ASSERT_TRUE(guard.empty());
  const PhaseGrid phi = phi_from_K(husimi_grid(rho, grid), default_cutoff(n_max));
  EXPECT_NEAR(grid_mass(phi).real() / pi, 1.0, 0.02);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi.values[i].real() > phi.values[peak].real()) peak = i;
  EXPECT_LE(std::abs(phi.z(peak).real() - z0.real()), grid.spacing());
  EXPECT_LE(std::abs(phi.z(peak).imag() - z0.imag()), grid.spacing());
}

TEST(PhiFromK, ConvolutionIdentityMonotone) {
  const PhaseGrid grid = default_phase_grid(6);
  const PhaseGrid K = husimi_grid(basis_projector(7, 0), grid);
  double previous = INFINITY;
  for (double xi : {4.0, 6.0, 8.0}) {
    const double err = phase_l2_relative_error(K, K_from_phi(phi_from_K(K, xi)));
    EXPECT_LT(err, 0.05);
    EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(PhiFromK, CutoffAboveNyquistRejected) {
  const PhaseGrid g(5.0, 16);
  EXPECT_TOMO_ERROR(phi_from_K(g, 100.0), ErrorCode::invalid_argument);
}

TEST(Quantizer, HermitianAndOrthonormal) {
  const int n_max = 4;
  const FockSpace s(n_max);
  const PhaseGrid grid = default_phase_grid(n_max, 64);
  const double cutoff = default_cutoff(n_max);
  const cplx zp(0.5, -0.25);
  const OperatorMatrix G = quantizer_G(zp, grid, cutoff, s);
  EXPECT_LT(max_abs(G - G.adjoint()), 1e-8);

  const PhaseGrid k = quantizer_K_symbol(zp, grid, cutoff);
  EXPECT_NEAR(grid_mass(k).real() / pi, 1.0, 0.02);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.values[i].real() > k.values[peak].real()) peak = i;
  EXPECT_EQ(peak, nearest_node(grid, zp));
}

TEST(Quantizer, ResolutionOfUnity) {
  const int n_max = 6;
  const FockSpace s(n_max);
  const PhaseGrid grid = default_phase_grid(n_max);
  const QuantizerField q(s, grid, default_quantizer_cutoff(n_max));
  const OperatorMatrix vac = basis_projector(7, 0);
  EXPECT_LT(max_abs(q.reconstruct(husimi_grid(vac, grid)) - vac), 0.02);
  for (int n = 0; n < 7; n += 3)
    for (int m = 0; m < 7; m += 2) {
      OperatorMatrix e = OperatorMatrix::Zero(7, 7);
      e(n, m) = 1.0;
      EXPECT_LT(max_abs(q.reconstruct(husimi_grid(e, grid)) - e), 0.02) << n << "," << m;
    }
}

TEST(Quantizer, DualityWithPhi) {
  const int n_max = 3;
  const FockSpace s(n_max);
  const PhaseGrid grid = default_phase_grid(n_max, 64);
  const double cutoff = default_cutoff(n_max);
  std::mt19937_64 rng(6);
  const OperatorMatrix A = random_density(4, rng);
  const PhaseGrid phi = phi_from_K(husimi_grid(A, grid), cutoff);
  for (cplx zp : {cplx(0.0, 0.0), cplx(0.7, -0.4), cplx(-1.0, 0.5)}) {
    const std::size_t node = nearest_node(grid, zp);
    const cplx tr = (quantizer_G(phi.z(node), grid, cutoff, s) * A).trace();
    EXPECT_LT(std::abs(tr - phi.values[node]), 0.02);
  }
}

TEST(PairExpectation, Examples) {
  const int n_max = 4;
  const PhaseGrid grid = default_phase_grid(n_max);
  const double cutoff = default_cutoff(n_max);
  const PhaseGrid K0 = husimi_grid(basis_projector(5, 0), grid);
  const PhaseGrid K1 = husimi_grid(basis_projector(5, 1), grid);
  EXPECT_NEAR(std::abs(pair_expectation(K0, phi_from_K(K0, cutoff)) - 1.0), 0.0, 0.02);
  EXPECT_NEAR(std::abs(pair_expectation(K0, phi_from_K(K1, cutoff))), 0.0, 0.02);
  PhaseGrid ones(grid.half_width, grid.n);
  std::fill(ones.values.begin(), ones.values.end(), cplx(1.0));
  EXPECT_NEAR(std::abs(pair_expectation(K0, ones) - 1.0), 0.0, 1e-3);
  EXPECT_TOMO_ERROR(pair_expectation(K0, PhaseGrid(grid.half_width, 64)),
                    ErrorCode::domain_mismatch);
}

TEST(StarProduct, UnitAndIdempotence) {
  const int n_max = 2;
  const FockSpace s(n_max);
  const PhaseGrid grid(6.5, 48);
  const QuantizerField q(s, grid, default_quantizer_cutoff(n_max));
  std::mt19937_64 rng(7);
  const OperatorMatrix A = random_density(3, rng);
  const PhaseGrid KA = husimi_grid(A, grid);
  const PhaseGrid KI = husimi_grid(OperatorMatrix::Identity(3, 3), grid);
  EXPECT_LT(phase_l2_relative_error(KA, star_product(KI, KA, q)), 0.05);
  const PhaseGrid K0 = husimi_grid(basis_projector(3, 0), grid);
  EXPECT_LT(phase_l2_relative_error(K0, star_product(K0, K0, q)), 0.05);
}

TEST(StarProduct, NonCommutative) {
  const int n_max = 3;
  const FockSpace s(n_max);
  const PhaseGrid grid(6.5, 48);
  const QuantizerField q(s, grid, default_quantizer_cutoff(n_max));
  const PhaseGrid Ka = husimi_grid(s.a(), grid), Kad = husimi_grid(s.adag(), grid);
  const PhaseGrid ab = star_product(Ka, Kad, q), ba = star_product(Kad, Ka, q);
  EXPECT_GT(phase_l2_relative_error(ab, ba), 0.1);
  PhaseGrid diff(grid.half_width, grid.n);
  for (std::size_t i = 0; i < diff.size(); ++i) diff.values[i] = ab.values[i] - ba.values[i];
  const OperatorMatrix comm = q.reconstruct(diff);
  EXPECT_LT(max_abs(comm.topLeftCorner(3, 3) - OperatorMatrix::Identity(3, 3)), 0.05);
}

TEST(StarProduct, BudgetExceeded) {
  const FockSpace s(5);
  const PhaseGrid grid(6.0, 32);
  const QuantizerField q(s, grid, 6.0);
  const PhaseGrid K = husimi_grid(OperatorMatrix::Identity(6, 6), grid);
  EXPECT_TOMO_ERROR(star_product(K, K, q), ErrorCode::budget_exceeded);
}

TEST(PhaseGridFile, RoundTrip) {
  std::mt19937_64 rng(8);
  const PhaseGrid K = husimi_grid(random_density(3, rng), PhaseGrid(4.0, 16));
  const PhaseGrid back = phase_grid_from(to_grid_file(K));
  ASSERT_TRUE(back.same_geometry(K));
  EXPECT_EQ(back.values, K.values);
}
