#include <cmath>
#include <cstdio>
#include <cstring>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "test_util.hpp"
#include "tomo/field.hpp"
#include "tomo/grid_io.hpp"

using namespace tomo;

namespace {

constexpr double pi = std::numbers::pi;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tomo_test_" + name)).string();
}

}  // namespace

TEST(BoxDomain, RejectsInvalidBoxes) {
  EXPECT_TOMO_ERROR(BoxDomain({0.0}, {0.0}, {4}), ErrorCode::invalid_argument);
  EXPECT_TOMO_ERROR(BoxDomain({0.0}, {1.0}, {1}), ErrorCode::invalid_argument);
  EXPECT_TOMO_ERROR(BoxDomain({0.0, 0.0}, {1.0}, {4, 4}), ErrorCode::invalid_argument);
}

TEST(BoxDomain, SpacingAndNodes) {
  const BoxDomain d({-1.0, 0.0}, {1.0, 2.0}, {5, 3});
  EXPECT_DOUBLE_EQ(d.spacing(0), 0.5);
  EXPECT_DOUBLE_EQ(d.spacing(1), 1.0);
  EXPECT_EQ(d.size(), 15u);
  const Coord x = d.node(7);  // row 2, column 1
  EXPECT_DOUBLE_EQ(x[0], 0.0);
  EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(Phantom, UnitGaussianIntegratesToOne) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 201);
  const ScalarField f = make_gaussian_phantom(d, {0.0, 0.0}, 1.0, 1.0);
  EXPECT_NEAR(integrate(f), 1.0, 1e-6);
}

TEST(Phantom, ZeroMassGivesZeroField) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 33);
  const ScalarField f = make_gaussian_phantom(d, {0.0, 0.0}, 1.0, 0.0);
  for (double v : f.values()) EXPECT_EQ(v, 0.0);
}

TEST(Phantom, PeakValueOfNarrowGaussian) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 241);  // node at (1, -1)
  Eigen::MatrixXd cov = 0.25 * Eigen::MatrixXd::Identity(2, 2);
  const ScalarField f = make_gaussian_phantom(d, {1.0, -1.0}, cov, 1.0);
  EXPECT_NEAR(f.max_value(), 1.0 / (2.0 * pi * 0.25), 1e-12);
  const Coord x = d.node(f.argmax());
  EXPECT_NEAR(x[0], 1.0, 1e-12);
  EXPECT_NEAR(x[1], -1.0, 1e-12);
}

TEST(Phantom, RejectsNonSpdCovariance) {
  const BoxDomain d = BoxDomain::cube(2, -1.0, 1.0, 9);
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 2.0, 2.0, 1.0;
  EXPECT_TOMO_ERROR(make_gaussian_phantom(d, {0.0, 0.0}, cov, 1.0), ErrorCode::invalid_argument);
}

TEST(Phantom, MassMatchesIntegralInThreeDimensions) {
  const BoxDomain d = BoxDomain::cube(3, -4.0, 4.0, 65);
  const ScalarField f = make_gaussian_phantom(d, {0.2, -0.1, 0.3}, 0.5, 2.5);
  EXPECT_NEAR(integrate(f), 2.5, 2.5e-6);
}

TEST(Integrate, ZeroAndConstant) {
  const BoxDomain d = BoxDomain::cube(2, 0.0, 1.0, 17);
  EXPECT_EQ(integrate(ScalarField(d)), 0.0);
  ScalarField c(d, std::vector<double>(d.size(), 2.0));
  EXPECT_NEAR(integrate(c), 2.0, 1e-12);
}

TEST(Integrate, IsLinear) {
  const BoxDomain d = BoxDomain::cube(2, -4.0, 4.0, 65);
  const ScalarField a = make_gaussian_phantom(d, {0.5, 0.0}, 0.7, 1.3);
  const ScalarField b = make_bump_phantom(d, {-1.0, 0.5}, 1.5, 0.8);
  const double alpha = 0.7, beta = -2.3;
  const double lhs = integrate(alpha * a + beta * b);
  const double rhs = alpha * integrate(a) + beta * integrate(b);
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
}

TEST(L2Error, SelfScalingAndShift) {
  const BoxDomain d = BoxDomain::cube(2, -6.0, 6.0, 65);
  const ScalarField a = make_gaussian_phantom(d, {0.0, 0.0}, 1.0, 1.0);
  EXPECT_EQ(l2_relative_error(a, a), 0.0);
  EXPECT_NEAR(l2_relative_error(a, 1.01 * a), 0.01, 1e-12);

  const double h = d.spacing(0);
  const ScalarField b = make_gaussian_phantom(d, {h, 0.0}, 1.0, 1.0);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i];
  }
  EXPECT_NEAR(l2_relative_error(a, b), std::sqrt(num / den), 1e-14);
}

TEST(L2Error, RejectsMismatchedDomains) {
  const ScalarField a(BoxDomain::cube(2, 0.0, 1.0, 9));
  const ScalarField b(BoxDomain::cube(2, 0.0, 1.0, 10));
  EXPECT_TOMO_ERROR(l2_relative_error(a, b), ErrorCode::domain_mismatch);
}

TEST(Interpolate, ExactOnNodesAndZeroOutside) {
  const BoxDomain d = BoxDomain::cube(2, -1.0, 1.0, 5);
  ScalarField f(d);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = double(i);
  EXPECT_DOUBLE_EQ(f.interpolate(d.node(7)), 7.0);
  EXPECT_DOUBLE_EQ(f.interpolate({0.25, 0.0, 0.0}), 0.5 * (f[12] + f[17]));
  EXPECT_EQ(f.interpolate({1.5, 0.0, 0.0}), 0.0);
}

TEST(GridIo, RoundTripIsBitExact) {
  const BoxDomain d({-1.0, 0.5}, {2.0, 3.0}, {17, 9});
  const ScalarField f = make_gaussian_phantom(d, {0.3, 1.2}, 0.6, 1.7);
  const std::string path = temp_path("roundtrip.grd");
  write_grid(f, path);
  const ScalarField g = read_grid(path);
  EXPECT_EQ(g.domain(), f.domain());
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(g[i], f[i]);
  std::filesystem::remove(path);
}

TEST(GridIo, TableAxesAndAttributesSurvive) {
  TomogramTable t{{"lambda", "theta"}, BoxDomain({-1.0, 0.0}, {1.0, 3.0}, {5, 4}),
                  std::vector<double>(20, 0.25)};
  GridFile file = to_grid_file(t);
  file.attrs["geometry"] = "line";
  std::stringstream s;
  write_grid_file(file, s);
  const GridFile back = read_grid_file(s);
  EXPECT_EQ(back.axes, t.axes);
  EXPECT_EQ(back.attrs.at("geometry"), "line");
  EXPECT_EQ(table_from(back).values, t.values);
}

TEST(GridIo, DistinctErrorCodes) {
  const ScalarField f = make_gaussian_phantom(BoxDomain::cube(2, -1.0, 1.0, 4), {0.0, 0.0}, 1.0, 1.0);
  std::stringstream good;
  write_grid_file(to_grid_file(f), good);
  const std::string bytes = good.str();

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::stringstream s1(bad_magic);
  EXPECT_TOMO_ERROR(read_grid_file(s1), ErrorCode::bad_magic);

  std::stringstream s2(bytes.substr(0, bytes.size() - 8));
  EXPECT_TOMO_ERROR(read_grid_file(s2), ErrorCode::payload_size_mismatch);

  std::string nan_payload = bytes;
  const double nan = std::nan("");
  std::memcpy(nan_payload.data() + nan_payload.size() - 8, &nan, 8);
  std::stringstream s3(nan_payload);
  EXPECT_TOMO_ERROR(read_grid_file(s3), ErrorCode::non_finite_sample);

  std::stringstream s4(bytes + std::string(8, '\0'));
  EXPECT_TOMO_ERROR(read_grid_file(s4), ErrorCode::payload_size_mismatch);
}

TEST(GridIo, MissingFileIsIoFailure) {
  EXPECT_TOMO_ERROR(read_grid(temp_path("does_not_exist.grd")), ErrorCode::io_failure);
}

TEST(GridIo, CsvHasHeaderAndOneRowPerNode) {
  const ScalarField f(BoxDomain::cube(2, 0.0, 1.0, 3));
  const std::string csv = field_csv(f);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,value");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  TomogramTable t{{"lambda", "theta"}, BoxDomain::cube(2, 0.0, 1.0, 2), std::vector<double>(4, 1.0)};
  const std::string tc = table_csv(t);
  EXPECT_EQ(tc.substr(0, tc.find('\n')), "lambda,theta,value");
}
