#include <doctest.h>

#include <cmath>
#include <random>

#include "contact_focus/drift.hpp"
#include "contact_focus/errors.hpp"

using namespace contact_focus;

namespace {

const DuffingParams kPaper{0.3, 1.0, 1.0, 0.5, 1.2};

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::vector<DriftSystem> builtin_systems() {
  Mat a(3, 3);
  a << -1.0, 0.5, 0.0, -0.2, -0.7, 0.3, 0.1, 0.0, -2.0;
  return {DriftSystem::duffing(kPaper), DriftSystem::linear(a), DriftSystem::harmonic(),
          DriftSystem::scalar_decay(2.0)};
}

}  // namespace

TEST_CASE("drift values at the documented points") {
  CHECK((eval_drift(DriftSystem::duffing(kPaper), 0.0, vec({0, 0})) - vec({0, 0.5})).norm() == 0.0);
  CHECK(eval_drift(DriftSystem::scalar_decay(2.0), 0.0, vec({3}))(0) == -6.0);
  CHECK((eval_drift(DriftSystem::harmonic(), 0.0, vec({1, 0})) - vec({0, -1})).norm() == 0.0);
}

TEST_CASE("analytic jacobians") {
  const auto duffing = DriftSystem::duffing(kPaper);
  Mat origin(2, 2);
  origin << 0, 1, -1, -0.3;
  CHECK((eval_jacobian(duffing, 0.0, vec({0, 0.7})) - origin).norm() == 0.0);

  Mat at_one(2, 2);
  at_one << 0, 1, -4, -0.3;
  CHECK((eval_jacobian(duffing, 1.3, vec({1, -2})) - at_one).norm() == 0.0);

  CHECK(eval_jacobian(DriftSystem::scalar_decay(2.0), 0.0, vec({5}))(0, 0) == -2.0);
}

TEST_CASE("finite-difference jacobian examples") {
  const auto duffing = DriftSystem::duffing(kPaper);
  const Vec y0 = vec({0, 0});
  CHECK((fd_jacobian(duffing, 0.0, y0, 1e-5) - eval_jacobian(duffing, 0.0, y0)).cwiseAbs().maxCoeff() <= 1e-8);

  Mat a(2, 2);
  a << 0.25, -1.5, 2.0, -0.125;
  CHECK((fd_jacobian(DriftSystem::linear(a), 0.0, vec({0.3, 7.0}), 1e-3) - a).cwiseAbs().maxCoeff() <= 1e-12);

  Mat rot(2, 2);
  rot << 0, 1, -1, 0;
  CHECK((fd_jacobian(DriftSystem::harmonic(), 0.0, vec({0.3, -0.7}), 1e-5) - rot).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("analytic and finite-difference jacobians agree on random samples") {
  std::mt19937_64 rng(20261017);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& system : builtin_systems()) {
    CAPTURE(to_string(system.kind()));
    for (int k = 0; k < 100; ++k) {
      Vec y(system.dim());
      for (auto& v : y) v = u(rng);
      const double t = 10.0 * u(rng);
      const double err = (eval_jacobian(system, t, y) - fd_jacobian(system, t, y, 1e-5)).cwiseAbs().maxCoeff();
      REQUIRE(err <= 1e-6);
    }
  }
}

TEST_CASE("duffing jacobian trace is -delta everywhere") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto duffing = DriftSystem::duffing(kPaper);
  for (int k = 0; k < 100; ++k) {
    CHECK(eval_jacobian(duffing, u(rng), vec({u(rng), u(rng)})).trace() == doctest::Approx(-0.3).epsilon(1e-15));
  }
}

TEST_CASE("harmonic drift is tangent to energy level sets") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto harmonic = DriftSystem::harmonic();
  for (int k = 0; k < 100; ++k) {
    const Vec y = vec({u(rng), u(rng)});
    CHECK(eval_drift(harmonic, 0.0, y).dot(y) == 0.0);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(eval_drift(DriftSystem::harmonic(), 0.0, vec({1})), InputError);
  CHECK_THROWS_AS(eval_jacobian(DriftSystem::scalar_decay(1.0), 0.0, vec({1, 2})), InputError);
  CHECK_THROWS_AS(fd_jacobian(DriftSystem::harmonic(), 0.0, vec({1, 0}), 0.0), InputError);
  CHECK_THROWS_AS(DriftSystem::duffing({-0.1, 1, 1, 0, 1}), InputError);
  CHECK_THROWS_AS(DriftSystem::duffing({0.1, NAN, 1, 0, 1}), InputError);
  CHECK_THROWS_AS(DriftSystem::linear(Mat::Identity(5, 5)), InputError);
  CHECK_THROWS_AS(DriftSystem::linear(Mat::Zero(2, 3)), InputError);
  CHECK_THROWS_AS(DriftSystem::scalar_decay(INFINITY), InputError);
}

TEST_CASE("system dimensions and names") {
  for (const auto& s : builtin_systems()) {
    CHECK(parse_system_kind(to_string(s.kind())) == s.kind());
    CHECK(s.dim() >= 1);
    CHECK(s.dim() <= kMaxDim);
  }
  CHECK(DriftSystem::duffing(kPaper).dim() == 2);
  CHECK(DriftSystem::harmonic().dim() == 2);
  CHECK(DriftSystem::scalar_decay(1).dim() == 1);
  CHECK_FALSE(parse_system_kind("lorenz").has_value());
}
