#include <doctest.h>

#include <cmath>
#include <random>

#include "contact_focus/errors.hpp"
#include "contact_focus/spectral.hpp"

using namespace contact_focus;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

double residual_bound(const Mat& m) { return 1e-9 * (1.0 + std::pow(m.norm(), static_cast<double>(m.rows()))); }

// Eigen's general eigensolver is independent of the characteristic-polynomial
// route and serves as the oracle for random matrices.
std::vector<std::complex<double>> reference_eigenvalues(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m, false);
  std::vector<std::complex<double>> out(es.eigenvalues().begin(), es.eigenvalues().end());
  return out;
}

}  // namespace

TEST_CASE("eigenvalues of the documented matrices") {
  // lambda = (-delta +- sqrt(delta^2 - 4 alpha)) / 2 with delta = 0.3, alpha = 1.
  const double wd = std::sqrt(4.0 - 0.09) / 2.0;
  auto ev = eigenvalues(mat2(0, 1, -1, -0.3));
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].real() == doctest::Approx(-0.15).epsilon(1e-12));
  CHECK(ev[1].real() == doctest::Approx(-0.15).epsilon(1e-12));
  CHECK(ev[0].imag() == doctest::Approx(-wd).epsilon(1e-12));
  CHECK(ev[1].imag() == doctest::Approx(wd).epsilon(1e-12));
  CHECK(wd == doctest::Approx(0.988686).epsilon(1e-6));

  ev = eigenvalues(Mat::Constant(1, 1, -2.0));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0] == std::complex<double>(-2.0, 0.0));

  ev = eigenvalues(mat2(0, 1, -1, 0));
  CHECK(std::abs(ev[0] - std::complex<double>(0, -1)) <= 1e-12);
  CHECK(std::abs(ev[1] - std::complex<double>(0, 1)) <= 1e-12);
}

TEST_CASE("amplification rate examples") {
  auto r = amplification_rate(mat2(0, 1, -1, -0.3));
  REQUIRE(r.sigma.has_value());
  CHECK(*r.sigma == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(*r.tau_f == doctest::Approx(2.0 / 0.3).epsilon(1e-12));
  CHECK(*r.tau_f == doctest::Approx(6.6667).epsilon(1e-4));
  CHECK(r.regime == Regime::underdamped);

  r = amplification_rate(mat2(0, 1, -1, 0));
  CHECK(r.regime == Regime::non_dissipative);
  CHECK_FALSE(r.sigma.has_value());
  CHECK_FALSE(r.tau_f.has_value());

  r = amplification_rate(Mat::Constant(1, 1, -2.0));
  CHECK(*r.sigma == 2.0);
  CHECK(*r.tau_f == 0.5);
}

TEST_CASE("duffing regime closed forms") {
  auto r = duffing_regime(0.3, 1.0);
  CHECK(r.regime == Regime::underdamped);
  CHECK(*r.sigma == doctest::Approx(0.15));
  CHECK(*r.tau_f == doctest::Approx(6.667).epsilon(1e-4));

  r = duffing_regime(2.0, 1.0);
  CHECK(r.regime == Regime::critical);
  CHECK(*r.sigma == 1.0);
  CHECK(*r.tau_f == 1.0);

  r = duffing_regime(3.0, 1.0);
  CHECK(r.regime == Regime::overdamped);
  CHECK(*r.sigma == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(*r.sigma == doctest::Approx(0.381966).epsilon(1e-6));
  // Cross-check against the eigenvalue route.
  CHECK(*amplification_rate(mat2(0, 1, -1, -3)).sigma == doctest::Approx(*r.sigma).epsilon(1e-12));

  CHECK_THROWS_AS(duffing_regime(0.3, 0.0), DomainError);
  CHECK_THROWS_AS(duffing_regime(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(duffing_regime(-1.0, 1.0), DomainError);
}

TEST_CASE("closed-form and eigenvalue rates agree for random duffing parameters") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u_delta(0.01, 5.0), u_alpha(0.01, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double delta = u_delta(rng), alpha = u_alpha(rng);
    CAPTURE(delta);
    CAPTURE(alpha);
    const auto closed = duffing_regime(delta, alpha);
    const auto numeric = amplification_rate(mat2(0, 1, -alpha, -delta));
    REQUIRE(numeric.sigma.has_value());
    CHECK(std::abs(*closed.sigma - *numeric.sigma) <= 1e-9);
  }
}

TEST_CASE("random matrices: residual bound, conjugate pairing, agreement with a general solver") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int m = 1; m <= 4; ++m) {
    for (int trial = 0; trial < 200; ++trial) {
      Mat a(m, m);
      for (auto& x : a.reshaped()) x = u(rng);
      const auto ev = eigenvalues(a);
      REQUIRE(ev.size() == static_cast<std::size_t>(m));
      const auto coeffs = characteristic_polynomial(a);
      for (const auto& z : ev) CHECK(std::abs(evaluate_polynomial(coeffs, z)) <= residual_bound(a));

      double imag_sum = 0.0;
      for (const auto& z : ev) imag_sum += z.imag();
      CHECK(std::abs(imag_sum) <= 1e-9);

      // Every reference eigenvalue has a close partner.
      for (const auto& ref : reference_eigenvalues(a)) {
        double best = INFINITY;
        for (const auto& z : ev) best = std::min(best, std::abs(z - ref));
        CHECK(best <= 1e-6 * (1.0 + std::abs(ref)));
      }
    }
  }
}

TEST_CASE("characteristic polynomial of a companion-like matrix") {
  // (l + 1)(l + 2)(l + 3) = l^3 + 6 l^2 + 11 l + 6
  Mat a = Mat::Zero(3, 3);
  a.diagonal() << -1, -2, -3;
  a(0, 2) = 5.0;
  const auto c = characteristic_polynomial(a);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(6.0));
  CHECK(c[2] == doctest::Approx(11.0));
  CHECK(c[3] == doctest::Approx(6.0));
  const auto ev = eigenvalues(a);
  CHECK(ev[0].real() == doctest::Approx(-3.0));
  CHECK(ev[1].real() == doctest::Approx(-2.0));
  CHECK(ev[2].real() == doctest::Approx(-1.0));
  CHECK(amplification_rate(a).regime == Regime::overdamped);
}

TEST_CASE("repeated eigenvalue is reported as critical") {
  const auto r = amplification_rate(mat2(0, 1, -1, -2));
  CHECK(r.regime == Regime::critical);
  CHECK(*r.sigma == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("unsupported dimension") {
  CHECK_THROWS_AS(eigenvalues(Mat::Identity(5, 5)), UnsupportedError);
  CHECK_THROWS_AS(eigenvalues(Mat::Zero(2, 3)), InputError);
}
