#include "contact_focus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "contact_focus/drift.hpp"
#include "contact_focus/errors.hpp"

namespace contact_focus {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kConvergence = 1e-12;
constexpr double kDissipativeThreshold = -1e-12;

std::complex<double> evaluate_derivative(const std::vector<double>& coeffs, std::complex<double> z) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::complex<double> acc = 0.0;
  for (int k = 0; k < n; ++k) acc = acc * z + coeffs[k] * static_cast<double>(n - k);
  return acc;
}

// Durand-Kerner (Weierstrass) simultaneous iteration on a monic polynomial.
std::vector<std::complex<double>> durand_kerner(const std::vector<double>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  double bound = 0.0;
  for (int k = 1; k <= n; ++k) bound = std::max(bound, std::abs(coeffs[k]));
  const double radius = 1.0 + bound;

  std::vector<std::complex<double>> z(n);
  for (int k = 0; k < n; ++k) {
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);
  }

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> denom = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != k) denom *= (z[k] - z[j]);
      }
      if (std::abs(denom) == 0.0) denom = std::complex<double>(1e-14, 1e-14);
      const std::complex<double> step = evaluate_polynomial(coeffs, z[k]) / denom;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (max_step <= kConvergence) break;
  }

  // A couple of Newton steps sharpen simple roots; skipped near multiple roots
  // where the derivative vanishes.
  for (auto& root : z) {
    for (int i = 0; i < 3; ++i) {
      const auto d = evaluate_derivative(coeffs, root);
      if (std::abs(d) < 1e-8 * (1.0 + std::abs(root))) break;
      const auto next = root - evaluate_polynomial(coeffs, root) / d;
      if (std::abs(evaluate_polynomial(coeffs, next)) >= std::abs(evaluate_polynomial(coeffs, root))) break;
      root = next;
    }
  }
  return z;
}

// Real coefficients force conjugate symmetry; restore it exactly so callers
// can rely on paired imaginary parts.
void enforce_conjugate_pairs(std::vector<std::complex<double>>& roots) {
  const std::size_t n = roots.size();
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    const double scale = 1.0 + std::abs(roots[i]);
    if (std::abs(roots[i].imag()) <= 1e-7 * scale) {
      roots[i] = {roots[i].real(), 0.0};
      used[i] = true;
      continue;
    }
    std::size_t best = n;
    double best_dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || used[j]) continue;
      const double dist = std::abs(roots[j] - std::conj(roots[i]));
      if (best == n || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    used[i] = true;
    if (best == n) continue;
    used[best] = true;
    const double re = 0.5 * (roots[i].real() + roots[best].real());
    const double im = 0.5 * (std::abs(roots[i].imag()) + std::abs(roots[best].imag()));
    roots[i] = {re, roots[i].imag() > 0 ? im : -im};
    roots[best] = std::conj(roots[i]);
  }
}

Regime classify(const std::vector<std::complex<double>>& ev) {
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      const double scale = 1.0 + std::max(std::abs(ev[i]), std::abs(ev[j]));
      if (std::abs(ev[i] - ev[j]) <= 1e-6 * scale) return Regime::critical;
    }
  }
  for (const auto& z : ev) {
    if (z.imag() != 0.0) return Regime::underdamped;
  }
  return Regime::overdamped;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::underdamped: return "underdamped";
    case Regime::critical: return "critical";
    case Regime::overdamped: return "overdamped";
    case Regime::non_dissipative: return "non_dissipative";
  }
  return "unknown";
}

std::vector<double> characteristic_polynomial(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("characteristic polynomial needs a square matrix");
  const int n = static_cast<int>(m.rows());
  // Faddeev-LeVerrier: exact in exact arithmetic, well conditioned for n <= 4.
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[0] = 1.0;
  Mat aux = Mat::Zero(n, n);
  const Mat id = Mat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    aux = m * aux + coeffs[k - 1] * id;
    coeffs[k] = -(m * aux).trace() / k;
  }
  return coeffs;
}

std::complex<double> evaluate_polynomial(const std::vector<double>& coeffs, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (double c : coeffs) acc = acc * z + c;
  return acc;
}

std::vector<std::complex<double>> eigenvalues(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("eigenvalues need a square matrix");
  if (m.rows() < 1 || m.rows() > kMaxDim) {
    throw UnsupportedError("eigenvalues support 1 <= m <= " + std::to_string(kMaxDim) + ", got " +
                           std::to_string(m.rows()));
  }
  if (!m.allFinite()) throw InputError("matrix has non-finite entries");

  const auto coeffs = characteristic_polynomial(m);
  std::vector<std::complex<double>> roots;
  if (m.rows() == 1) {
    roots = {std::complex<double>(-coeffs[1], 0.0)};
  } else {
    roots = durand_kerner(coeffs);
    enforce_conjugate_pairs(roots);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

SpectralReport amplification_rate(const Mat& m) {
  SpectralReport report;
  report.eigenvalues = eigenvalues(m);
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& z : report.eigenvalues) max_re = std::max(max_re, z.real());
  if (max_re < kDissipativeThreshold) {
    report.sigma = -max_re;
    report.tau_f = 1.0 / *report.sigma;
    report.regime = classify(report.eigenvalues);
  } else {
    report.regime = Regime::non_dissipative;
  }
  return report;
}

SpectralReport duffing_regime(double delta, double alpha) {
  if (!std::isfinite(delta) || !std::isfinite(alpha)) throw DomainError("duffing parameters must be finite");
  if (!(alpha > 0)) throw DomainError("duffing regime needs alpha > 0");
  if (!(delta > 0)) throw DomainError("duffing regime needs delta > 0");

  SpectralReport report;
  const double disc = delta * delta - 4.0 * alpha;
  if (std::abs(disc) <= 1e-10 * std::max(1.0, delta * delta)) {
    report.regime = Regime::critical;
    report.eigenvalues = {{-delta / 2, 0.0}, {-delta / 2, 0.0}};
    report.sigma = delta / 2;
  } else if (disc < 0) {
    report.regime = Regime::underdamped;
    const double wd = std::sqrt(-disc) / 2;
    report.eigenvalues = {{-delta / 2, -wd}, {-delta / 2, wd}};
    report.sigma = delta / 2;
  } else {
    report.regime = Regime::overdamped;
    const double root = std::sqrt(disc);
    // (delta - root) / 2 rewritten without cancellation.
    const double slow = 2.0 * alpha / (delta + root);
    report.eigenvalues = {{(-delta - root) / 2, 0.0}, {-slow, 0.0}};
    report.sigma = slow;
  }
  report.tau_f = 1.0 / *report.sigma;
  return report;
}

}  // namespace contact_focus
