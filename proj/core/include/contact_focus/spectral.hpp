#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "contact_focus/linalg.hpp"

namespace contact_focus {

enum class Regime { underdamped, critical, overdamped, non_dissipative };

std::string_view to_string(Regime regime);

// sigma is the slowest decay rate, -max_k Re(lambda_k); it is only present
// when every eigenvalue has strictly negative real part.
struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;
  std::optional<double> sigma;
  std::optional<double> tau_f;
  Regime regime = Regime::non_dissipative;
};

/// Coefficients of det(lambda I - M), highest degree first; the leading
/// coefficient is always 1.
std::vector<double> characteristic_polynomial(const Mat& m);

std::complex<double> evaluate_polynomial(const std::vector<double>& coeffs, std::complex<double> z);

/// All eigenvalues of a 1x1 to 4x4 real matrix, sorted by real part then
/// imaginary part. Complex roots come in exact conjugate pairs.
std::vector<std::complex<double>> eigenvalues(const Mat& m);

SpectralReport amplification_rate(const Mat& m);

/// Closed-form rates for the linearised Duffing oscillator at the origin.
SpectralReport duffing_regime(double delta, double alpha);

}  // namespace contact_focus
