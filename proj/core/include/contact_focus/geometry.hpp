#pragma once

#include "contact_focus/linalg.hpp"

namespace contact_focus {

inline constexpr double kDefaultGradientTolerance = 1e-12;

/// Orthogonal projector onto the complement of a gradient direction.
/// identity_branch records that |g| fell below the threshold and P = I was used.
struct Projector {
  Mat matrix;
  bool identity_branch = false;
};

/// I - g g^T / |g|^2, or I when |g| <= tol.
Projector projector(const Vec& g, double tol = kDefaultGradientTolerance);

/// P M P.
Mat projected_jacobian(const Mat& m, const Projector& p);

/// H M^T (I - P) + (I - P) M H: the symmetric correction that keeps the
/// projected transport consistent with the unprojected one on degenerate H.
SymTensor2 compensator(const SymTensor2& h2, const Mat& m, const Projector& p);

}  // namespace contact_focus
