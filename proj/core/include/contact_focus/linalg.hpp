#pragma once

#include <Eigen/Dense>

namespace contact_focus {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Symmetric second-order stiffness tensor. Stored as a full matrix; callers
/// restore exact symmetry with symmetrized() after numerical updates.
using SymTensor2 = Mat;

inline Mat symmetrized(const Mat& x) { return 0.5 * (x + x.transpose()); }

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

}  // namespace contact_focus
