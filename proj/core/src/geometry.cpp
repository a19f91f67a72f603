#include "contact_focus/geometry.hpp"

#include "contact_focus/errors.hpp"

namespace contact_focus {
namespace {

void require_square(const Mat& x, Eigen::Index n, const char* what) {
  if (x.rows() != n || x.cols() != n) {
    throw InputError(std::string(what) + " has shape " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

Projector projector(const Vec& g, double tol) {
  if (!(tol > 0)) throw InputError("projector threshold must be positive");
  const auto n = g.size();
  const double norm = g.norm();
  if (norm <= tol) return {Mat::Identity(n, n), true};
  return {Mat::Identity(n, n) - g * g.transpose() / (norm * norm), false};
}

Mat projected_jacobian(const Mat& m, const Projector& p) {
  require_square(p.matrix, m.rows(), "projector");
  require_square(m, m.rows(), "jacobian");
  return p.matrix * m * p.matrix;
}

SymTensor2 compensator(const SymTensor2& h2, const Mat& m, const Projector& p) {
  const auto n = m.rows();
  require_square(m, n, "jacobian");
  require_square(p.matrix, n, "projector");
  require_square(h2, n, "stiffness");
  const Mat normal = Mat::Identity(n, n) - p.matrix;
  const Mat half = normal * m * h2;
  return half + half.transpose();
}

}  // namespace contact_focus
