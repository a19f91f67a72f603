#include "contact_focus/closure.hpp"

#include <algorithm>
#include <string>

#include "contact_focus/errors.hpp"

namespace contact_focus {
namespace {

Poly bracket_sum(const ContactPotentialData& data, int p, int n_lo, int n_hi) {
  Poly sum(data.dim);
  for (int n = n_lo; n <= n_hi; ++n) {
    if (n == 1) continue;
    const int other = p + 1 - n;
    if (other < 0) continue;
    sum += poisson(data.component(n), data.component(other)) * Rational(n - 1);
  }
  return sum;
}

bool all_zero(const std::vector<Poly>& ps) {
  for (const auto& p : ps) {
    if (!p.is_zero()) return false;
  }
  return true;
}

}  // namespace

Poly ContactPotentialData::component(int n) const {
  if (n < 0 || n > order || n >= static_cast<int>(components.size())) return Poly(dim);
  return components[static_cast<std::size_t>(n)];
}

std::vector<Poly> ContactPotentialData::drift() const {
  const Poly h1 = component(1);
  std::vector<Poly> b;
  b.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) b.push_back(h1.diff(Var::phi(i)));
  return b;
}

void validate(const ContactPotentialData& data) {
  if (data.dim < 1) throw InputError("potential dimension must be >= 1");
  if (data.order < 2) throw InputError("truncation order N must be >= 2");
  if (static_cast<int>(data.components.size()) > data.order + 1) {
    throw InputError("more components than truncation order N + 1");
  }
  for (std::size_t n = 0; n < data.components.size(); ++n) {
    const Poly& h = data.components[n];
    if (h.dim() != data.dim) throw InputError("component " + std::to_string(n) + " has the wrong dimension");
    for (const auto& [e, c] : h.terms()) {
      if (h.phi_degree(e) != static_cast<int>(n)) {
        throw InputError("component " + std::to_string(n) + " is not homogeneous of fiber degree " +
                         std::to_string(n));
      }
    }
  }
}

Poly order_residual(const ContactPotentialData& data, int p) {
  if (p < 0) throw InputError("residual order must be >= 0");
  Poly c = data.component(p).diff(Var::t()) * Rational(p - 1);
  c += bracket_sum(data, p, 0, p + 1);
  return c;
}

bool ResidualReport::all_residuals_zero() const { return all_zero(residuals); }

std::optional<ResidualSummary> ResidualReport::worst() const {
  std::optional<ResidualSummary> best;
  for (std::size_t p = 0; p < residuals.size(); ++p) {
    const Poly& r = residuals[p];
    if (r.is_zero()) continue;
    ResidualSummary s{static_cast<int>(p), r.term_count(), r.max_abs_coefficient()};
    if (!best || s.terms > best->terms || (s.terms == best->terms && s.max_abs > best->max_abs)) best = s;
  }
  return best;
}

ResidualReport verify_closure(const ContactPotentialData& data, std::optional<int> p_max) {
  validate(data);
  const int n_order = data.order;
  const int top = p_max.value_or(n_order + 2);
  if (top < n_order + 1) {
    throw PreconditionError("p_max must be at least N + 1 = " + std::to_string(n_order + 1));
  }

  ResidualReport report;
  report.order = n_order;
  report.p_max = top;
  for (int p = 0; p <= top; ++p) report.residuals.push_back(order_residual(data, p));

  const Poly h0 = data.component(0);
  const auto b = data.drift();

  // (i) zero-order transport, written with the drift instead of a bracket.
  report.transport_residual = h0.diff(Var::t());
  for (int i = 0; i < data.dim; ++i) report.transport_residual += b[static_cast<std::size_t>(i)] * h0.diff(Var::y(i));

  // (ii) H2^{ij} dH0/dy^j with H2^{ij} = d^2 H2 / dphi_i dphi_j.
  const Poly h2 = data.component(2);
  for (int i = 0; i < data.dim; ++i) {
    Poly row(data.dim);
    for (int j = 0; j < data.dim; ++j) row += h2.diff(Var::phi(i)).diff(Var::phi(j)) * h0.diff(Var::y(j));
    report.degeneracy_residuals.push_back(row);
  }

  // (iii) explicit recurrence for 2 <= p <= N. The boundary term
  // -(p+1){H0, H^(p+1)} is kept in full; it vanishes on its own when H0 is
  // constant and, under truncation, for p = N.
  for (int p = 2; p <= n_order; ++p) {
    const Poly hp = data.component(p);
    Poly r = hp.diff(Var::t()) * Rational(p - 1);
    r += poisson(hp, data.component(1)) * Rational(p - 1);
    for (int n = 2; n <= p - 1; ++n) r += poisson(data.component(n), data.component(p + 1 - n)) * Rational(n - 1);
    r -= poisson(h0, data.component(p + 1)) * Rational(p + 1);
    report.recurrence_residuals.push_back(r);
  }

  // (iv) structural closure beyond the truncation order.
  for (int p = n_order + 1; p <= top; ++p) {
    const int lo = std::max(0, p + 1 - n_order);
    report.structural_residuals.push_back(bracket_sum(data, p, lo, n_order));
  }

  report.transport_ok = report.transport_residual.is_zero();
  report.degeneracy_ok = all_zero(report.degeneracy_residuals);
  report.recurrence_ok = all_zero(report.recurrence_residuals);
  report.structural_ok = all_zero(report.structural_residuals);
  return report;
}

ContactPotentialData harmonic_case() {
  constexpr int m = 2;
  const Poly y1 = Poly::variable(m, Var::y(0)), y2 = Poly::variable(m, Var::y(1));
  const Poly p1 = Poly::variable(m, Var::phi(0)), p2 = Poly::variable(m, Var::phi(1));
  const Rational half(1, 2);
  const Poly h0 = (y1 * y1 + y2 * y2) * half;
  const Poly h1 = y2 * p1 - y1 * p2;
  const Poly w = y1 * p2 - y2 * p1;
  return {m, 2, {h0, h1, w * w * half}};
}

ContactPotentialData linear_const_k_case(const Rational& k) {
  constexpr int m = 1;
  const Poly y = Poly::variable(m, Var::y(0)), phi = Poly::variable(m, Var::phi(0));
  return {m, 2, {Poly(m), -(y * phi), phi * phi * (k / 2)}};
}

}  // namespace contact_focus
