#pragma once

#include <optional>
#include <vector>

#include "contact_focus/poly.hpp"

namespace contact_focus {

// A truncated contact potential H = H0 + H1 + ... + HN in Q[t, y, phi], with
// component n homogeneous of fiber degree n. The drift field is read off H1.
struct ContactPotentialData {
  int dim = 1;
  int order = 2;  // truncation order N
  std::vector<Poly> components;

  /// H^(n), or the zero polynomial for n > N (truncation convention).
  Poly component(int n) const;

  /// B^i = coefficient of phi_i in H1, as polynomials in (t, y).
  std::vector<Poly> drift() const;
};

/// Throws InputError unless every component has the right dimension and is
/// homogeneous of its index degree in phi (zero components are allowed).
void validate(const ContactPotentialData& data);

/// C_p = (p - 1) dH^(p)/dt + sum_{n=0}^{p+1} (n - 1) {H^(n), H^(p+1-n)}.
Poly order_residual(const ContactPotentialData& data, int p);

struct ResidualSummary {
  int order = 0;
  std::size_t terms = 0;
  Rational max_abs = 0;
};

struct ResidualReport {
  int order = 2;
  int p_max = 4;
  std::vector<Poly> residuals;  // C_0 .. C_{p_max}

  // Each condition is evaluated through its own formula rather than by
  // reading off C_p, so agreement with residuals is a real cross-check.
  Poly transport_residual;                  // (i)  dH0/dt + B . grad H0
  std::vector<Poly> degeneracy_residuals;   // (ii) H2^{ij} dH0/dy^j, one per i
  std::vector<Poly> recurrence_residuals;   // (iii) p = 2..N
  std::vector<Poly> structural_residuals;   // (iv) p = N+1..p_max

  bool transport_ok = false;
  bool degeneracy_ok = false;
  bool recurrence_ok = false;
  bool structural_ok = false;

  bool all_residuals_zero() const;
  bool all_conditions() const { return transport_ok && degeneracy_ok && recurrence_ok && structural_ok; }
  /// Largest nonzero residual by term count, ties broken by coefficient size.
  std::optional<ResidualSummary> worst() const;
};

/// p_max defaults to N + 2. Throws PreconditionError if p_max < N + 1.
ResidualReport verify_closure(const ContactPotentialData& data, std::optional<int> p_max = std::nullopt);

/// m = 2 oscillator: H0 = (y1^2 + y2^2)/2, H1 = y2 phi1 - y1 phi2,
/// H2 = (-y2 phi1 + y1 phi2)^2 / 2.
ContactPotentialData harmonic_case();

/// m = 1 decay with a constant stiffness: H0 = 0, H1 = -y phi, H2 = k phi^2 / 2.
ContactPotentialData linear_const_k_case(const Rational& k = 1);

}  // namespace contact_focus
