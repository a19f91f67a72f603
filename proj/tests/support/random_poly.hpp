#pragma once

#include <random>
#include <vector>

#include "contact_focus/closure.hpp"
#include "contact_focus/poly.hpp"

namespace contact_focus::testing {

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Random polynomial whose terms have (t, y) degree <= base_deg and, if
// fiber_deg >= 0, fiber degree exactly fiber_deg (otherwise at most 2).
inline Poly random_poly(std::mt19937_64& rng, int m, int terms, int base_deg, int fiber_deg = -1) {
  Poly p(m);
  std::uniform_int_distribution<int> slot_base(0, m), slot_fiber(0, m - 1), deg(0, base_deg), any_fiber(0, 2);
  for (int k = 0; k < terms; ++k) {
    Poly::Exponents e(static_cast<std::size_t>(1 + 2 * m), 0);
    for (int i = deg(rng); i > 0; --i) e[static_cast<std::size_t>(slot_base(rng))] += 1;
    const int fd = fiber_deg >= 0 ? fiber_deg : any_fiber(rng);
    for (int i = 0; i < fd; ++i) e[static_cast<std::size_t>(1 + m + slot_fiber(rng))] += 1;
    p.add_term(e, small_rational(rng));
  }
  return p;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, int m) {
  std::vector<Rational> pt(static_cast<std::size_t>(1 + 2 * m));
  for (auto& q : pt) q = small_rational(rng);
  return pt;
}

inline ContactPotentialData random_potential(std::mt19937_64& rng, int m, int order) {
  ContactPotentialData d{m, order, {}};
  for (int n = 0; n <= order; ++n) d.components.push_back(random_poly(rng, m, 4, 2, n));
  return d;
}

}  // namespace contact_focus::testing
