#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace contact_focus {

using Rational = mpq_class;

/// A variable of the polynomial ring Q[t, y1..ym, phi1..phim]. Indices are
/// zero-based; printing uses one-based names.
struct Var {
  enum class Kind { time, base, fiber };
  Kind kind = Kind::time;
  int index = 0;

  static Var t() { return {Kind::time, 0}; }
  static Var y(int i) { return {Kind::base, i}; }
  static Var phi(int i) { return {Kind::fiber, i}; }

  /// Position in the exponent vector, ordered (t, y1..ym, phi1..phim).
  int slot(int dim) const;
};

// Sparse polynomial with exact rational coefficients. Terms live in an ordered
// map keyed by exponent vectors and zero coefficients are never stored, so
// structural equality is polynomial equality.
class Poly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using Terms = std::map<Exponents, Rational>;

  explicit Poly(int dim = 1);

  static Poly constant(int dim, const Rational& c);
  static Poly variable(int dim, Var v);
  static Poly monomial(int dim, Exponents exps, const Rational& c);

  int dim() const noexcept { return dim_; }
  int num_vars() const noexcept { return 1 + 2 * dim_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// Adds c * monomial, merging with an existing term.
  void add_term(const Exponents& exps, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

  /// Formal partial derivative.
  Poly diff(Var v) const;

  /// point is ordered like the exponent vectors: (t, y1..ym, phi1..phim).
  Rational evaluate(std::span<const Rational> point) const;

  /// Total degree in the fiber variables of a single monomial.
  int phi_degree(const Exponents& exps) const;

  /// Largest |coefficient|; zero for the zero polynomial.
  Rational max_abs_coefficient() const;

  std::string to_string() const;

 private:
  void require_same_dim(const Poly& other) const;

  int dim_;
  Terms terms_;
};

/// Canonical bracket {F, G} = dF/dy^i dG/dphi_i - dF/dphi_i dG/dy^i.
Poly poisson(const Poly& f, const Poly& g);

/// Terms grouped by total fiber degree; the parts sum back to p exactly.
std::map<int, Poly> phi_parts(const Poly& p);

/// Homogeneous fiber degree, or -1 when p is zero or mixes degrees.
int homogeneous_phi_degree(const Poly& p);

/// Euler operator phi_i d/dphi_i.
Poly euler(const Poly& p);

/// Sum over fiber-degree parts of (n - 1) H^(n).
Poly discriminant(const Poly& p);

/// Exact rational from "p/q" or an integer literal; throws InputError otherwise.
Rational parse_rational(const std::string& text);

}  // namespace contact_focus
