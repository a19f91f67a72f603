#include "contact_focus/poly.hpp"

#include <cctype>
#include <sstream>

#include "contact_focus/errors.hpp"

namespace contact_focus {

int Var::slot(int dim) const {
  switch (kind) {
    case Kind::time: return 0;
    case Kind::base: return 1 + index;
    case Kind::fiber: return 1 + dim + index;
  }
  return 0;
}

Poly::Poly(int dim) : dim_(dim) {
  if (dim < 1) throw InputError("polynomial dimension must be >= 1");
}

Poly Poly::constant(int dim, const Rational& c) {
  Poly p(dim);
  p.add_term(Exponents(static_cast<std::size_t>(p.num_vars()), 0), c);
  return p;
}

Poly Poly::variable(int dim, Var v) {
  Poly p(dim);
  if (v.kind != Var::Kind::time && (v.index < 0 || v.index >= dim)) throw InputError("variable index out of range");
  Exponents e(static_cast<std::size_t>(p.num_vars()), 0);
  e[static_cast<std::size_t>(v.slot(dim))] = 1;
  p.add_term(e, 1);
  return p;
}

Poly Poly::monomial(int dim, Exponents exps, const Rational& c) {
  Poly p(dim);
  p.add_term(exps, c);
  return p;
}

void Poly::add_term(const Exponents& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != num_vars()) {
    throw InputError("exponent vector has " + std::to_string(exps.size()) + " entries, expected " +
                     std::to_string(num_vars()));
  }
  Rational q = c;
  q.canonicalize();
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same_dim(const Poly& other) const {
  if (other.dim_ != dim_) throw InputError("polynomial dimensions differ");
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_dim(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_dim(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_dim(b);
  Poly out(a.dim_);
  Poly::Exponents e(static_cast<std::size_t>(a.num_vars()));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::diff(Var v) const {
  const auto s = static_cast<std::size_t>(v.slot(dim_));
  if (s >= static_cast<std::size_t>(num_vars())) throw InputError("variable index out of range");
  Poly out(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[s] == 0) continue;
    Exponents d = e;
    d[s] -= 1;
    out.add_term(d, c * e[s]);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != num_vars()) throw InputError("evaluation point has wrong arity");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (std::uint32_t p = 0; p < e[k]; ++p) term *= point[k];
    }
    sum += term;
  }
  return sum;
}

int Poly::phi_degree(const Exponents& exps) const {
  int deg = 0;
  for (int i = 0; i < dim_; ++i) deg += static_cast<int>(exps[static_cast<std::size_t>(1 + dim_ + i)]);
  return deg;
}

Rational Poly::max_abs_coefficient() const {
  Rational best = 0;
  for (const auto& [e, c] : terms_) {
    const Rational a = abs(c);
    if (a > best) best = a;
  }
  return best;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;

    std::ostringstream mono;
    bool any = false;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (any) mono << "*";
      any = true;
      const int idx = static_cast<int>(k);
      if (idx == 0) {
        mono << "t";
      } else if (idx <= dim_) {
        mono << "y" << idx;
      } else {
        mono << "phi" << idx - dim_;
      }
      if (e[k] > 1) mono << "^" << e[k];
    }
    if (!any) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono.str();
    } else {
      os << mag.get_str() << "*" << mono.str();
    }
  }
  return os.str();
}

Poly poisson(const Poly& f, const Poly& g) {
  if (f.dim() != g.dim()) throw InputError("poisson bracket of polynomials with different dimensions");
  Poly out(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    out += f.diff(Var::y(i)) * g.diff(Var::phi(i));
    out -= f.diff(Var::phi(i)) * g.diff(Var::y(i));
  }
  return out;
}

std::map<int, Poly> phi_parts(const Poly& p) {
  std::map<int, Poly> parts;
  for (const auto& [e, c] : p.terms()) {
    auto it = parts.try_emplace(p.phi_degree(e), p.dim()).first;
    it->second.add_term(e, c);
  }
  return parts;
}

int homogeneous_phi_degree(const Poly& p) {
  const auto parts = phi_parts(p);
  return parts.size() == 1 ? parts.begin()->first : -1;
}

Poly euler(const Poly& p) {
  Poly out(p.dim());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c * p.phi_degree(e));
  return out;
}

Poly discriminant(const Poly& p) {
  Poly out(p.dim());
  for (const auto& [n, part] : phi_parts(p)) out += part * Rational(n - 1);
  return out;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
    throw InputError("not an exact rational: \"" + text + "\"");
  }
  Rational q(mpz_class(num[0] == '+' ? num.substr(1) : num), mpz_class(den));
  if (q.get_den() == 0) throw InputError("zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

}  // namespace contact_focus
