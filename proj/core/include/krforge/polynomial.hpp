#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "krforge/field.hpp"

namespace krforge {

// Dense univariate polynomial over an exact field, coefficients lowest degree first.
// Invariant: the stored leading coefficient is nonzero (the zero polynomial stores nothing).
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field* f) : f_(f) {}
  Poly(const Field* f, std::vector<Scalar> c);

  static Poly constant(const Scalar& c);
  static Poly monomial(const Field* f, int deg, const Scalar& c);
  static Poly x(const Field* f) { return monomial(f, 1, f->one()); }

  const Field* field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const;
  const Scalar& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& s);
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(c_ == o.c_); }

  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly pow(int e) const;
  Poly derivative() const;
  Poly monic() const;
  Scalar eval(const Scalar& a) const;
  // p(a*x + b)
  Poly substitute_linear(const Scalar& a, const Scalar& b) const;
  // Image under an embedding into an extension of the coefficient field.
  Poly embed(const Field* f) const;

  static Poly gcd(Poly a, Poly b);

  std::string str(std::string_view var = "x") const { return format_polynomial(c_, var); }

 private:
  void trim();
  const Field* f_ = nullptr;
  std::vector<Scalar> c_;
};

}  // namespace krforge
