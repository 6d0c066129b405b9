#pragma once

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "krforge/polynomial.hpp"

namespace krforge {

// Element of A = k[x]/(w): coefficients of 1, x, ..., x^(n-1).
using RingElement = std::vector<Scalar>;

// Monic potential w of degree n >= 1 together with the Frobenius structure of A = k[x]/(w):
// trace eps(r) = coefficient of x^(n-1), dual basis b^j with eps(x^i b^j) = delta_ij, and the
// handle element sum_i x^i b^i. Shared read-only; the lazily grown tables are guarded internally.
class Potential {
 public:
  explicit Potential(Poly w);
  Potential(const Potential& o) : Potential(o.w_) {}
  Potential& operator=(const Potential&) = delete;
  static Potential parse(std::string_view text, const Field* k);

  const Poly& poly() const { return w_; }
  const Field* field() const { return w_.field(); }
  int n() const { return w_.degree(); }
  bool separable() const { return separable_; }
  std::string str() const { return w_.str(); }

  RingElement zero() const;
  RingElement reduce(const Poly& p) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  // x^e reduced mod w.
  RingElement monomial(int e) const;
  const std::vector<RingElement>& dual_basis() const { return dual_; }
  const RingElement& handle() const { return handle_; }
  Scalar trace(const RingElement& r) const { return r[static_cast<std::size_t>(n() - 1)]; }
  Scalar evaluate(const RingElement& r, const Scalar& alpha) const;
  Poly to_poly(const RingElement& r) const { return Poly(field(), r); }

  // Iterated coproduct of x^e * h^g onto l boundary circles, as (exponents, coefficient) pairs.
  // l = 0 gives the closed evaluation eps(x^e h^g) with an empty exponent list.
  using Expansion = std::vector<std::pair<std::vector<int>, Scalar>>;
  const Expansion& neck_cut(int e, int g, int l) const;

 private:
  Poly w_;
  bool separable_ = false;
  std::vector<RingElement> dual_;
  RingElement handle_;
  mutable std::mutex mu_;
  mutable std::vector<RingElement> powers_;
  mutable std::map<std::tuple<int, int, int>, Expansion> cuts_;
};

// Free-function forms of the quotient-ring operations.
RingElement reduce_mod(const Poly& p, const Potential& w);
RingElement mul_mod(const RingElement& a, const RingElement& b, const Potential& w);
bool is_separable(const Potential& w);
std::vector<Scalar> roots_in_field(const Potential& w, const Field* k);
std::vector<RingElement> dual_basis(const Potential& w);
RingElement handle_element(const Potential& w);
Scalar trace(const RingElement& r, const Potential& w);

}  // namespace krforge
