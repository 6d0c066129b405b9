#include "krforge/polynomial.hpp"

#include "krforge/errors.hpp"

namespace krforge {

Poly::Poly(const Field* f, std::vector<Scalar> c) : f_(f), c_(std::move(c)) {
  for (auto& s : c_) s = f_->embed(s);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const Field* f, int deg, const Scalar& c) {
  std::vector<Scalar> v(static_cast<std::size_t>(deg) + 1, f->zero());
  v.back() = c;
  return Poly(f, std::move(v));
}

Scalar Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return f_ ? f_->zero() : Scalar();
  return c_[static_cast<std::size_t>(i)];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (f_ == nullptr) f_ = o.f_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), f_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  const Field* f = a.f_ ? a.f_ : b.f_;
  if (a.is_zero() || b.is_zero()) return Poly(f);
  std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, f->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(f, std::move(r));
}

Poly operator*(Poly a, const Scalar& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) fail(ErrorKind::NotInvertible, "polynomial division by zero");
  const Field* f = f_ ? f_ : d.f_;
  std::vector<Scalar> a = c_;
  if (a.size() < d.c_.size()) return {Poly(f), *this};
  std::vector<Scalar> q(a.size() - d.c_.size() + 1, f->zero());
  Scalar inv = d.lead().inverse();
  const std::size_t m = d.c_.size();
  for (std::size_t k = a.size(); k-- >= m;) {
    if (a[k].is_zero()) continue;
    Scalar c = a[k] * inv;
    q[k - m + 1] = c;
    for (std::size_t j = 0; j < m; ++j) a[k - m + 1 + j] -= c * d.c_[j];
  }
  a.resize(m - 1);
  return {Poly(f, std::move(q)), Poly(f, std::move(a))};
}

Poly Poly::pow(int e) const {
  Poly r = constant(f_->one());
  Poly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Scalar> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * f_->from_int(static_cast<long>(i));
  return Poly(f_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

Scalar Poly::eval(const Scalar& a) const {
  Scalar r = f_ ? f_->zero() : Scalar();
  for (std::size_t k = c_.size(); k-- > 0;) {
    r *= a;
    r += c_[k];
  }
  return r;
}

Poly Poly::substitute_linear(const Scalar& a, const Scalar& b) const {
  Poly lin(f_, {b, a});
  Poly r(f_);
  for (std::size_t k = c_.size(); k-- > 0;) r = r * lin + constant(c_[k]);
  return r;
}

Poly Poly::embed(const Field* f) const {
  std::vector<Scalar> c;
  c.reserve(c_.size());
  for (const auto& s : c_) c.push_back(f->embed(s));
  return Poly(f, std::move(c));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace krforge
