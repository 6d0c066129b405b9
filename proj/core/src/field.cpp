#include "krforge/field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "krforge/errors.hpp"
#include "krforge/polynomial.hpp"
#include "krforge/roots.hpp"

namespace krforge {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) fail(ErrorKind::NotInvertible, "element is not invertible modulo " + std::to_string(p));
  return t < 0 ? t + p : t;
}

// Dense polynomial helpers over a base field, used for extension arithmetic.
void trim(std::vector<Scalar>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Scalar> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Remainder of `a` modulo a monic polynomial `m`.
void reduce_monic(std::vector<Scalar>& a, const std::vector<Scalar>& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t k = a.size(); k-- > d;) {
    if (a[k].is_zero()) continue;
    Scalar c = a[k];
    for (std::size_t j = 0; j < d; ++j) a[k - d + j] -= c * m[j];
    a[k] = Scalar();
  }
  a.resize(std::min(a.size(), d));
}

void divmod(std::vector<Scalar> a, const std::vector<Scalar>& b, std::vector<Scalar>& q,
            std::vector<Scalar>& r) {
  trim(a);
  q.clear();
  if (a.size() < b.size()) {
    r = a;
    return;
  }
  q.assign(a.size() - b.size() + 1, Scalar());
  Scalar lead_inv = b.back().inverse();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (a[k].is_zero()) continue;
    Scalar c = a[k] * lead_inv;
    q[k - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k - b.size() + 1 + j] -= c * b[j];
  }
  trim(a);
  r = a;
}

// Inverse of `a` in base[x]/(m) by the extended Euclidean algorithm.
std::vector<Scalar> poly_inverse(const std::vector<Scalar>& a, const std::vector<Scalar>& m) {
  std::vector<Scalar> r0 = m, r1 = a, s0;
  trim(r1);
  if (r1.empty()) fail(ErrorKind::NotInvertible, "zero is not invertible");
  std::vector<Scalar> s1{r1.back().field()->one()};
  while (!r1.empty()) {
    std::vector<Scalar> q, r;
    divmod(r0, r1, q, r);
    std::vector<Scalar> qs = poly_mul(q, s1);
    std::vector<Scalar> s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) fail(ErrorKind::NotInvertible, "element is not invertible in the extension");
  Scalar c = r0[0].inverse();
  for (auto& x : s0) x *= c;
  return s0;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<Field>>& registry() {
  static std::map<std::string, std::unique_ptr<Field>> r;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::string format_polynomial(const std::vector<Scalar>& c, std::string_view var) {
  std::string out;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k].is_zero()) continue;
    std::string cs = c[k].str();
    std::string term;
    if (k == 0) {
      term = cs;
    } else {
      bool compound = cs.find_first_of("+-", 1) != std::string::npos;
      if (cs == "1") {
      } else if (cs == "-1") {
        term = "-";
      } else if (compound) {
        term = "(" + cs + ")*";
      } else {
        term = cs + "*";
      }
      term += std::string(var);
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Field* f) : f_(f) {
  switch (f->kind()) {
    case Field::Kind::Rationals: v_ = mpq_class(0); break;
    case Field::Kind::Prime: v_ = std::int64_t{0}; break;
    case Field::Kind::Extension:
      v_ = std::vector<Scalar>(static_cast<std::size_t>(f->degree()), Scalar(f->base()));
      break;
  }
}

Scalar Scalar::from_int(const Field* f, long v) {
  Scalar s(f);
  switch (f->kind()) {
    case Field::Kind::Rationals: s.v_ = mpq_class(v); break;
    case Field::Kind::Prime: {
      auto p = static_cast<std::int64_t>(f->characteristic());
      std::int64_t r = v % p;
      s.v_ = r < 0 ? r + p : r;
      break;
    }
    case Field::Kind::Extension: std::get<std::vector<Scalar>>(s.v_)[0] = from_int(f->base(), v); break;
  }
  return s;
}

Scalar Scalar::from_rational(const Field* f, const mpq_class& q) {
  switch (f->kind()) {
    case Field::Kind::Rationals: {
      Scalar s(f);
      mpq_class c = q;
      c.canonicalize();
      s.v_ = c;
      return s;
    }
    case Field::Kind::Prime: {
      auto p = static_cast<long>(f->characteristic());
      mpz_class num = q.get_num() % p, den = q.get_den() % p;
      if (den == 0) fail(ErrorKind::NotInvertible, "denominator vanishes in " + f->name());
      return from_int(f, num.get_si()) / from_int(f, den.get_si());
    }
    case Field::Kind::Extension: {
      Scalar s(f);
      std::get<std::vector<Scalar>>(s.v_)[0] = from_rational(f->base(), q);
      return s;
    }
  }
  return {};
}

void Scalar::adopt(const Field* f) {
  if (f_ == f || f == nullptr) return;
  if (f_ == nullptr) {
    *this = Scalar(f);
    return;
  }
  *this = f->embed(*this);
}

bool Scalar::is_zero() const {
  if (f_ == nullptr) return true;
  switch (f_->kind()) {
    case Field::Kind::Rationals: return sgn(rational()) == 0;
    case Field::Kind::Prime: return residue() == 0;
    case Field::Kind::Extension:
      for (const auto& c : coords())
        if (!c.is_zero()) return false;
      return true;
  }
  return true;
}

bool Scalar::is_one() const {
  if (f_ == nullptr) return false;
  switch (f_->kind()) {
    case Field::Kind::Rationals: return rational() == 1;
    case Field::Kind::Prime: return residue() == 1;
    case Field::Kind::Extension: {
      const auto& c = coords();
      if (!c[0].is_one()) return false;
      for (std::size_t i = 1; i < c.size(); ++i)
        if (!c[i].is_zero()) return false;
      return true;
    }
  }
  return false;
}

Scalar Scalar::operator-() const {
  if (f_ == nullptr) return *this;
  Scalar r = *this;
  switch (f_->kind()) {
    case Field::Kind::Rationals: std::get<mpq_class>(r.v_) = -rational(); break;
    case Field::Kind::Prime: {
      auto p = static_cast<std::int64_t>(f_->characteristic());
      std::int64_t v = residue();
      r.v_ = v == 0 ? 0 : p - v;
      break;
    }
    case Field::Kind::Extension:
      for (auto& c : std::get<std::vector<Scalar>>(r.v_)) c = -c;
      break;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.f_ == nullptr) return *this;
  if (f_ != o.f_) {
    if (f_ == nullptr || o.f_->contains_subfield(f_)) {
      adopt(o.f_);
    } else {
      return *this += f_->embed(o);
    }
  }
  switch (f_->kind()) {
    case Field::Kind::Rationals: std::get<mpq_class>(v_) += o.rational(); break;
    case Field::Kind::Prime: {
      auto p = static_cast<std::int64_t>(f_->characteristic());
      std::int64_t v = residue() + o.residue();
      if (v >= p) v -= p;
      v_ = v;
      break;
    }
    case Field::Kind::Extension: {
      auto& c = std::get<std::vector<Scalar>>(v_);
      const auto& d = o.coords();
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += d[i];
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (f_ == nullptr) {
    if (o.f_ != nullptr) *this = Scalar(o.f_);
    return *this;
  }
  if (o.f_ == nullptr) {
    *this = Scalar(f_);
    return *this;
  }
  if (f_ != o.f_) {
    if (o.f_->contains_subfield(f_)) {
      adopt(o.f_);
    } else {
      return *this *= f_->embed(o);
    }
  }
  switch (f_->kind()) {
    case Field::Kind::Rationals: std::get<mpq_class>(v_) *= o.rational(); break;
    case Field::Kind::Prime:
      v_ = static_cast<std::int64_t>(mulmod(static_cast<std::uint64_t>(residue()),
                                            static_cast<std::uint64_t>(o.residue()),
                                            f_->characteristic()));
      break;
    case Field::Kind::Extension: {
      std::vector<Scalar> prod = poly_mul(coords(), o.coords());
      reduce_monic(prod, f_->minpoly());
      prod.resize(static_cast<std::size_t>(f_->degree()), Scalar(f_->base()));
      for (auto& c : prod) c.adopt(f_->base());
      v_ = std::move(prod);
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::NotInvertible, "division by zero");
  Scalar r(f_);
  switch (f_->kind()) {
    case Field::Kind::Rationals: r.v_ = mpq_class(1 / rational()); break;
    case Field::Kind::Prime:
      r.v_ = inv_mod(residue(), static_cast<std::int64_t>(f_->characteristic()));
      break;
    case Field::Kind::Extension: {
      std::vector<Scalar> a = coords();
      trim(a);
      std::vector<Scalar> inv = poly_inverse(a, f_->minpoly());
      inv.resize(static_cast<std::size_t>(f_->degree()), Scalar(f_->base()));
      for (auto& c : inv) c.adopt(f_->base());
      r.v_ = std::move(inv);
      break;
    }
  }
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar base = *this;
  Scalar r = f_ ? f_->one() : Scalar();
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (f_ == nullptr || o.f_ == nullptr) return is_zero() && o.is_zero();
  if (f_ != o.f_) {
    if (o.f_->contains_subfield(f_)) return o.f_->embed(*this) == o;
    if (f_->contains_subfield(o.f_)) return *this == f_->embed(o);
    return false;
  }
  switch (f_->kind()) {
    case Field::Kind::Rationals: return rational() == o.rational();
    case Field::Kind::Prime: return residue() == o.residue();
    case Field::Kind::Extension: return coords() == o.coords();
  }
  return false;
}

std::string Scalar::str() const {
  if (f_ == nullptr) return "0";
  switch (f_->kind()) {
    case Field::Kind::Rationals: return rational().get_str();
    case Field::Kind::Prime: return std::to_string(residue());
    case Field::Kind::Extension: return format_polynomial(coords(), f_->generator_name());
  }
  return "0";
}

bool Scalar::less(const Scalar& a, const Scalar& b) {
  const Field* f = a.f_ ? a.f_ : b.f_;
  if (f == nullptr) return false;
  Scalar x = a, y = b;
  x.adopt(f);
  y.adopt(f);
  switch (f->kind()) {
    case Field::Kind::Rationals: return x.rational() < y.rational();
    case Field::Kind::Prime: return x.residue() < y.residue();
    case Field::Kind::Extension: {
      const auto& cx = x.coords();
      const auto& cy = y.coords();
      for (std::size_t k = cx.size(); k-- > 0;) {
        if (less(cx[k], cy[k])) return true;
        if (less(cy[k], cx[k])) return false;
      }
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------- Field

const Field* Field::rationals() {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry()["Q"];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = Kind::Rationals;
    slot->name_ = "Q";
  }
  return slot.get();
}

const Field* Field::prime(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorKind::ParseError, "F" + std::to_string(p) + ": modulus is not prime");
  if (p >= (std::uint64_t{1} << 62)) fail(ErrorKind::TooLarge, "prime modulus exceeds 2^62");
  std::string name = "F" + std::to_string(p);
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry()[name];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = Kind::Prime;
    slot->p_ = p;
    slot->name_ = name;
  }
  return slot.get();
}

const Field* Field::extension(const Field* base, const std::string& gen,
                              const std::vector<Scalar>& minpoly) {
  std::vector<Scalar> m;
  for (const auto& c : minpoly) m.push_back(base->embed(c));
  trim(m);
  if (m.size() < 3) fail(ErrorKind::ParseError, "extension polynomial must have degree >= 2");
  if (!m.back().is_one()) fail(ErrorKind::ParseError, "extension polynomial must be monic");
  if (gen.empty() || base->named_generator(gen) || gen == "x")
    fail(ErrorKind::ParseError, "invalid or duplicate generator name '" + gen + "'");
  std::string name = base->name() + "[" + gen + "]/(" + format_polynomial(m, gen) + ")";
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(name);
    if (it != registry().end()) return it->second.get();
  }
  if (!is_irreducible(Poly(base, m)))
    fail(ErrorKind::ParseError, "extension polynomial " + format_polynomial(m, gen) +
                                    " is reducible over " + base->name());
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry()[name];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = Kind::Extension;
    slot->p_ = base->characteristic();
    slot->base_ = base;
    slot->gen_ = gen;
    slot->minpoly_ = m;
    slot->name_ = name;
  }
  return slot.get();
}

std::optional<std::uint64_t> Field::size() const {
  switch (kind_) {
    case Kind::Rationals: return std::nullopt;
    case Kind::Prime: return p_;
    case Kind::Extension: {
      auto b = base_->size();
      if (!b) return std::nullopt;
      u128 s = 1;
      for (int i = 0; i < degree(); ++i) {
        s *= *b;
        if (s > (u128{1} << 63)) return std::nullopt;
      }
      return static_cast<std::uint64_t>(s);
    }
  }
  return std::nullopt;
}

int Field::absolute_degree() const { return kind_ == Kind::Extension ? degree() * base_->absolute_degree() : 1; }

Scalar Field::generator() const {
  if (kind_ != Kind::Extension) return one();
  Scalar s(this);
  std::get<std::vector<Scalar>>(s.v_)[1] = base_->one();
  return s;
}

Scalar Field::from_coords(const std::vector<Scalar>& c) const {
  if (kind_ != Kind::Extension || static_cast<int>(c.size()) > degree())
    fail(ErrorKind::Inconsistent, "coordinate vector does not fit " + name_);
  Scalar r(this);
  auto& v = std::get<std::vector<Scalar>>(r.v_);
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = base_->embed(c[i]);
  return r;
}

std::optional<Scalar> Field::named_generator(std::string_view name) const {
  if (kind_ != Kind::Extension) return std::nullopt;
  if (gen_ == name) return generator();
  auto g = base_->named_generator(name);
  if (!g) return std::nullopt;
  return embed(*g);
}

bool Field::contains_subfield(const Field* f) const {
  for (const Field* k = this; k != nullptr; k = k->base_)
    if (k == f) return true;
  return false;
}

Scalar Field::embed(const Scalar& s) const {
  if (s.field() == this) return s;
  if (s.field() == nullptr) return zero();
  if (kind_ != Kind::Extension || !base_->contains_subfield(s.field()))
    fail(ErrorKind::Inconsistent, "cannot embed element of " + s.field()->name() + " into " + name_);
  Scalar r(this);
  std::get<std::vector<Scalar>>(r.v_)[0] = base_->embed(s);
  return r;
}

std::vector<Scalar> Field::elements() const {
  std::vector<Scalar> out;
  switch (kind_) {
    case Kind::Rationals: fail(ErrorKind::TooLarge, "Q is infinite");
    case Kind::Prime:
      for (std::uint64_t i = 0; i < p_; ++i) out.push_back(from_int(static_cast<long>(i)));
      return out;
    case Kind::Extension: {
      std::vector<Scalar> be = base_->elements();
      std::vector<std::size_t> idx(static_cast<std::size_t>(degree()), 0);
      while (true) {
        Scalar s(this);
        auto& c = std::get<std::vector<Scalar>>(s.v_);
        for (std::size_t i = 0; i < idx.size(); ++i) c[i] = be[idx[i]];
        out.push_back(s);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == be.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
      return out;
    }
  }
  return out;
}

}  // namespace krforge
