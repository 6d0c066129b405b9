#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace krforge {

class Field;

// Element of an exact field. A default-constructed Scalar is the zero of whatever field it is
// later combined with; every other Scalar carries a pointer to its (interned, immortal) Field.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const Field* f);

  static Scalar from_int(const Field* f, long v);
  static Scalar from_rational(const Field* f, const mpq_class& q);

  const Field* field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(long e) const;
  std::string str() const;

  // Representation access. rational(): Q; residue(): F_p; coords(): coordinates over the base field.
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::int64_t residue() const { return std::get<std::int64_t>(v_); }
  const std::vector<Scalar>& coords() const { return std::get<std::vector<Scalar>>(v_); }

  // Canonical total order on elements of one field (used for sorting root lists).
  static bool less(const Scalar& a, const Scalar& b);

 private:
  friend class Field;
  void adopt(const Field* f);

  const Field* f_ = nullptr;
  std::variant<std::int64_t, mpq_class, std::vector<Scalar>> v_{std::int64_t{0}};
};

// Q, F_p, or a simple algebraic extension base[gen]/(minpoly). Fields are interned by
// canonical name and never destroyed, so raw pointers to them are stable.
class Field {
 public:
  enum class Kind { Rationals, Prime, Extension };

  static const Field* rationals();
  static const Field* prime(std::uint64_t p);
  // minpoly: coefficients over `base`, lowest degree first, monic, degree >= 2, irreducible.
  static const Field* extension(const Field* base, const std::string& gen,
                                const std::vector<Scalar>& minpoly);
  // Syntax: Q | F<p> followed by any number of [gen]/(poly in gen).
  static const Field* parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  const Field* base() const { return base_; }
  int degree() const { return static_cast<int>(minpoly_.empty() ? 1 : minpoly_.size() - 1); }
  const std::string& generator_name() const { return gen_; }
  const std::vector<Scalar>& minpoly() const { return minpoly_; }
  const std::string& name() const { return name_; }
  // Number of elements, if finite and representable.
  std::optional<std::uint64_t> size() const;
  // Degree over the prime field.
  int absolute_degree() const;

  Scalar zero() const { return Scalar(this); }
  Scalar one() const { return Scalar::from_int(this, 1); }
  Scalar from_int(long v) const { return Scalar::from_int(this, v); }
  Scalar generator() const;
  // Element sum_i c[i] * gen^i of an extension field; c has at most degree() entries in the base.
  Scalar from_coords(const std::vector<Scalar>& c) const;
  // Generator of this field or of one of its subfields, embedded here; nullopt if unknown.
  std::optional<Scalar> named_generator(std::string_view name) const;
  // Image of an element of a subfield of this tower.
  Scalar embed(const Scalar& s) const;
  bool contains_subfield(const Field* f) const;
  // All elements of a finite field in a canonical order (caller guards the size).
  std::vector<Scalar> elements() const;

 private:
  Field() = default;
  Kind kind_ = Kind::Rationals;
  std::uint64_t p_ = 0;
  const Field* base_ = nullptr;
  std::string gen_;
  std::vector<Scalar> minpoly_;
  std::string name_;
  friend class Scalar;
};

bool is_prime(std::uint64_t p);

// Descending-degree rendering of a coefficient list (lowest degree first), e.g. "x^2-1".
std::string format_polynomial(const std::vector<Scalar>& c, std::string_view var);

}  // namespace krforge
