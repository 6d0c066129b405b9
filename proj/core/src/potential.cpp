#include "krforge/potential.hpp"

#include "krforge/errors.hpp"
#include "krforge/parse.hpp"
#include "krforge/roots.hpp"

namespace krforge {

Potential::Potential(Poly w) : w_(std::move(w)) {
  if (w_.is_zero() || w_.degree() < 1 || !w_.is_monic())
    fail(ErrorKind::ParseError, "potential '" + w_.str() + "' must be monic of degree >= 1");
  separable_ = Poly::gcd(w_, w_.derivative()).degree() == 0;
  const int n = w_.degree();
  for (int i = 0; i < n; ++i) {
    RingElement r = zero();
    r[static_cast<std::size_t>(i)] = field()->one();
    powers_.push_back(r);
  }
  // Hankel system eps(x^(i+k)) c_jk = delta_ij; the matrix is anti-triangular with unit anti-diagonal.
  std::vector<std::vector<Scalar>> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(i)].push_back(trace(monomial(i + k)));
    for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(i)].push_back(field()->from_int(i == k ? 1 : 0));
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (m[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)].is_zero()) ++p;
    std::swap(m[static_cast<std::size_t>(p)], m[static_cast<std::size_t>(c)]);
    auto& row = m[static_cast<std::size_t>(c)];
    Scalar inv = row[static_cast<std::size_t>(c)].inverse();
    for (auto& v : row) v *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      auto& other = m[static_cast<std::size_t>(r)];
      Scalar t = other[static_cast<std::size_t>(c)];
      if (t.is_zero()) continue;
      for (std::size_t k = 0; k < row.size(); ++k) other[k] -= t * row[k];
    }
  }
  for (int j = 0; j < n; ++j) {
    RingElement b(m[static_cast<std::size_t>(j)].begin() + n, m[static_cast<std::size_t>(j)].end());
    dual_.push_back(b);
  }
  handle_ = zero();
  for (int i = 0; i < n; ++i) {
    RingElement t = mul(monomial(i), dual_[static_cast<std::size_t>(i)]);
    for (int k = 0; k < n; ++k) handle_[static_cast<std::size_t>(k)] += t[static_cast<std::size_t>(k)];
  }
}

Potential Potential::parse(std::string_view text, const Field* k) { return Potential(parse_polynomial(text, k)); }

RingElement Potential::zero() const { return RingElement(static_cast<std::size_t>(n()), field()->zero()); }

RingElement Potential::reduce(const Poly& p) const {
  RingElement r = zero();
  const Poly rem = p.embed(field()) % w_;
  for (int i = 0; i <= rem.degree(); ++i) r[static_cast<std::size_t>(i)] = rem.coeff(i);
  return r;
}

RingElement Potential::mul(const RingElement& a, const RingElement& b) const {
  const int n = this->n();
  std::vector<Scalar> prod(static_cast<std::size_t>(2 * n - 1), field()->zero());
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < n; ++j) prod[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  RingElement r = zero();
  for (int e = 0; e < 2 * n - 1; ++e) {
    const Scalar& c = prod[static_cast<std::size_t>(e)];
    if (c.is_zero()) continue;
    RingElement m = monomial(e);
    for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] += c * m[static_cast<std::size_t>(k)];
  }
  return r;
}

RingElement Potential::monomial(int e) const {
  std::lock_guard<std::mutex> lock(mu_);
  const int n = this->n();
  while (static_cast<int>(powers_.size()) <= e) {
    // x * r: shift up, then replace x^n by -(w - x^n).
    const RingElement& prev = powers_.back();
    RingElement r = zero();
    Scalar top = prev[static_cast<std::size_t>(n - 1)];
    for (int k = n - 1; k > 0; --k) r[static_cast<std::size_t>(k)] = prev[static_cast<std::size_t>(k - 1)];
    if (!top.is_zero())
      for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] -= top * w_.coeff(k);
    powers_.push_back(std::move(r));
  }
  return powers_[static_cast<std::size_t>(e)];
}

Scalar Potential::evaluate(const RingElement& r, const Scalar& alpha) const { return to_poly(r).eval(alpha); }

const Potential::Expansion& Potential::neck_cut(int e, int g, int l) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cuts_.find({e, g, l});
    if (it != cuts_.end()) return it->second;
  }
  RingElement a = monomial(e);
  for (int i = 0; i < g; ++i) a = mul(a, handle_);
  Expansion out;
  const int n = this->n();
  if (l == 0) {
    Scalar t = trace(a);
    if (!t.is_zero()) out.push_back({{}, t});
  } else {
    // Loops 2..l take x^i, loop 1 takes the remainder times the matching duals.
    std::vector<int> idx(static_cast<std::size_t>(l - 1), 0);
    while (true) {
      RingElement first = a;
      for (int i : idx) first = mul(first, dual_[static_cast<std::size_t>(i)]);
      for (int k = 0; k < n; ++k) {
        if (first[static_cast<std::size_t>(k)].is_zero()) continue;
        std::vector<int> ex{k};
        ex.insert(ex.end(), idx.begin(), idx.end());
        out.push_back({ex, first[static_cast<std::size_t>(k)]});
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == n) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return cuts_.emplace(std::make_tuple(e, g, l), std::move(out)).first->second;
}

RingElement reduce_mod(const Poly& p, const Potential& w) { return w.reduce(p); }
RingElement mul_mod(const RingElement& a, const RingElement& b, const Potential& w) { return w.mul(a, b); }
bool is_separable(const Potential& w) { return w.separable(); }
std::vector<Scalar> roots_in_field(const Potential& w, const Field* k) { return roots_in_field(w.poly(), k); }
std::vector<RingElement> dual_basis(const Potential& w) { return w.dual_basis(); }
RingElement handle_element(const Potential& w) { return w.handle(); }
Scalar trace(const RingElement& r, const Potential& w) { return w.trace(r); }

}  // namespace krforge
