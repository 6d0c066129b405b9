#include "krforge/roots.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "krforge/errors.hpp"

namespace krforge {
namespace {

// ---------------------------------------------------------------- rationals

// Primitive integer multiple of a polynomial over Q, positive leading coefficient.
std::vector<mpz_class> primitive_integer(const Poly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) {
    mpq_class v = c.rational() * l;
    z.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

mpz_class eval_int(const std::vector<mpz_class>& c, const mpz_class& x) {
  mpz_class r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

// Roots of a squarefree polynomial over Q with nonzero constant term and degree >= 2.
// The monic transform G(y) = lead^(d-1) F(y/lead) has integer roots only; these are lifted from a
// prime where G stays squarefree and read off as symmetric residues beyond the Cauchy bound.
std::vector<mpq_class> hensel_roots(const Poly& f) {
  std::vector<mpz_class> F = primitive_integer(f);
  const std::size_t d = F.size() - 1;
  const mpz_class lead = F[d];
  std::vector<mpz_class> G(d + 1);
  mpz_class scale = 1;
  for (std::size_t i = d; i-- > 0;) {
    G[i] = F[i] * scale;
    scale *= lead;
  }
  G[d] = 1;
  mpz_class bound = 0;
  for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, mpz_class(abs(G[i])));
  bound += 1;
  std::vector<mpz_class> dG(d);
  for (std::size_t i = 1; i <= d; ++i) dG[i - 1] = G[i] * static_cast<unsigned long>(i);

  std::uint64_t p = 3;
  const Field* Fp = nullptr;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    Fp = Field::prime(p);
    std::vector<Scalar> c;
    for (const auto& g : G) c.push_back(Fp->from_int(mpz_class(mod_pos(g, p)).get_si()));
    Poly gp(Fp, c);
    if (Poly::gcd(gp, gp.derivative()).degree() == 0) break;
  }
  std::vector<mpq_class> out;
  const mpz_class target = 2 * bound + 1;
  for (std::uint64_t r0 = 0; r0 < p; ++r0) {
    if (mod_pos(eval_int(G, r0), p) != 0) continue;
    mpz_class r = r0, m = p;
    while (m < target) {
      m *= m;
      mpz_class dv = mod_pos(eval_int(dG, r), m), inv;
      mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t());
      r = mod_pos(r - eval_int(G, r) * inv, m);
    }
    mpz_class y = r > m / 2 ? r - m : r;
    if (eval_int(G, y) == 0) {
      mpq_class q(y, lead);
      q.canonicalize();
      out.push_back(q);
    }
  }
  return out;
}

std::vector<Scalar> rational_roots(Poly f) {
  const Field* Q = f.field();
  std::vector<Scalar> out;
  if (f.coeff(0).is_zero()) {
    out.push_back(Q->zero());
    while (f.coeff(0).is_zero()) f = f / Poly::x(Q);
  }
  if (f.degree() >= 1) f = f / Poly::gcd(f, f.derivative());
  if (f.degree() == 1) {
    out.push_back(-f.coeff(0) / f.coeff(1));
  } else if (f.degree() >= 2) {
    for (const auto& q : hensel_roots(f)) out.push_back(Scalar::from_rational(Q, q));
  }
  return out;
}

// ---------------------------------------------------------------- finite fields

Poly powmod(Poly b, mpz_class e, const Poly& m) {
  Poly r = Poly::constant(m.field()->one()) % m;
  b = b % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
    e >>= 1;
    if (e > 0) b = (b * b) % m;
  }
  return r;
}

Scalar random_element(const Field* k, std::mt19937_64& rng) {
  if (k->kind() == Field::Kind::Prime)
    return k->from_int(static_cast<long>(rng() % k->characteristic()));
  std::vector<Scalar> c;
  for (int i = 0; i < k->degree(); ++i) c.push_back(random_element(k->base(), rng));
  return k->from_coords(c);
}

// Equal-degree splitting of a product of distinct linear factors (odd field size).
void split_linear(const Poly& g, const mpz_class& half, std::mt19937_64& rng, std::vector<Scalar>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const Field* k = g.field();
  while (true) {
    Poly shift(k, {random_element(k, rng), k->one()});
    Poly t = powmod(shift, half, g) - Poly::constant(k->one());
    Poly u = Poly::gcd(g, t);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      split_linear(u, half, rng, out);
      split_linear(g / u, half, rng, out);
      return;
    }
  }
}

std::vector<Scalar> finite_roots(const Poly& f, const Field* k) {
  auto q = k->size();
  if (!q) fail(ErrorKind::TooLarge, "field " + k->name() + " is too large for root search");
  std::vector<Scalar> out;
  if (*q <= 4096) {
    for (const auto& a : k->elements())
      if (f.eval(a).is_zero()) out.push_back(a);
    return out;
  }
  if (*q % 2 == 0) fail(ErrorKind::TooLarge, "root search in large fields of characteristic 2");
  Poly x = Poly::x(k);
  Poly g = Poly::gcd(f, powmod(x, mpz_class(std::to_string(*q)), f) - x);
  std::mt19937_64 rng(0x6b72u);
  split_linear(g, mpz_class(std::to_string((*q - 1) / 2)), rng, out);
  return out;
}

// ---------------------------------------------------------------- quadratic extensions

// Bivariate polynomial over the base field: (deg a, deg b) -> coefficient.
using Bi = std::map<std::pair<int, int>, Scalar>;

void bi_add(Bi& a, const Bi& b, const Scalar& s) {
  for (const auto& [k, v] : b) {
    Scalar& t = a[k];
    t = t + v * s;
    if (t.is_zero()) a.erase(k);
  }
}

Bi bi_shift(const Bi& a, int da, int db) {
  Bi r;
  for (const auto& [k, v] : a) r[{k.first + da, k.second + db}] = v;
  return r;
}

int bi_total_degree(const Bi& a) {
  int d = 0;
  for (const auto& [k, v] : a) d = std::max(d, k.first + k.second);
  return d;
}

// Polynomial in b after substituting a = a0.
Poly bi_at(const Bi& p, const Scalar& a0, const Field* L) {
  std::map<int, Scalar> c;
  for (const auto& [k, v] : p) c[k.second] = c[k.second] + v * a0.pow(k.first);
  std::vector<Scalar> v;
  for (const auto& [j, s] : c) {
    if (static_cast<int>(v.size()) <= j) v.resize(static_cast<std::size_t>(j) + 1, L->zero());
    v[static_cast<std::size_t>(j)] = s;
  }
  return Poly(L, v);
}

Scalar determinant(std::vector<std::vector<Scalar>> m, const Field* L) {
  const std::size_t n = m.size();
  Scalar det = L->one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return L->zero();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Scalar t = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= t * m[c][k];
    }
  }
  return det;
}

// Resultant with formal degrees dp, dq (coefficients may vanish at the top).
Scalar sylvester(const Poly& p, int dp, const Poly& q, int dq, const Field* L) {
  const int n = dp + dq;
  if (n == 0) return L->one();
  std::vector<std::vector<Scalar>> m(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), L->zero()));
  for (int r = 0; r < dq; ++r)
    for (int i = 0; i <= dp; ++i) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + dp - i)] = p.coeff(i);
  for (int r = 0; r < dp; ++r)
    for (int i = 0; i <= dq; ++i) m[static_cast<std::size_t>(dq + r)][static_cast<std::size_t>(r + dq - i)] = q.coeff(i);
  return determinant(std::move(m), L);
}

// Newton interpolation through (i, v[i]), i = 0..N.
Poly interpolate(const std::vector<Scalar>& v, const Field* L) {
  const std::size_t n = v.size();
  std::vector<Scalar> c = v;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / L->from_int(static_cast<long>(j));
  Poly r(L);
  for (std::size_t k = n; k-- > 0;) r = r * Poly(L, {L->from_int(-static_cast<long>(k)), L->one()}) + Poly::constant(c[k]);
  return r;
}

// Roots a + b*theta with b != 0 of f over K = L[theta]/(theta^2 + m1 theta + m0), char 0.
std::vector<Scalar> quadratic_roots(const Poly& f, const Field* K) {
  const Field* L = K->base();
  const Scalar m0 = K->minpoly()[0], m1 = K->minpoly()[1];
  Bi P, Q;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    // (P + Q theta)(a + b theta), theta^2 = -m1 theta - m0
    Bi Pa = bi_shift(P, 1, 0), Pb = bi_shift(P, 0, 1), Qa = bi_shift(Q, 1, 0), Qb = bi_shift(Q, 0, 1);
    Bi nP = Pa, nQ = Pb;
    bi_add(nP, Qb, -m0);
    bi_add(nQ, Qa, L->one());
    bi_add(nQ, Qb, -m1);
    const Scalar ck = K->embed(f.coeffs()[k]);
    const auto& c = ck.coords();
    bi_add(nP, Bi{{{0, 0}, L->one()}}, c[0]);
    bi_add(nQ, Bi{{{0, 0}, L->one()}}, c[1]);
    P = std::move(nP);
    Q = std::move(nQ);
  }
  auto strip_b = [](Bi& B) {
    while (!B.empty() && std::all_of(B.begin(), B.end(), [](const auto& e) { return e.first.second > 0; }))
      B = bi_shift(B, 0, -1);
  };
  strip_b(P);
  strip_b(Q);
  if (P.empty() || Q.empty()) return {};
  auto bdeg = [](const Bi& B) {
    int d = 0;
    for (const auto& [k, v] : B) d = std::max(d, k.second);
    return d;
  };
  const int dp = bdeg(P), dq = bdeg(Q);
  const int D = bi_total_degree(P) * bi_total_degree(Q);
  std::vector<Scalar> vals;
  for (int i = 0; i <= D; ++i) {
    Scalar a0 = L->from_int(i);
    vals.push_back(sylvester(bi_at(P, a0, L), dp, bi_at(Q, a0, L), dq, L));
  }
  Poly R = interpolate(vals, L);
  std::vector<Scalar> out;
  if (R.is_zero()) {
    warn("degenerate resultant while searching roots in " + K->name());
    return out;
  }
  for (const auto& a0 : roots_in_field(R, L)) {
    Poly pa = bi_at(P, a0, L), qa = bi_at(Q, a0, L);
    Poly g = Poly::gcd(pa, qa);
    if (g.is_zero() || g.degree() == 0) continue;
    for (const auto& b0 : roots_in_field(g, L)) {
      if (b0.is_zero()) continue;
      Scalar alpha = K->from_coords({a0, b0});
      if (f.embed(K).eval(alpha).is_zero()) out.push_back(alpha);
    }
  }
  return out;
}

std::vector<Scalar> extension_roots(const Poly& fK, const Field* K) {
  const Field* L = K->base();
  std::vector<std::vector<Scalar>> parts(static_cast<std::size_t>(K->degree()));
  for (std::size_t i = 0; i < fK.coeffs().size(); ++i) {
    const auto& c = fK.coeffs()[i].coords();
    for (std::size_t j = 0; j < c.size(); ++j) {
      parts[j].resize(fK.coeffs().size(), L->zero());
      parts[j][i] = c[j];
    }
  }
  Poly g(L);
  for (auto& p : parts) g = Poly::gcd(g, Poly(L, p));
  std::vector<Scalar> out;
  if (g.degree() > 0)
    for (const auto& r : roots_in_field(g, L)) out.push_back(K->embed(r));
  if (K->degree() == 2) {
    for (auto& r : quadratic_roots(fK, K)) out.push_back(r);
  } else {
    warn("roots of " + fK.str() + " in " + K->name() + " are searched in the base field only");
  }
  return out;
}

// ---------------------------------------------------------------- Kronecker search over Q

std::vector<mpz_class> divisors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    small.push_back(d);
    if (d * d != v) large.push_back(v / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Searches for a factor of degree k; nullopt means the search was abandoned.
std::optional<bool> has_factor_of_degree(const Poly& f, const std::vector<mpz_class>& F, int k) {
  const Field* Q = f.field();
  std::vector<std::pair<mpz_class, mpz_class>> pts;
  for (long t = 0; static_cast<int>(pts.size()) < 3 * (k + 1); t = t > 0 ? -t : 1 - t) {
    mpz_class v = eval_int(F, t);
    pts.push_back({t, v});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return abs(a.second) < abs(b.second); });
  pts.resize(static_cast<std::size_t>(k) + 1);
  std::vector<std::vector<mpz_class>> dv;
  double combos = 1;
  for (const auto& [x, v] : pts) {
    if (abs(v) > mpz_class("1000000000000")) return std::nullopt;
    dv.push_back(divisors(v));
    combos *= 2.0 * static_cast<double>(dv.back().size());
  }
  if (combos > 2e6) return std::nullopt;
  // Odometer over divisor choices; the first value's sign is fixed since g and -g are equivalent.
  std::vector<std::size_t> idx(pts.size(), 0);
  auto radix = [&](std::size_t i) { return dv[i].size() * (i == 0 ? 1 : 2); };
  while (true) {
    Poly g(Q);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t n = dv[i].size();
      mpz_class val = dv[i][idx[i] % n] * (idx[i] >= n ? -1 : 1);
      Poly term = Poly::constant(Scalar::from_rational(Q, mpq_class(val)));
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        mpq_class den = pts[i].first - pts[j].first;
        term = term * Poly(Q, {Scalar::from_rational(Q, -pts[j].first / den), Scalar::from_rational(Q, 1 / den)});
      }
      g += term;
    }
    if (g.degree() == k && (f % g).is_zero()) return true;
    std::size_t pos = 0;
    while (pos < pts.size() && ++idx[pos] == radix(pos)) idx[pos++] = 0;
    if (pos == pts.size()) return false;
  }
}

}  // namespace

std::vector<Scalar> roots_in_field(const Poly& f, const Field* k) {
  if (f.is_zero()) fail(ErrorKind::Inconsistent, "root search for the zero polynomial");
  Poly fk = f.embed(k);
  std::vector<Scalar> out;
  if (fk.degree() >= 1) {
    switch (k->kind()) {
      case Field::Kind::Rationals: out = rational_roots(fk); break;
      case Field::Kind::Prime: out = finite_roots(fk, k); break;
      case Field::Kind::Extension:
        out = k->characteristic() == 0 ? extension_roots(fk, k) : finite_roots(fk, k);
        break;
    }
  }
  std::sort(out.begin(), out.end(), Scalar::less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_irreducible(const Poly& f) {
  const Field* k = f.field();
  const int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  if (!roots_in_field(f, k).empty()) return false;
  if (d <= 3) return true;
  if (k->kind() == Field::Kind::Rationals) {
    std::vector<mpz_class> F = primitive_integer(f);
    for (int j = 2; j <= d / 2; ++j) {
      auto r = has_factor_of_degree(f, F, j);
      if (!r) {
        warn("irreducibility of " + f.str() + " over Q assumed (factor search too large)");
        return true;
      }
      if (*r) return false;
    }
    return true;
  }
  if (auto q = k->size()) {
    // f is irreducible iff gcd(f, x^(q^i) - x) = 1 for i <= d/2.
    Poly x = Poly::x(k), h = x;
    for (int i = 1; i <= d / 2; ++i) {
      h = powmod(h, mpz_class(std::to_string(*q)), f);
      if (Poly::gcd(f, h - x).degree() > 0) return false;
    }
    return true;
  }
  warn("irreducibility of " + f.str() + " over " + k->name() + " assumed");
  return true;
}

}  // namespace krforge
