#include "tracepoly/quatalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include "tracepoly/errors.hpp"
#include "tracepoly/parallel.hpp"

namespace tracepoly {

const char* algebra_name(Algebra a) { return a == Algebra::Q0 ? "q0" : "quv"; }

namespace {

RatPoly2 X() { return RatPoly2::first(Basis::XZ); }
RatPoly2 Z() { return RatPoly2::second(Basis::XZ); }
RatPoly2 U() { return RatPoly2::first(Basis::UV); }
RatPoly2 V() { return RatPoly2::second(Basis::UV); }
RatPoly2 C(const Rational& c, Basis b) { return RatPoly2::constant(c, b); }

void check_alg(const Quat& q) {
  Basis b = algebra_basis(q.alg);
  for (const RatPoly2* c : {&q.r, &q.s, &q.t, &q.w})
    if (c->basis() != b) throw BasisMismatch("quaternion component basis does not match its algebra");
}

RatPoly2 div_x(const RatPoly2& p, const char* component) {
  auto q = divides_exactly(p, X());
  if (!q) throw NonPolynomialResult(component, std::string("component ") + component + " is not a polynomial");
  return *q;
}

// z(z - x)
const RatPoly2& q0_b() {
  static const RatPoly2 b = Z() * (Z() - X());
  return b;
}

}  // namespace

Quat Quat::one(Algebra a) {
  Basis b = algebra_basis(a);
  return make(a, C(1, b), RatPoly2(b), RatPoly2(b), RatPoly2(b));
}

Quat Quat::make(Algebra a, RatPoly2 r, RatPoly2 s, RatPoly2 t, RatPoly2 w) {
  Quat q;
  q.alg = a;
  q.r = std::move(r);
  q.s = std::move(s);
  q.t = std::move(t);
  q.w = std::move(w);
  check_alg(q);
  return q;
}

Quat Quat::scale(const Rational& c) const { return make(alg, r.scale(c), s.scale(c), t.scale(c), w.scale(c)); }

std::string Quat::to_string() const {
  return "(" + r.to_string() + ", " + s.to_string() + ", " + t.to_string() + ", " + w.to_string() + ")";
}

Quat qmul(const Quat& p, const Quat& q) {
  if (p.alg != q.alg) throw BasisMismatch("quaternion algebra mismatch");
  check_alg(p);
  check_alg(q);
  if (p.alg == Algebra::QUV) {
    RatPoly2 a = U() * U() - C(1, Basis::UV);
    RatPoly2 b = V() * V() - C(1, Basis::UV);
    RatPoly2 R = p.r * q.r + a * (p.s * q.s) + b * (p.t * q.t) - (a * b) * (p.w * q.w);
    RatPoly2 S = p.r * q.s + p.s * q.r + b * (p.w * q.t - p.t * q.w);
    RatPoly2 T = p.r * q.t + p.t * q.r + a * (p.s * q.w - p.w * q.s);
    RatPoly2 W = p.r * q.w + p.w * q.r + p.s * q.t - p.t * q.s;
    return Quat::make(Algebra::QUV, R, S, T, W);
  }
  // a = (x+4)/x: collect the terms carrying a, multiply through by x and divide back
  const RatPoly2& b = q0_b();
  RatPoly2 x4 = X() + C(4, Basis::XZ);
  RatPoly2 Rx = X() * (p.r * q.r + b * (p.t * q.t)) + x4 * (p.s * q.s - b * (p.w * q.w));
  RatPoly2 Tx = X() * (p.r * q.t + p.t * q.r) + x4 * (p.s * q.w - p.w * q.s);
  RatPoly2 S = p.r * q.s + p.s * q.r + b * (p.w * q.t - p.t * q.w);
  RatPoly2 W = p.r * q.w + p.w * q.r + p.s * q.t - p.t * q.s;
  return Quat::make(Algebra::Q0, div_x(Rx, "r"), S, div_x(Tx, "t"), W);
}

Quat qconj(const Quat& q) { return Quat::make(q.alg, q.r, -q.s, -q.t, -q.w); }

RatPoly2 qnorm(const Quat& q) {
  check_alg(q);
  if (q.alg == Algebra::QUV) {
    RatPoly2 a = U() * U() - C(1, Basis::UV);
    RatPoly2 b = V() * V() - C(1, Basis::UV);
    return q.r * q.r - a * (q.s * q.s) - b * (q.t * q.t) + (a * b) * (q.w * q.w);
  }
  const RatPoly2& b = q0_b();
  RatPoly2 Nx = X() * (q.r * q.r - b * (q.t * q.t)) - (X() + C(4, Basis::XZ)) * (q.s * q.s - b * (q.w * q.w));
  return div_x(Nx, "norm");
}

Quat qpow(const Quat& q, int n) {
  Quat base = n < 0 ? qconj(q) : q;
  Quat out = Quat::one(q.alg);
  for (int k = 0; k < std::abs(n); ++k) out = qmul(out, base);
  return out;
}

const Quat& gen_w1() {
  static const Quat w = Quat::make(Algebra::Q0, X() + C(2, Basis::XZ), X(), RatPoly2(Basis::XZ), RatPoly2(Basis::XZ))
                            .scale(Rational(1, 2));
  return w;
}
const Quat& gen_w2() {
  static const Quat w = Quat::make(Algebra::Q0, X() + C(2, Basis::XZ), X() - Z().scale(2), RatPoly2(Basis::XZ),
                                   C(-2, Basis::XZ))
                            .scale(Rational(1, 2));
  return w;
}
const Quat& gen_w3() {
  static const Quat w =
      Quat::make(Algebra::Q0, Z() + C(2, Basis::XZ), -Z(), C(-1, Basis::XZ), C(-1, Basis::XZ)).scale(Rational(1, 2));
  return w;
}

bool in_V0(const Quat& q) {
  if (q.alg != Algebra::Q0) return false;
  try {
    if (!(qnorm(q) == C(1, Basis::XZ))) return false;
  } catch (const NonPolynomialResult&) {
    return false;
  }
  for (const RatPoly2* c : {&q.r, &q.s, &q.t, &q.w})
    if (!has_integer_coefficients(c->scale(2))) return false;
  if (q.r.coeff(0, 0) != 1) return false;
  RatPoly2 d = q.s - Z() * q.w;
  return std::none_of(d.terms().begin(), d.terms().end(), [](const auto& t) { return t.first.i == 0; });
}

RatPoly2 xz_to_uv(const RatPoly2& p) {
  if (p.basis() != Basis::XZ) throw BasisMismatch("xz_to_uv expects an (x,z) polynomial");
  RatPoly2 one = C(1, Basis::UV);
  RatPoly2 x = (U() - one).scale(2);
  RatPoly2 z = -((U() - one) * (V() - one));
  return p.substitute(x, z);
}

namespace {

// x^k * p(u(x), v(x,z)) with u = (x+2)/2, v = (x-2z)/x; k may be negative.
RatPoly2 uv_to_xz_shift(const RatPoly2& p, int k, const char* component) {
  if (p.basis() != Basis::UV) throw BasisMismatch("uv_to_xz expects a (u,v) polynomial");
  int D = std::max(0, p.degree_second());
  RatPoly2 u = (X() + C(2, Basis::XZ)).scale(Rational(1, 2));
  RatPoly2 vn = X() - Z().scale(2);
  std::vector<RatPoly2> up{C(1, Basis::XZ)}, vp{C(1, Basis::XZ)}, xp{C(1, Basis::XZ)};
  for (int i = 1; i <= std::max(0, p.degree_first()); ++i) up.push_back(up.back() * u);
  for (int j = 1; j <= D; ++j) vp.push_back(vp.back() * vn);
  for (int j = 1; j <= D + std::max(0, k); ++j) xp.push_back(xp.back() * X());
  // sum c u^i vn^j x^{D-j}, then the total carries an extra x^D
  RatPoly2 acc(Basis::XZ);
  for (const auto& [e, c] : p.terms()) acc += (up[e.i] * vp[e.j] * xp[D - e.j]).scale(c);
  int shift = k - D;
  if (shift >= 0) return acc * xp[shift];
  auto q = divides_exactly(acc, X().pow(-shift));
  if (!q) throw NonPolynomialResult(component, std::string("component ") + component + " is not polynomial in (x,z)");
  return *q;
}

}  // namespace

RatPoly2 uv_to_xz(const RatPoly2& p) { return uv_to_xz_shift(p, 0, "value"); }

Quat rho(const Quat& q) {
  if (q.alg != Algebra::Q0) throw PreconditionError("rho expects a Q0 quaternion");
  RatPoly2 um1 = U() - C(1, Basis::UV);
  auto S = divides_exactly(xz_to_uv(q.s), um1);
  if (!S) throw NonPolynomialResult("s", "rho: s is not divisible by x");
  return Quat::make(Algebra::QUV, xz_to_uv(q.r), *S, um1 * xz_to_uv(q.t), xz_to_uv(q.w));
}

Quat rho_inv(const Quat& q) {
  if (q.alg != Algebra::QUV) throw PreconditionError("rho_inv expects a QUV quaternion");
  // s = x S / 2, t = 2 T / x
  RatPoly2 s = uv_to_xz_shift(q.s, 1, "s").scale(Rational(1, 2));
  RatPoly2 t = uv_to_xz_shift(q.t, -1, "t").scale(2);
  return Quat::make(Algebra::Q0, uv_to_xz(q.r), s, t, uv_to_xz(q.w));
}

int degree(const Quat& q) {
  int d = 0;
  auto upd = [&](const RatPoly2& p, int extra) {
    if (!p.is_zero()) d = std::max(d, p.total_degree() + extra);
  };
  upd(q.r, 0);
  upd(q.s, 1);
  upd(q.t, 1);
  upd(q.w, 2);
  return d;
}

OrderWitness in_order_O(const Quat& q0) {
  Quat q = q0.alg == Algebra::Q0 ? rho(q0) : q0;
  OrderWitness out;
  out.member = has_integer_coefficients(qnorm(q));
  RatPoly2 w2 = q.w.scale(2);
  if (!has_integer_coefficients(w2)) return out;
  RatPoly2 P(Basis::UV);
  for (const auto& m : mod2_reduce(w2)) P.add_term(1, m.first, m.second);
  RatPoly2 one = C(1, Basis::UV);
  RatPoly2 hp = P.scale(Rational(1, 2));
  Quat integral = Quat::make(Algebra::QUV, q.r - hp * (U() + one) * (V() + one), q.s - hp * (V() + one),
                             q.t - hp * (U() + one), q.w - hp);
  for (const RatPoly2* c : {&integral.r, &integral.s, &integral.t, &integral.w})
    if (!has_integer_coefficients(*c)) return out;
  out.form_member = true;
  out.integral_part = integral;
  out.P = P;
  return out;
}

Quat sign_canonical(const Quat& q) {
  auto canon = [](const RatPoly2& p) {
    if (p.is_zero() || sgn(p.terms().begin()->second) > 0) return p;
    return -p;
  };
  return Quat::make(q.alg, q.r, canon(q.s), canon(q.t), canon(q.w));
}

namespace {

// Dense integer polynomial in (u,v), side x side coefficient grid.
struct Dense {
  int side = 0;
  std::vector<long long> c;
  explicit Dense(int n = 0) : side(n), c(static_cast<size_t>(n) * n, 0) {}
  long long& at(int i, int j) { return c[static_cast<size_t>(i) * side + j]; }
  long long at(int i, int j) const { return c[static_cast<size_t>(i) * side + j]; }
};

void mul_add(const Dense& a, const Dense& b, long long k, Dense& out) {
  for (int i1 = 0; i1 < a.side; ++i1)
    for (int j1 = 0; j1 < a.side; ++j1) {
      long long x = a.at(i1, j1);
      if (!x) continue;
      for (int i2 = 0; i2 < b.side; ++i2)
        for (int j2 = 0; j2 < b.side; ++j2) {
          long long y = b.at(i2, j2);
          if (y && i1 + i2 < out.side && j1 + j2 < out.side) out.at(i1 + i2, j1 + j2) += k * x * y;
        }
    }
}

// leading monomial under graded lex; false if zero
bool leading(const Dense& p, int& li, int& lj) {
  for (int deg = 2 * (p.side - 1); deg >= 0; --deg)
    for (int i = std::min(deg, p.side - 1); i >= 0 && deg - i < p.side; --i) {
      int j = deg - i;
      if (j < 0) continue;
      if (p.at(i, j) != 0) {
        li = i;
        lj = j;
        return true;
      }
    }
  return false;
}

long long isqrt_exact(long long n) {
  if (n < 0) return -1;
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c)
    if (c * c == n) return c;
  return -1;
}

// Integer square root of p with degree <= maxdeg, or false.
bool poly_sqrt(const Dense& p, int maxdeg, Dense& y) {
  y = Dense(p.side);
  int li, lj;
  if (!leading(p, li, lj)) return false;
  if (li % 2 || lj % 2) return false;
  long long lc = isqrt_exact(p.at(li, lj));
  if (lc <= 0) return false;
  int yi = li / 2, yj = lj / 2;
  if (yi + yj > maxdeg) return false;
  y.at(yi, yj) = lc;
  for (int iter = 0; iter < p.side * p.side; ++iter) {
    Dense rem = p;
    mul_add(y, y, -1, rem);
    int ri, rj;
    if (!leading(rem, ri, rj)) return true;
    int ni = ri - yi, nj = rj - yj;
    if (ni < 0 || nj < 0 || ni + nj > maxdeg) return false;
    long long num = rem.at(ri, rj);
    if (num % (2 * lc) != 0) return false;
    if (y.at(ni, nj) != 0) return false;
    y.at(ni, nj) = num / (2 * lc);
  }
  return false;
}

std::vector<std::pair<int, int>> monomials_upto(int d) {
  std::vector<std::pair<int, int>> m;
  for (int deg = d; deg >= 0; --deg)
    for (int i = deg; i >= 0; --i) m.push_back({i, deg - i});
  return m;  // graded lex, leading first
}

// All coefficient vectors in [-n, n]^k whose first nonzero entry is positive (plus zero).
std::vector<std::vector<int>> canonical_vectors(size_t k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(k, -n);
  if (k == 0) return {{}};
  while (true) {
    auto nz = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (nz == v.end() || *nz > 0) out.push_back(v);
    size_t q = k;
    while (q > 0) {
      --q;
      if (v[q] < n) {
        ++v[q];
        break;
      }
      v[q] = -n;
      if (q == 0) return out;
    }
  }
}

Dense to_dense(const std::vector<std::pair<int, int>>& mons, const std::vector<int>& coeffs, int side) {
  Dense d(side);
  for (size_t k = 0; k < mons.size(); ++k) d.at(mons[k].first, mons[k].second) = coeffs[k];
  return d;
}

RatPoly2 dense_half(const Dense& d) {
  RatPoly2 p(Basis::UV);
  for (int i = 0; i < d.side; ++i)
    for (int j = 0; j < d.side; ++j)
      if (d.at(i, j)) {
        Rational c(static_cast<long>(d.at(i, j)), 2);
        c.canonicalize();
        p.add_term(c, i, j);
      }
  return p;
}

}  // namespace

std::vector<Quat> enumerate_units(int max_degree, const Rational& coeff_bound, int threads) {
  if (max_degree < 0) return {};
  if (max_degree > 3) throw PreconditionError("enumerate_units is exhaustive only for max_degree <= 3");
  Rational twice = coeff_bound * 2;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), twice.get_num_mpz_t(), twice.get_den_mpz_t());
  int nb = static_cast<int>(fl.get_si());
  int d = max_degree;
  int side = 2 * d + 1;
  auto sm = d >= 1 ? monomials_upto(d - 1) : std::vector<std::pair<int, int>>{};
  auto wm = d >= 2 ? monomials_upto(d - 2) : std::vector<std::pair<int, int>>{};
  auto svecs = canonical_vectors(sm.size(), nb);
  auto wvecs = canonical_vectors(wm.size(), nb);

  Dense a(side), b(side), ab(side);  // u^2-1, v^2-1, product
  a.at(2, 0) = 1;
  a.at(0, 0) = -1;
  b.at(0, 2) = 1;
  b.at(0, 0) = -1;
  mul_add(a, b, 1, ab);

  std::vector<Quat> out;
  std::mutex mu;
  size_t nw = wvecs.size(), ns = svecs.size();
  parallel_for(ns, threads, [&](size_t si) {
    Dense S = to_dense(sm, svecs[si], side);
    Dense S2(side);
    mul_add(S, S, 1, S2);
    Dense base(side);
    base.at(0, 0) = 4;
    mul_add(a, S2, 1, base);
    for (size_t ti = 0; ti < ns; ++ti) {
      Dense T = to_dense(sm, svecs[ti], side);
      Dense T2(side);
      mul_add(T, T, 1, T2);
      Dense bt = base;
      mul_add(b, T2, 1, bt);
      for (size_t wi = 0; wi < nw; ++wi) {
        Dense W = to_dense(wm, wvecs[wi], side);
        Dense W2(side);
        mul_add(W, W, 1, W2);
        Dense P = bt;
        mul_add(ab, W2, -1, P);
        Dense Y;
        if (!poly_sqrt(P, d, Y)) continue;
        long long at11 = 0;
        bool bounded = true;
        for (long long c : Y.c) {
          at11 += c;
          if (std::llabs(c) > nb) bounded = false;
        }
        if (!bounded) continue;
        if (at11 == -2)
          for (auto& c : Y.c) c = -c;
        else if (at11 != 2)
          continue;
        Quat q = Quat::make(Algebra::QUV, dense_half(Y), dense_half(S), dense_half(T), dense_half(W));
        std::lock_guard<std::mutex> lk(mu);
        out.push_back(q);
      }
    }
  });
  std::sort(out.begin(), out.end(), [](const Quat& x, const Quat& y) {
    int dx = degree(x), dy = degree(y);
    if (dx != dy) return dx < dy;
    return x.to_string() < y.to_string();
  });
  return out;
}

IrrationalUnitReport irrational_unit_report() {
  auto real_root = [](std::vector<cplx> c) {
    for (const Root& r : roots_univariate(c))
      if (std::abs(r.value.imag()) < 1e-9) return r.value.real();
    throw Error("cubic has no real root");
  };
  IrrationalUnitReport rep;
  rep.a = real_root({-1, 2, -2, 2});
  rep.b = real_root({-1, 4, 6, 2});
  auto norm_err = [](long double a, long double b) {
    long double worst = 0;
    for (int iu = -4; iu <= 4; ++iu)
      for (int iv = -4; iv <= 4; ++iv) {
        long double u = 0.37L * iu + 0.05L, v = 0.41L * iv - 0.03L;
        long double R = (1 - u * u) * (a - a * v * v + v * v) + u * u * v;
        long double S = (v - 1) * ((b - a * u) * (v + 1) + u * v);
        long double T = (1 - a) * (1 - v) * (1 - u * u) + u;
        long double W = a + b * v - u * (a - 1) * (v - 1);
        long double N = R * R - (u * u - 1) * S * S - (v * v - 1) * T * T + (u * u - 1) * (v * v - 1) * W * W;
        worst = std::max(worst, std::fabs(N - 1));
      }
    return static_cast<double>(worst);
  };
  rep.max_norm_error = norm_err(rep.a, rep.b);
  rep.rational_case_error = norm_err(0.5L, 0.5L);
  rep.perturbed_error = norm_err(rep.a + 1e-3L, rep.b);
  rep.ok = rep.max_norm_error < 1e-9 && rep.rational_case_error < 1e-9 && rep.perturbed_error > 1e-6;
  return rep;
}

bool verify_irrational_unit() { return irrational_unit_report().ok; }

nlohmann::json to_json(const Quat& q) {
  return {{"algebra", algebra_name(q.alg)},
          {"r", to_json(q.r)},
          {"s", to_json(q.s)},
          {"t", to_json(q.t)},
          {"w", to_json(q.w)}};
}

Quat quat_from_json(const nlohmann::json& j) {
  std::string a;
  try {
    a = j.at("algebra").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad quaternion JSON: ") + e.what());
  }
  Algebra alg;
  if (a == "q0")
    alg = Algebra::Q0;
  else if (a == "quv")
    alg = Algebra::QUV;
  else
    throw ParseError("unknown algebra '" + a + "'");
  try {
    return Quat::make(alg, poly_from_json(j.at("r")), poly_from_json(j.at("s")), poly_from_json(j.at("t")),
                      poly_from_json(j.at("w")));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad quaternion JSON: ") + e.what());
  }
}

}  // namespace tracepoly
