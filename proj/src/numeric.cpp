#include "tracepoly/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "tracepoly/errors.hpp"

namespace tracepoly {

namespace {

const cplxl I(0, 1);

bool near_zero(cplxl z, long double eps = 1e-300L) { return std::abs(z) <= eps; }

cplxl ev(const RatPoly2& p, cplxl x, cplxl z) { return p.eval_ld(x, z); }

}  // namespace

Mat2 Mat2::inverse() const {
  cplxl d = det();
  if (near_zero(d)) throw PreconditionError("Mat2::inverse: singular matrix");
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22, a21 * o.a11 + a22 * o.a21,
          a21 * o.a12 + a22 * o.a22};
}

Mat2 Mat2::operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }

Mat2 Mat2::pow(int n) const {
  Mat2 base = n < 0 ? inverse() : *this;
  Mat2 out;
  for (unsigned e = static_cast<unsigned>(std::abs(n)); e; e >>= 1) {
    if (e & 1u) out = out * base;
    base = base * base;
  }
  return out;
}

long double Mat2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

long double rel_dev(cplxl a, cplxl b) {
  long double scale = std::max({1.0L, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

long double rel_dev(const Mat2& a, const Mat2& b) {
  return std::max({rel_dev(a.a11, b.a11), rel_dev(a.a12, b.a12), rel_dev(a.a21, b.a21), rel_dev(a.a22, b.a22)});
}

long double rel_dev_pm(const Mat2& a, const Mat2& b) { return std::min(rel_dev(a, b), rel_dev(a, -b)); }

cplxl csqrt(cplxl z) { return std::sqrt(z); }

cplxl GroupParams::mu() const {
  if (near_zero(beta)) throw PreconditionError("mu is undefined for beta = 0");
  return cplxl(1) - cplxl(2) * gamma / beta;
}

GroupParams GroupParams::from_lambda_mu(cplxl lambda, cplxl lambda2, cplxl mu) {
  GroupParams p;
  p.beta = cplxl(2) * (lambda - cplxl(1));
  p.beta2 = cplxl(2) * (lambda2 - cplxl(1));
  p.gamma = -(lambda - cplxl(1)) * (mu - cplxl(1));
  return p;
}

cplxl beta_from_geometry(long double tau, long double eta) {
  cplxl s = std::sinh(cplxl(tau, eta) / cplxl(2));
  return cplxl(4) * s * s;
}

std::pair<long double, long double> geometry_from_beta(cplxl beta) {
  cplxl l = (beta + cplxl(2)) / cplxl(2);
  cplxl d = std::acosh(l);
  if (d.real() < 0) d = -d;
  return {d.real(), d.imag()};
}

CanonicalPair canonical_pair(const GroupParams& p, Subchoice sub, cplxl ell) {
  CanonicalPair out;
  const cplxl one(1), two(2), four(4);
  if (!near_zero(p.beta)) {
    out.case_no = 1;
    cplxl rb = csqrt(p.beta);
    cplxl Q = csqrt(p.beta * (p.beta + four));
    out.A = {(Q + p.beta) / (two * rb), 0, 0, (Q - p.beta) / (two * rb)};
    cplxl s1 = csqrt(p.beta2 + four);
    cplxl s2 = csqrt((four * p.gamma + p.beta * p.beta2) / p.beta);
    out.a = (s1 + s2) / two;
    out.d = (s1 - s2) / two;
    if (!near_zero(p.gamma)) {
      if (sub != Subchoice::Auto) throw PreconditionError("canonical_pair: off-diagonal subchoice needs gamma = 0");
      out.c = csqrt(p.gamma / p.beta);
      out.b = -out.c;
    } else {
      out.sub = sub == Subchoice::Auto ? Subchoice::B0C1 : sub;
      out.b = out.sub == Subchoice::B1C0 ? one : cplxl(0);
      out.c = out.sub == Subchoice::B0C1 ? one : cplxl(0);
    }
    out.B = {out.a, out.b, out.c, out.d};
    return out;
  }
  out.A = {1, 1, 0, 1};
  if (!near_zero(p.gamma)) {
    if (!near_zero(ell)) throw PreconditionError("canonical_pair: l is only free when beta = gamma = 0");
    out.case_no = 2;
    cplxl rg = csqrt(p.gamma);
    out.B = {0, -one / rg, rg, csqrt(p.beta2 + four)};
    return out;
  }
  out.case_no = 3;
  if (!near_zero(ell) && !near_zero(p.beta2))
    throw PreconditionError("canonical_pair: inconsistent request, l must vanish unless beta' = 0");
  cplxl s1 = csqrt(p.beta2 + four), s2 = csqrt(p.beta2);
  out.B = {(s1 + s2) / two, ell, 0, (s1 - s2) / two};
  return out;
}

CanonicalPair canonical_pair_lm(cplxl lambda, cplxl lambda2, cplxl mu, Subchoice sub) {
  const cplxl one(1), two(2);
  if (near_zero(lambda - one)) throw PreconditionError("canonical_pair_lm: lambda = 1");
  CanonicalPair out;
  out.case_no = 1;
  cplxl r = csqrt(lambda * lambda - one);
  cplxl den = csqrt(two * (lambda - one));
  out.A = {(r + (lambda - one)) / den, 0, 0, (r - (lambda - one)) / den};
  cplxl rt2 = std::sqrt(2.0L);
  out.a = (csqrt(lambda2 + one) + csqrt(lambda2 - mu)) / rt2;
  out.d = (csqrt(lambda2 + one) - csqrt(lambda2 - mu)) / rt2;
  if (!near_zero(mu - one)) {
    if (sub != Subchoice::Auto) throw PreconditionError("canonical_pair_lm: off-diagonal subchoice needs mu = 1");
    out.c = csqrt((one - mu) / two);
    out.b = -out.c;
  } else {
    out.sub = sub == Subchoice::Auto ? Subchoice::B0C1 : sub;
    out.b = out.sub == Subchoice::B1C0 ? one : cplxl(0);
    out.c = out.sub == Subchoice::B0C1 ? one : cplxl(0);
  }
  out.B = {out.a, out.b, out.c, out.d};
  return out;
}

Mat2 commutator(const Mat2& X, const Mat2& Y) { return X * Y * X.inverse() * Y.inverse(); }

GroupParams params_of(const Mat2& A, const Mat2& B) {
  GroupParams p;
  p.beta = A.trace() * A.trace() - cplxl(4);
  p.beta2 = B.trace() * B.trace() - cplxl(4);
  p.gamma = commutator(A, B).trace() - cplxl(2);
  return p;
}

Mat2 eval_word_matrix(const Mat2& A, const Mat2& B, const GoodWord& w) {
  Mat2 out;
  for (const Letter& l : w.letters()) out = out * (l.gen == 'a' ? A : B).pow(l.exp);
  return out;
}

Mat2 phi_eval(const Quat& q, const GroupParams& p, std::optional<cplxl> D1, std::optional<cplxl> D2) {
  if (q.alg != Algebra::Q0) throw PreconditionError("phi_eval expects a Q0 quaternion");
  const cplxl two(2), four(4);
  if (!near_zero(p.beta)) {
    cplxl target = p.gamma * (p.gamma - p.beta) / (p.beta * p.beta);
    if (!D1 && !D2) {
      CanonicalPair cp = canonical_pair(p);
      D1 = cp.a * cp.b;
      D2 = cp.c * cp.d;
    } else if (!D2) {
      if (near_zero(*D1)) throw PreconditionError("phi_eval: D1 = 0 leaves D2 undetermined");
      D2 = target / *D1;
    } else if (!D1) {
      if (near_zero(*D2)) throw PreconditionError("phi_eval: D2 = 0 leaves D1 undetermined");
      D1 = target / *D2;
    }
    if (rel_dev(*D1 * *D2, target) > 1e-9L) throw PreconditionError("phi_eval: D1 D2 != gamma(gamma-beta)/beta^2");
    cplxl Q = csqrt(p.beta * (p.beta + four));
    cplxl r = ev(q.r, p.beta, p.gamma), s = ev(q.s, p.beta, p.gamma), t = ev(q.t, p.beta, p.gamma),
          w = ev(q.w, p.beta, p.gamma);
    return {r + s * Q / p.beta, *D1 * (p.beta * t + w * Q), *D2 * (p.beta * t - w * Q), r - s * Q / p.beta};
  }
  auto g = divides_exactly(q.s - RatPoly2::second(Basis::XZ) * q.w, RatPoly2::first(Basis::XZ));
  if (!g) throw PreconditionError("phi_eval at beta = 0 needs (s - z w)/x to be a polynomial");
  cplxl r = ev(q.r, 0, p.gamma), t = ev(q.t, 0, p.gamma), w = ev(q.w, 0, p.gamma), gv = ev(*g, 0, p.gamma);
  if (!near_zero(p.gamma)) return {r + p.gamma * t, four * gv + two * w, two * p.gamma * w, r - p.gamma * t};
  cplxl k = p.beta2 + csqrt(p.beta2) * csqrt(p.beta2 + four);
  return {r, four * gv - k * w, 0, r};
}

Mat2 psi_eval(const Quat& q, cplxl lambda, cplxl lambda2, cplxl mu, Subchoice sub) {
  if (q.alg != Algebra::QUV) throw PreconditionError("psi_eval expects a QUV quaternion");
  CanonicalPair cp = canonical_pair_lm(lambda, lambda2, mu, sub);
  cplxl R = ev(q.r, lambda, mu), S = ev(q.s, lambda, mu), T = ev(q.t, lambda, mu), W = ev(q.w, lambda, mu);
  cplxl rt = csqrt(lambda * lambda - cplxl(1));
  const cplxl two(2);
  return {R + S * rt, two * cp.a * cp.b * (T + W * rt), two * cp.c * cp.d * (T - W * rt), R - S * rt};
}

bool LimitReport::decreasing() const {
  if (deviations.size() < 2) return true;
  for (size_t k = 1; k < deviations.size(); ++k)
    if (deviations[k] > deviations[k - 1] + 1e-12L) return false;
  return deviations.back() <= deviations.front();
}

LimitReport verify_limits(const Quat& q, cplxl beta2, cplxl gamma, const std::vector<long double>& betas) {
  if (near_zero(gamma)) throw PreconditionError("verify_limits: gamma must be nonzero");
  const cplxl one(1), two(2), four(4);
  Mat2 target = phi_eval(q, {0, beta2, gamma});
  LimitReport rep;
  for (long double bn : betas) {
    cplxl beta = bn;
    cplxl rb = csqrt(beta), rg = csqrt(gamma), s4 = csqrt(beta2 + four);
    cplxl k = csqrt(one / rb);
    cplxl m = -(one / k) * (one / rb + s4 / (two * rg));
    cplxl root = csqrt((four * gamma + beta * beta2) / beta);
    cplxl D1 = -csqrt(gamma / beta) * (s4 + root) / two;
    cplxl D2 = csqrt(gamma / beta) * (s4 - root) / two;
    cplxl h = csqrt(one + beta * beta2 / (four * gamma));
    cplxl E1 = -(rg / (two * rb)) * (s4 + two * rg * h / rb);
    cplxl E2 = (rg / (two * rb)) * (s4 - two * rg * h / rb);
    cplxl Q = csqrt(beta * (beta + four)), Qp = rb * csqrt(beta + four);
    Mat2 C = std::abs(Qp - Q) <= std::abs(Qp + Q) ? Mat2{csqrt(E1 / D1), 0, 0, csqrt(E2 / D2)}
                                                   : Mat2{0, I * csqrt(E1 / D2), I * csqrt(E2 / D1), 0};
    Mat2 M = Mat2{k, m, 0, one / k} * C;
    Mat2 conj = M * phi_eval(q, {beta, beta2, gamma}, D1, D2) * M.inverse();
    rep.params.push_back(bn);
    rep.deviations.push_back(rel_dev(conj, target));
  }
  return rep;
}

LimitReport verify_second_limit(const Quat& q, cplxl beta2, const std::vector<long double>& gammas) {
  const cplxl four(4);
  Mat2 target = phi_eval(q, {0, beta2, 0});
  LimitReport rep;
  for (long double gn : gammas) {
    cplxl gamma = gn;
    cplxl m1 = (csqrt(beta2 + four) + csqrt(beta2)) / (cplxl(2) * csqrt(gamma));
    Mat2 M1{1, m1, 0, 1};
    Mat2 conj = M1 * phi_eval(q, {0, beta2, gamma}) * M1.inverse();
    rep.params.push_back(gn);
    rep.deviations.push_back(rel_dev(conj, target));
  }
  return rep;
}

long double IdentityReport::max() const {
  return std::max({offdiag, conjugation, commutator, parabolic_commutator, trace, parabolic_trace});
}

IdentityReport section3_identities(cplxl k, cplxl m, cplxl a, cplxl b, cplxl c, cplxl d) {
  const cplxl one(1), two(2);
  Mat2 M{k, m, 0, one / k};
  Mat2 M0{k, 0, 0, one / k};
  Mat2 P{1, 1, 0, 1};
  cplxl rk = csqrt(k);
  Mat2 Qm{0, I * rk, I / rk, 0};
  Mat2 N{a, b, c, d};
  IdentityReport rep;
  rep.offdiag = rel_dev(Qm * N * Qm.inverse(), Mat2{d, k * c, b / k, a});
  rep.conjugation = rel_dev(M * N * M.inverse(), Mat2{a + m * c / k, -m * m * c + m * k * (d - a) + k * k * b,
                                                     c / (k * k), d - m * c / k});
  rep.commutator = rel_dev(commutator(M0, N), Mat2{a * d - k * k * b * c, a * b * (k * k - one),
                                                    c * d * (one / (k * k) - one), a * d - b * c / (k * k)});
  rep.parabolic_commutator =
      rel_dev(commutator(P, N), Mat2{one + c * c + a * c, one - a * a - a * c, c * c, one - a * c});
  cplxl kk = k - one / k;
  rep.trace = rel_dev(commutator(M0, N).trace(), two - kk * kk * b * c);
  rep.parabolic_trace = rel_dev(commutator(P, N).trace(), two + c * c);
  return rep;
}

bool section3_identities_check(cplxl k, cplxl m, cplxl a, cplxl b, cplxl c, cplxl d, long double tol) {
  if (rel_dev(a * d - b * c, cplxl(1)) > 1e-9L) throw PreconditionError("section3_identities: ad - bc != 1");
  return section3_identities(k, m, a, b, c, d).max() < tol;
}

}  // namespace tracepoly
