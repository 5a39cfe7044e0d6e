#include "tracepoly/discreteness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tracepoly/errors.hpp"
#include "tracepoly/parallel.hpp"
#include "tracepoly/unipoly.hpp"
#include "tracepoly/wordpoly.hpp"

namespace tracepoly {

const double kCaoConstant = 2.0 - 2.0 * std::cos(std::numbers::pi / 7.0);

namespace {

InequalityCheck check(double lhs, double rhs, bool applicable, double margin) {
  InequalityCheck c;
  c.applicable = applicable;
  c.lhs = lhs;
  c.rhs = rhs;
  c.holds = !applicable || lhs >= rhs - margin;
  return c;
}

using CL = std::complex<long double>;

CL horner(const std::vector<CL>& c, CL z) {
  CL acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<CL> univariate_at(const RatPoly2& p, cplx beta) {
  std::vector<CL> out;
  for (const GaussRat& g : p.coeffs_in_second(GaussRat::from_complex(beta))) out.push_back(g.to_complex_ld());
  return out;
}

const InequalityCheck& pick(const InequalityResult& r, const std::string& kind) {
  if (kind == "jorgensen") return r.jorgensen;
  if (kind == "variant") return r.variant;
  if (kind == "cao") return r.cao;
  throw PreconditionError("unknown certificate kind '" + kind + "'");
}

// First violated test, in the order jorgensen, variant, cao.
const char* violated(const InequalityResult& r) {
  if (!r.jorgensen.holds) return "jorgensen";
  if (!r.variant.holds) return "variant";
  if (!r.cao.holds) return "cao";
  return nullptr;
}

nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }
cplx from_cjson(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

InequalityResult inequality_tests(cplx beta, cplx gt, double margin, double exclusion) {
  InequalityResult r;
  double ab = std::abs(beta);
  bool g0 = std::abs(gt) <= exclusion;
  bool gb = std::abs(gt - beta) <= exclusion;
  r.jorgensen = check(ab + std::abs(gt), 1.0, !g0, margin);
  r.variant = check(ab + std::abs(beta - gt), 1.0, !gb, margin);
  r.cao = check(std::abs(gt) * std::abs(gt - beta), kCaoConstant, !g0 && !gb, margin);
  return r;
}

nlohmann::json Certificate::to_json() const {
  return {{"kind", kind},
          {"word", word},
          {"chain", chain},
          {"beta", cjson(beta)},
          {"gamma", cjson(gamma)},
          {"value", cjson(value)},
          {"values", {{"lhs", lhs}, {"rhs", rhs}}}};
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  try {
    Certificate c;
    c.kind = j.at("kind").get<std::string>();
    c.word = j.at("word").get<std::string>();
    c.chain = j.at("chain").get<std::vector<std::string>>();
    c.beta = from_cjson(j.at("beta"));
    c.gamma = from_cjson(j.at("gamma"));
    c.value = from_cjson(j.at("value"));
    c.lhs = j.at("values").at("lhs").get<double>();
    c.rhs = j.at("values").at("rhs").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad certificate JSON: ") + e.what());
  }
}

bool revalidate(const Certificate& c, double tol) {
  CL z = CL(c.gamma.real(), c.gamma.imag());
  // chain[0] is applied last
  for (auto it = c.chain.rbegin(); it != c.chain.rend(); ++it) {
    RatPoly2 p = trace_poly(parse_word(*it, true));
    z = horner(univariate_at(p, c.beta), z);
  }
  cplx val(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  if (std::abs(val - c.value) > tol * std::max(1.0, std::abs(val))) return false;
  const InequalityCheck& ch = pick(inequality_tests(c.beta, val), c.kind);
  return ch.applicable && !ch.holds && std::abs(ch.lhs - c.lhs) <= tol * std::max(1.0, std::abs(ch.lhs));
}

KillerSearch::KillerSearch(cplx beta, const KillerOptions& opt) : beta_(beta), opt_(opt) {
  for (int m = 1; m <= opt.max_syllables && words_.size() < opt.word_budget; ++m)
    for (GoodWord& w : enumerate_order2_words(m, opt.max_exp)) {
      if (words_.size() >= opt.word_budget) break;
      words_.push_back(std::move(w));
    }
  coeffs_.resize(words_.size());
  parallel_for(words_.size(), opt.threads,
               [&](size_t i) { coeffs_[i] = univariate_at(trace_poly(words_[i]), beta_); });
}

std::optional<Certificate> KillerSearch::run(cplx gamma) const {
  auto make = [&](const char* kind, const InequalityResult& r, size_t word, int depth, CL z) {
    Certificate c;
    c.kind = kind;
    c.beta = beta_;
    c.gamma = gamma;
    c.value = {static_cast<double>(z.real()), static_cast<double>(z.imag())};
    c.word = depth == 0 ? std::string("b") : words_[word].to_string();
    c.chain.assign(depth, c.word);
    const InequalityCheck& ch = pick(r, kind);
    c.lhs = ch.lhs;
    c.rhs = ch.rhs;
    return c;
  };

  InequalityResult r0 = inequality_tests(beta_, gamma);
  if (const char* k = violated(r0)) return make(k, r0, 0, 0, CL(gamma.real(), gamma.imag()));

  // Orbits of gamma under each p_w, explored level by level so the first
  // hit has minimal depth, then minimal corpus index.
  std::vector<CL> z(words_.size(), CL(gamma.real(), gamma.imag()));
  std::vector<char> live(words_.size(), 1);
  for (int depth = 1; depth <= opt_.max_depth; ++depth) {
    bool any = false;
    for (size_t i = 0; i < words_.size(); ++i) {
      if (!live[i]) continue;
      z[i] = horner(coeffs_[i], z[i]);
      cplx v(static_cast<double>(z[i].real()), static_cast<double>(z[i].imag()));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > opt_.escape_radius) {
        live[i] = 0;
        continue;
      }
      any = true;
      InequalityResult r = inequality_tests(beta_, v);
      if (const char* k = violated(r)) return make(k, r, i, depth, z[i]);
    }
    if (!any) break;
  }
  return std::nullopt;
}

std::optional<Certificate> killer_search(cplx beta, cplx gamma, const KillerOptions& opt) {
  return KillerSearch(beta, opt).run(gamma);
}

namespace {

void axis_preconditions(bool beta_m4, bool gamma0, bool gamma_beta) {
  if (beta_m4) throw PreconditionError("axis test needs beta != -4");
  if (gamma0 || gamma_beta) throw PreconditionError("axis test needs gamma not in {0, beta}");
}

}  // namespace

bool axis_coincidence(const GoodWord& w, const GaussRat& beta, const GaussRat& gamma) {
  axis_preconditions(beta == GaussRat(-4), gamma.is_zero(), gamma == beta);
  WordPolys wp = word_polys(w);
  return wp.t.eval_exact(beta, gamma).is_zero() && wp.w.eval_exact(beta, gamma).is_zero();
}

bool axis_coincidence(const GoodWord& w, cplx beta, cplx gamma, double tol) {
  axis_preconditions(std::abs(beta + 4.0) < 1e-12, std::abs(gamma) < 1e-12, std::abs(gamma - beta) < 1e-12);
  WordPolys wp = word_polys(w);
  CL b(beta.real(), beta.imag()), g(gamma.real(), gamma.imag());
  return std::abs(wp.t.eval_ld(b, g)) < tol && std::abs(wp.w.eval_ld(b, g)) < tol;
}

namespace {

void root_preconditions(bool beta_m4, bool gamma0, bool gamma_beta) {
  if (beta_m4 || gamma0 || gamma_beta) throw PreconditionError("multiple-root test needs beta != -4, gamma not in {0, beta}");
}

}  // namespace

bool multiple_root_check(const GoodWord& w, const GaussRat& beta, const GaussRat& gamma) {
  root_preconditions(beta == GaussRat(-4), gamma.is_zero(), gamma == beta);
  RatPoly2 p = trace_poly(w);
  return p.eval_exact(beta, gamma).is_zero() && p.derivative_second().eval_exact(beta, gamma).is_zero();
}

bool multiple_root_check(const GoodWord& w, cplx beta, cplx gamma, double tol) {
  root_preconditions(std::abs(beta + 4.0) < 1e-12, std::abs(gamma) < 1e-12, std::abs(gamma - beta) < 1e-12);
  RatPoly2 p = trace_poly(w);
  std::vector<CL> c = univariate_at(p, beta);
  CL g(gamma.real(), gamma.imag());
  long double scale = 1, gk = 1;
  for (const CL& x : c) {
    scale += std::abs(x) * gk;
    gk *= std::abs(g);
  }
  std::vector<CL> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<long double>(k));
  return std::abs(horner(c, g)) < tol * scale && std::abs(horner(d, g)) < tol * scale;
}

RatPoly2 multiplier_at_zero(const GoodWord& w) {
  RatPoly2 p = trace_poly(w), out(Basis::XZ);
  for (const auto& [e, c] : p.terms())
    if (e.j == 1) out.add_term(c, e.i, 0);
  return out;
}

RatPoly2 multiplier_by_derivative(const GoodWord& w) {
  RatPoly2 d = trace_poly(w).derivative_second();
  return d.substitute(RatPoly2::first(Basis::XZ), RatPoly2(Basis::XZ));
}

namespace {

using QPoly = UniPoly<Rational>;
using VPoly = std::vector<QPoly>;  // coefficients in v, each a polynomial in u

VPoly to_vpoly(const RatPoly2& p) {
  int dv = std::max(0, p.degree_second()), du = std::max(0, p.degree_first());
  std::vector<std::vector<Rational>> c(dv + 1, std::vector<Rational>(du + 1, Rational(0)));
  for (const auto& [e, k] : p.terms()) c[e.j][e.i] = k;
  VPoly out;
  for (auto& row : c) out.emplace_back(row);
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

QPoly content(const VPoly& p) {
  QPoly g;
  for (const QPoly& c : p) g = g.is_zero() ? c.monic() : poly_gcd(g, c);
  return g.is_zero() ? QPoly({Rational(1)}) : g;
}

VPoly divide_content(const VPoly& p, const QPoly& g) {
  VPoly out;
  for (const QPoly& c : p) {
    auto [q, r] = c.divmod(g);
    if (!r.is_zero()) throw Error("content division left a remainder");
    out.push_back(q);
  }
  return out;
}

// Fraction-free determinant over Q[u].
QPoly bareiss_det(std::vector<std::vector<QPoly>> m) {
  size_t n = m.size();
  if (n == 0) return QPoly({Rational(1)});
  QPoly prev({Rational(1)});
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return {};
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        auto [q, r] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divmod(prev);
        if (!r.is_zero()) throw Error("Bareiss step was not exact");
        m[i][j] = q;
      }
    prev = m[k][k];
  }
  QPoly d = m[n - 1][n - 1];
  return sign < 0 ? QPoly() - d : d;
}

QPoly resultant_v(const VPoly& P, const VPoly& Q) {
  int mdeg = static_cast<int>(P.size()) - 1, ndeg = static_cast<int>(Q.size()) - 1;
  if (mdeg < 0 || ndeg < 0) return {};
  size_t N = mdeg + ndeg;
  std::vector<std::vector<QPoly>> S(N, std::vector<QPoly>(N));
  for (int r = 0; r < ndeg; ++r)
    for (int k = 0; k <= mdeg; ++k) S[r][r + k] = P[mdeg - k];
  for (int r = 0; r < mdeg; ++r)
    for (int k = 0; k <= ndeg; ++k) S[ndeg + r][r + k] = Q[ndeg - k];
  return bareiss_det(S);
}

VPoly reduce_mod(const VPoly& p, const QPoly& h) {
  VPoly out;
  for (const QPoly& c : p) out.push_back(c.divmod(h).second);
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

std::vector<cplx> v_roots(const VPoly& p, cplx u0) {
  std::vector<cplx> c;
  GaussRat gu = GaussRat::from_complex(u0);
  for (const QPoly& k : p) {
    GaussRat acc;
    for (auto it = k.coeffs().rbegin(); it != k.coeffs().rend(); ++it) acc = acc * gu + GaussRat(*it);
    c.push_back(acc.to_complex());
  }
  std::vector<cplx> out;
  for (const Root& r : roots_univariate(c)) out.push_back(r.value);
  return out;
}

double rel_value(const VPoly& p, cplx u0, cplx v0) {
  CL u(u0.real(), u0.imag()), v(v0.real(), v0.imag()), acc = 0, vp = 1;
  long double scale = 1, vk = 1;
  for (const QPoly& k : p) {
    CL cu = 0, up = 1;
    long double s = 0, uk = 1;
    for (const Rational& q : k.coeffs()) {
      cu += to_long_double(q) * up;
      s += std::abs(to_long_double(q)) * uk;
      up *= u;
      uk *= std::abs(u);
    }
    acc += cu * vp;
    scale += s * vk;
    vp *= v;
    vk *= std::abs(v);
  }
  return static_cast<double>(std::abs(acc) / scale);
}

// Common zeros of P and Q with u a root of the square-free h.  Coefficients
// are first reduced mod h and h is split wherever a leading coefficient
// vanishes on part of it, so the numeric step never sees a fake leading term.
void solve_on(const QPoly& h, VPoly P, VPoly Q, AxisSystem& out) {
  if (h.degree() < 1) return;
  P = reduce_mod(P, h);
  Q = reduce_mod(Q, h);
  for (VPoly* F : {&P, &Q}) {
    if (F->empty()) continue;
    QPoly g = poly_gcd(h, F->back());
    if (g.degree() >= 1) {
      VPoly dropped(F->begin(), F->end() - 1);
      QPoly rest = h.divmod(g).first;
      if (F == &P) {
        solve_on(g, dropped, Q, out);
        solve_on(rest, P, Q, out);
      } else {
        solve_on(g, P, dropped, out);
        solve_on(rest, P, Q, out);
      }
      return;
    }
  }
  std::vector<GaussRat> hc(h.coeffs().begin(), h.coeffs().end());
  for (const Root& ur : roots_exact(hc)) {
    if (P.empty() && Q.empty()) {
      out.common_v_factor = true;
      continue;
    }
    const VPoly& A = P.empty() || (!Q.empty() && Q.size() < P.size()) ? Q : P;
    const VPoly& B = &A == &P ? Q : P;
    if (A.size() <= 1) continue;  // nonzero constant in v
    for (cplx v0 : v_roots(A, ur.value))
      if (B.empty() || rel_value(B, ur.value, v0) < 1e-8) out.isolated.emplace_back(ur.value, v0);
  }
}

}  // namespace

AxisSystem solve_axis_system(const GoodWord& w) {
  RSTW f = rstw_uv(w);
  VPoly T = to_vpoly(f.T), W = to_vpoly(f.W);
  AxisSystem out;
  if (T.empty() || W.empty()) {
    out.common_v_factor = true;
    return out;
  }
  QPoly cu = poly_gcd(content(T), content(W));
  for (const Rational& c : cu.coeffs()) out.common_u_factor.push_back(c);
  VPoly T1 = divide_content(T, cu), W1 = divide_content(W, cu);
  QPoly R = resultant_v(T1, W1);
  for (const Rational& c : R.coeffs()) out.resultant.push_back(c);
  if (R.is_zero()) {
    out.common_v_factor = true;
    return out;
  }
  for (const auto& [h, mult] : squarefree_decomposition(R)) solve_on(h, T1, W1, out);
  std::vector<std::pair<cplx, cplx>> uniq;
  for (const auto& s : out.isolated) {
    bool dup = false;
    for (const auto& t : uniq) dup = dup || (std::abs(s.first - t.first) < 1e-6 && std::abs(s.second - t.second) < 1e-6);
    if (!dup) uniq.push_back(s);
  }
  std::sort(uniq.begin(), uniq.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    if (a.first.imag() != b.first.imag()) return a.first.imag() < b.first.imag();
    return a.second.real() < b.second.real();
  });
  out.isolated = uniq;
  return out;
}

nlohmann::json ArithmeticityResult::to_json() const {
  return {{"pass", pass},
          {"degree", degree},
          {"complex_pairs", complex_pairs},
          {"real_roots", real_roots},
          {"v_at_real_roots", v_at_real_roots},
          {"irreducible", irreducible},
          {"diagnostics", diagnostics}};
}

namespace {

// Looks for a proper factor with integer coefficients by multiplying out
// subsets of the numeric roots.  Exhaustive for small degree.
bool has_small_factor(const std::vector<cplx>& roots) {
  size_t n = roots.size();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    if (static_cast<size_t>(__builtin_popcount(mask)) > n / 2) continue;
    std::vector<CL> c{1};
    for (size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) {
        std::vector<CL> next(c.size() + 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
          next[i + 1] += c[i];
          next[i] -= c[i] * CL(roots[k].real(), roots[k].imag());
        }
        c = next;
      }
    bool integral = true;
    for (const CL& x : c)
      integral = integral && std::abs(x.imag()) < 1e-6L && std::abs(x.real() - std::round(x.real())) < 1e-6L;
    if (integral) return true;
  }
  return false;
}

}  // namespace

ArithmeticityResult arithmeticity_screen(const std::vector<long>& minpoly, const std::vector<long>& v_expr) {
  if (minpoly.size() < 2 || minpoly.back() != 1) throw PreconditionError("arithmeticity_screen: minpoly must be monic of degree >= 1");
  ArithmeticityResult res;
  res.degree = static_cast<int>(minpoly.size()) - 1;

  // rational roots of a monic integer polynomial are integer divisors of c0
  bool rational_root = false;
  long c0 = minpoly.front();
  auto value_at = [&](long x) {
    mpz_class acc = 0;
    for (auto it = minpoly.rbegin(); it != minpoly.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  if (c0 == 0) {
    rational_root = true;
  } else {
    for (long d = 1; d <= std::labs(c0) && !rational_root; ++d)
      if (c0 % d == 0) rational_root = value_at(d) == 0 || value_at(-d) == 0;
  }

  std::vector<cplx> c;
  for (long k : minpoly) c.push_back(static_cast<double>(k));
  std::vector<cplx> roots;
  bool repeated = false;
  for (const Root& r : roots_univariate(c)) {
    repeated = repeated || r.multiplicity > 1;
    for (int k = 0; k < r.multiplicity; ++k) roots.push_back(r.value);
  }

  if (res.degree == 1) {
    res.irreducible = true;
  } else if (rational_root || repeated) {
    res.irreducible = false;
  } else if (res.degree <= 12) {
    res.irreducible = !has_small_factor(roots);
    res.diagnostics.push_back("irreducibility: rational-root test and numeric subset-product factor search");
  } else {
    res.irreducible = true;
    res.diagnostics.push_back("irreducibility: only the rational-root test was run (degree > 12)");
  }
  if (!res.irreducible) res.diagnostics.push_back("minpoly is reducible");

  int nonreal = 0;
  for (const cplx& z : roots) {
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z)))
      ++nonreal;
    else
      res.real_roots.push_back(z.real());
  }
  std::sort(res.real_roots.begin(), res.real_roots.end());
  res.complex_pairs = nonreal / 2;
  bool one_pair = res.complex_pairs == 1;
  if (!one_pair) res.diagnostics.push_back("expected exactly one complex-conjugate pair of roots");

  bool reals_inside = true, v_inside = true;
  for (double x : res.real_roots) {
    if (!(x > -1 && x < 1)) reals_inside = false;
    double acc = 0;
    for (auto it = v_expr.rbegin(); it != v_expr.rend(); ++it) acc = acc * x + static_cast<double>(*it);
    res.v_at_real_roots.push_back(acc);
    if (!(acc > -1 && acc < 1)) v_inside = false;
  }
  if (!reals_inside) res.diagnostics.push_back("a real embedding of u lies outside (-1, 1)");
  if (!v_inside) res.diagnostics.push_back("a real embedding of v lies outside (-1, 1)");
  res.pass = res.irreducible && one_pair && reals_inside && v_inside;
  return res;
}

}  // namespace tracepoly
