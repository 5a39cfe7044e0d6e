#include "tracepoly/exactpoly.hpp"

#include <algorithm>
#include <sstream>

#include "tracepoly/errors.hpp"

namespace tracepoly {

const char* basis_name(Basis b) { return b == Basis::XZ ? "xz" : "uv"; }

namespace {

void check_basis(const RatPoly2& a, const RatPoly2& b) {
  if (a.basis() != b.basis()) throw BasisMismatch("polynomial basis mismatch");
}

template <class T>
std::vector<T> powers(const T& base, int n) {
  std::vector<T> p;
  p.reserve(n + 1);
  p.push_back(T(1));
  for (int k = 1; k <= n; ++k) p.push_back(p.back() * base);
  return p;
}

}  // namespace

RatPoly2 RatPoly2::constant(const Rational& c, Basis b) { return monomial(c, 0, 0, b); }

RatPoly2 RatPoly2::monomial(const Rational& c, int i, int j, Basis b) {
  RatPoly2 p(b);
  p.add_term(c, i, j);
  return p;
}

bool RatPoly2::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

Rational RatPoly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

void RatPoly2::add_term(const Rational& c, int i, int j) {
  if (i < 0 || j < 0) throw PreconditionError("negative exponent");
  if (sgn(c) == 0) return;
  Rational v(c);
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace({i, j}, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int RatPoly2::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.i + terms_.begin()->first.j;
}
int RatPoly2::degree_first() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.i);
  return d;
}
int RatPoly2::degree_second() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.j);
  return d;
}

RatPoly2& RatPoly2::operator+=(const RatPoly2& o) {
  check_basis(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(c, e.i, e.j);
  return *this;
}
RatPoly2& RatPoly2::operator-=(const RatPoly2& o) {
  check_basis(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(-c, e.i, e.j);
  return *this;
}
RatPoly2& RatPoly2::operator*=(const RatPoly2& o) {
  check_basis(*this, o);
  RatPoly2 r(basis_);
  Rational prod;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      prod = c1 * c2;
      r.add_term(prod, e1.i + e2.i, e1.j + e2.j);
    }
  *this = std::move(r);
  return *this;
}
RatPoly2 RatPoly2::operator-() const {
  RatPoly2 r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}
RatPoly2 RatPoly2::scale(const Rational& k) const {
  if (sgn(k) == 0) return RatPoly2(basis_);
  Rational kc(k);
  kc.canonicalize();
  RatPoly2 r = *this;
  for (auto& [e, c] : r.terms_) c *= kc;
  return r;
}
RatPoly2 RatPoly2::pow(unsigned n) const {
  RatPoly2 result = constant(1, basis_), base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

RatPoly2 operator+(RatPoly2 a, const RatPoly2& b) { return a += b; }
RatPoly2 operator-(RatPoly2 a, const RatPoly2& b) { return a -= b; }
RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b) {
  RatPoly2 r = a;
  r *= b;
  return r;
}
RatPoly2 operator*(const Rational& c, const RatPoly2& p) { return p.scale(c); }

RatPoly2 RatPoly2::substitute(const RatPoly2& X, const RatPoly2& Z) const {
  check_basis(X, Z);
  Basis tb = X.basis();
  RatPoly2 out(tb);
  if (terms_.empty()) return out;
  std::vector<RatPoly2> xp{RatPoly2::constant(1, tb)}, zp{RatPoly2::constant(1, tb)};
  for (int k = 1; k <= degree_first(); ++k) xp.push_back(xp.back() * X);
  for (int k = 1; k <= degree_second(); ++k) zp.push_back(zp.back() * Z);
  for (const auto& [e, c] : terms_) out += (xp[e.i] * zp[e.j]).scale(c);
  return out;
}

RatPoly2 RatPoly2::compose_second(const RatPoly2& q) const {
  check_basis(*this, q);
  return substitute(first(basis_), q);
}

RatPoly2 compose_second(const RatPoly2& p, const RatPoly2& q) { return p.compose_second(q); }

RatPoly2 RatPoly2::derivative_first() const {
  RatPoly2 r(basis_);
  for (const auto& [e, c] : terms_)
    if (e.i > 0) r.add_term(c * e.i, e.i - 1, e.j);
  return r;
}
RatPoly2 RatPoly2::derivative_second() const {
  RatPoly2 r(basis_);
  for (const auto& [e, c] : terms_)
    if (e.j > 0) r.add_term(c * e.j, e.i, e.j - 1);
  return r;
}
RatPoly2 RatPoly2::with_basis(Basis b) const {
  RatPoly2 r = *this;
  r.basis_ = b;
  return r;
}

cplxl RatPoly2::eval_ld(cplxl x, cplxl z) const {
  auto xp = powers(x, std::max(0, degree_first()));
  auto zp = powers(z, std::max(0, degree_second()));
  cplxl s = 0;
  for (const auto& [e, c] : terms_) s += to_long_double(c) * xp[e.i] * zp[e.j];
  return s;
}

cplx RatPoly2::eval(cplx x, cplx z) const { return cplx(eval_ld(cplxl(x), cplxl(z))); }

GaussRat RatPoly2::eval_exact(const GaussRat& x, const GaussRat& z) const {
  auto xp = powers(x, std::max(0, degree_first()));
  auto zp = powers(z, std::max(0, degree_second()));
  GaussRat s;
  for (const auto& [e, c] : terms_) s += GaussRat(c) * xp[e.i] * zp[e.j];
  return s;
}

std::vector<GaussRat> RatPoly2::coeffs_in_second(const GaussRat& x) const {
  std::vector<GaussRat> out(std::max(0, degree_second() + 1));
  auto xp = powers(x, std::max(0, degree_first()));
  for (const auto& [e, c] : terms_) out[e.j] += GaussRat(c) * xp[e.i];
  return out;
}

std::vector<GaussRat> RatPoly2::coeffs_in_first(const GaussRat& z) const {
  std::vector<GaussRat> out(std::max(0, degree_first() + 1));
  auto zp = powers(z, std::max(0, degree_second()));
  for (const auto& [e, c] : terms_) out[e.i] += GaussRat(c) * zp[e.j];
  return out;
}

std::string RatPoly2::to_string() const {
  return basis_ == Basis::XZ ? to_string("x", "z") : to_string("u", "v");
}

std::string RatPoly2::to_string(const std::string& v1, const std::string& v2) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [e, c] : terms_) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first_term)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first_term = false;
    bool unit = (a == 1);
    bool has_var = e.i > 0 || e.j > 0;
    if (!unit || !has_var) os << a.get_str();
    bool need_star = !unit;
    auto var = [&](const std::string& name, int k) {
      if (k == 0) return;
      if (need_star) os << "*";
      os << name;
      if (k > 1) os << "^" << k;
      need_star = true;
    };
    var(v1, e.i);
    var(v2, e.j);
  }
  return os.str();
}

std::optional<RatPoly2> divides_exactly(const RatPoly2& p, const RatPoly2& d) {
  check_basis(p, d);
  if (d.is_zero()) return std::nullopt;
  RatPoly2 rem = p, quo(p.basis());
  const auto& [ld, lc] = *d.terms().begin();
  while (!rem.is_zero()) {
    const auto& [lr, rc] = *rem.terms().begin();
    if (lr.i < ld.i || lr.j < ld.j) return std::nullopt;
    RatPoly2 t = RatPoly2::monomial(rc / lc, lr.i - ld.i, lr.j - ld.j, p.basis());
    quo += t;
    rem -= t * d;
  }
  return quo;
}

bool has_integer_coefficients(const RatPoly2& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

bool is_half_integer(const RatPoly2& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) {
    const auto& den = t.second.get_den();
    return den == 1 || den == 2;
  });
}

Mod2Poly mod2_reduce(const RatPoly2& p) {
  if (!has_integer_coefficients(p)) throw PreconditionError("mod2_reduce needs integer coefficients");
  Mod2Poly out;
  for (const auto& [e, c] : p.terms())
    if (mpz_odd_p(c.get_num().get_mpz_t())) out.insert({e.i, e.j});
  return out;
}

nlohmann::json to_json(const RatPoly2& p) {
  nlohmann::json terms = nlohmann::json::array();
  // ascending order reads better in files
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back({{"i", it->first.i},
                     {"j", it->first.j},
                     {"num", it->second.get_num().get_str()},
                     {"den", it->second.get_den().get_str()}});
  return {{"basis", basis_name(p.basis())}, {"terms", terms}};
}

RatPoly2 poly_from_json(const nlohmann::json& j) {
  try {
    std::string b = j.at("basis").get<std::string>();
    Basis basis;
    if (b == "xz")
      basis = Basis::XZ;
    else if (b == "uv")
      basis = Basis::UV;
    else
      throw ParseError("unknown basis '" + b + "'");
    RatPoly2 p(basis);
    for (const auto& t : j.at("terms")) {
      mpz_class num(t.at("num").get<std::string>()), den(t.at("den").get<std::string>());
      if (den == 0) throw ParseError("zero denominator");
      Rational c(num, den);
      c.canonicalize();
      p.add_term(c, t.at("i").get<int>(), t.at("j").get<int>());
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad integer in polynomial JSON: ") + e.what());
  }
}

}  // namespace tracepoly
