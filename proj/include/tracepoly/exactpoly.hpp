#pragma once

#include <map>
#include <set>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tracepoly/gaussrat.hpp"

namespace tracepoly {

enum class Basis { XZ, UV };

const char* basis_name(Basis b);

struct Exponent {
  int i = 0;  // first variable (x or u)
  int j = 0;  // second variable (z or v)
  bool operator==(const Exponent&) const = default;
};

// graded lexicographic
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    if (a.i + a.j != b.i + b.j) return a.i + a.j > b.i + b.j;
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  }
};

// Sparse bivariate polynomial with exact rational coefficients.
class RatPoly2 {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLex>;

  explicit RatPoly2(Basis b = Basis::XZ) : basis_(b) {}

  static RatPoly2 constant(const Rational& c, Basis b = Basis::XZ);
  static RatPoly2 monomial(const Rational& c, int i, int j, Basis b = Basis::XZ);
  static RatPoly2 first(Basis b = Basis::XZ) { return monomial(1, 1, 0, b); }
  static RatPoly2 second(Basis b = Basis::XZ) { return monomial(1, 0, 1, b); }

  Basis basis() const { return basis_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coeff(int i, int j) const;
  void add_term(const Rational& c, int i, int j);

  int total_degree() const;  // -1 for the zero polynomial
  int degree_first() const;
  int degree_second() const;

  RatPoly2& operator+=(const RatPoly2& o);
  RatPoly2& operator-=(const RatPoly2& o);
  RatPoly2& operator*=(const RatPoly2& o);
  RatPoly2 operator-() const;
  RatPoly2 scale(const Rational& c) const;
  RatPoly2 pow(unsigned n) const;

  // p(X, Z) with X,Z polynomials in a common basis (which becomes the result's basis).
  RatPoly2 substitute(const RatPoly2& X, const RatPoly2& Z) const;
  RatPoly2 compose_second(const RatPoly2& q) const;
  RatPoly2 derivative_first() const;
  RatPoly2 derivative_second() const;
  RatPoly2 with_basis(Basis b) const;

  cplx eval(cplx x, cplx z) const;
  cplxl eval_ld(cplxl x, cplxl z) const;
  GaussRat eval_exact(const GaussRat& x, const GaussRat& z) const;

  // Coefficients (ascending in the second variable) after fixing the first.
  std::vector<GaussRat> coeffs_in_second(const GaussRat& x) const;
  // Coefficients (ascending in the first variable) after fixing the second.
  std::vector<GaussRat> coeffs_in_first(const GaussRat& z) const;

  std::string to_string() const;
  std::string to_string(const std::string& v1, const std::string& v2) const;

  friend bool operator==(const RatPoly2& a, const RatPoly2& b) {
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

 private:
  Basis basis_;
  TermMap terms_;
};

RatPoly2 operator+(RatPoly2 a, const RatPoly2& b);
RatPoly2 operator-(RatPoly2 a, const RatPoly2& b);
RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b);
RatPoly2 operator*(const Rational& c, const RatPoly2& p);

RatPoly2 compose_second(const RatPoly2& p, const RatPoly2& q);

// Quotient when d divides p with zero remainder, nullopt otherwise.
std::optional<RatPoly2> divides_exactly(const RatPoly2& p, const RatPoly2& d);

bool has_integer_coefficients(const RatPoly2& p);
bool is_half_integer(const RatPoly2& p);

// Monomials whose (integer) coefficient is odd.  Throws if p is not integral.
using Mod2Poly = std::set<std::pair<int, int>>;
Mod2Poly mod2_reduce(const RatPoly2& p);

nlohmann::json to_json(const RatPoly2& p);
RatPoly2 poly_from_json(const nlohmann::json& j);

struct Root {
  cplx value;
  int multiplicity = 1;
};

// Roots of c[0] + c[1] z + ... + c[n] z^n.  The double coefficients are
// taken as exact values; multiplicities come from an exact square-free
// decomposition over Q(i), then clusters closer than cluster_radius merge.
std::vector<Root> roots_univariate(const std::vector<cplx>& coeffs, double cluster_radius = 1e-6);
std::vector<Root> roots_exact(const std::vector<GaussRat>& coeffs, double cluster_radius = 1e-6);

}  // namespace tracepoly
