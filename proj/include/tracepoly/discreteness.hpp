#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tracepoly/exactpoly.hpp"
#include "tracepoly/gaussrat.hpp"
#include "tracepoly/words.hpp"

namespace tracepoly {

// 2 - 2 cos(pi/7)
extern const double kCaoConstant;

struct InequalityCheck {
  bool applicable = true;  // false in the excluded cases; holds is then true
  bool holds = true;
  double lhs = 0, rhs = 0;
};

struct InequalityResult {
  InequalityCheck jorgensen, variant, cao;
  bool all_hold() const { return jorgensen.holds && variant.holds && cao.holds; }
};

// |b| + |gt| >= 1, |b| + |b - gt| >= 1, |gt||gt - b| >= c0.  A test is
// violated only when lhs < rhs - margin.
InequalityResult inequality_tests(cplx beta, cplx gamma_tilde, double margin = 1e-12, double exclusion = 1e-12);

struct Certificate {
  std::string kind;                // jorgensen | variant | cao | semigroup-escape
  std::string word;                // witness word (order2 mode)
  std::vector<std::string> chain;  // p_chain[0] o ... o p_chain[k-1] applied to gamma
  cplx beta, gamma;
  cplx value;  // gamma~ at the end of the chain
  double lhs = 0, rhs = 0;

  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

// Recomputes the chain from fresh trace polynomials and re-applies the violated test.
bool revalidate(const Certificate& c, double tol = 1e-9);

struct KillerOptions {
  int max_depth = 30;
  int max_syllables = 4;
  int max_exp = 3;
  size_t word_budget = 400;
  double escape_radius = 1e6;
  int threads = 0;
};

// Word corpus with p_w(beta, .) precomputed, reusable across many gamma.
class KillerSearch {
 public:
  KillerSearch(cplx beta, const KillerOptions& opt = {});
  std::optional<Certificate> run(cplx gamma) const;
  size_t corpus_size() const { return words_.size(); }
  cplx beta() const { return beta_; }

 private:
  cplx beta_;
  KillerOptions opt_;
  std::vector<GoodWord> words_;
  std::vector<std::vector<std::complex<long double>>> coeffs_;  // ascending in z
};

std::optional<Certificate> killer_search(cplx beta, cplx gamma, const KillerOptions& opt = {});

// t_w = w_w = 0 at (beta, gamma).
bool axis_coincidence(const GoodWord& w, const GaussRat& beta, const GaussRat& gamma);
bool axis_coincidence(const GoodWord& w, cplx beta, cplx gamma, double tol = 1e-9);

// gamma is a root of p_w(beta, .) of multiplicity >= 2.
bool multiple_root_check(const GoodWord& w, const GaussRat& beta, const GaussRat& gamma);
bool multiple_root_check(const GoodWord& w, cplx beta, cplx gamma, double tol = 1e-9);

// Coefficient of z in p_w(x, z), as a polynomial in x.
RatPoly2 multiplier_at_zero(const GoodWord& w);
// Same quantity via d/dz p_w at z = 0.
RatPoly2 multiplier_by_derivative(const GoodWord& w);

// Solutions of T_w = W_w = 0 in the (u,v) variables.
struct AxisSystem {
  std::vector<Rational> common_u_factor;  // gcd of the u-contents, ascending; {1} if none
  bool common_v_factor = false;           // resultant vanished identically
  std::vector<Rational> resultant;        // Res_v of the primitive parts, ascending in u
  std::vector<std::pair<cplx, cplx>> isolated;  // (u, v)
};

AxisSystem solve_axis_system(const GoodWord& w);

struct ArithmeticityResult {
  bool pass = false;
  int degree = 0;
  int complex_pairs = 0;
  std::vector<double> real_roots;
  std::vector<double> v_at_real_roots;
  bool irreducible = false;
  std::vector<std::string> diagnostics;
  nlohmann::json to_json() const;
};

// minpoly and v_expr as integer coefficient lists, ascending.  Throws
// PreconditionError unless minpoly is monic of degree >= 1.
ArithmeticityResult arithmeticity_screen(const std::vector<long>& minpoly, const std::vector<long>& v_expr);

}  // namespace tracepoly
