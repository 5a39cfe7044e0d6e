#pragma once

#include <optional>
#include <vector>

#include "tracepoly/gaussrat.hpp"
#include "tracepoly/quatalg.hpp"
#include "tracepoly/words.hpp"

namespace tracepoly {

// Matrix entries are kept in extended precision; the oracle compares
// long products of matrices against exact polynomials.
struct Mat2 {
  cplxl a11 = 1, a12 = 0, a21 = 0, a22 = 1;

  static Mat2 identity() { return {}; }
  cplxl det() const { return a11 * a22 - a12 * a21; }
  cplxl trace() const { return a11 + a22; }
  Mat2 inverse() const;  // adjugate / det
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
  Mat2 pow(int n) const;
  long double max_abs() const;
};

// max-entry deviation of a and b relative to max(1, |a|, |b|)
long double rel_dev(const Mat2& a, const Mat2& b);
// the same allowing b's overall sign to flip (PSL comparisons)
long double rel_dev_pm(const Mat2& a, const Mat2& b);
long double rel_dev(cplxl a, cplxl b);

cplxl csqrt(cplxl z);  // principal branch

struct GroupParams {
  cplxl beta = 0;   // tr^2 f - 4
  cplxl beta2 = 0;  // tr^2 g - 4
  cplxl gamma = 0;  // tr[f,g] - 2

  cplxl lambda() const { return (beta + cplxl(2)) / cplxl(2); }
  cplxl lambda2() const { return (beta2 + cplxl(2)) / cplxl(2); }
  cplxl mu() const;  // throws when beta = 0
  static GroupParams from_lambda_mu(cplxl lambda, cplxl lambda2, cplxl mu);
};

// Complex translation length tau + i eta with lambda = cosh(tau + i eta).
cplxl beta_from_geometry(long double tau, long double eta);
std::pair<long double, long double> geometry_from_beta(cplxl beta);

enum class Subchoice {
  Auto,    // gamma != 0 in case 1; b=0,c=1 if gamma = 0
  B0C1,    // b = 0, c = 1
  B1C0,    // b = 1, c = 0
  BothZero
};

struct CanonicalPair {
  Mat2 A, B;
  int case_no = 1;
  Subchoice sub = Subchoice::Auto;
  cplxl a = 0, b = 0, c = 0, d = 0;  // entries of B in case 1
};

CanonicalPair canonical_pair(const GroupParams& p, Subchoice sub = Subchoice::Auto, cplxl ell = 0);
CanonicalPair canonical_pair_lm(cplxl lambda, cplxl lambda2, cplxl mu, Subchoice sub = Subchoice::Auto);

// Parameters realised by a pair: (tr^2 A - 4, tr^2 B - 4, tr[A,B] - 2).
GroupParams params_of(const Mat2& A, const Mat2& B);
Mat2 commutator(const Mat2& X, const Mat2& Y);

Mat2 eval_word_matrix(const Mat2& A, const Mat2& B, const GoodWord& w);

// Evaluation homomorphisms.  For beta != 0, D1 D2 must equal
// gamma(gamma-beta)/beta^2; when omitted they default to ab and cd.
Mat2 phi_eval(const Quat& q, const GroupParams& p, std::optional<cplxl> D1 = {}, std::optional<cplxl> D2 = {});
Mat2 psi_eval(const Quat& q, cplxl lambda, cplxl lambda2, cplxl mu, Subchoice sub = Subchoice::Auto);

struct LimitReport {
  std::vector<long double> params;      // beta_n (or gamma_n)
  std::vector<long double> deviations;  // relative max-entry deviation
  long double final_deviation() const { return deviations.empty() ? 0 : deviations.back(); }
  bool decreasing() const;
};

// M phi_{beta_n} M^-1 against phi at beta = 0 (gamma != 0).
LimitReport verify_limits(const Quat& q, cplxl beta2, cplxl gamma, const std::vector<long double>& betas);
// M1 phi_{0,gamma_n} M1^-1 against phi at beta = gamma = 0.
LimitReport verify_second_limit(const Quat& q, cplxl beta2, const std::vector<long double>& gammas);

struct IdentityReport {
  long double offdiag = 0, conjugation = 0, commutator = 0, parabolic_commutator = 0, trace = 0,
              parabolic_trace = 0;
  long double max() const;
};

IdentityReport section3_identities(cplxl k, cplxl m, cplxl a, cplxl b, cplxl c, cplxl d);
bool section3_identities_check(cplxl k, cplxl m, cplxl a, cplxl b, cplxl c, cplxl d, long double tol = 1e-10L);

}  // namespace tracepoly
