#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "tracepoly/exactpoly.hpp"

namespace tracepoly {

// Q0: structure constants ((x+4)/x, z(z-x)) over Q(x,z)
// QUV: structure constants (u^2-1, v^2-1) over Q(u,v)
enum class Algebra { Q0, QUV };

inline Basis algebra_basis(Algebra a) { return a == Algebra::Q0 ? Basis::XZ : Basis::UV; }
const char* algebra_name(Algebra a);

struct Quat {
  Algebra alg = Algebra::Q0;
  RatPoly2 r, s, t, w;

  static Quat one(Algebra a);
  static Quat make(Algebra a, RatPoly2 r, RatPoly2 s, RatPoly2 t, RatPoly2 w);
  bool operator==(const Quat&) const = default;
  Quat scale(const Rational& c) const;
  std::string to_string() const;
};

Quat qmul(const Quat& p, const Quat& q);
Quat qconj(const Quat& q);
RatPoly2 qnorm(const Quat& q);
Quat qpow(const Quat& q, int n);  // n < 0 uses the conjugate (norm-1 inverse)

// Generators of V0: images of a^2, b a^2 b^-1 and [b,a].
const Quat& gen_w1();
const Quat& gen_w2();
const Quat& gen_w3();

bool in_V0(const Quat& q);

// x = 2(u-1), z = -(u-1)(v-1)
Quat rho(const Quat& q);
Quat rho_inv(const Quat& q);
RatPoly2 xz_to_uv(const RatPoly2& p);
// Only valid when the result is polynomial; throws NonPolynomialResult otherwise.
RatPoly2 uv_to_xz(const RatPoly2& p);

int degree(const Quat& q);

struct OrderWitness {
  bool member = false;       // components in Q[u,v] and norm in Z[u,v]
  bool form_member = false;  // integral quadruple + P/2 * ((u+1)(v+1), v+1, u+1, 1)
  Quat integral_part;
  RatPoly2 P{Basis::UV};
  bool agree() const { return member == form_member; }
};

OrderWitness in_order_O(const Quat& q);

// Norm-1 elements of degree <= max_degree with half-integer coefficients
// bounded by coeff_bound, normalized to R(1,1)=1, one per class of sign
// changes of S, T, W.  threads <= 0 picks the configured default.
std::vector<Quat> enumerate_units(int max_degree, const Rational& coeff_bound, int threads = 0);

// Canonical representative under sign changes of S, T, W.
Quat sign_canonical(const Quat& q);

struct IrrationalUnitReport {
  double a = 0, b = 0;
  double max_norm_error = 0;
  double rational_case_error = 0;  // a = b = 1/2
  double perturbed_error = 0;      // a + 1e-3
  bool ok = false;
};

IrrationalUnitReport irrational_unit_report();
bool verify_irrational_unit();

nlohmann::json to_json(const Quat& q);
Quat quat_from_json(const nlohmann::json& j);

}  // namespace tracepoly
