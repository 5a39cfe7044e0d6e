#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tracepoly/errors.hpp"
#include "tracepoly/quatalg.hpp"
#include "tracepoly/wordpoly.hpp"

using namespace tracepoly;

namespace {

const RatPoly2 x = RatPoly2::first(), z = RatPoly2::second();
const RatPoly2 u = RatPoly2::first(Basis::UV), v = RatPoly2::second(Basis::UV);
RatPoly2 cx(long c) { return RatPoly2::constant(c); }
RatPoly2 cu(long c) { return RatPoly2::constant(c, Basis::UV); }
const Rational half(1, 2);

Quat q0(RatPoly2 r, RatPoly2 s, RatPoly2 t, RatPoly2 w) { return Quat::make(Algebra::Q0, r, s, t, w); }
Quat quv(RatPoly2 r, RatPoly2 s, RatPoly2 t, RatPoly2 w) { return Quat::make(Algebra::QUV, r, s, t, w); }

// Table 2 rows as printed.
std::vector<Quat> table2() {
  return {
      quv(cu(1), cu(0), cu(0), cu(0)),
      quv(u, cu(1), cu(0), cu(0)),
      quv(v, cu(0), cu(1), cu(0)),
      quv(u, v, cu(0), cu(1)),
      quv(v, cu(0), u, cu(1)),
      quv(u * v, cu(1), u, cu(0)),
      quv(u * v, v, cu(1), cu(0)),
      quv(u * v, v, u, cu(1)),
      quv((u * u).scale(2) - cu(1), u.scale(2), cu(0), cu(0)),
      quv((v * v).scale(2) - cu(1), cu(0), v.scale(2), cu(0)),
      quv(cu(1) + u + v - u * v, v - cu(1), u - cu(1), cu(1)).scale(half),
      quv(cu(1) + u - v + u * v, v + cu(1), u - cu(1), cu(1)).scale(half),
      quv(cu(1) - u + v + u * v, v - cu(1), u + cu(1), cu(1)).scale(half),
      quv(cu(-1) + u + v + u * v, v + cu(1), u + cu(1), cu(1)).scale(half),
  };
}

std::vector<Quat> generators() {
  return {quv(u, cu(1), cu(0), cu(0)), quv(v, cu(0), cu(1), cu(0)), quv(u, v, cu(0), cu(-1)),
          quv(cu(1) + u + v - u * v, v - cu(1), cu(1) - u, cu(-1)).scale(half),
          quv(cu(1) + u + v - u * v, v - cu(1), cu(1) - u, cu(1)).scale(half)};
}

Quat random_v0(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> g(0, 2), e(-2, 2);
  Quat q = Quat::one(Algebra::Q0);
  const Quat* gs[3] = {&gen_w1(), &gen_w2(), &gen_w3()};
  for (int k = 0; k < n; ++k) q = qmul(q, qpow(*gs[g(rng)], e(rng)));
  return q;
}

}  // namespace

TEST_CASE("generators of V0") {
  CHECK(gen_w1() == q0(x + cx(2), x, cx(0), cx(0)).scale(half));
  CHECK(gen_w2() == q0(x + cx(2), x - z.scale(2), cx(0), cx(-2)).scale(half));
  CHECK(gen_w3() == q0(z + cx(2), -z, cx(-1), cx(-1)).scale(half));
  for (const Quat* g : {&gen_w1(), &gen_w2(), &gen_w3()}) {
    CHECK(qnorm(*g) == cx(1));
    CHECK(in_V0(*g));
  }
  CHECK(qmul(gen_w3(), qconj(gen_w3())) == Quat::one(Algebra::Q0));
  CHECK(in_V0(Quat::one(Algebra::Q0)));
}

TEST_CASE("multiplication and norm in QUV") {
  Quat a = quv(u, cu(1), cu(0), cu(0));
  CHECK(qmul(a, a) == quv((u * u).scale(2) - cu(1), u.scale(2), cu(0), cu(0)));
  CHECK(qmul(Quat::one(Algebra::QUV), a) == a);
  CHECK(qnorm(quv(u * v, cu(1), u, cu(0))) == cu(1));
  RatPoly2 R = u + v, S = u * v, T = cu(3), W = v;
  RatPoly2 a2 = u * u - cu(1), b2 = v * v - cu(1);
  CHECK(qnorm(quv(R, S, T, W)) == R * R - a2 * S * S - b2 * T * T + a2 * b2 * W * W);
  CHECK_THROWS(qmul(a, gen_w1()));
}

TEST_CASE("Q0 products outside V0 are reported") {
  Quat bad = q0(cx(1), cx(1), cx(0), cx(0));  // s not divisible appropriately
  CHECK_FALSE(in_V0(bad));
  CHECK_THROWS_AS(qmul(bad, bad), NonPolynomialResult);
}

TEST_CASE("norm multiplicative and V0 closure") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 30; ++k) {
    Quat p = random_v0(rng, 4), q = random_v0(rng, 4);
    Quat pq = qmul(p, q);
    CHECK(qnorm(pq) == qnorm(p) * qnorm(q));
    CHECK(in_V0(pq));
    CHECK(in_V0(qconj(p)));
  }
}

TEST_CASE("rho") {
  CHECK(rho(gen_w1()) == quv(u, cu(1), cu(0), cu(0)));
  CHECK(rho(gen_w2()) == quv(u, v, cu(0), cu(-1)));
  CHECK(rho(gen_w3()) == quv(cu(1) + u + v - u * v, v - cu(1), cu(1) - u, cu(-1)).scale(half));
  std::mt19937_64 rng(10);
  for (int k = 0; k < 30; ++k) {
    Quat p = random_v0(rng, 4), q = random_v0(rng, 3);
    CHECK(rho(qmul(p, q)) == qmul(rho(p), rho(q)));
    CHECK(rho_inv(rho(p)) == p);
  }
  CHECK(xz_to_uv(x) == (u - cu(1)).scale(2));
  CHECK(uv_to_xz(xz_to_uv(z * x)) == z * x);
  CHECK(uv_to_xz(u) == cx(1) + x.scale(half));
  CHECK_THROWS_AS(uv_to_xz(v), NonPolynomialResult);
}

TEST_CASE("Theorem 7.3 structure of rho-images") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    Quat q = rho(random_v0(rng, 5));
    CHECK(has_integer_coefficients(q.r.scale(2)));
    CHECK(has_integer_coefficients(((u - cu(1)) * q.s).scale(2)));
    CHECK(has_integer_coefficients(q.w.scale(2)));
    CHECK(divides_exactly(q.t.scale(2), u - cu(1)).has_value());
    CHECK(has_integer_coefficients(q.s + (v - cu(1)) * q.w));
  }
}

TEST_CASE("degree") {
  CHECK(degree(Quat::one(Algebra::QUV)) == 0);
  CHECK(degree(quv(u, cu(1), cu(0), cu(0))) == 1);
  CHECK(degree(quv((u * u).scale(2) - cu(1), u.scale(2), cu(0), cu(0))) == 2);
  CHECK(degree(quv(u * v, v, u, cu(1))) == 2);
}

TEST_CASE("in_order_O") {
  Quat basis = quv((u + cu(1)) * (v + cu(1)), v + cu(1), u + cu(1), cu(1)).scale(half);
  OrderWitness w = in_order_O(basis);
  CHECK(w.member);
  CHECK(w.form_member);
  CHECK(w.P == cu(1));
  CHECK(w.integral_part == quv(cu(0), cu(0), cu(0), cu(0)));
  Quat fifth = quv(cu(3), cu(4), cu(0), cu(0)).scale(Rational(1, 5));
  w = in_order_O(fifth);
  CHECK_FALSE(w.member);
  CHECK_FALSE(w.form_member);
  // half-integer but not of the special form
  w = in_order_O(quv(cu(1), cu(0), cu(0), cu(0)).scale(half));
  CHECK_FALSE(w.form_member);
  CHECK(w.agree());
}

TEST_CASE("word quaternions lie in O") {
  std::mt19937_64 rng(13);
  int n = 0;
  while (n < 100) {
    GoodWord g = random_good_word(rng, 6, 4);
    Classification c = classify(g);
    if (!(c.even && c.balanced && c.regular)) continue;
    ++n;
    Quat q = rho(word_to_quat(g));
    OrderWitness w = in_order_O(q);
    CHECK(w.member);
    CHECK(w.form_member);
    // witness reconstructs q
    Quat form = quv((u + cu(1)) * (v + cu(1)), v + cu(1), u + cu(1), cu(1)).scale(half);
    Quat rebuilt = Quat::make(Algebra::QUV, w.integral_part.r + w.P * form.r, w.integral_part.s + w.P * form.s,
                              w.integral_part.t + w.P * form.t, w.integral_part.w + w.P * form.w);
    CHECK(rebuilt == q);
  }
}

TEST_CASE("enumerate_units") {
  std::vector<Quat> d0 = enumerate_units(0, 2);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0] == Quat::one(Algebra::QUV));

  std::vector<Quat> got = enumerate_units(2, 2);
  std::vector<Quat> expect = table2();
  CHECK(got.size() == 14);
  for (const Quat& e : expect) {
    bool found = false;
    for (const Quat& g : got) found = found || sign_canonical(g) == sign_canonical(e);
    CHECK_MESSAGE(found, e.to_string());
  }
  for (const Quat& g : generators()) {
    bool found = false;
    for (const Quat& q : got) found = found || sign_canonical(q) == sign_canonical(g);
    CHECK_MESSAGE(found, g.to_string());
  }
  for (const Quat& q : got) {
    CHECK(qnorm(q) == cu(1));
    CHECK(in_order_O(q).member);
  }
}

TEST_CASE("the non-generated unit u has norm 1") {
  RatPoly2 u2 = u * u, u3 = u2 * u, v2 = v * v;
  Quat bu = quv(cu(-1) + u2 - u3.scale(2) - v2 + (u2 * v2).scale(3) + (u3 * v2).scale(2),
                cu(1) - u + u2.scale(2) - v2 + (u * v2).scale(5) - (u2 * v2).scale(2),
                cu(1) - u2 + v - (u * v).scale(2) + u2 * v + (u3 * v).scale(4), cu(1) + u - v + (u * v).scale(3) - (u2 * v).scale(4))
                .scale(half);
  CHECK(qnorm(bu) == cu(1));
  CHECK(in_order_O(bu).member);
}

TEST_CASE("irrational unit") {
  IrrationalUnitReport r = irrational_unit_report();
  CHECK(r.ok);
  CHECK(std::abs(2 * r.a * r.a * r.a - 2 * r.a * r.a + 2 * r.a - 1) < 1e-12);
  CHECK(std::abs(2 * r.b * r.b * r.b + 6 * r.b * r.b + 4 * r.b - 1) < 1e-12);
  CHECK(r.max_norm_error < 1e-9);
  CHECK(r.rational_case_error < 1e-9);
  CHECK(r.perturbed_error > 1e-6);
  CHECK(verify_irrational_unit());
}

TEST_CASE("json round trip") {
  Quat q = rho(gen_w3());
  nlohmann::json j = to_json(q);
  CHECK(j["algebra"] == "quv");
  CHECK(quat_from_json(j) == q);
  CHECK(quat_from_json(to_json(gen_w2())) == gen_w2());
}
