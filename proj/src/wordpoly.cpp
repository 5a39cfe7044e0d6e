#include "tracepoly/wordpoly.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "tracepoly/errors.hpp"

namespace tracepoly {

namespace {

RatPoly2 X() { return RatPoly2::first(Basis::XZ); }
RatPoly2 Z() { return RatPoly2::second(Basis::XZ); }

struct QuatCache {
  std::shared_mutex mu;
  std::unordered_map<std::string, Quat> map;
};

QuatCache& cache() {
  static QuatCache c;
  return c;
}

Quat compute_word_quat(const GoodWord& w) {
  Quat acc = Quat::one(Algebra::Q0);
  for (const GenToken& t : decompose_rbe(w)) {
    const Quat& g = t.gen == Gen::G1 ? gen_w1() : t.gen == Gen::G2 ? gen_w2() : gen_w3();
    acc = qmul(acc, t.sign > 0 ? g : qconj(g));
  }
  return acc;
}

}  // namespace

Quat word_to_quat(const GoodWord& w0) {
  GoodWord w = w0.with_order2(false);
  std::string key = w.to_string();
  auto& c = cache();
  {
    std::shared_lock lk(c.mu);
    auto it = c.map.find(key);
    if (it != c.map.end()) return it->second;
  }
  Quat q = compute_word_quat(w);
  std::unique_lock lk(c.mu);
  c.map.emplace(key, q);
  return q;
}

size_t quat_cache_size() {
  std::shared_lock lk(cache().mu);
  return cache().map.size();
}

void clear_quat_cache() {
  std::unique_lock lk(cache().mu);
  cache().map.clear();
}

WordPolys word_polys(const GoodWord& w, const PipelineOptions& opt) {
  if (w.is_identity()) throw PreconditionError("word_polys: empty word");
  WordPolys out;
  out.source = w;
  out.cls = classify(w);
  out.balanced = out.cls.balanced;

  GoodWord core = w.with_order2(false);
  if (!out.cls.regular) core = to_regular(core);
  if (!out.cls.even) core = append_a(core);

  if (out.balanced) {
    Quat q = word_to_quat(core);
    out.r = q.r;
    out.s = q.s;
    out.t = q.t;
    out.w = q.w;
  } else {
    GoodWord tilde = concat(core, GoodWord::from_letters({{'b', -1}}, false));
    Quat q = word_to_quat(tilde);
    auto gt = divides_exactly(q.s - Z() * q.w, X());
    if (!gt) throw NonPolynomialResult("g", "g of the balanced companion word is not a polynomial");
    out.r = q.r - Z() * q.t;
    out.s = *gt;
    out.t = q.r + (X() + Z().scale(opt.unbalanced_sign)) * q.t;
    out.w = *gt + q.w;
  }
  out.g = divides_exactly(out.s - Z() * out.w, X());

  RatPoly2 four = RatPoly2::constant(4);
  if (out.balanced)
    out.p = Z() * (X() - Z()) * (X() * out.t * out.t - (X() + four) * out.w * out.w);
  else
    out.p = Z() * (out.t * out.t - X() * (X() + four) * out.w * out.w);
  return out;
}

RatPoly2 trace_poly(const GoodWord& w, const PipelineOptions& opt) {
  RatPoly2 p = word_polys(w, opt).p;
  if (!has_integer_coefficients(p)) throw Error("trace polynomial of " + w.to_string() + " is not integral");
  return p;
}

RSTW rstw_uv(const GoodWord& w) {
  if (w.is_identity()) return {RatPoly2::constant(1, Basis::UV), RatPoly2(Basis::UV), RatPoly2(Basis::UV),
                               RatPoly2(Basis::UV)};
  WordPolys wp = word_polys(w);
  Quat q = rho(Quat::make(Algebra::Q0, wp.r, wp.s, wp.t, wp.w));
  return {q.r, q.s, q.t, q.w};
}

RatPoly2 chebyshev_t(int n) {
  n = std::abs(n);
  RatPoly2 u = RatPoly2::first(Basis::UV);
  RatPoly2 a = RatPoly2::constant(1, Basis::UV), b = u;
  if (n == 0) return a;
  for (int k = 1; k < n; ++k) {
    RatPoly2 c = u.scale(2) * b - a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

RatPoly2 chebyshev_u_shift(int n) {
  if (n == 0) return RatPoly2(Basis::UV);
  if (n < 0) return -chebyshev_u_shift(-n);
  // U_{n-1}
  RatPoly2 u = RatPoly2::first(Basis::UV);
  RatPoly2 a = RatPoly2::constant(1, Basis::UV), b = u.scale(2);
  if (n == 1) return a;
  for (int k = 2; k < n; ++k) {
    RatPoly2 c = u.scale(2) * b - a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

namespace {

// (sum eps_i n_i)/2 with eps_i = -1 for i in the set (1-based bitmask)
int half_index(const std::array<int, 5>& n, unsigned set) {
  int s = 0;
  for (int i = 0; i < 5; ++i) s += (set & (1u << (i + 1))) ? -n[i] : n[i];
  return s / 2;
}

unsigned mask(std::initializer_list<int> idx) {
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

}  // namespace

RSTW chebyshev_rstw(const std::array<int, 5>& n) {
  int total = n[0] + n[1] + n[2] + n[3] + n[4];
  if (total % 2 != 0) throw PreconditionError("chebyshev_rstw: odd exponent sum");
  auto T = [&](unsigned s) { return chebyshev_t(half_index(n, s)); };
  auto U = [&](unsigned s) { return chebyshev_u_shift(half_index(n, s)); };
  RatPoly2 v = RatPoly2::second(Basis::UV);
  Rational q(1, 4);

  auto rs = [&](auto F) {
    RatPoly2 sq(Basis::UV);
    for (unsigned sub = 0; sub < 8; ++sub) {
      unsigned s = 0;
      int card = 0;
      for (int k = 0; k < 3; ++k)
        if (sub & (1u << k)) {
          s |= 1u << (k + 2);
          ++card;
        }
      sq += card % 2 ? -F(s) : F(s);
    }
    RatPoly2 lin = F(0) - F(mask({2, 4}));
    RatPoly2 cst = F(0) + F(mask({2})) + F(mask({3})) + F(mask({4})) + F(mask({2, 4})) + F(mask({2, 3, 4})) -
                   F(mask({3, 4})) - F(mask({2, 3}));
    return (sq * v * v + lin.scale(2) * v + cst).scale(q);
  };

  auto vpart = [&](auto F) {
    RatPoly2 acc(Basis::UV);
    for (unsigned sub = 0; sub < 8; ++sub) {
      unsigned s = mask({5});
      int card = 0;
      for (int k = 0; k < 3; ++k)
        if (sub & (1u << k)) {
          s |= 1u << (k + 2);
          ++card;
        }
      acc += card % 2 ? -F(s) : F(s);
    }
    return acc * v;
  };

  RSTW out;
  out.R = rs(T);
  out.S = rs(U);
  out.T = (vpart(T) + T(mask({3, 5})) - T(mask({1, 3})) + T(mask({2, 5})) - T(mask({1, 4})) - T(mask({1, 2, 3})) +
           T(mask({3, 4, 5})) - T(mask({1})) + T(mask({5})))
              .scale(q);
  out.W = (vpart(U) + U(mask({1, 3})) + U(mask({3, 5})) + U(mask({1, 4})) + U(mask({2, 5})) + U(mask({1, 2, 3})) +
           U(mask({3, 4, 5})) + U(mask({1})) + U(mask({5})))
              .scale(q);
  return out;
}

GoodWord chebyshev_word(const std::array<int, 5>& n) {
  return GoodWord::from_letters(
      {{'a', n[0]}, {'b', 1}, {'a', n[1]}, {'b', -1}, {'a', n[2]}, {'b', 1}, {'a', n[3]}, {'b', -1}, {'a', n[4]}},
      false);
}

nlohmann::json word_bundle_json(const WordPolys& wp, bool norm_ok, bool trace_ok) {
  return {{"word", wp.source.to_string()},
          {"classification",
           {{"even", wp.cls.even}, {"balanced", wp.cls.balanced}, {"regular", wp.cls.regular}}},
          {"r", to_json(wp.r)},
          {"s", to_json(wp.s)},
          {"t", to_json(wp.t)},
          {"w", to_json(wp.w)},
          {"g", wp.g ? to_json(*wp.g) : nlohmann::json(nullptr)},
          {"p", to_json(wp.p)},
          {"checks", {{"norm_ok", norm_ok}, {"trace_ok", trace_ok}}}};
}

}  // namespace tracepoly
