#pragma once

#include <array>
#include <optional>

#include "json.hpp"
#include "tracepoly/exactpoly.hpp"
#include "tracepoly/quatalg.hpp"
#include "tracepoly/words.hpp"

namespace tracepoly {

struct PipelineOptions {
  // Unbalanced words: t_w = r_w~ + (x + sign*z) t_w~.  The correct value is -1;
  // +1 exists only so the verifier's negative control can break it on purpose.
  int unbalanced_sign = -1;
};

struct WordPolys {
  RatPoly2 r, s, t, w;
  std::optional<RatPoly2> g;  // (s - z w)/x when that is a polynomial
  RatPoly2 p;
  bool balanced = true;
  Classification cls{};
  GoodWord source;
};

// Regular balanced even words only.
Quat word_to_quat(const GoodWord& w);

WordPolys word_polys(const GoodWord& w, const PipelineOptions& opt = {});
RatPoly2 trace_poly(const GoodWord& w, const PipelineOptions& opt = {});

struct RSTW {
  RatPoly2 R{Basis::UV}, S{Basis::UV}, T{Basis::UV}, W{Basis::UV};
  bool operator==(const RSTW&) const = default;
};

// rho applied to (r_w, s_w, t_w, w_w); throws NonPolynomialResult when the
// result leaves Q[u,v] (possible for unbalanced words).
RSTW rstw_uv(const GoodWord& w);

// T_n(u) and U_{n-1}(u) with the sign conventions for negative n.
RatPoly2 chebyshev_t(int n);
RatPoly2 chebyshev_u_shift(int n);

// Explicit formulas for f^{n1} g f^{n2} g^-1 f^{n3} g f^{n4} g^-1 f^{n5} with
// the paper's sign convention for T and W (opposite to rstw_uv).
RSTW chebyshev_rstw(const std::array<int, 5>& n);
GoodWord chebyshev_word(const std::array<int, 5>& n);

nlohmann::json word_bundle_json(const WordPolys& wp, bool norm_ok, bool trace_ok);

// Shared memo of word quaternions (thread-safe, idempotent inserts).
size_t quat_cache_size();
void clear_quat_cache();

}  // namespace tracepoly
