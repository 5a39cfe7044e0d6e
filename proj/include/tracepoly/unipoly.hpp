#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "tracepoly/gaussrat.hpp"

namespace tracepoly {

inline bool field_is_zero(const Rational& a) { return sgn(a) == 0; }
inline bool field_is_zero(const GaussRat& a) { return a.is_zero(); }

// Dense univariate polynomial over a field, ascending coefficients.
template <class F>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coeffs() const { return c_; }
  const F& lead() const { return c_.back(); }
  F operator[](size_t k) const { return k < c_.size() ? c_[k] : F(); }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<F> r(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < r.size(); ++k) r[k] = (*this)[k] + o[k];
    return UniPoly(std::move(r));
  }
  UniPoly operator-(const UniPoly& o) const {
    std::vector<F> r(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < r.size(); ++k) r[k] = (*this)[k] - o[k];
    return UniPoly(std::move(r));
  }
  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<F> r(c_.size() + o.c_.size() - 1);
    for (size_t a = 0; a < c_.size(); ++a)
      for (size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
    return UniPoly(std::move(r));
  }

  // quotient, remainder
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<F> rem = c_;
    if (degree() < d.degree()) return {UniPoly(), *this};
    std::vector<F> q(c_.size() - d.c_.size() + 1);
    F inv_lead = F(1) / d.lead();
    for (int k = degree(); k >= d.degree(); --k) {
      F f = rem[k] * inv_lead;
      q[k - d.degree()] = f;
      if (field_is_zero(f)) continue;
      for (int m = 0; m <= d.degree(); ++m) rem[k - d.degree() + m] -= f * d.c_[m];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    F inv = F(1) / lead();
    std::vector<F> r = c_;
    for (auto& x : r) x *= inv;
    return UniPoly(std::move(r));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> r(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * F(static_cast<long>(k));
    return UniPoly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && field_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<F> c_;
};

template <class F>
UniPoly<F> poly_gcd(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

// Yun's algorithm: returns (factor, multiplicity) with square-free, pairwise
// coprime monic factors whose product (with multiplicity) is monic(f).
template <class F>
std::vector<std::pair<UniPoly<F>, int>> squarefree_decomposition(const UniPoly<F>& f) {
  std::vector<std::pair<UniPoly<F>, int>> out;
  if (f.degree() < 1) return out;
  UniPoly<F> fp = f.derivative();
  UniPoly<F> a = poly_gcd(f, fp);
  UniPoly<F> b = f.divmod(a).first;
  UniPoly<F> c = fp.divmod(a).first;
  UniPoly<F> d = c - b.derivative();
  int k = 1;
  while (b.degree() >= 1) {
    UniPoly<F> g = poly_gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, k);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
    ++k;
  }
  return out;
}

}  // namespace tracepoly
