#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "tracepoly/errors.hpp"
#include "tracepoly/exactpoly.hpp"
#include "tracepoly/unipoly.hpp"

namespace tracepoly {

long double to_long_double(const Rational& q) {
  double hi = q.get_d();
  Rational rest = q - Rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

GaussRat GaussRat::from_complex(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw PreconditionError("non-finite complex value");
  return {Rational(z.real()), Rational(z.imag())};
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}
GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw std::domain_error("GaussRat division by zero");
  if (sgn(o.im) == 0) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  Rational n = o.norm2();
  GaussRat c = o.conj();
  *this *= c;
  re /= n;
  im /= n;
  return *this;
}
std::string GaussRat::to_string() const {
  if (sgn(im) == 0) return re.get_str();
  return "(" + re.get_str() + (sgn(im) < 0 ? "-" : "+") + Rational(abs(im)).get_str() + "i)";
}

GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }

namespace {

std::vector<cplxl> to_ld(const std::vector<GaussRat>& c) {
  std::vector<cplxl> out;
  out.reserve(c.size());
  for (const auto& x : c) out.push_back(x.to_complex_ld());
  return out;
}

cplxl horner(const std::vector<cplxl>& c, cplxl z, cplxl* deriv) {
  cplxl p = 0, dp = 0;
  for (size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  if (deriv) *deriv = dp;
  return p;
}

// Roots of a square-free polynomial: companion eigenvalues, then Newton.
std::vector<cplx> simple_roots(const std::vector<GaussRat>& exact) {
  std::vector<cplxl> c = to_ld(exact);
  int n = static_cast<int>(c.size()) - 1;
  std::vector<cplx> out;
  if (n < 1) return out;
  if (n == 1) {
    out.push_back(cplx((-exact[0] / exact[1]).to_complex()));
    return out;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  cplxl lead = c[n];
  for (int k = 0; k < n; ++k) comp(0, k) = cplx(-c[n - 1 - k] / lead);
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int k = 0; k < n; ++k) {
    cplxl z = cplxl(es.eigenvalues()[k]);
    for (int it = 0; it < 50; ++it) {
      cplxl d;
      cplxl p = horner(c, z, &d);
      if (std::abs(d) == 0) break;
      cplxl step = p / d;
      z -= step;
      if (std::abs(step) <= 1e-19L * std::max<long double>(1, std::abs(z))) break;
    }
    out.push_back(cplx(z));
  }
  return out;
}

}  // namespace

std::vector<Root> roots_exact(const std::vector<GaussRat>& coeffs, double cluster_radius) {
  UniPoly<GaussRat> f(coeffs);
  if (f.is_zero()) throw PreconditionError("roots of the zero polynomial");
  std::vector<Root> raw;
  for (const auto& [factor, mult] : squarefree_decomposition(f)) {
    for (cplx z : simple_roots(factor.coeffs())) raw.push_back({z, mult});
  }
  // merge numerically coincident roots of distinct factors
  std::vector<Root> out;
  for (const auto& r : raw) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Root& o) {
      return std::abs(o.value - r.value) < cluster_radius;
    });
    if (it == out.end())
      out.push_back(r);
    else
      it->multiplicity += r.multiplicity;
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<Root> roots_univariate(const std::vector<cplx>& coeffs, double cluster_radius) {
  std::vector<GaussRat> exact;
  exact.reserve(coeffs.size());
  for (cplx c : coeffs) exact.push_back(GaussRat::from_complex(c));
  return roots_exact(exact, cluster_radius);
}

}  // namespace tracepoly
