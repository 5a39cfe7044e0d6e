#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace tracepoly {

using Rational = mpq_class;
using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

long double to_long_double(const Rational& q);

// Exact element of Q(i).  Doubles convert without rounding, so a
// floating-point parameter can be fed through exact algebra.
struct GaussRat {
  Rational re;
  Rational im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussRat from_complex(cplx z);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  cplx to_complex() const { return {re.get_d(), im.get_d()}; }
  cplxl to_complex_ld() const { return {to_long_double(re), to_long_double(im)}; }
  GaussRat conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);
  std::string to_string() const;
};

GaussRat operator+(GaussRat a, const GaussRat& b);
GaussRat operator-(GaussRat a, const GaussRat& b);
GaussRat operator*(GaussRat a, const GaussRat& b);
GaussRat operator/(GaussRat a, const GaussRat& b);
GaussRat operator-(const GaussRat& a);
bool operator==(const GaussRat& a, const GaussRat& b);

}  // namespace tracepoly
