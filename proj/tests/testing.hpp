#pragma once

#include <complex>

#include "doctest.h"
#include "qsimul/random.hpp"

namespace qsimul::testing {

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CVector vec2(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

inline PureState ket0() { return PureState::basis_state(2, 0); }
inline PureState ket1() { return PureState::basis_state(2, 1); }
inline PureState ket_plus() {
  return PureState::normalized(vec2(1.0, 1.0));
}

inline bool close(double a, double b, double tolerance = 1e-9) {
  return std::abs(a - b) <= tolerance;
}

inline bool close(Complex a, Complex b, double tolerance = 1e-9) {
  return std::abs(a - b) <= tolerance;
}

inline bool matrices_close(const CMatrix& a, const CMatrix& b,
                           double tolerance = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs(a - b) <= tolerance;
}

}  // namespace qsimul::testing
