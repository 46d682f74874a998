#pragma once

#include <vector>

#include "sepcov/complexmath.hpp"

namespace sepcov {

// Roots of sum_i coeffs[i] * x^i (ascending order, complex coefficients).
//
// Leading coefficients with |c_i| < 1e-14 * max|c| are trimmed and the
// degree reduced accordingly. Roots come from the eigenvalues of the
// companion matrix and are polished by Newton steps until the backward
// error |p(root)| / sum_i |c_i||root|^i stops improving; the polished
// residual is at most 1e-8 of that scale. Throws DegenerateError when
// every coefficient is below the trim threshold.
std::vector<Complex> solve_polynomial(const std::vector<Complex>& coeffs);

// Backward-error scale used by the residual contract above.
double polynomial_residual_scale(const std::vector<Complex>& coeffs, Complex x);

// Horner evaluation of sum_i coeffs[i] * x^i.
Complex polynomial_eval(const std::vector<Complex>& coeffs, Complex x);

}  // namespace sepcov
