#pragma once

#include <complex>
#include <vector>

#include "symspace/mat.hpp"

namespace symspace {

// Eigenvalues of a general real square matrix: Householder reduction to
// Hessenberg form followed by the Francis double-shift QR iteration.
// Values only, unordered; complex pairs come out conjugate.
std::vector<std::complex<double>> eigenvalues(const Mat& a);

// Throws domain_error naming the offending eigenvalue when the spectrum
// touches the closed negative real axis (including zero). Gatekeeper for the
// principal logarithm and square root.
void require_spectrum_off_negative_axis(const Mat& a, const char* who);

}  // namespace symspace
