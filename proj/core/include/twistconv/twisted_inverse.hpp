#ifndef TWISTCONV_TWISTED_INVERSE_HPP
#define TWISTCONV_TWISTED_INVERSE_HPP

#include <cstdint>
#include <utility>

#include "twistconv/conv_inverse.hpp"
#include "twistconv/sequence.hpp"

namespace twistconv {

/// Success certificate for a twisted inversion: the truncated inverse plus
/// both residuals and the Fourier diagnostics of the determinant step.
struct InversionReport {
  Sequence input;
  TwistParams tp;
  Sequence inverse;
  double residual_right = 0.0;  // ||a nat b - delta||_1
  double residual_left = 0.0;   // ||b nat a - delta||_1
  double det_symbol_min = 0.0;
  std::int64_t grid_size_used = 0;
  int refinements = 0;
};

/// Constructive inversion: phi(a) -> determinant -> Fourier inverse of the
/// determinant -> Cramer first column -> reassembled b, certified by both
/// residuals <= cfg.residual_tol.
/// Throws NotInvertibleError, TruncationNotConvergedError, or (on inputs
/// whose Cramer column is internally inconsistent) OverlappingSupportsError.
InversionReport invert_twisted(const Sequence& a, const TwistParams& tp,
                               const InversionConfig& cfg = {});

/// Independent oracle: b = sum_{n=0}^{K} (delta - a)^{nat n}, with K chosen
/// from the geometric tail bound. Requires ||delta - a||_1 < 1.
Sequence neumann_inverse(const Sequence& a, const TwistParams& tp, double tol = 1e-10,
                         int max_iter = 10000);

/// (||a nat b - delta||_1, ||b nat a - delta||_1).
std::pair<double, double> verify_inverse(const Sequence& a, const Sequence& b,
                                         const TwistParams& tp);

}  // namespace twistconv

#endif  // TWISTCONV_TWISTED_INVERSE_HPP
