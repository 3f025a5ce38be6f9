#ifndef TWISTCONV_CONV_INVERSE_HPP
#define TWISTCONV_CONV_INVERSE_HPP

#include <cstdint>
#include <optional>

#include "twistconv/sequence.hpp"

namespace twistconv {

/// Knobs for Fourier-based convolution inversion. grid_size is the number of
/// FFT points per axis (rounded up to a power of two, and raised further if
/// the input support needs it); the total grid has grid_size^{2d} points.
struct InversionConfig {
  std::int64_t grid_size = 256;
  double symbol_floor = 1e-8;
  double tail_tol = 1e-12;
  double residual_tol = 1e-8;
  int max_refine = 4;
};

/// min |c_hat| over the regular grid_size^{2d} grid on the torus.
/// Throws std::invalid_argument when the grid cannot separate the support.
double symbol_min_modulus(const Sequence& c, std::int64_t grid_size);

struct ConvInverseResult {
  Sequence inverse;
  double symbol_min = 0.0;
  std::int64_t grid_size_used = 0;
  int refinements = 0;
};

/// Truncated convolution inverse e with ||c * e - delta||_1 <= residual_tol,
/// found by sampling 1/c_hat and refining the grid (doubling, at most
/// max_refine times) until the boundary tail and the residual pass. With
/// coset_p set, the input is promised to be supported on Z^d x pZ^d and the
/// output is checked and pruned to that coset.
/// Throws NotInvertibleError when the symbol stays below symbol_floor, and
/// TruncationNotConvergedError when refinement runs out before the criteria
/// are met.
ConvInverseResult invert_convolution_detailed(const Sequence& c, const InversionConfig& cfg,
                                              std::optional<int> coset_p = std::nullopt);

Sequence invert_convolution(const Sequence& c, const InversionConfig& cfg = {});

/// ||c * e - delta||_1; symmetric in its arguments bitwise.
double conv_residual(const Sequence& c, const Sequence& e);

}  // namespace twistconv

#endif  // TWISTCONV_CONV_INVERSE_HPP
