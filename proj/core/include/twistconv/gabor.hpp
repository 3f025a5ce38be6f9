#ifndef TWISTCONV_GABOR_HPP
#define TWISTCONV_GABOR_HPP

#include <Eigen/Dense>
#include <utility>

#include "twistconv/sequence.hpp"
#include "twistconv/twisted_inverse.hpp"

namespace twistconv {

/// Gabor system on Z_L with lattice a_step Z_L x b_step Z_L (both steps must
/// divide L) and window g of length L.
struct GaborConfig {
  int L = 0;
  int a_step = 1;
  int b_step = 1;
  Eigen::VectorXcd window;
};

/// Time-frequency shift pi(x, w) = T_x M_w on Z_L:
/// (pi(x,w) f)(t) = e^{2 pi i w (t - x) / L} f((t - x) mod L).
/// Exactly L-periodic in both arguments.
struct TFShift {
  std::int64_t x = 0;
  std::int64_t w = 0;
};

Eigen::VectorXcd tf_shift_apply(const TFShift& s, const Eigen::VectorXcd& f);

Eigen::MatrixXcd tf_shift_matrix(const TFShift& s, int L);

/// Dense frame operator S = sum over lattice points of <., pi(lambda) g> pi(lambda) g.
Eigen::MatrixXcd frame_operator_dense(const GaborConfig& cfg);

/// Janssen coefficients a_{k,l} = C <g, pi(k L/b_step, l L/a_step) g> on the
/// adjoint lattice, C = L / (a_step * b_step), with the twist parameters
/// p/q = reduced (a_step * b_step) / L. Contract: kappa(a) equals the frame
/// operator.
std::pair<Sequence, TwistParams> janssen_coefficients(const GaborConfig& cfg);

/// kappa(a) f = sum a_{k,l} pi(k L/b_step, l L/a_step) f. Indices wrap mod L.
/// Satisfies kappa(a) kappa(b) = kappa(a nat b) for the induced TwistParams.
Eigen::VectorXcd apply_kappa(const Sequence& a, const GaborConfig& cfg,
                             const Eigen::VectorXcd& f);

struct DualWindowResult {
  Eigen::VectorXcd gamma;
  InversionReport report;
};

/// Canonical dual window gamma = S^{-1} g, computed by inverting the Janssen
/// coefficients in the twisted algebra and applying kappa of the inverse.
/// Throws NotAFrameError when S is numerically singular.
DualWindowResult dual_window(const GaborConfig& cfg, const InversionConfig& inv_cfg = {});

}  // namespace twistconv

#endif  // TWISTCONV_GABOR_HPP
