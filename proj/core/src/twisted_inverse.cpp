#include "twistconv/twisted_inverse.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "twistconv/errors.hpp"
#include "twistconv/seq_matrix.hpp"

namespace twistconv {

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// The determinant of phi(a) lives on Z^d x pZ^d by exact index arithmetic;
// anything sizable found off that coset indicates a defect, not rounding.
Sequence assert_det_coset(const Sequence& det, int p) {
  if (p <= 1) return det;
  Sequence kept(det.dim());
  for (const auto& [kl, v] : det.entries()) {
    bool off = false;
    for (std::int64_t comp : kl.second) {
      if (comp % p != 0) off = true;
    }
    if (!off) {
      kept.set(kl.first, kl.second, v);
    } else if (std::abs(v) > 1e-12) {
      throw std::logic_error("invert_twisted: determinant left the Z^d x pZ^d coset");
    }
  }
  return kept;
}

}  // namespace

InversionReport invert_twisted(const Sequence& a, const TwistParams& tp,
                               const InversionConfig& cfg) {
  if (a.dim() != tp.dim()) {
    throw std::invalid_argument("invert_twisted: dimension mismatch");
  }
  const SeqMatrix mat = phi(a, tp);
  const Sequence det = assert_det_coset(determinant(mat), tp.p());
  const ConvInverseResult e = invert_convolution_detailed(det, cfg, tp.p());
  const std::vector<Sequence> column = cramer_first_column(mat, e.inverse);
  Sequence b = prune(extract_sequence(column), cfg.tail_tol);
  const auto [right, left] = verify_inverse(a, b, tp);
  if (right > cfg.residual_tol || left > cfg.residual_tol) {
    throw TruncationNotConvergedError("invert_twisted: residuals " + fmt_g(right) + ", " +
                                      fmt_g(left) + " exceed tolerance " +
                                      fmt_g(cfg.residual_tol));
  }
  return InversionReport{a,    tp,          std::move(b),     right,
                         left, e.symbol_min, e.grid_size_used, e.refinements};
}

Sequence neumann_inverse(const Sequence& a, const TwistParams& tp, double tol, int max_iter) {
  if (a.dim() != tp.dim()) {
    throw std::invalid_argument("neumann_inverse: dimension mismatch");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("neumann_inverse: tolerance must be positive");
  }
  const Sequence delta = make_delta(a.dim());
  const Sequence g = add(delta, negate(a));  // delta - a
  const double r = l1_norm(g);
  if (r >= 1.0) {
    throw NotContractiveError("neumann_inverse: ||delta - a||_1 = " + std::to_string(r) +
                              " is not < 1");
  }
  Sequence sum = delta;
  if (r == 0.0) return sum;
  Sequence power = delta;
  double tail = r / (1.0 - r);  // bound on the mass beyond the n = 0 term
  int n = 0;
  while (tail > tol) {
    if (++n > max_iter) {
      throw MaxIterExceededError("neumann_inverse: no convergence within " +
                                 std::to_string(max_iter) + " terms");
    }
    power = twisted_convolve(power, g, tp);
    sum = add(sum, power);
    tail *= r;
  }
  return sum;
}

std::pair<double, double> verify_inverse(const Sequence& a, const Sequence& b,
                                         const TwistParams& tp) {
  const Index zero(static_cast<std::size_t>(a.dim()), 0);
  Sequence right = twisted_convolve(a, b, tp);
  right.accumulate(zero, zero, Complex{-1.0, 0.0});
  Sequence left = twisted_convolve(b, a, tp);
  left.accumulate(zero, zero, Complex{-1.0, 0.0});
  return {l1_norm(right), l1_norm(left)};
}

}  // namespace twistconv
