#include "twistconv/gabor.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistconv/errors.hpp"

namespace twistconv {

namespace {

std::int64_t mod_l(std::int64_t v, std::int64_t L) {
  std::int64_t r = v % L;
  return r < 0 ? r + L : r;
}

// e^{2 pi i j / L} from a table, so integer-reducible phases stay exact
// (j = 0 gives exactly 1).
std::vector<Complex> unit_roots(int L) {
  std::vector<Complex> roots(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) {
    roots[static_cast<std::size_t>(j)] =
        std::polar(1.0, 2.0 * std::numbers::pi * j / L);
  }
  return roots;
}

void validate(const GaborConfig& cfg) {
  if (cfg.L <= 0) throw std::invalid_argument("gabor: L must be positive");
  if (cfg.a_step <= 0 || cfg.b_step <= 0) {
    throw std::invalid_argument("gabor: lattice steps must be positive");
  }
  if (cfg.L % cfg.a_step != 0 || cfg.L % cfg.b_step != 0) {
    throw std::invalid_argument("gabor: lattice steps must divide L");
  }
  if (cfg.window.size() != cfg.L) {
    throw std::invalid_argument("gabor: window length must equal L");
  }
}

}  // namespace

Eigen::VectorXcd tf_shift_apply(const TFShift& s, const Eigen::VectorXcd& f) {
  const auto L = static_cast<std::int64_t>(f.size());
  if (L == 0) throw std::invalid_argument("tf_shift_apply: empty vector");
  const std::vector<Complex> roots = unit_roots(static_cast<int>(L));
  Eigen::VectorXcd out(L);
  for (std::int64_t t = 0; t < L; ++t) {
    const std::int64_t src = mod_l(t - s.x, L);
    const std::int64_t ph = mod_l(s.w % L * (src % L), L);
    out(t) = roots[static_cast<std::size_t>(ph)] * f(src);
  }
  return out;
}

Eigen::MatrixXcd tf_shift_matrix(const TFShift& s, int L) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(L, L);
  for (int j = 0; j < L; ++j) {
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(L);
    basis(j) = Complex{1.0, 0.0};
    m.col(j) = tf_shift_apply(s, basis);
  }
  return m;
}

Eigen::MatrixXcd frame_operator_dense(const GaborConfig& cfg) {
  validate(cfg);
  const int L = cfg.L;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(L, L);
  for (int n = 0; n < L / cfg.a_step; ++n) {
    for (int m = 0; m < L / cfg.b_step; ++m) {
      const Eigen::VectorXcd shifted = tf_shift_apply(
          TFShift{static_cast<std::int64_t>(n) * cfg.a_step,
                  static_cast<std::int64_t>(m) * cfg.b_step},
          cfg.window);
      s += shifted * shifted.adjoint();
    }
  }
  return s;
}

std::pair<Sequence, TwistParams> janssen_coefficients(const GaborConfig& cfg) {
  validate(cfg);
  const int L = cfg.L;
  const int num = cfg.a_step * cfg.b_step;
  const int g = std::gcd(num, L);
  const TwistParams tp(num / g, L / g, 1);
  const double c = static_cast<double>(L) / num;

  Sequence a(1);
  for (int k = 0; k < cfg.b_step; ++k) {
    for (int l = 0; l < cfg.a_step; ++l) {
      const Eigen::VectorXcd shifted = tf_shift_apply(
          TFShift{static_cast<std::int64_t>(k) * (L / cfg.b_step),
                  static_cast<std::int64_t>(l) * (L / cfg.a_step)},
          cfg.window);
      const Complex coeff = c * shifted.dot(cfg.window);  // c * <g, pi g>
      a.set(Index{k}, Index{l}, coeff);
    }
  }
  return {std::move(a), tp};
}

Eigen::VectorXcd apply_kappa(const Sequence& a, const GaborConfig& cfg,
                             const Eigen::VectorXcd& f) {
  validate(cfg);
  if (a.dim() != 1) throw std::invalid_argument("apply_kappa: coefficients must be 1-d");
  if (f.size() != cfg.L) throw std::invalid_argument("apply_kappa: vector length mismatch");
  const std::int64_t L = cfg.L;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(L);
  for (const auto& [kl, v] : a.entries()) {
    const std::int64_t x = mod_l(kl.first[0] % L * (L / cfg.b_step), L);
    const std::int64_t w = mod_l(kl.second[0] % L * (L / cfg.a_step), L);
    out += v * tf_shift_apply(TFShift{x, w}, f);
  }
  return out;
}

DualWindowResult dual_window(const GaborConfig& cfg, const InversionConfig& inv_cfg) {
  validate(cfg);
  const Eigen::MatrixXcd s = frame_operator_dense(cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("dual_window: eigensolver failed");
  }
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 1e-12 * std::max(hi, 1.0)) {
    throw NotAFrameError("dual_window: frame operator numerically singular (lambda_min = " +
                         std::to_string(lo) + ")");
  }
  auto [a, tp] = janssen_coefficients(cfg);
  InversionReport report = invert_twisted(a, tp, inv_cfg);
  Eigen::VectorXcd gamma = apply_kappa(report.inverse, cfg, cfg.window);
  return DualWindowResult{std::move(gamma), std::move(report)};
}

}  // namespace twistconv
