#ifndef TWISTCONV_FINITE_TWISTED_HPP
#define TWISTCONV_FINITE_TWISTED_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace twistconv {

/// Element of C^{p x p}: data(j, k) = g_{j,k}, indices taken mod p.
class FiniteGrid {
public:
  explicit FiniteGrid(int p) : p_(p), data_(Eigen::MatrixXcd::Zero(p, p)) {
    if (p < 1) throw std::invalid_argument("p must be positive");
  }
  explicit FiniteGrid(Eigen::MatrixXcd data);

  int p() const { return p_; }
  const Eigen::MatrixXcd& data() const { return data_; }
  Eigen::MatrixXcd& data() { return data_; }

  std::complex<double> at(int j, int k) const { return data_(wrap(j), wrap(k)); }
  void set(int j, int k, std::complex<double> v) { data_(wrap(j), wrap(k)) = v; }

private:
  int wrap(int i) const {
    int r = i % p_;
    return r < 0 ? r + p_ : r;
  }

  int p_;
  Eigen::MatrixXcd data_;
};

/// The matrix of f -> f nat g in the row-major flattening of C^{p x p}:
/// block (u, v) of the p^2 x p^2 matrix is blocks[(u - v) mod p].
struct BlockCirculant {
  int p = 0;
  std::vector<Eigen::MatrixXcd> blocks;

  Eigen::MatrixXcd assemble() const;
};

/// Grid with a single unit entry at (0, 0), the unit of the finite algebra.
FiniteGrid finite_delta(int p);

/// Row-major flattening g_{j,k} -> component j*p + k, and its inverse.
Eigen::VectorXcd flatten(const FiniteGrid& g);
FiniteGrid unflatten(const Eigen::VectorXcd& v, int p);

/// (f nat g)_{m,n} = sum_{k,l} f_{k,l} g_{m-k,n-l} omega^{(m-k)l},
/// indices mod p, omega = exp(2*pi*i*q/p).
FiniteGrid finite_twisted_convolve(const FiniteGrid& f, const FiniteGrid& g, int q);

/// Blocks G_j with (G_j)_{k,l} = omega^{jl} g_{j,(k-l) mod p}.
BlockCirculant build_block_circulant(const FiniteGrid& g, int q);

/// DFT across the block index: Ghat_s = sum_r exp(-2*pi*i*s*r/p) G_r.
std::vector<Eigen::MatrixXcd> block_dft(const BlockCirculant& bc);

/// Cyclic advance by r: (T_r x)_k = x_{(k+r) mod p}. Satisfies
/// T_r Ghat_s T_r^* = Ghat_{(s-qr) mod p}.
Eigen::MatrixXcd shift_matrix(int p, int r);

/// Inverse grid h with g nat h = h nat g = delta, via blockwise DFT
/// inversion. tol < 0 selects the default threshold 1e-10 * ||Ghat_s||.
/// Throws NotInvertibleError when a block is singular at the threshold.
FiniteGrid invert_block_circulant(const FiniteGrid& g, int q, double tol = -1.0);

/// Same inverse, but only Ghat_0 is factored; every other block inverse
/// is obtained by conjugating with shift matrices.
FiniteGrid invert_via_ghat0(const FiniteGrid& g, int q, double tol = -1.0);

/// Ghat_0 from the block DFT, plus the maximum absolute deviation of the
/// closed-form expression sum_k omega^{nl} g_{k,n-l} from it.
struct Ghat0Result {
  Eigen::MatrixXcd ghat0;
  double closed_form_discrepancy = 0.0;
};
Ghat0Result ghat0_entries(const FiniteGrid& g, int q);

}  // namespace twistconv

#endif  // TWISTCONV_FINITE_TWISTED_HPP
