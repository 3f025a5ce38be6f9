#include "twistconv/finite_twisted.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "twistconv/errors.hpp"

namespace twistconv {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

int mod_p(int v, int p) {
  int r = v % p;
  return r < 0 ? r + p : r;
}

void check_coprime(int p, int q) {
  if (std::gcd(p, std::abs(q)) != 1) {
    throw std::invalid_argument("p and q must be relatively prime");
  }
}

// exp(2*pi*i*n/p) with the exponent reduced in integer arithmetic.
complex<double> unit_root(int p, long long n) {
  long long r = n % p;
  if (r < 0) r += p;
  if (r == 0) return {1.0, 0.0};
  double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / p;
  return {std::cos(angle), std::sin(angle)};
}

MatrixXcd invert_block(const MatrixXcd& block, double tol, int s) {
  Eigen::JacobiSVD<MatrixXcd> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  const double threshold = tol < 0.0 ? 1e-10 * smax : tol;
  if (smin < threshold) {
    throw NotInvertibleError("block Ghat_" + std::to_string(s) +
                             " is singular: smallest singular value " + std::to_string(smin));
  }
  return svd.solve(MatrixXcd::Identity(block.rows(), block.cols()));
}

// Assembles H_r = (1/p) sum_s exp(2*pi*i*s*r/p) inv_s and reads off the
// grid h with C_h = G^{-1}: h_{u,k} = (H_u)_{k,0}.
FiniteGrid grid_from_block_inverses(const std::vector<MatrixXcd>& inv, int p) {
  FiniteGrid h(p);
  for (int r = 0; r < p; ++r) {
    MatrixXcd hr = MatrixXcd::Zero(p, p);
    for (int s = 0; s < p; ++s) {
      hr += unit_root(p, static_cast<long long>(s) * r) * inv[static_cast<std::size_t>(s)];
    }
    hr /= static_cast<double>(p);
    for (int k = 0; k < p; ++k) h.set(r, k, hr(k, 0));
  }
  return h;
}

}  // namespace

FiniteGrid::FiniteGrid(Eigen::MatrixXcd data) : p_(static_cast<int>(data.rows())), data_(std::move(data)) {
  if (p_ < 1 || data_.cols() != p_) throw std::invalid_argument("grid must be square and nonempty");
}

Eigen::MatrixXcd BlockCirculant::assemble() const {
  MatrixXcd full = MatrixXcd::Zero(p * p, p * p);
  for (int u = 0; u < p; ++u) {
    for (int v = 0; v < p; ++v) {
      full.block(u * p, v * p, p, p) = blocks[static_cast<std::size_t>(mod_p(u - v, p))];
    }
  }
  return full;
}

FiniteGrid finite_delta(int p) {
  FiniteGrid g(p);
  g.set(0, 0, {1.0, 0.0});
  return g;
}

Eigen::VectorXcd flatten(const FiniteGrid& g) {
  const int p = g.p();
  VectorXcd v(p * p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) v(j * p + k) = g.at(j, k);
  }
  return v;
}

FiniteGrid unflatten(const Eigen::VectorXcd& v, int p) {
  if (v.size() != static_cast<Eigen::Index>(p) * p) {
    throw std::invalid_argument("vector length is not p^2");
  }
  FiniteGrid g(p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) g.set(j, k, v(j * p + k));
  }
  return g;
}

FiniteGrid finite_twisted_convolve(const FiniteGrid& f, const FiniteGrid& g, int q) {
  if (f.p() != g.p()) throw std::invalid_argument("grid size mismatch");
  const int p = f.p();
  check_coprime(p, q);
  FiniteGrid out(p);
  for (int m = 0; m < p; ++m) {
    for (int n = 0; n < p; ++n) {
      complex<double> acc{0.0, 0.0};
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
          acc += f.at(k, l) * g.at(m - k, n - l) *
                 unit_root(p, static_cast<long long>(q) * mod_p(m - k, p) * l);
        }
      }
      out.set(m, n, acc);
    }
  }
  return out;
}

BlockCirculant build_block_circulant(const FiniteGrid& g, int q) {
  const int p = g.p();
  check_coprime(p, q);
  BlockCirculant bc;
  bc.p = p;
  bc.blocks.resize(static_cast<std::size_t>(p), MatrixXcd::Zero(p, p));
  for (int j = 0; j < p; ++j) {
    MatrixXcd& block = bc.blocks[static_cast<std::size_t>(j)];
    for (int k = 0; k < p; ++k) {
      for (int l = 0; l < p; ++l) {
        block(k, l) = unit_root(p, static_cast<long long>(q) * j * l) * g.at(j, k - l);
      }
    }
  }
  return bc;
}

std::vector<Eigen::MatrixXcd> block_dft(const BlockCirculant& bc) {
  const int p = bc.p;
  std::vector<MatrixXcd> hat(static_cast<std::size_t>(p), MatrixXcd::Zero(p, p));
  for (int s = 0; s < p; ++s) {
    for (int r = 0; r < p; ++r) {
      hat[static_cast<std::size_t>(s)] +=
          unit_root(p, -static_cast<long long>(s) * r) * bc.blocks[static_cast<std::size_t>(r)];
    }
  }
  return hat;
}

Eigen::MatrixXcd shift_matrix(int p, int r) {
  MatrixXcd t = MatrixXcd::Zero(p, p);
  for (int k = 0; k < p; ++k) t(k, mod_p(k + r, p)) = 1.0;
  return t;
}

FiniteGrid invert_block_circulant(const FiniteGrid& g, int q, double tol) {
  const int p = g.p();
  const BlockCirculant bc = build_block_circulant(g, q);
  const std::vector<MatrixXcd> hat = block_dft(bc);
  std::vector<MatrixXcd> inv(static_cast<std::size_t>(p));
  for (int s = 0; s < p; ++s) {
    inv[static_cast<std::size_t>(s)] = invert_block(hat[static_cast<std::size_t>(s)], tol, s);
  }
  return grid_from_block_inverses(inv, p);
}

FiniteGrid invert_via_ghat0(const FiniteGrid& g, int q, double tol) {
  const int p = g.p();
  const BlockCirculant bc = build_block_circulant(g, q);

  MatrixXcd ghat0 = MatrixXcd::Zero(p, p);
  for (const auto& block : bc.blocks) ghat0 += block;
  const MatrixXcd inv0 = invert_block(ghat0, tol, 0);

  // Ghat_s^{-1} = T_r Ghat_0^{-1} T_r^* for the unique r with s = -qr mod p.
  std::vector<MatrixXcd> inv(static_cast<std::size_t>(p));
  for (int r = 0; r < p; ++r) {
    const int s = static_cast<int>(((-static_cast<long long>(q) * r) % p + p) % p);
    const MatrixXcd t = shift_matrix(p, r);
    inv[static_cast<std::size_t>(s)] = t * inv0 * t.adjoint();
  }
  return grid_from_block_inverses(inv, p);
}

Ghat0Result ghat0_entries(const FiniteGrid& g, int q) {
  const int p = g.p();
  const std::vector<MatrixXcd> hat = block_dft(build_block_circulant(g, q));

  // Closed form printed with a constant phase omega^{nl}; deviates from
  // the block DFT (whose phase is omega^{kl}) for generic grids.
  MatrixXcd closed = MatrixXcd::Zero(p, p);
  for (int n = 0; n < p; ++n) {
    for (int l = 0; l < p; ++l) {
      complex<double> acc{0.0, 0.0};
      for (int k = 0; k < p; ++k) {
        acc += unit_root(p, static_cast<long long>(q) * n * l) * g.at(k, n - l);
      }
      closed(n, l) = acc;
    }
  }

  Ghat0Result result;
  result.ghat0 = hat[0];
  result.closed_form_discrepancy = (closed - hat[0]).cwiseAbs().maxCoeff();
  return result;
}

}  // namespace twistconv
