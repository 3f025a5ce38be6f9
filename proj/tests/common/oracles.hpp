#ifndef TWISTCONV_TESTS_ORACLES_HPP
#define TWISTCONV_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "twistconv/finite_twisted.hpp"
#include "twistconv/seq_matrix.hpp"
#include "twistconv/sequence.hpp"

// Independent reference implementations and input generators shared by the
// unit and acceptance suites. Everything here recomputes from definitions and
// never calls the code path it is meant to check.

namespace testutil {

using twistconv::Complex;
using twistconv::Index;
using twistconv::Sequence;

inline double dist(const Sequence& a, const Sequence& b) {
  return twistconv::l1_distance(a, b);
}

inline Sequence random_sequence(std::mt19937_64& rng, int dim, int max_points,
                                std::int64_t range, double magnitude) {
  std::uniform_int_distribution<std::int64_t> idx(-range, range);
  std::uniform_real_distribution<double> val(-magnitude, magnitude);
  std::uniform_int_distribution<int> count(1, max_points);
  Sequence s(dim);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Index k(static_cast<std::size_t>(dim)), l(static_cast<std::size_t>(dim));
    for (int t = 0; t < dim; ++t) {
      k[static_cast<std::size_t>(t)] = idx(rng);
      l[static_cast<std::size_t>(t)] = idx(rng);
    }
    s.set(std::move(k), std::move(l), Complex{val(rng), val(rng)});
  }
  return s;
}

// delta + perturbation with ||delta - a||_1 exactly `budget`.
inline Sequence random_contractive(std::mt19937_64& rng, int dim, int max_points,
                                   std::int64_t range, double budget) {
  Sequence s = random_sequence(rng, dim, max_points, range, 1.0);
  const double norm = twistconv::l1_norm(s);
  const Sequence scaled = twistconv::scale(s, Complex{budget / std::max(norm, 1e-300), 0.0});
  return twistconv::add(twistconv::make_delta(dim), scaled);
}

// Plain Leibniz determinant over all N! permutations; the library uses a
// memoized cofactor expansion instead.
inline Sequence leibniz_determinant(const twistconv::SeqMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Sequence det(m.params().dim());
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
      }
    }
    Sequence term = twistconv::make_delta(m.params().dim());
    for (int i = 0; i < n; ++i) {
      term = twistconv::convolve(term, m.at(perm[static_cast<std::size_t>(i)], i));
    }
    const Complex sign = inversions % 2 == 0 ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
    det = twistconv::add(det, twistconv::scale(term, sign));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Dense matrix of f -> f nat g on C^{p x p}, assembled straight from the
// definition (f nat g)_{m,n} = sum_{k,l} f_{k,l} g_{m-k,n-l} omega^{(m-k) l}
// with indices mod p and the row-major flattening (j, k) -> j p + k. Uses no
// BlockCirculant machinery.
inline Eigen::MatrixXcd dense_right_multiply(const twistconv::FiniteGrid& g, int q) {
  const int p = g.p();
  const auto omega_pow = [p, q](long long e) {
    long long r = (static_cast<long long>(q) * (e % p)) % p;
    if (r < 0) r += p;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / p);
  };
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p * p, p * p);
  for (int mi = 0; mi < p; ++mi) {
    for (int ni = 0; ni < p; ++ni) {
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
          const int gm = ((mi - k) % p + p) % p;
          const int gn = ((ni - l) % p + p) % p;
          m(mi * p + ni, k * p + l) = g.at(gm, gn) * omega_pow(static_cast<long long>(gm) * l);
        }
      }
    }
  }
  return m;
}

inline twistconv::FiniteGrid random_grid(std::mt19937_64& rng, int p, double magnitude = 1.0) {
  std::uniform_real_distribution<double> val(-magnitude, magnitude);
  twistconv::FiniteGrid g(p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      g.set(j, k, Complex{val(rng), val(rng)});
    }
  }
  return g;
}

// Dominant delta coefficient makes the assembled operator strictly
// diagonally dominant, hence invertible.
inline twistconv::FiniteGrid random_dominant_grid(std::mt19937_64& rng, int p) {
  twistconv::FiniteGrid g = random_grid(rng, p, 0.5 / (p * p));
  g.set(0, 0, g.at(0, 0) + Complex{2.0, 0.0});
  return g;
}

inline Eigen::VectorXcd gaussian_window(int L) {
  Eigen::VectorXcd g(L);
  for (int t = 0; t < L; ++t) {
    const double x = t - L / 2.0;
    g(t) = Complex{std::exp(-x * x / (L / 2.0)), 0.0};
  }
  return g;
}

}  // namespace testutil

#endif  // TWISTCONV_TESTS_ORACLES_HPP
