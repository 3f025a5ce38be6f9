#include "twistconv/seq_matrix.hpp"

#include <bit>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "twistconv/errors.hpp"

namespace twistconv {

namespace {

int mod_p(std::int64_t v, int p) {
  int r = static_cast<int>(v % p);
  return r < 0 ? r + p : r;
}

void add_into(Sequence& dst, const Sequence& src, Complex factor = {1.0, 0.0}) {
  for (const auto& [kl, v] : src.entries()) {
    dst.accumulate(kl.first, kl.second, v * factor);
  }
}

}  // namespace

SeqMatrix::SeqMatrix(TwistParams tp)
    : tp_(std::move(tp)),
      n_(tp_.matrix_size()),
      entries_(static_cast<std::size_t>(n_ * n_), Sequence(tp_.dim())) {}

const Sequence& SeqMatrix::at(std::int64_t i, std::int64_t j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("SeqMatrix: index out of range");
  }
  return entries_[static_cast<std::size_t>(i * n_ + j)];
}

Sequence& SeqMatrix::at(std::int64_t i, std::int64_t j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("SeqMatrix: index out of range");
  }
  return entries_[static_cast<std::size_t>(i * n_ + j)];
}

SeqMatrix phi(const Sequence& a, const TwistParams& tp) {
  if (a.dim() != tp.dim()) {
    throw std::invalid_argument("phi: sequence/parameter dimension mismatch");
  }
  SeqMatrix m(tp);
  const std::int64_t n = tp.matrix_size();
  const int p = tp.p();
  const int d = tp.dim();

  // Each support point (k, l) of a lies in exactly one coset pair (r, s):
  // it lands in column j at row index_of(k_j + s) with phase omega^{r.k_j},
  // for every j. One pass over the support covers all N columns.
  std::vector<std::vector<int>> cosets(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    cosets[static_cast<std::size_t>(j)] = tp.coset_at(j);
  }
  std::vector<int> r(d), s(d), shifted(d);
  for (const auto& [kl, v] : a.entries()) {
    for (int t = 0; t < d; ++t) {
      r[static_cast<std::size_t>(t)] = mod_p(kl.first[static_cast<std::size_t>(t)], p);
      s[static_cast<std::size_t>(t)] = mod_p(kl.second[static_cast<std::size_t>(t)], p);
    }
    for (std::int64_t j = 0; j < n; ++j) {
      const auto& kj = cosets[static_cast<std::size_t>(j)];
      int dot = 0;
      for (int t = 0; t < d; ++t) {
        const auto u = static_cast<std::size_t>(t);
        shifted[u] = (kj[u] + s[u]) % p;
        dot = (dot + r[u] * kj[u]) % p;
      }
      const std::int64_t i = tp.index_of(shifted);
      m.at(i, j).accumulate(kl.first, kl.second, v * tp.omega_pow(dot));
    }
  }
  return m;
}

SeqMatrix identity_matrix(const TwistParams& tp) {
  SeqMatrix m(tp);
  for (std::int64_t i = 0; i < tp.matrix_size(); ++i) {
    m.at(i, i) = make_delta(tp.dim());
  }
  return m;
}

SeqMatrix mat_multiply(const SeqMatrix& a, const SeqMatrix& b) {
  const TwistParams& ta = a.params();
  const TwistParams& tb = b.params();
  if (ta.p() != tb.p() || ta.q() != tb.q() || ta.dim() != tb.dim()) {
    throw std::invalid_argument("mat_multiply: parameter mismatch");
  }
  const std::int64_t n = a.size();
  SeqMatrix out(ta);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t l = 0; l < n; ++l) {
      if (a.at(i, l).empty()) continue;
      for (std::int64_t j = 0; j < n; ++j) {
        if (b.at(l, j).empty()) continue;
        add_into(out.at(i, j), convolve(a.at(i, l), b.at(l, j)));
      }
    }
  }
  return out;
}

Sequence determinant(const SeqMatrix& a, std::int64_t size_cap) {
  const std::int64_t n = a.size();
  if (n > size_cap) {
    throw std::invalid_argument("determinant: matrix size " + std::to_string(n) +
                                " exceeds cap " + std::to_string(size_cap));
  }
  // f[mask] = det of the submatrix on the rows in `mask` and the rightmost
  // popcount(mask) columns, via cofactor expansion along the earliest of
  // those columns. Memoizing over row subsets turns the N! Leibniz sum into
  // N*2^N ring multiplications; entries commute, so any expansion order
  // yields the same sequence.
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<Sequence> f(full + 1, Sequence(a.params().dim()));
  f[0] = make_delta(a.params().dim());
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    const std::int64_t col = n - std::popcount(mask);
    Sequence acc(a.params().dim());
    int t = 0;
    for (std::int64_t row = 0; row < n; ++row) {
      if (!((mask >> row) & 1)) continue;
      const Sequence& entry = a.at(row, col);
      if (!entry.empty()) {
        const Complex sign = (t % 2 == 0) ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
        add_into(acc, convolve(entry, f[mask & ~(std::uint64_t{1} << row)]), sign);
      }
      ++t;
    }
    f[mask] = std::move(acc);
  }
  return f[full];
}

SeqMatrix minor_matrix(const SeqMatrix& a, std::int64_t j, std::int64_t i) {
  const std::int64_t n = a.size();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw std::out_of_range("minor_matrix: index out of range");
  }
  SeqMatrix out = a;
  const Sequence zero(a.params().dim());
  for (std::int64_t c = 0; c < n; ++c) out.at(j, c) = zero;
  for (std::int64_t r = 0; r < n; ++r) out.at(r, i) = zero;
  out.at(j, i) = make_delta(a.params().dim());
  return out;
}

std::vector<Sequence> cramer_first_column(const SeqMatrix& a, const Sequence& e) {
  const std::int64_t n = a.size();
  std::vector<Sequence> column;
  column.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    column.push_back(convolve(determinant(minor_matrix(a, 0, i)), e));
  }
  return column;
}

Sequence extract_sequence(const std::vector<Sequence>& column) {
  if (column.empty()) {
    throw std::invalid_argument("extract_sequence: empty column");
  }
  constexpr double kFloor = 1e-12;
  Sequence out(column.front().dim());
  std::map<IndexPair, std::size_t> owner;
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i].dim() != out.dim()) {
      throw std::invalid_argument("extract_sequence: dimension mismatch");
    }
    for (const auto& [kl, v] : column[i].entries()) {
      if (std::abs(v) > kFloor) {
        auto [it, inserted] = owner.emplace(kl, i);
        if (!inserted && it->second != i) {
          throw OverlappingSupportsError(
              "extract_sequence: column entries share a support index");
        }
      }
      out.accumulate(kl.first, kl.second, v);
    }
  }
  return out;
}

M0Check is_in_M0(const SeqMatrix& a) {
  // In column 0 the phases are trivial (k_0 = 0), so the candidate preimage
  // is the plain sum of that column's entries.
  const std::int64_t n = a.size();
  M0Check res;
  res.reconstructed = Sequence(a.params().dim());
  for (std::int64_t i = 0; i < n; ++i) {
    add_into(res.reconstructed, a.at(i, 0));
  }
  const SeqMatrix rebuilt = phi(res.reconstructed, a.params());
  double dist = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      dist += l1_distance(rebuilt.at(i, j), a.at(i, j));
    }
  }
  res.in_m0 = dist <= 1e-12;
  return res;
}

}  // namespace twistconv
