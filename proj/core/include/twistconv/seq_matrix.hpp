#ifndef TWISTCONV_SEQ_MATRIX_HPP
#define TWISTCONV_SEQ_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "twistconv/sequence.hpp"

namespace twistconv {

/// Default cap on the matrix size N = p^d accepted by determinant();
/// the cofactor expansion cost grows with 2^N.
inline constexpr std::int64_t kDeterminantSizeCap = 6;

/// N x N matrix of sequences, N = p^d, multiplied entrywise by ordinary
/// convolution. Rows and columns are indexed 0-based; position i stands
/// for the residue vector coset_at(i), so index 0 is the zero coset.
class SeqMatrix {
public:
  explicit SeqMatrix(TwistParams tp);

  const TwistParams& params() const { return tp_; }
  std::int64_t size() const { return n_; }

  const Sequence& at(std::int64_t i, std::int64_t j) const;
  Sequence& at(std::int64_t i, std::int64_t j);

private:
  TwistParams tp_;
  std::int64_t n_;
  std::vector<Sequence> entries_;
};

/// The structured matrix of a: entry (i, j) = sum_m omega^{m.k_j} a^{m, k_i - k_j}.
/// Anti-homomorphism: phi(a nat b) = phi(b) (x) phi(a); phi(delta) = Id.
SeqMatrix phi(const Sequence& a, const TwistParams& tp);

SeqMatrix identity_matrix(const TwistParams& tp);

/// (A (x) B)_{i,j} = sum_l A_{i,l} * B_{l,j} under ordinary convolution.
SeqMatrix mat_multiply(const SeqMatrix& a, const SeqMatrix& b);

/// Determinant over the commutative convolution ring of entries,
/// computed by cofactor expansion memoized over row subsets.
/// Throws std::invalid_argument when N exceeds size_cap.
Sequence determinant(const SeqMatrix& a, std::int64_t size_cap = kDeterminantSizeCap);

/// A(j, i): row j replaced by zeros with delta at column i, column i
/// replaced by zeros with delta at row j. det(A(j,i)) * det(A)^{-1} is
/// the (i, j) entry of the inverse.
SeqMatrix minor_matrix(const SeqMatrix& a, std::int64_t j, std::int64_t i);

/// First column of the inverse: entry i is det(A(0, i)) * e, where e is
/// the convolution inverse of det(A) supplied by the caller.
std::vector<Sequence> cramer_first_column(const SeqMatrix& a, const Sequence& e);

/// Sum of the column entries. Their supports must be pairwise disjoint
/// (they live on distinct cosets); entries below 1e-12 are ignored by
/// the check. Throws OverlappingSupportsError otherwise.
Sequence extract_sequence(const std::vector<Sequence>& column);

/// Whether A lies in the image of phi, together with the candidate
/// preimage reconstructed from column 0.
struct M0Check {
  bool in_m0 = false;
  Sequence reconstructed;
};
M0Check is_in_M0(const SeqMatrix& a);

}  // namespace twistconv

#endif  // TWISTCONV_SEQ_MATRIX_HPP
