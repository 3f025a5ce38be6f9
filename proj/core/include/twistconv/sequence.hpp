#ifndef TWISTCONV_SEQUENCE_HPP
#define TWISTCONV_SEQUENCE_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace twistconv {

using Complex = std::complex<double>;

/// Multi-index in Z^d.
using Index = std::vector<std::int64_t>;

/// Index pair (k, l) addressing a point of Z^d x Z^d. Ordered
/// lexicographically, which fixes a canonical iteration order.
using IndexPair = std::pair<Index, Index>;

/// Parameters of the twist: coprime integers p, q and the dimension d.
///
/// Carries the root of unity omega = exp(2*pi*i*q/p) as a precomputed
/// table of its p distinct powers, and the lexicographic enumeration
/// k_1, ..., k_N of Z_p^d with k_1 = 0 (exposed 0-based as coset_at).
class TwistParams {
public:
  TwistParams(int p, int q, int dim);

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return dim_; }

  /// N = p^d, the size of the coset matrix algebra.
  std::int64_t matrix_size() const { return n_; }

  Complex omega() const { return omega_pow(1); }

  /// omega^e with the exponent reduced modulo p in integer arithmetic,
  /// so large or negative exponents lose no precision.
  Complex omega_pow(std::int64_t e) const {
    std::int64_t r = ((q_ % p_) * (e % p_)) % p_;
    if (r < 0) r += p_;
    return unit_roots_[static_cast<std::size_t>(r)];
  }

  /// The residue vector k_{i+1} in [0,p)^d for 0-based i < N.
  std::vector<int> coset_at(std::int64_t i) const;

  /// Inverse of coset_at: the 0-based position of a residue vector.
  std::int64_t index_of(const std::vector<int>& residues) const;

private:
  int p_;
  int q_;
  int dim_;
  std::int64_t n_;
  std::vector<Complex> unit_roots_;  // unit_roots_[j] = exp(2*pi*i*j/p)
};

/// Finitely supported complex sequence on Z^d x Z^d, stored sparsely.
///
/// Canonical form: entries with value exactly zero are never stored, so
/// two sequences are equal iff their entry maps are equal. Values below
/// a tolerance are removed only by an explicit prune() call.
class Sequence {
public:
  using EntryMap = std::map<IndexPair, Complex>;

  Sequence() : dim_(1) {}
  explicit Sequence(int dim);

  int dim() const { return dim_; }
  const EntryMap& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Value at (k, l); zero when the entry is absent.
  Complex at(const Index& k, const Index& l) const;

  /// Overwrites the entry at (k, l). Storing zero erases it.
  void set(Index k, Index l, Complex value);

  /// Adds into the entry at (k, l), erasing it on exact cancellation.
  void accumulate(const Index& k, const Index& l, Complex value);

  /// Largest absolute index component over the whole support.
  std::int64_t support_radius() const;

  bool operator==(const Sequence& other) const = default;

private:
  int dim_;
  EntryMap entries_;
};

/// The delta sequence: a single unit entry at (0, 0).
Sequence make_delta(int dim);

/// Single-entry sequence, handy for building test inputs.
Sequence make_atom(Index k, Index l, Complex value);

/// Ordinary convolution (a*b)_{m,n} = sum a_{k,l} b_{m-k,n-l}.
Sequence convolve(const Sequence& a, const Sequence& b);

/// Twisted convolution: ordinary convolution with the extra phase
/// omega^{(m-k).l} coupling the shifted first index of b to the second
/// index of a. Noncommutative for p >= 2; delta is its unit.
Sequence twisted_convolve(const Sequence& a, const Sequence& b, const TwistParams& tp);

/// Restriction of a to the coset (r + pZ^d) x (s + pZ^d).
Sequence coset_restrict(const Sequence& a, const std::vector<int>& r,
                        const std::vector<int>& s, int p);

/// Twisted convolution assembled coset by coset:
///   (a nat b)^{u,v} = sum_{r,s} a^{r,s} * b^{u-r,v-s} omega^{(u-r).s}.
/// An independent second route to twisted_convolve.
Sequence coset_twisted_convolve(const Sequence& a, const Sequence& b, const TwistParams& tp);

double l1_norm(const Sequence& a);
double l1_distance(const Sequence& a, const Sequence& b);

Sequence add(const Sequence& a, const Sequence& b);
Sequence scale(const Sequence& a, Complex factor);
Sequence negate(const Sequence& a);

/// Drops every entry with |value| < tol.
Sequence prune(const Sequence& a, double tol);

}  // namespace twistconv

#endif  // TWISTCONV_SEQUENCE_HPP
