#include "twistconv/sequence.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace twistconv {

namespace {

void check_same_dim(const Sequence& a, const Sequence& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("sequence dimension mismatch");
  }
}

int mod_p(std::int64_t v, int p) {
  int r = static_cast<int>(v % p);
  return r < 0 ? r + p : r;
}

// Inner product reduced mod p componentwise, so the accumulator stays
// small for arbitrarily large indices.
std::int64_t dot_mod(const Index& a, const Index& b, int p) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<std::int64_t>(mod_p(a[i], p)) * mod_p(b[i], p);
  }
  return s;
}

}  // namespace

TwistParams::TwistParams(int p, int q, int dim) : p_(p), q_(q), dim_(dim) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (dim < 1) throw std::invalid_argument("dim must be positive");
  if (std::gcd(p, std::abs(q)) != 1) {
    throw std::invalid_argument("p and q must be relatively prime");
  }
  n_ = 1;
  for (int i = 0; i < dim; ++i) {
    n_ *= p;
    if (n_ > (std::int64_t{1} << 30)) throw std::invalid_argument("p^d too large");
  }
  unit_roots_.resize(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    if (4 * j % p == 0) {
      // Angles at multiples of pi/2 have exact values; keeping them exact
      // makes the p = 2 phase arithmetic (omega = -1) exact as well.
      static constexpr Complex kCardinal[4] = {
          {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
      unit_roots_[static_cast<std::size_t>(j)] = kCardinal[4 * j / p];
    } else {
      double angle = 2.0 * std::numbers::pi * j / p;
      unit_roots_[static_cast<std::size_t>(j)] = Complex(std::cos(angle), std::sin(angle));
    }
  }
}

std::vector<int> TwistParams::coset_at(std::int64_t i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("coset index out of range");
  std::vector<int> k(static_cast<std::size_t>(dim_));
  for (int c = dim_ - 1; c >= 0; --c) {
    k[static_cast<std::size_t>(c)] = static_cast<int>(i % p_);
    i /= p_;
  }
  return k;
}

std::int64_t TwistParams::index_of(const std::vector<int>& residues) const {
  if (residues.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("residue vector has wrong dimension");
  }
  std::int64_t i = 0;
  for (int c = 0; c < dim_; ++c) {
    int r = residues[static_cast<std::size_t>(c)];
    if (r < 0 || r >= p_) throw std::out_of_range("residue out of range");
    i = i * p_ + r;
  }
  return i;
}

Sequence::Sequence(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dim must be positive");
}

Complex Sequence::at(const Index& k, const Index& l) const {
  auto it = entries_.find(IndexPair(k, l));
  return it == entries_.end() ? Complex(0.0, 0.0) : it->second;
}

void Sequence::set(Index k, Index l, Complex value) {
  if (k.size() != static_cast<std::size_t>(dim_) || l.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("index dimension mismatch");
  }
  IndexPair key(std::move(k), std::move(l));
  if (value == Complex(0.0, 0.0)) {
    entries_.erase(key);
  } else {
    entries_[std::move(key)] = value;
  }
}

void Sequence::accumulate(const Index& k, const Index& l, Complex value) {
  if (value == Complex(0.0, 0.0)) return;
  auto [it, inserted] = entries_.try_emplace(IndexPair(k, l), value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex(0.0, 0.0)) entries_.erase(it);
  }
}

std::int64_t Sequence::support_radius() const {
  std::int64_t r = 0;
  for (const auto& [key, value] : entries_) {
    for (auto c : key.first) r = std::max(r, std::abs(c));
    for (auto c : key.second) r = std::max(r, std::abs(c));
  }
  return r;
}

Sequence make_delta(int dim) {
  Sequence s(dim);
  s.set(Index(static_cast<std::size_t>(dim), 0), Index(static_cast<std::size_t>(dim), 0),
        Complex(1.0, 0.0));
  return s;
}

Sequence make_atom(Index k, Index l, Complex value) {
  if (k.size() != l.size() || k.empty()) throw std::invalid_argument("bad atom index");
  Sequence s(static_cast<int>(k.size()));
  s.set(std::move(k), std::move(l), value);
  return s;
}

namespace {

// Deterministic total order on sequence contents, so the commutative ops can
// fix a canonical argument order and give bitwise argument-symmetric results.
bool canonical_before(const Sequence& a, const Sequence& b) {
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  const auto ea = a.entries().end();
  const auto eb = b.entries().end();
  for (; ia != ea && ib != eb; ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    const auto va = std::pair{ia->second.real(), ia->second.imag()};
    const auto vb = std::pair{ib->second.real(), ib->second.imag()};
    if (va != vb) return va < vb;
  }
  return ib != eb;
}

}  // namespace

Sequence convolve(const Sequence& a0, const Sequence& b0) {
  check_same_dim(a0, b0);
  const bool swap_args = canonical_before(b0, a0);
  const Sequence& a = swap_args ? b0 : a0;
  const Sequence& b = swap_args ? a0 : b0;
  const std::size_t d = static_cast<std::size_t>(a.dim());
  Sequence out(a.dim());
  Index m(d), n(d);
  for (const auto& [ka, va] : a.entries()) {
    for (const auto& [kb, vb] : b.entries()) {
      for (std::size_t i = 0; i < d; ++i) {
        m[i] = ka.first[i] + kb.first[i];
        n[i] = ka.second[i] + kb.second[i];
      }
      out.accumulate(m, n, va * vb);
    }
  }
  return out;
}

Sequence twisted_convolve(const Sequence& a, const Sequence& b, const TwistParams& tp) {
  check_same_dim(a, b);
  if (a.dim() != tp.dim()) throw std::invalid_argument("twist dimension mismatch");
  if (tp.p() == 1) return convolve(a, b);  // every phase is exactly 1
  const std::size_t d = static_cast<std::size_t>(a.dim());
  Sequence out(a.dim());
  Index m(d), n(d);
  for (const auto& [ka, va] : a.entries()) {
    for (const auto& [kb, vb] : b.entries()) {
      for (std::size_t i = 0; i < d; ++i) {
        m[i] = ka.first[i] + kb.first[i];
        n[i] = ka.second[i] + kb.second[i];
      }
      // phase exponent (m-k).l with m-k the first index of b's entry
      out.accumulate(m, n, va * vb * tp.omega_pow(dot_mod(kb.first, ka.second, tp.p())));
    }
  }
  return out;
}

Sequence coset_restrict(const Sequence& a, const std::vector<int>& r, const std::vector<int>& s,
                        int p) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  const std::size_t d = static_cast<std::size_t>(a.dim());
  if (r.size() != d || s.size() != d) throw std::invalid_argument("coset vector dimension mismatch");
  for (std::size_t i = 0; i < d; ++i) {
    if (r[i] < 0 || r[i] >= p || s[i] < 0 || s[i] >= p) {
      throw std::out_of_range("coset residue out of [0, p)");
    }
  }
  Sequence out(a.dim());
  for (const auto& [key, value] : a.entries()) {
    bool match = true;
    for (std::size_t i = 0; i < d && match; ++i) {
      match = mod_p(key.first[i], p) == r[i] && mod_p(key.second[i], p) == s[i];
    }
    if (match) out.set(key.first, key.second, value);
  }
  return out;
}

Sequence coset_twisted_convolve(const Sequence& a, const Sequence& b, const TwistParams& tp) {
  check_same_dim(a, b);
  if (a.dim() != tp.dim()) throw std::invalid_argument("twist dimension mismatch");
  const int p = tp.p();
  const std::size_t d = static_cast<std::size_t>(a.dim());

  // Split both inputs into their nonempty coset pieces once.
  std::map<std::pair<std::int64_t, std::int64_t>, Sequence> pa, pb;
  auto split = [&](const Sequence& src, auto& dst) {
    for (const auto& [key, value] : src.entries()) {
      std::vector<int> r(d), s(d);
      for (std::size_t i = 0; i < d; ++i) {
        r[i] = mod_p(key.first[i], p);
        s[i] = mod_p(key.second[i], p);
      }
      auto it = dst.try_emplace({tp.index_of(r), tp.index_of(s)}, Sequence(static_cast<int>(d))).first;
      it->second.set(key.first, key.second, value);
    }
  };
  split(a, pa);
  split(b, pb);

  Sequence out(a.dim());
  for (const auto& [ca, seq_a] : pa) {
    const std::vector<int> s = tp.coset_at(ca.second);
    for (const auto& [cb, seq_b] : pb) {
      // cb.first represents u - r mod p, so the phase is omega^{(u-r).s}.
      const std::vector<int> ur = tp.coset_at(cb.first);
      std::int64_t e = 0;
      for (std::size_t i = 0; i < d; ++i) e += static_cast<std::int64_t>(ur[i]) * s[i];
      const Complex phase = tp.omega_pow(e);
      const Sequence piece = convolve(seq_a, seq_b);
      for (const auto& [key, value] : piece.entries()) {
        out.accumulate(key.first, key.second, value * phase);
      }
    }
  }
  return out;
}

double l1_norm(const Sequence& a) {
  double s = 0.0;
  for (const auto& [key, value] : a.entries()) s += std::abs(value);
  return s;
}

double l1_distance(const Sequence& a, const Sequence& b) { return l1_norm(add(a, negate(b))); }

Sequence add(const Sequence& a, const Sequence& b) {
  check_same_dim(a, b);
  Sequence out = a;
  for (const auto& [key, value] : b.entries()) out.accumulate(key.first, key.second, value);
  return out;
}

Sequence scale(const Sequence& a, Complex factor) {
  Sequence out(a.dim());
  if (factor == Complex(0.0, 0.0)) return out;
  for (const auto& [key, value] : a.entries()) out.set(key.first, key.second, value * factor);
  return out;
}

Sequence negate(const Sequence& a) { return scale(a, Complex(-1.0, 0.0)); }

Sequence prune(const Sequence& a, double tol) {
  Sequence out(a.dim());
  for (const auto& [key, value] : a.entries()) {
    if (std::abs(value) >= tol) out.set(key.first, key.second, value);
  }
  return out;
}

}  // namespace twistconv
