#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "twistconv/sequence.hpp"

using namespace twistconv;
using testutil::dist;

TEST_SUITE("seq_core") {

TEST_CASE("twist params validate and enumerate cosets") {
  CHECK_THROWS_AS(TwistParams(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(TwistParams(2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(TwistParams(4, 2, 1), std::invalid_argument);  // gcd(4,2) != 1

  const TwistParams tp(3, 2, 2);
  CHECK(tp.matrix_size() == 9);
  CHECK(tp.coset_at(0) == std::vector<int>{0, 0});  // k_1 = 0 convention
  for (std::int64_t i = 0; i < tp.matrix_size(); ++i) {
    CHECK(tp.index_of(tp.coset_at(i)) == i);
  }

  // omega powers reduce exponents mod p in integer arithmetic
  const TwistParams t2(2, 1, 1);
  CHECK(t2.omega_pow(0) == Complex{1.0, 0.0});
  CHECK(t2.omega_pow(2) == Complex{1.0, 0.0});
  CHECK(t2.omega_pow(1) == t2.omega_pow(-1));
  CHECK(std::abs(t2.omega() - Complex{-1.0, 0.0}) < 1e-15);
  const TwistParams t5(5, 3, 1);
  CHECK(t5.omega_pow(7) == t5.omega_pow(2));
  CHECK(t5.omega_pow(-3) == t5.omega_pow(2));
}

TEST_CASE("sequence storage drops exact zeros") {
  Sequence s(1);
  s.set(Index{0}, Index{0}, Complex{1.0, 0.0});
  s.accumulate(Index{0}, Index{0}, Complex{-1.0, 0.0});
  CHECK(s.empty());
  s.set(Index{3}, Index{-2}, Complex{0.5, 0.25});
  CHECK(s.support_size() == 1);
  CHECK(s.at(Index{3}, Index{-2}) == Complex{0.5, 0.25});
  CHECK(s.at(Index{0}, Index{1}) == Complex{0.0, 0.0});
  CHECK(s.support_radius() == 3);
  s.set(Index{3}, Index{-2}, Complex{0.0, 0.0});
  CHECK(s.empty());
}

TEST_CASE("delta is the twisted unit") {
  std::mt19937_64 rng(11);
  const TwistParams tp(3, 1, 1);
  const Sequence a = testutil::random_sequence(rng, 1, 20, 5, 1.0);
  const Sequence d = make_delta(1);
  CHECK(dist(twisted_convolve(a, d, tp), a) == 0.0);
  CHECK(dist(twisted_convolve(d, a, tp), a) == 0.0);
}

TEST_CASE("atom rule carries the phase omega^{k2 . l1}") {
  for (int p : {2, 3, 5}) {
    const TwistParams tp(p, p == 5 ? 2 : 1, 1);
    const struct {
      std::int64_t k1, l1, k2, l2;
    } cases[] = {{1, 2, 3, 1}, {-2, 1, 4, -3}, {0, -5, 7, 2}};
    for (const auto& c : cases) {
      const Sequence lhs = twisted_convolve(make_atom(Index{c.k1}, Index{c.l1}, Complex{1, 0}),
                                            make_atom(Index{c.k2}, Index{c.l2}, Complex{1, 0}), tp);
      const Sequence rhs =
          make_atom(Index{c.k1 + c.k2}, Index{c.l1 + c.l2}, tp.omega_pow(c.k2 * c.l1));
      CHECK(dist(lhs, rhs) < 1e-15);
    }
  }
}

TEST_CASE("worked product for p=2") {
  // (delta + 0.5 delta_{(1,1)}) nat itself = delta + delta_{(1,1)} - 0.25 delta_{(2,2)}
  const TwistParams tp(2, 1, 1);
  Sequence a = make_delta(1);
  a.set(Index{1}, Index{1}, Complex{0.5, 0.0});
  const Sequence prod = twisted_convolve(a, a, tp);
  Sequence expect = make_delta(1);
  expect.set(Index{1}, Index{1}, Complex{1.0, 0.0});
  expect.set(Index{2}, Index{2}, Complex{-0.25, 0.0});
  CHECK(dist(prod, expect) < 1e-15);
}

TEST_CASE("coset restriction partitions the sequence") {
  std::mt19937_64 rng(12);
  for (int p : {2, 3}) {
    for (int dim : {1, 2}) {
      const Sequence a = testutil::random_sequence(rng, dim, 30, 6, 2.0);
      const TwistParams tp(p, 1, dim);
      Sequence sum(dim);
      for (std::int64_t i = 0; i < tp.matrix_size(); ++i) {
        for (std::int64_t j = 0; j < tp.matrix_size(); ++j) {
          sum = add(sum, coset_restrict(a, tp.coset_at(i), tp.coset_at(j), p));
        }
      }
      CHECK(dist(sum, a) == 0.0);
    }
  }
}

TEST_CASE("coset restriction keeps only matching residues") {
  Sequence a(1);
  a.set(Index{0}, Index{0}, Complex{1, 0});   // residues (0, 0)
  a.set(Index{2}, Index{1}, Complex{2, 0});   // residues (0, 1)
  a.set(Index{-1}, Index{3}, Complex{3, 0});  // residues (1, 1)
  const Sequence odd_odd = coset_restrict(a, {1}, {1}, 2);
  CHECK(odd_odd.support_size() == 1);
  CHECK(odd_odd.at(Index{-1}, Index{3}) == Complex{3, 0});
  const Sequence even_odd = coset_restrict(a, {0}, {1}, 2);
  CHECK(even_odd.support_size() == 1);
  CHECK(even_odd.at(Index{2}, Index{1}) == Complex{2, 0});
}

TEST_CASE("coset product support lemma") {
  std::mt19937_64 rng(13);
  const int p = 3;
  const Sequence a = testutil::random_sequence(rng, 1, 15, 7, 1.0);
  const Sequence b = testutil::random_sequence(rng, 1, 15, 7, 1.0);
  for (int r = 0; r < p; ++r) {
    for (int s = 0; s < p; ++s) {
      for (int u = 0; u < p; ++u) {
        for (int v = 0; v < p; ++v) {
          const Sequence prod =
              convolve(coset_restrict(a, {r}, {s}, p), coset_restrict(b, {u}, {v}, p));
          for (const auto& [kl, value] : prod.entries()) {
            CHECK(((kl.first[0] - r - u) % p + p) % p == 0);
            CHECK(((kl.second[0] - s - v) % p + p) % p == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("twisted convolution agrees with the coset assembly") {
  std::mt19937_64 rng(14);
  for (int p : {2, 3, 5}) {
    const TwistParams tp(p, p == 3 ? 2 : 1, 1);
    for (int trial = 0; trial < 10; ++trial) {
      const Sequence a = testutil::random_sequence(rng, 1, 50, 8, 1.5);
      const Sequence b = testutil::random_sequence(rng, 1, 50, 8, 1.5);
      CHECK(dist(twisted_convolve(a, b, tp), coset_twisted_convolve(a, b, tp)) < 1e-12);
    }
  }
  // d = 2 as well
  const TwistParams tp2(2, 1, 2);
  std::mt19937_64 rng2(15);
  const Sequence a = testutil::random_sequence(rng2, 2, 20, 4, 1.0);
  const Sequence b = testutil::random_sequence(rng2, 2, 20, 4, 1.0);
  CHECK(dist(twisted_convolve(a, b, tp2), coset_twisted_convolve(a, b, tp2)) < 1e-12);
}

TEST_CASE("noncommutativity witness") {
  const Sequence a = make_atom(Index{1}, Index{0}, Complex{1, 0});
  const Sequence b = make_atom(Index{0}, Index{1}, Complex{1, 0});
  for (int p : {2, 3, 5}) {
    const TwistParams tp(p, 1, 1);
    CHECK(dist(twisted_convolve(a, b, tp), twisted_convolve(b, a, tp)) > 0.1);
  }
}

TEST_CASE("twisted convolution is associative") {
  std::mt19937_64 rng(16);
  const TwistParams tp(3, 2, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const Sequence a = testutil::random_sequence(rng, 1, 12, 5, 1.0);
    const Sequence b = testutil::random_sequence(rng, 1, 12, 5, 1.0);
    const Sequence c = testutil::random_sequence(rng, 1, 12, 5, 1.0);
    CHECK(dist(twisted_convolve(twisted_convolve(a, b, tp), c, tp),
               twisted_convolve(a, twisted_convolve(b, c, tp), tp)) < 1e-12);
  }
}

TEST_CASE("l1 norm is submultiplicative under nat") {
  std::mt19937_64 rng(17);
  const TwistParams tp(2, 1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const Sequence a = testutil::random_sequence(rng, 1, 25, 6, 2.0);
    const Sequence b = testutil::random_sequence(rng, 1, 25, 6, 2.0);
    CHECK(l1_norm(twisted_convolve(a, b, tp)) <= l1_norm(a) * l1_norm(b) + 1e-12);
  }
}

TEST_CASE("plain convolution is bitwise commutative") {
  std::mt19937_64 rng(18);
  const Sequence a = testutil::random_sequence(rng, 1, 30, 6, 1.0);
  const Sequence b = testutil::random_sequence(rng, 1, 30, 6, 1.0);
  CHECK(convolve(a, b) == convolve(b, a));
}

TEST_CASE("arithmetic helpers") {
  const Sequence a = make_atom(Index{1}, Index{2}, Complex{2.0, -1.0});
  CHECK(dist(add(a, negate(a)), Sequence(1)) == 0.0);
  CHECK(l1_norm(scale(a, Complex{0.0, 1.0})) == l1_norm(a));
  CHECK(l1_distance(a, scale(a, Complex{2.0, 0.0})) == std::abs(Complex{2.0, -1.0}));

  Sequence noisy = a;
  noisy.set(Index{5}, Index{5}, Complex{1e-15, 0.0});
  const Sequence pruned = prune(noisy, 1e-12);
  CHECK(dist(pruned, a) == 0.0);
}

TEST_CASE("dimension mismatches throw") {
  const TwistParams tp(2, 1, 1);
  CHECK_THROWS_AS(twisted_convolve(Sequence(1), Sequence(2), tp), std::invalid_argument);
  CHECK_THROWS_AS(convolve(Sequence(1), Sequence(2)), std::invalid_argument);
  CHECK_THROWS_AS(twisted_convolve(Sequence(2), Sequence(2), tp), std::invalid_argument);
}

}  // TEST_SUITE
