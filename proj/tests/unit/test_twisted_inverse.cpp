#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "twistconv/errors.hpp"
#include "twistconv/twisted_inverse.hpp"

using namespace twistconv;

namespace {

Sequence running_input() {
  Sequence a = make_delta(1);
  a.set(Index{1}, Index{1}, Complex{0.5, 0.0});
  return a;
}

}  // namespace

TEST_SUITE("twisted_inverse") {

TEST_CASE("delta inverts to delta with zero residuals") {
  const TwistParams tp(2, 1, 1);
  const InversionReport r = invert_twisted(make_delta(1), tp);
  CHECK(testutil::dist(r.inverse, make_delta(1)) < 1e-14);
  CHECK(r.residual_right < 1e-14);
  CHECK(r.residual_left < 1e-14);
  CHECK(r.det_symbol_min == 1.0);
}

TEST_CASE("running example reproduces the diagonal recurrence") {
  const TwistParams tp(2, 1, 1);
  const InversionReport r = invert_twisted(running_input(), tp);
  CHECK(r.residual_right <= 1e-8);
  CHECK(r.residual_left <= 1e-8);
  CHECK(std::abs(r.det_symbol_min - 0.75) < 1e-12);

  // b_n at (n, n) follows c_0 = 1, c_n = 0.5 * (-1)^n * c_{n-1}; everything
  // else vanishes.
  double c = 1.0;
  for (int n = 0; n <= 12; ++n) {
    CHECK(std::abs(r.inverse.at(Index{n}, Index{n}) - Complex{c, 0.0}) < 1e-10);
    c *= 0.5 * ((n + 1) % 2 == 0 ? 1.0 : -1.0);
  }
  for (const auto& [kl, v] : r.inverse.entries()) {
    CHECK(kl.first[0] == kl.second[0]);  // diagonal support only
    CHECK(kl.first[0] >= 0);
  }
}

TEST_CASE("running example agrees with the Neumann oracle") {
  const TwistParams tp(2, 1, 1);
  const InversionReport r = invert_twisted(running_input(), tp);
  const Sequence nb = neumann_inverse(running_input(), tp);
  CHECK(testutil::dist(r.inverse, nb) < 2e-8);
}

TEST_CASE("critical coupling is flagged not invertible") {
  const TwistParams tp(2, 1, 1);
  Sequence a = make_delta(1);
  a.set(Index{1}, Index{1}, Complex{1.0, 0.0});
  CHECK_THROWS_AS(invert_twisted(a, tp), NotInvertibleError);
}

TEST_CASE("p=1 reduces to plain convolution inversion, bitwise") {
  const TwistParams tp(1, 1, 1);
  Sequence c = make_delta(1);
  c.set(Index{2}, Index{2}, Complex{0.25, 0.0});
  const InversionReport r = invert_twisted(c, tp);
  const Sequence direct = invert_convolution(c);
  CHECK(testutil::dist(r.inverse, direct) == 0.0);
}

TEST_CASE("neumann oracle basics") {
  const TwistParams tp(2, 1, 1);
  CHECK(testutil::dist(neumann_inverse(make_delta(1), tp), make_delta(1)) == 0.0);

  Sequence far = make_delta(1);
  far.set(Index{1}, Index{1}, Complex{1.2, 0.0});
  CHECK_THROWS_AS(neumann_inverse(far, tp), NotContractiveError);

  Sequence slow = make_delta(1);
  slow.set(Index{1}, Index{1}, Complex{-0.99, 0.0});
  CHECK_THROWS_AS(neumann_inverse(slow, tp, 1e-12, 5), MaxIterExceededError);
}

TEST_CASE("verification helper reports both sides") {
  const TwistParams tp(2, 1, 1);
  const auto [r0, l0] = verify_inverse(make_delta(1), make_delta(1), tp);
  CHECK(r0 == 0.0);
  CHECK(l0 == 0.0);

  const auto [r1, l1] = verify_inverse(running_input(), make_delta(1), tp);
  CHECK(std::abs(r1 - 0.5) < 1e-15);
  CHECK(std::abs(l1 - 0.5) < 1e-15);
}

TEST_CASE("random contractive inputs match the Neumann oracle") {
  std::mt19937_64 rng(61);
  for (int p : {2, 3}) {
    const TwistParams tp(p, 1, 1);
    for (int trial = 0; trial < 5; ++trial) {
      const Sequence a = testutil::random_contractive(rng, 1, 4, 2, 0.6);
      const InversionReport r = invert_twisted(a, tp);
      const Sequence nb = neumann_inverse(a, tp, 1e-10);
      CHECK(testutil::dist(r.inverse, nb) < 1e-7);
      CHECK(r.residual_right <= 1e-8);
      CHECK(r.residual_left <= 1e-8);
    }
  }
}

TEST_CASE("grid doubling does not move the answer") {
  const TwistParams tp(2, 1, 1);
  InversionConfig big;
  big.grid_size = 512;
  const InversionReport r1 = invert_twisted(running_input(), tp);
  const InversionReport r2 = invert_twisted(running_input(), tp, big);
  CHECK(testutil::dist(r1.inverse, r2.inverse) < 10 * big.tail_tol);
}

TEST_CASE("inverting the inverse returns to the input") {
  const TwistParams tp(2, 1, 1);
  const InversionReport fwd = invert_twisted(running_input(), tp);
  const InversionReport back = invert_twisted(fwd.inverse, tp);
  CHECK(testutil::dist(back.inverse, running_input()) < 1e-7);
}

TEST_CASE("parameter validation") {
  const TwistParams tp(2, 1, 1);
  CHECK_THROWS_AS(invert_twisted(make_delta(2), tp), std::invalid_argument);
  const TwistParams big(7, 1, 1);  // matrix size 7 exceeds the determinant cap
  CHECK_THROWS_AS(invert_twisted(make_delta(1), big), std::invalid_argument);
}

}  // TEST_SUITE
