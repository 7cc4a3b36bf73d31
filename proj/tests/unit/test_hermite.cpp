#include "doctest.h"

#include "dochar/errors.hpp"
#include "dochar/hermite.hpp"

using namespace dochar;

namespace {

// H_q by the three-term recurrence, independent of raise().
std::vector<std::vector<mpq_class>> recurrence_modes(int qmax) {
  std::vector<std::vector<mpq_class>> h{{1}, {0, 2}};
  for (int q = 1; q < qmax; ++q) {
    std::vector<mpq_class> next(q + 2, 0);
    for (int i = 0; i <= q; ++i) next[i + 1] += 2 * h[q][i];
    for (int i = 0; i < q; ++i) next[i] -= 2 * q * h[q - 1][i];
    h.push_back(next);
  }
  return h;
}

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("raise reproduces the recurrence") {
  CHECK(raise(HermiteFunction::mode(0)) == HermiteFunction({0, 2}));
  CHECK(raise(HermiteFunction({0, 2})) == HermiteFunction({-2, 0, 4}));
  const auto rec = recurrence_modes(31);
  HermiteFunction f = HermiteFunction::mode(0);
  for (int q = 0; q < 30; ++q) {
    f = raise(f);
    CHECK(f == HermiteFunction(rec[q + 1]));
  }
}

TEST_CASE("lower and the commutator") {
  CHECK(lower(HermiteFunction::mode(0)).is_zero());
  CHECK(lower(HermiteFunction::mode(1)) == HermiteFunction({2}));
  for (int q = 0; q <= 30; ++q) {
    const auto m = HermiteFunction::mode(q);
    CHECK(lower(raise(m)) == m * mpq_class(2 * q + 2));
    CHECK(lower(raise(m)) - raise(lower(m)) == m * mpq_class(2));
    CHECK(apply_h(m) == m * mpq_class(2 * q + 1));
  }
  const HermiteFunction g({mpq_class(1, 3), -2, 0, 5, mpq_class(7, 2)});
  CHECK(lower(raise(g)) - raise(lower(g)) == g * mpq_class(2));
}

TEST_CASE("mul_y and squared norms") {
  CHECK(mul_y(HermiteFunction::mode(0), 1) == HermiteFunction::mode(1) * mpq_class(1, 2));
  for (int q = 0; q <= 20; ++q) {
    const auto h = HermiteFunction::mode(q);
    const mpq_class n0 = inner_product(h, h);
    const auto y1 = mul_y(h, 1), y2 = mul_y(h, 2);
    CHECK(inner_product(y1, y1) / n0 == mpq_class(2 * q + 1, 2));
    CHECK(inner_product(y2, y2) / n0 == mpq_class(3 * (2 * q * q + 2 * q + 1), 4));
  }
}

TEST_CASE("y^3 expansion matches the four-mode formula") {
  // y^3 h_q has normalized coefficients whose squares are
  // (q+3)(q+2)(q+1)/8, 9(q+1)^3/8, 9 q^3/8, q(q-1)(q-2)/8.
  for (int q = 0; q <= 12; ++q) {
    const auto h = HermiteFunction::mode(q);
    const auto c = to_coefficients(mul_y(h, 3));
    auto sq = [&](int p) -> mpq_class {
      if (!c.count(p)) return mpq_class(0);
      const mpq_class a = c.at(p);
      const auto hp = HermiteFunction::mode(p);
      return a * a * inner_product(hp, hp) / inner_product(h, h);
    };
    CHECK(sq(q + 3) == mpq_class((q + 3) * (q + 2) * (q + 1)) / 8);
    CHECK(sq(q + 1) == mpq_class(9 * (q + 1) * (q + 1) * (q + 1)) / 8);
    CHECK(sq(q - 1) == mpq_class(9 * q * q * q) / 8);
    CHECK(sq(q - 3) == mpq_class(q * (q - 1) * (q - 2)) / 8);
  }
}

TEST_CASE("inner product values and properties") {
  const auto h0 = HermiteFunction::mode(0);
  CHECK(inner_product(h0, h0) == 1);
  CHECK(inner_product(h0, HermiteFunction::mode(1)) == 0);
  for (int q = 0; q <= 20; ++q) {
    const auto h = HermiteFunction::mode(q);
    CHECK(inner_product(h, h) == mpq_class(mpz_class(1) << q) * factorial(q));
  }
  const HermiteFunction f({1, mpq_class(-1, 2), 3});
  const HermiteFunction g({0, 2, 0, mpq_class(1, 5)});
  CHECK(inner_product(f, g) == inner_product(g, f));
  CHECK(inner_product(f * mpq_class(3), g + f) ==
        3 * inner_product(f, g) + 3 * inner_product(f, f));
  CHECK(inner_product(f, f) > 0);
  CHECK(inner_product(g, g) > 0);
}

TEST_CASE("coefficient basis change is a bijection") {
  const HermiteFunction f({mpq_class(2, 7), -1, 0, 4, mpq_class(1, 3)});
  CHECK(from_coefficients(to_coefficients(f)) == f);
  HermiteCoefficients c{{0, 1}, {3, mpq_class(-2, 5)}, {6, 4}};
  CHECK(to_coefficients(from_coefficients(c)) == c);
}

TEST_CASE("resolvent") {
  auto r = resolvent(0, {{2, 1}});
  CHECK(r == HermiteCoefficients{{2, mpq_class(1, 4)}});
  r = resolvent(1, {{0, 1}});
  CHECK(r == HermiteCoefficients{{0, mpq_class(-1, 2)}});
  CHECK_THROWS_AS(resolvent(0, {{0, 1}}), KernelComponentError);
  // (H - (2n+1)) applied to the result returns the input.
  const HermiteCoefficients f{{0, 3}, {2, mpq_class(1, 3)}, {5, -2}};
  const auto u = from_coefficients(resolvent(1, f));
  CHECK(to_coefficients(apply_h(u) - u * mpq_class(3)) == f);
}

TEST_CASE("bracket values") {
  CHECK(lemma41_bracket(0) == 9);
  CHECK(lemma41_bracket(1) == -3);
  CHECK(lemma41_bracket(2) == -27);
  for (int q = 0; q <= 10; ++q) CHECK(lemma41_bracket(q) == -6 * q * q - 6 * q + 9);
}

TEST_CASE("degree cap") {
  HermiteFunction f = HermiteFunction::mode(0);
  for (int q = 0; q < 10; ++q) f = raise(f, 10);
  CHECK_THROWS_AS(raise(f, 10), DegreeCapExceeded);
}
