#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ccount/error.hpp"
#include "ccount/exact_sum.hpp"
#include "doctest.h"

using ccount::ExactSum;

namespace {

double sum_of(const std::vector<double>& v) {
  ExactSum s;
  for (double x : v) s.add(x);
  return s.value();
}

}  // namespace

TEST_CASE("exact sums where naive summation fails") {
  CHECK(sum_of({1e16, 1.0, -1e16}) == 1.0);
  CHECK(sum_of({1e308, 1.0, -1e308}) == 1.0);
  CHECK(sum_of({1e308, 1e308, -1e308}) == 1e308);
  CHECK(sum_of({}) == 0.0);
  CHECK(sum_of({-2.5}) == -2.5);
  const double tiny = std::numeric_limits<double>::denorm_min();
  CHECK(sum_of({tiny, tiny}) == 2.0 * tiny);
  CHECK(sum_of({std::numeric_limits<double>::max(), -tiny}) == std::numeric_limits<double>::max());
}

TEST_CASE("round to nearest, ties to even, with sticky bits") {
  const double two53 = 9007199254740992.0;
  CHECK(sum_of({two53, 1.0}) == two53);
  CHECK(sum_of({two53, 3.0}) == two53 + 4.0);
  CHECK(sum_of({two53, 1.0, std::ldexp(1.0, -30)}) == two53 + 2.0);
  CHECK(sum_of({-two53, -1.0, -std::ldexp(1.0, -30)}) == -(two53 + 2.0));
  CHECK(sum_of({1.0, std::ldexp(1.0, -53)}) == 1.0);
  CHECK(sum_of({1.0, std::ldexp(1.0, -53), std::ldexp(1.0, -200)}) == std::nextafter(1.0, 2.0));
}

TEST_CASE("products are accumulated exactly") {
  const double a = 1.0 + std::ldexp(1.0, -30);
  ExactSum s;
  s.add_product(a, a);  // 1 + 2^-29 + 2^-60 exactly
  CHECK(s.value() == 1.0 + std::ldexp(1.0, -29));
  s.add(-(1.0 + std::ldexp(1.0, -29)));
  CHECK(s.value() == std::ldexp(1.0, -60));
  ExactSum t;
  t.add_product(3.0, 7.0);
  t.add_product(-3.0, 7.0);
  CHECK(t.is_zero());
}

TEST_CASE("non-finite input is rejected") {
  ExactSum s;
  CHECK_THROWS_AS(s.add(std::numeric_limits<double>::infinity()), ccount::UpdateError);
  CHECK_THROWS_AS(s.add(std::nan("")), ccount::UpdateError);
  CHECK_THROWS_AS(s.add_product(1e300, 1e300), ccount::UpdateError);
}

TEST_CASE("property: order independence and merge over random wide-range data") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> v(200);
    for (auto& x : v) x = std::ldexp(mant(rng), expo(rng));
    // Exact cancellation pairs mixed in.
    for (int i = 0; i < 20; ++i) v.push_back(-v[static_cast<std::size_t>(i)]);
    const double ref = sum_of(v);
    std::shuffle(v.begin(), v.end(), rng);
    CHECK(sum_of(v) == ref);

    ExactSum left;
    ExactSum right;
    for (std::size_t i = 0; i < v.size(); ++i) (i % 3 == 0 ? left : right).add(v[i]);
    left.add(right);
    CHECK(left.value() == ref);
  }
}

TEST_CASE("property: integer data matches exact integer arithmetic") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-(1LL << 40), 1LL << 40);
  for (int round = 0; round < 100; ++round) {
    long long exact = 0;
    ExactSum s;
    for (int i = 0; i < 1000; ++i) {
      const long long x = d(rng);
      exact += x;
      s.add(static_cast<double>(x));
    }
    CHECK(s.value() == static_cast<double>(exact));
  }
}
