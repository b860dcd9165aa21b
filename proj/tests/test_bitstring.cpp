#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "noisyevo/bitstring.hpp"
#include "noisyevo/rng.hpp"
#include "support.hpp"

using namespace noisyevo;

TEST_CASE("uniform strings have the requested length") {
  RandomStream rng(17);
  CHECK(BitString::uniform(5, rng).size() == 5);
  const BitString x = BitString::uniform(1, rng);
  CHECK(x.ones_count() <= 1);
  CHECK_THROWS_AS(BitString(0), std::invalid_argument);
}

TEST_CASE("uniform sampling is a fair coin per bit") {
  RandomStream rng(99);
  const int trials = 100000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t)
    total += static_cast<double>(BitString::uniform(100, rng).ones_count());
  CHECK(std::abs(total / trials - 50.0) < 0.5);
}

TEST_CASE("ones_count") {
  CHECK(BitString::from_string("10110").ones_count() == 3);
  CHECK(BitString::all_zeros(70).ones_count() == 0);
  CHECK(BitString::all_ones(70).ones_count() == 70);
  CHECK(BitString::all_ones(64).is_all_ones());
  CHECK_FALSE(BitString::from_string("1101").is_all_ones());
}

TEST_CASE("flip_each_bit edge rates") {
  RandomStream rng(5);
  const BitString x = BitString::uniform(130, rng);
  CHECK(flip_each_bit(x, 0.0, rng) == x);
  const BitString inv = flip_each_bit(x, 1.0, rng);
  CHECK(inv.ones_count() == 130 - x.ones_count());
  CHECK(hamming_distance(x, inv) == 130);
  CHECK_THROWS_AS(flip_each_bit(x, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(flip_each_bit(x, 1.5, rng), std::invalid_argument);
}

TEST_CASE("flip_each_bit matches the binomial mean at rate 1/n") {
  RandomStream rng(2024);
  const BitString zeros = BitString::all_zeros(100);
  const int trials = 100000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t)
    total += static_cast<double>(flip_each_bit(zeros, 0.01, rng).ones_count());
  // Binomial(100, 0.01): mean 1, sd sqrt(0.99).
  const double se = std::sqrt(100 * 0.01 * 0.99 / trials);
  CHECK(std::abs(total / trials - 1.0) < 3.0 * se);
}

TEST_CASE("flip_each_bit Hamming distances are Binomial(n, rate)") {
  // Kolmogorov-Smirnov at n=20, rate=0.05, 1e5 samples, alpha=1e-3.
  RandomStream rng(7);
  const BitString x = BitString::uniform(20, rng);
  const int trials = 100000;
  std::vector<double> counts(21, 0.0);
  for (int t = 0; t < trials; ++t)
    counts[hamming_distance(x, flip_each_bit(x, 0.05, rng))] += 1.0;
  double cdf_emp = 0.0, cdf_exact = 0.0, d_max = 0.0;
  for (int k = 0; k <= 20; ++k) {
    cdf_emp += counts[k] / trials;
    cdf_exact += testsupport::binomial_pmf(20, k, 0.05);
    d_max = std::max(d_max, std::abs(cdf_emp - cdf_exact));
  }
  CHECK(d_max < testsupport::kKolmogorovC999 / std::sqrt(trials));
}

TEST_CASE("flip_one_bit") {
  RandomStream rng(3);
  CHECK(flip_one_bit(BitString::all_zeros(1), rng) ==
        BitString::all_ones(1));
  for (int t = 0; t < 200; ++t) {
    const BitString x = BitString::uniform(37, rng);
    CHECK(hamming_distance(x, flip_one_bit(x, rng)) == 1);
  }
}

TEST_CASE("flip_one_bit picks positions uniformly") {
  RandomStream rng(11);
  const BitString zeros = BitString::all_zeros(10);
  const int trials = 100000;
  std::vector<int> hist(10, 0);
  for (int t = 0; t < trials; ++t) {
    const BitString y = flip_one_bit(zeros, rng);
    for (int i = 0; i < 10; ++i)
      if (y.bit(i)) ++hist[i];
  }
  const double se = std::sqrt(0.1 * 0.9 / trials);
  for (int i = 0; i < 10; ++i)
    CHECK(std::abs(hist[i] / static_cast<double>(trials) - 0.1) < 3.0 * se);
}

TEST_CASE("fixed seed reproduces every draw bit-exactly") {
  RandomStream a(123456), b(123456);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  for (int i = 0; i < 1000; ++i) CHECK(a.next_gaussian() == b.next_gaussian());
  CHECK(BitString::uniform(257, a) == BitString::uniform(257, b));
  CHECK(flip_each_bit(BitString::all_zeros(64), 0.3, a) ==
        flip_each_bit(BitString::all_zeros(64), 0.3, b));
}

TEST_CASE("child substreams are uniform and distinct") {
  RandomStream parent(42);
  std::set<std::uint64_t> first_draws;
  for (std::uint64_t index = 0; index < 8; ++index) {
    RandomStream child = parent.child(index);
    first_draws.insert(RandomStream(child.seed()).next_u64());
    // chi-square uniformity over 64 bins, 1e4 draws, alpha=1e-3.
    std::vector<double> observed(64, 0.0);
    for (int i = 0; i < 10000; ++i) observed[child.next_u64() >> 58] += 1.0;
    const std::vector<double> expected(64, 10000.0 / 64.0);
    CHECK(testsupport::chi_square_stat(observed, expected) <
          testsupport::kChi2Crit999Df63);
  }
  CHECK(first_draws.size() == 8);  // all children differ
}

TEST_CASE("eval counter counts one per increment") {
  EvalCounter counter;
  CHECK(counter.count() == 0);
  for (int i = 0; i < 5; ++i) counter.increment();
  CHECK(counter.count() == 5);
}
