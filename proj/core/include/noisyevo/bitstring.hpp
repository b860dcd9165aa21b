#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noisyevo/rng.hpp"

namespace noisyevo {

// Fixed-length genotype x in {0,1}^n, packed 64 bits per word.
// Length is set at construction and never changes.
class BitString {
 public:
  explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {
    if (n == 0) throw std::invalid_argument("BitString: n must be >= 1");
  }

  // Each bit independently 1 with probability 1/2.
  static BitString uniform(std::size_t n, RandomStream& rng) {
    BitString x(n);
    for (auto& w : x.words_) w = rng.next_u64();
    x.mask_tail();
    return x;
  }

  static BitString all_zeros(std::size_t n) { return BitString(n); }

  static BitString all_ones(std::size_t n) {
    BitString x(n);
    for (auto& w : x.words_) w = ~0ULL;
    x.mask_tail();
    return x;
  }

  // Test convenience: "10110" -> bits x_0..x_4.
  static BitString from_string(std::string_view s) {
    BitString x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        x.set(i, true);
      else if (s[i] != '0')
        throw std::invalid_argument("BitString: expected only '0'/'1'");
    }
    return x;
  }

  std::size_t size() const { return n_; }

  bool bit(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = 1ULL << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  // ||x||_1, the number of one-bits.
  std::size_t ones_count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_all_ones() const { return ones_count() == n_; }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (bit(i)) s[i] = '1';
    return s;
  }

  friend std::size_t hamming_distance(const BitString& a, const BitString& b);
  friend BitString flip_each_bit(const BitString& x, double rate,
                                 RandomStream& rng);

 private:
  void mask_tail() {
    const std::size_t used = n_ & 63;
    if (used != 0) words_.back() &= (1ULL << used) - 1;
  }

  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i)
    d += static_cast<std::size_t>(std::popcount(a.words_[i] ^ b.words_[i]));
  return d;
}

inline BitString new_uniform(std::size_t n, RandomStream& rng) {
  return BitString::uniform(n, rng);
}

inline std::size_t ones_count(const BitString& x) { return x.ones_count(); }

// New string with each position independently toggled with probability rate.
inline BitString flip_each_bit(const BitString& x, double rate,
                               RandomStream& rng) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw std::invalid_argument("flip_each_bit: rate must be in [0,1]");
  BitString y = x;
  if (rate == 0.0) return y;
  if (rate == 1.0) {
    for (auto& w : y.words_) w = ~w;
    y.mask_tail();
    return y;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (rng.next_bernoulli(rate)) y.flip(i);
  return y;
}

// New string differing from x in exactly one uniformly chosen position.
inline BitString flip_one_bit(const BitString& x, RandomStream& rng) {
  BitString y = x;
  y.flip(static_cast<std::size_t>(rng.next_below(x.size())));
  return y;
}

}  // namespace noisyevo
