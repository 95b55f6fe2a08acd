#pragma once

#include <array>
#include <cstdint>

namespace ccount {

// Exact sum of finite doubles in a 2176-bit two's-complement fixed-point
// register (bit 0 weighs 2^-1074). Addition is associative and commutative,
// so the rounded value depends only on the multiset of addends.
class ExactSum {
 public:
  static constexpr std::size_t kWords = 34;

  ExactSum() = default;
  explicit ExactSum(double v) { add(v); }

  // Throws UpdateError on inf/nan.
  void add(double v);

  // Adds a*b exactly: fl(a*b) plus its FMA error term.
  void add_product(double a, double b);

  void add(const ExactSum& other);

  // Correctly rounded (nearest, ties to even) value of the sum.
  double value() const;

  bool is_zero() const;

  friend bool operator==(const ExactSum&, const ExactSum&) = default;

 private:
  void add_word(std::size_t w, std::uint64_t v);
  void sub_word(std::size_t w, std::uint64_t v);

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace ccount
