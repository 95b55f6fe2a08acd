#include "ccount/exact_sum.hpp"

#include <bit>
#include <cmath>

#include "ccount/error.hpp"

namespace ccount {

void ExactSum::add_word(std::size_t w, std::uint64_t v) {
  if (v == 0) return;
  const std::uint64_t old = words_[w];
  words_[w] = old + v;
  bool carry = words_[w] < old;
  for (++w; carry && w < kWords; ++w) {
    carry = ++words_[w] == 0;
  }
}

void ExactSum::sub_word(std::size_t w, std::uint64_t v) {
  if (v == 0) return;
  const std::uint64_t old = words_[w];
  words_[w] = old - v;
  bool borrow = old < v;
  for (++w; borrow && w < kWords; ++w) {
    borrow = words_[w]-- == 0;
  }
}

void ExactSum::add(double v) {
  if (!std::isfinite(v)) {
    throw UpdateError("non-finite value cannot be accumulated");
  }
  if (v == 0.0) return;
  const auto bits = std::bit_cast<std::uint64_t>(v);
  const bool negative = (bits >> 63) != 0;
  const auto biased = static_cast<int>((bits >> 52) & 0x7FF);
  std::uint64_t mant = bits & ((std::uint64_t{1} << 52) - 1);
  if (biased != 0) mant |= std::uint64_t{1} << 52;
  // value = mant * 2^(max(biased,1) - 1075); position relative to 2^-1074.
  const int pos = (biased == 0 ? 1 : biased) - 1;
  const auto w = static_cast<std::size_t>(pos / 64);
  const int sh = pos % 64;
  const std::uint64_t lo = mant << sh;
  const std::uint64_t hi = sh == 0 ? 0 : mant >> (64 - sh);
  if (negative) {
    sub_word(w, lo);
    sub_word(w + 1, hi);
  } else {
    add_word(w, lo);
    add_word(w + 1, hi);
  }
}

void ExactSum::add_product(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) {
    throw UpdateError("projected increment overflows");
  }
  add(p);
  add(std::fma(a, b, -p));
}

void ExactSum::add(const ExactSum& other) {
  bool carry = false;
  for (std::size_t w = 0; w < kWords; ++w) {
    const std::uint64_t a = words_[w];
    const std::uint64_t s = a + other.words_[w];
    const bool c1 = s < a;
    words_[w] = s + (carry ? 1 : 0);
    const bool c2 = carry && words_[w] == 0;
    carry = c1 || c2;
  }
}

bool ExactSum::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

double ExactSum::value() const {
  auto mag = words_;
  const bool negative = (mag[kWords - 1] >> 63) != 0;
  if (negative) {
    bool carry = true;
    for (auto& w : mag) {
      w = ~w;
      if (carry) {
        ++w;
        carry = w == 0;
      }
    }
  }
  int top = -1;
  for (int w = static_cast<int>(kWords) - 1; w >= 0; --w) {
    if (mag[w] != 0) {
      top = w;
      break;
    }
  }
  if (top < 0) return 0.0;
  const int p = top * 64 + 63 - std::countl_zero(mag[top]);
  double out = 0.0;
  if (p <= 52) {
    out = std::ldexp(static_cast<double>(mag[0]), -1074);
  } else {
    // 64-bit window holding bits [p-63, p], plus a sticky bit for the rest.
    std::uint64_t window = 0;
    bool sticky = false;
    const int start = p - 63;
    if (start < 0) {
      window = mag[0] << (-start);
    } else {
      const auto w0 = static_cast<std::size_t>(start / 64);
      const int s = start % 64;
      window = mag[w0] >> s;
      if (s != 0 && w0 + 1 < kWords) window |= mag[w0 + 1] << (64 - s);
      sticky = s != 0 && (mag[w0] & ((std::uint64_t{1} << s) - 1)) != 0;
      for (std::size_t i = 0; i < w0 && !sticky; ++i) sticky = mag[i] != 0;
    }
    std::uint64_t keep = window >> 11;
    const std::uint64_t rem = window & 0x7FF;
    if (rem > 0x400 || (rem == 0x400 && (sticky || (keep & 1) != 0))) ++keep;
    out = std::ldexp(static_cast<double>(keep), p - 52 - 1074);
  }
  return negative ? -out : out;
}

}  // namespace ccount
