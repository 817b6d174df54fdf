#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subnormal/bigint.hpp"

namespace subnormal {

// Largest supported rank: one lowercase ASCII letter per generator.
inline constexpr int kMaxRank = 26;

// A signed generator x_g^{+1} or x_g^{-1}, stored as 2*g + (sign < 0).
// Inversion is a flip of the low bit; the natural order of codes is
// x < X < y < Y < z < Z < ...
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign)
      : code_(static_cast<std::uint8_t>(2 * generator + (sign < 0 ? 1 : 0))) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = static_cast<std::uint8_t>(code);
    return l;
  }

  constexpr int code() const { return code_; }
  constexpr int generator() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1) ? -1 : 1; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }
  constexpr bool is_x() const { return code_ < 2; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

// The distinguished generator x (index 0) and the second generator y.
inline constexpr Letter kX{0, 1};
inline constexpr Letter kXInv{0, -1};
inline constexpr Letter kY{1, 1};
inline constexpr Letter kYInv{1, -1};

// Character used for a generator in the text format: x, y, z, a, b, ...
char generator_char(int generator);

// An immutable word over the alphabet X^{+-1}. The `reduced` flag certifies
// that no two adjacent letters are mutually inverse; it is only ever set by
// code that has checked or established that fact.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  // Parses the text format. Lowercase letters are generators ('x' = 0,
  // 'y' = 1, 'z' = 2, then 'a', 'b', ...), uppercase letters are inverses,
  // and whitespace is ignored. Throws InvalidGenerator for characters
  // outside the rank.
  static Word parse(std::string_view text, int rank);

  static Word reduced_from(std::vector<Letter> letters);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_reduced() const { return reduced_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word prefix(std::size_t n) const;
  Word suffix_from(std::size_t n) const;
  Word inverse() const;

  // Largest generator index used, or -1 for the empty word.
  int max_generator() const;

  std::string str() const;

  friend Word operator*(const Word& a, const Word& b);
  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  auto operator<=>(const Word& other) const { return letters_ <=> other.letters_; }

 private:
  std::vector<Letter> letters_;
  bool reduced_ = true;
};

// Free reduction. The result carries the reduced certificate.
Word reduce(const Word& w);
Word reduce(std::span<const Letter> letters);

// Free reduction of the concatenation a*b.
Word reduce_product(const Word& a, const Word& b);

bool is_reduced(std::span<const Letter> letters);

// Total signed count of occurrences of the generator. Throws
// InvalidGenerator when generator >= rank.
long exponent_sum(const Word& w, int generator, int rank);
long exponent_sum(std::span<const Letter> letters, int generator);

// Strips matching inverse first/last letters until none remain.
Word cyclically_reduce(const Word& w);

// True iff the reduced word is a power of the single letter x or X.
bool is_x_power(std::span<const Letter> letters);

// 1 for n = 0, otherwise 2m(2m-1)^{n-1}.
BigInt count_reduced(int n, int rank);

// Visits every reduced word of length exactly n over rank generators, in
// lexicographic order with respect to x < X < y < Y < ...
//
// `accept_prefix(prefix)` is asked before a prefix is extended; returning
// false prunes the whole subtree. `visit(word)` receives each word of length
// n whose prefixes were all accepted.
template <typename Visit, typename Accept>
void enumerate_reduced(int rank, int n, Visit&& visit, Accept&& accept_prefix) {
  std::vector<Letter> word;
  word.reserve(static_cast<std::size_t>(n));
  const int alphabet = 2 * rank;
  auto recurse = [&](auto& self) -> void {
    if (static_cast<int>(word.size()) == n) {
      visit(std::span<const Letter>(word));
      return;
    }
    if (!accept_prefix(std::span<const Letter>(word))) return;
    for (int code = 0; code < alphabet; ++code) {
      const Letter a = Letter::from_code(code);
      if (!word.empty() && word.back() == a.inverse()) continue;
      word.push_back(a);
      self(self);
      word.pop_back();
    }
  };
  recurse(recurse);
}

template <typename Visit>
void enumerate_reduced(int rank, int n, Visit&& visit) {
  enumerate_reduced(rank, n, std::forward<Visit>(visit),
                    [](std::span<const Letter>) { return true; });
}

}  // namespace subnormal
