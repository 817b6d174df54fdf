#include "subnormal/word.hpp"

#include <cctype>

#include "subnormal/error.hpp"

namespace subnormal {

namespace {

constexpr std::string_view kGeneratorChars = "xyzabcdefghijklmnopqrstuvw";

int generator_of(char c) {
  const auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto pos = kGeneratorChars.find(lower);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

}  // namespace

char generator_char(int generator) {
  return kGeneratorChars.at(static_cast<std::size_t>(generator));
}

Word::Word(std::vector<Letter> letters)
    : letters_(std::move(letters)), reduced_(subnormal::is_reduced(letters_)) {}

Word Word::parse(std::string_view text, int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw InvalidGenerator("rank must be in 1.." + std::to_string(kMaxRank));
  }
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const int g = generator_of(c);
    if (g < 0 || g >= rank) {
      throw InvalidGenerator(std::string("letter '") + c + "' is outside rank " +
                             std::to_string(rank));
    }
    letters.emplace_back(g, std::isupper(static_cast<unsigned char>(c)) ? -1 : 1);
  }
  return Word(std::move(letters));
}

Word Word::reduced_from(std::vector<Letter> letters) {
  return reduce(std::span<const Letter>(letters));
}

Word Word::prefix(std::size_t n) const {
  Word w;
  w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<long>(n));
  w.reduced_ = reduced_ || subnormal::is_reduced(w.letters_);
  return w;
}

Word Word::suffix_from(std::size_t n) const {
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<long>(n), letters_.end());
  w.reduced_ = reduced_ || subnormal::is_reduced(w.letters_);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(it->inverse());
  }
  w.reduced_ = reduced_;
  return w;
}

int Word::max_generator() const {
  int g = -1;
  for (Letter l : letters_) g = std::max(g, l.generator());
  return g;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) {
    const char c = generator_char(l.generator());
    s.push_back(l.sign() < 0 ? static_cast<char>(std::toupper(c)) : c);
  }
  return s;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> letters(a.letters_);
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(letters));
}

bool is_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == letters[i - 1].inverse()) return false;
  }
  return true;
}

Word reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word reduce(const Word& w) {
  if (w.is_reduced()) return w;
  return reduce(w.letters());
}

Word reduce_product(const Word& a, const Word& b) {
  return reduce((a * b).letters());
}

long exponent_sum(std::span<const Letter> letters, int generator) {
  long sum = 0;
  for (Letter l : letters) {
    if (l.generator() == generator) sum += l.sign();
  }
  return sum;
}

long exponent_sum(const Word& w, int generator, int rank) {
  if (generator < 0 || generator >= rank) {
    throw InvalidGenerator("generator " + std::to_string(generator) +
                           " is outside rank " + std::to_string(rank));
  }
  return exponent_sum(w.letters(), generator);
}

Word cyclically_reduce(const Word& w) {
  const Word r = reduce(w);
  const auto letters = r.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(letters.begin() + static_cast<long>(lo),
                                  letters.begin() + static_cast<long>(hi)));
}

bool is_x_power(std::span<const Letter> letters) {
  for (Letter l : letters) {
    if (l != letters.front() || !l.is_x()) return false;
  }
  return true;
}

BigInt count_reduced(int n, int rank) {
  if (n == 0) return 1;
  return BigInt(2 * rank) * power(2 * rank - 1, static_cast<unsigned long>(n - 1));
}

}  // namespace subnormal
