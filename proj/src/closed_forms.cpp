#include "subnormal/closed_forms.hpp"

#include <sstream>

#include "subnormal/error.hpp"

namespace subnormal {

SyllableProfile profile_of(const Word& w) {
  if (w.max_generator() > 1) throw DomainError("word must be over x and y");
  if (!w.is_reduced()) throw DomainError("word must be reduced");
  SyllableProfile p;
  const auto letters = w.letters();
  for (std::size_t i = 0; i < letters.size();) {
    const Letter a = letters[i];
    std::size_t j = i;
    while (j < letters.size() && letters[j].generator() == a.generator()) ++j;
    const int len = static_cast<int>(j - i);
    if (a.is_x()) {
      ++p.sx;
      p.n1 += len;
      if (a.sign() > 0) {
        ++p.s_plus;
        p.n_x += len;
      } else {
        p.n_X += len;
      }
    } else {
      ++p.s;
      p.n2 += len;
      p.y_exponents.push_back(a.sign() * len);
    }
    i = j;
  }
  if (p.s > 0) {
    const bool k0 = letters.front().is_x();
    const bool ks = letters.back().is_x();
    p.tag = !k0 && ks ? 'a' : (k0 && !ks ? 'b' : (!k0 ? 'c' : 'd'));
  }
  return p;
}

int x_syllables(int s, char tag) {
  switch (tag) {
    case 'a':
    case 'b':
      return s;
    case 'c':
      return s - 1;
    case 'd':
      return s + 1;
    default:
      throw InvalidInput(std::string("unknown case tag '") + tag + "'");
  }
}

BigInt count_words_fixed_profile(int n1, int n2, int s, char tag) {
  if (s < 1) throw InvalidInput("a profile needs s >= 1");
  if (n1 < 0 || n2 < 0) throw InvalidInput("letter counts must be >= 0");
  const int sx = x_syllables(s, tag);
  BigInt v = power(2, static_cast<unsigned long>(s + sx));
  return v * compositions(n1, sx) * compositions(n2, s);
}

bool fixed_profile_is_degenerate(int n1, int, int s, char tag) {
  return x_syllables(s, tag) == 0 && n1 == 0;
}

namespace {

void check_scheme(int s, int s_plus, int n_x, int n_X) {
  if (s < 0 || s_plus < 0 || s_plus > s || n_x < 0 || n_X < 0) {
    throw InvalidInput("invalid scheme parameters");
  }
}

}  // namespace

BigInt scheme_size(int s, int s_plus, int n_x, int n_X) {
  check_scheme(s, s_plus, n_x, n_X);
  return binomial(s, s_plus) * compositions(n_x, s_plus) * compositions(n_X, s - s_plus);
}

bool scheme_is_degenerate(int s, int s_plus, int n_x, int n_X) {
  check_scheme(s, s_plus, n_x, n_X);
  return (s_plus == 0 && n_x == 0) || (s == s_plus && n_X == 0);
}

BigInt lifted_scheme_size(int s, int s_plus, int n_x, int n_X, int t) {
  check_scheme(s, s_plus, n_x, n_X);
  if (t < 0) throw InvalidInput("t must be >= 0");
  return binomial(s + t, s_plus + t) * compositions(n_x, s_plus + t) *
         compositions(n_X, s - s_plus);
}

Rational scheme_ratio_product(int s, int s_plus, int n_x, int t) {
  if (t < 0) throw InvalidInput("t must be >= 0");
  Rational r = 1;
  for (int i = 1; i <= t; ++i) {
    const int d1 = s + i;
    const int d2 = n_x - s_plus - i + 1;
    if (d1 == 0 || d2 == 0) throw DomainError("vanishing denominator in the ratio product");
    r *= Rational(s_plus + i, d1);
    r *= Rational(s_plus + i - 1, d2);
  }
  r.canonicalize();
  return r;
}

ProfileOracle brute_profile_oracle(int n) {
  if (n < 0 || n > 10) throw DomainError("the profile oracle supports n in 0..10");
  ProfileOracle o;
  o.n = n;
  enumerate_reduced(2, n, [&](std::span<const Letter> letters) {
    const SyllableProfile p = profile_of(Word(std::vector<Letter>(letters.begin(), letters.end())));
    ++o.total;
    ++o.by_profile[{p.tag, p.n1, p.n2, p.s}];
    ++o.by_scheme[{p.tag, p.y_exponents, p.s_plus, p.n_x, p.n_X}];
  });
  return o;
}

std::vector<BigInt> case_a_mass_by_s(const ProfileOracle& oracle) {
  std::vector<BigInt> mass(static_cast<std::size_t>(oracle.n) + 1);
  for (const auto& [key, count] : oracle.by_profile) {
    if (std::get<0>(key) == 'a') mass[static_cast<std::size_t>(std::get<3>(key))] += count;
  }
  return mass;
}

namespace {

template <typename... Ts>
std::string cell_of(const Ts&... parts) {
  std::ostringstream os;
  bool first = true;
  ((os << (first ? "" : " ") << parts, first = false), ...);
  return os.str();
}

std::string exps_string(const std::vector<int>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

}  // namespace

std::vector<FormulaCheck> formulas_check(int nmax) {
  if (nmax < 1 || nmax > 10) throw DomainError("nmax must be in 1..10");
  std::vector<FormulaCheck> rows;
  for (int n = 1; n <= nmax; ++n) {
    const ProfileOracle o = brute_profile_oracle(n);
    auto lookup_profile = [&](char tag, int n1, int n2, int s) {
      auto it = o.by_profile.find({tag, n1, n2, s});
      return it == o.by_profile.end() ? BigInt(0) : it->second;
    };

    FormulaCheck total;
    total.equation = "partition";
    total.cell = cell_of("n=" + std::to_string(n));
    total.formula = count_reduced(n, 2).get_str();
    total.oracle = o.total.get_str();
    total.pass = o.total == count_reduced(n, 2);
    rows.push_back(total);

    // Fixed profiles, all four cases.
    for (char tag : {'a', 'b', 'c', 'd'}) {
      for (int n2 = 1; n2 <= n; ++n2) {
        const int n1 = n - n2;
        for (int s = 1; s <= n2; ++s) {
          FormulaCheck r;
          r.equation = "profile";
          r.cell = cell_of(std::string("case=") + tag, "n1=" + std::to_string(n1),
                           "n2=" + std::to_string(n2), "s=" + std::to_string(s));
          const BigInt f = count_words_fixed_profile(n1, n2, s, tag);
          const BigInt b = lookup_profile(tag, n1, n2, s);
          r.formula = f.get_str();
          r.oracle = b.get_str();
          r.pass = f == b;
          r.degenerate = fixed_profile_is_degenerate(n1, n2, s, tag);
          rows.push_back(r);
        }
      }
    }

    // Schemes: every y-syllable pattern that occurs, every sign split.
    std::map<std::pair<char, std::vector<int>>, bool> patterns;
    for (const auto& [key, count] : o.by_scheme) {
      if (std::get<0>(key) != '0') patterns[{std::get<0>(key), std::get<1>(key)}] = true;
    }
    for (const auto& [pattern, unused] : patterns) {
      const auto& [tag, exps] = pattern;
      int n2 = 0;
      for (int e : exps) n2 += e < 0 ? -e : e;
      const int s = static_cast<int>(exps.size());
      const int sx = x_syllables(s, tag);
      for (int n_x = 0; n_x <= n - n2; ++n_x) {
        const int n_X = n - n2 - n_x;
        for (int s_plus = 0; s_plus <= sx; ++s_plus) {
          auto it = o.by_scheme.find({tag, exps, s_plus, n_x, n_X});
          const BigInt b = it == o.by_scheme.end() ? BigInt(0) : it->second;
          const BigInt f = scheme_size(sx, s_plus, n_x, n_X);
          FormulaCheck r;
          r.equation = "scheme";
          r.cell = cell_of(std::string("case=") + tag, "l=" + exps_string(exps),
                           "s+=" + std::to_string(s_plus), "nx=" + std::to_string(n_x),
                           "nX=" + std::to_string(n_X));
          r.formula = f.get_str();
          r.oracle = b.get_str();
          r.pass = f == b;
          r.degenerate = scheme_is_degenerate(sx, s_plus, n_x, n_X);
          rows.push_back(r);
        }
      }
    }

    // Lifted schemes: a case-(a) scheme with s + t y-syllables, when such a
    // y-pattern fits into length n.
    for (int s = 1; s <= n; ++s) {
      for (int t = 0; s + t <= n; ++t) {
        for (int s_plus = 1; s_plus <= s; ++s_plus) {
          for (int n_x = 0; n_x <= n; ++n_x) {
            for (int n_X = 0; n_x + n_X <= n; ++n_X) {
              const int n2 = n - n_x - n_X;
              if (n2 < s + t) continue;
              // one fixed pattern: y^{n2-(s+t-1)} Y y Y ...
              std::vector<int> exps;
              for (int i = 0; i < s + t; ++i) exps.push_back(i % 2 ? -1 : 1);
              exps[0] = n2 - (s + t - 1);
              auto it = o.by_scheme.find({'a', exps, s_plus + t, n_x, n_X});
              const BigInt b = it == o.by_scheme.end() ? BigInt(0) : it->second;
              const BigInt f = lifted_scheme_size(s, s_plus, n_x, n_X, t);
              FormulaCheck r;
              r.equation = "lifted";
              r.cell = cell_of("s=" + std::to_string(s), "s+=" + std::to_string(s_plus),
                               "nx=" + std::to_string(n_x), "nX=" + std::to_string(n_X),
                               "t=" + std::to_string(t), "l=" + exps_string(exps));
              r.formula = f.get_str();
              r.oracle = b.get_str();
              r.pass = f == b;
              r.degenerate = scheme_is_degenerate(s + t, s_plus + t, n_x, n_X);
              rows.push_back(r);
            }
          }
        }
      }
    }
  }

  // Ratio identity on every tuple where both sides are defined.
  for (int s = 1; s <= nmax; ++s) {
    for (int s_plus = 1; s_plus <= s; ++s_plus) {
      for (int t = 0; t <= nmax; ++t) {
        for (int n_x = s_plus + t; n_x <= 2 * nmax; ++n_x) {
          const int n_X = s - s_plus;  // enough letters x^{-1} for every negative syllable
          const BigInt lifted = lifted_scheme_size(s, s_plus, n_x, n_X, t);
          if (lifted == 0) continue;
          Rational lhs(scheme_size(s, s_plus, n_x, n_X), lifted);
          lhs.canonicalize();
          const Rational rhs = scheme_ratio_product(s, s_plus, n_x, t);
          FormulaCheck r;
          r.equation = "ratio";
          r.cell = cell_of("s=" + std::to_string(s), "s+=" + std::to_string(s_plus),
                           "nx=" + std::to_string(n_x), "t=" + std::to_string(t));
          r.formula = fraction_string(rhs);
          r.oracle = fraction_string(lhs);
          r.pass = lhs == rhs;
          r.degenerate = scheme_is_degenerate(s, s_plus, n_x, n_X);
          rows.push_back(r);
        }
      }
    }
  }
  return rows;
}

}  // namespace subnormal
