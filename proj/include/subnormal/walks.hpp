#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "subnormal/bigint.hpp"
#include "subnormal/word.hpp"

namespace subnormal {

// Walk model: a uniform reduced word over x, y read as a walk on Z^2
// (x = horizontal step, y = vertical step). The observed 1-D walk records
// the height after every y-letter; its jumps Y are i.i.d. with
//   P(Y = 1) = 2/3,  P(Y = -d) = 2^d / 3^{d+2} for d >= 0.

// #U_n: reduced words of length n over x, y with every prefix sigma_y >= 0.
BigInt count_U(int n);
std::vector<BigInt> count_U_table(int nmax);

// P_n = #U_n / #W_n.
Rational prob_U(int n);

struct JumpLaw {
  int depth = 0;
  // Index i holds P(Y = 1 - i), i = 0..depth+1, i.e. k = 1, 0, -1, ..., -depth.
  std::vector<Rational> closed_form;
  std::vector<Rational> excursion_dp;
  Rational transition_same;     // p11 = p22
  Rational transition_switch;   // p12 = p21
  Rational mass;                // sum of the listed probabilities
  Rational mass_tail;           // exact sum over k < -depth
  Rational mean;                // sum of k P(Y = k) over the listed k
  Rational mean_tail;           // exact sum of |k| P(Y = k) over k < -depth
  Rational second_moment;       // sum of k^2 P(Y = k) over the listed k
};

// Computes the law to depth K by the closed form and by an absorbing-chain
// analysis of the letter process; throws Mismatch if the two disagree
// anywhere or if mass + mass_tail != 1 or mean - mean_tail != 0.
JumpLaw jump_law_exact(int depth);

Rational jump_probability(int k);

// p_m = P(z_1 > 0, ..., z_m > 0) for z_0 = 0 and i.i.d. jumps Y, m = 1..mmax.
std::vector<Rational> positive_walk_prob(int mmax);

inline constexpr int kZeroCountCap = 200;

// Smallest integer c with c^3 >= m^2, i.e. ceil(m^{2/3}).
int zero_threshold(int m);

// q_m = P(a simple +-1 walk of m steps is at 0 after at least
// zero_threshold(m) of its steps). Throws DomainError above the cap.
Rational zero_count_tail(int m, int cap = kZeroCountCap);

// count[k] is the number of words of length n over the 2m letters whose free
// reduction is a fixed reduced word of length k; the value is checked to be
// the same for every reduced word of that length (throws Mismatch
// otherwise).
struct ClassCounts {
  int n = 0;
  int rank = 2;
  std::vector<BigInt> count;          // k = 0..n
  std::vector<std::size_t> classes;   // number of reduced words checked per k
};
ClassCounts reduced_form_class_counts(int n, int rank);

// Uniform reduced words by the Markov scheme: first letter uniform over the
// 2m letters, then uniform over the 2m - 1 letters that do not cancel.
// Draws come from std::mt19937_64 and an unbiased rejection step, so streams
// are identical on every platform.
class WalkSampler {
 public:
  explicit WalkSampler(std::uint64_t seed, int rank = 2);
  Word sample(int n);
  // Uniform integer in [0, bound).
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  int rank_;
};

Word sample_correlated_walk(int n, std::uint64_t seed, int rank = 2);

}  // namespace subnormal
