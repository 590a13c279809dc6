#pragma once

// Braid monodromy of pseudo-trees and the abelianized fundamental group of
// the complement of the ramification locus.

#include <cstdlib>
#include <string>
#include <vector>

#include "ribbonlattice/exact_algebra.hpp"
#include "ribbonlattice/pseudotree.hpp"

namespace rl {

// Letters +-1, +-2 stand for sigma_1^{+-1}, sigma_2^{+-1}; the leftmost
// letter is applied last.
using BraidWord = std::vector<int>;
// Letters +-1, +-2, +-3 stand for alpha_j^{+-1}.
using FreeWord = std::vector<int>;

inline std::string braid_to_string(const BraidWord& w) {
  std::string s;
  for (int l : w) s += (s.empty() ? "" : " ") + std::string(l < 0 ? "-" : "") + "s" + std::to_string(std::abs(l));
  return s.empty() ? "1" : s;
}

inline BraidWord braid_power(int gen, int e) {
  return BraidWord(std::abs(e), e < 0 ? -gen : gen);
}

inline BraidWord concat(std::initializer_list<BraidWord> parts) {
  BraidWord w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

struct BraidData {
  std::vector<BraidWord> words;  // m_1 .. m_{k+1}
  std::vector<int> n;            // suffix sums of the vertex distances
  int epsilon = 0;
  int infinity_exponent = 0;     // k + t
};

inline BraidData braid_words(const PseudoTree& pt, Series series) {
  BraidData d;
  d.n = suffix_sums(leaf_distances(pt));
  d.epsilon = series_all_A(series) ? 0 : 1;
  for (int ni : d.n) d.words.push_back(concat({braid_power(1, ni), {2}, braid_power(1, -ni)}));
  BraidWord last{2};
  for (int i = 0; i < 3 * d.epsilon; ++i) last = concat({last, {1, 2}});
  d.words.push_back(last);
  auto o = orientation_for_series(pt, series);
  auto fs = fiber_types(pt.skeleton, o);
  d.infinity_exponent = fs.k + fs.t;
  return d;
}

inline FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

inline FreeWord free_inverse(const FreeWord& w) {
  FreeWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

// Image of alpha_j under the Artin automorphism of one letter:
// sigma_1: a1 -> a1 a2 a1^-1, a2 -> a1; sigma_2: a2 -> a2 a3 a2^-1, a3 -> a2.
inline FreeWord artin_generator_image(int letter, int j) {
  const int i = std::abs(letter);
  if (j != i && j != i + 1) return {j};
  if (letter > 0) return j == i ? FreeWord{i, i + 1, -i} : FreeWord{i};
  // inverse: a_i -> a_{i+1}, a_{i+1} -> a_{i+1}^-1 a_i a_{i+1}
  return j == i ? FreeWord{i + 1} : FreeWord{-(i + 1), i, i + 1};
}

inline FreeWord substitute(const FreeWord& w, int letter) {
  FreeWord out;
  for (int l : w) {
    FreeWord img = artin_generator_image(letter, std::abs(l));
    if (l < 0) img = free_inverse(img);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(out);
}

// beta(alpha_j) for beta = g_1 ... g_r, acting as g_1 o ... o g_r.
inline FreeWord artin_action(const BraidWord& beta, int j) {
  FreeWord w{j};
  for (auto it = beta.rbegin(); it != beta.rend(); ++it) w = substitute(w, *it);
  return w;
}

// Exponent-sum matrix of relators over `gens` generators, then SNF.
inline AbelianGroup abelianize(const std::vector<FreeWord>& relators, int gens) {
  IntMatrix M(relators.size(), gens);
  for (std::size_t r = 0; r < relators.size(); ++r)
    for (int l : relators[r]) M(r, std::abs(l) - 1) += l > 0 ? 1 : -1;
  return cokernel_invariants(M);
}

inline std::vector<FreeWord> braid_relators(const std::vector<BraidWord>& words, int exponent) {
  std::vector<FreeWord> rel;
  for (const auto& m : words)
    for (int j = 1; j <= 3; ++j) {
      FreeWord r = artin_action(m, j);
      r.push_back(-j);
      rel.push_back(free_reduce(r));
    }
  FreeWord inf;
  for (int e = 0; e < std::abs(exponent); ++e)
    for (int j = 1; j <= 3; ++j) inf.push_back(exponent > 0 ? j : -j);
  rel.push_back(inf);
  return rel;
}

inline AbelianGroup pi1_abelianization(const std::vector<BraidWord>& words, int exponent) {
  return abelianize(braid_relators(words, exponent), 3);
}

// Second route: a braid acts on the abelianization Z^3 by the permutation
// of its image in S_3.
inline AbelianGroup pi1_abelianization_by_permutations(const std::vector<BraidWord>& words,
                                                       int exponent) {
  std::vector<std::vector<Int>> rows;
  for (const auto& m : words) {
    std::array<int, 3> p{0, 1, 2};
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      int i = std::abs(*it) - 1;
      for (int& x : p)
        if (x == i) x = i + 1;
        else if (x == i + 1) x = i;
    }
    for (int j = 0; j < 3; ++j) {
      std::vector<Int> r(3);
      r[p[j]] += 1;
      r[j] -= 1;
      rows.push_back(r);
    }
  }
  rows.push_back({exponent, exponent, exponent});
  IntMatrix M(rows.size(), 3);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = rows[i][j];
  return cokernel_invariants(M);
}

// Abelianization of B_3 / (sigma_1 sigma_2)^3 from its presentation.
inline AbelianGroup reference_b3_quotient() {
  std::vector<FreeWord> rel{{1, 2, 1, -2, -1, -2}, {1, 2, 1, 2, 1, 2}};
  return abelianize(rel, 2);
}

}  // namespace rl
