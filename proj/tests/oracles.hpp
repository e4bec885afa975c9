#pragma once

// Brute-force reference implementations shared by the unit tests. They only use the raw
// root datum (matrices, pairings) and never call the library's Weyl-group algorithms.

#include "kmh/presets.hpp"
#include "kmh/weyl.hpp"

#include <map>
#include <set>
#include <vector>

namespace oracle {

using kmh::IMat;
using kmh::IVec;
using kmh::Word;

inline IMat mul(const IMat& a, const IMat& b) {
  IMat r(a.size(), IVec(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline IVec apply(const IMat& a, const IVec& v) {
  IVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

inline IMat identity(int d) {
  IMat m(d, IVec(d, 0));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

/// r_i(v) = v − α_i(v)·α_i∨ written as a matrix on Y-coordinates.
inline IMat reflection(const kmh::RootDatum& D, int i) {
  IMat m = identity(D.rankY);
  for (int row = 0; row < D.rankY; ++row)
    for (int col = 0; col < D.rankY; ++col) m[row][col] -= D.coroots[i][row] * D.pairing[i][col];
  return m;
}

inline IMat word_matrix(const kmh::RootDatum& D, const Word& w) {
  IMat m = identity(D.rankY);
  for (int s : w) m = mul(m, reflection(D, s));
  return m;
}

/// Every word of length ≤ maxLen, with its matrix.
inline std::vector<std::pair<Word, IMat>> all_words(const kmh::RootDatum& D, int maxLen) {
  std::vector<std::pair<Word, IMat>> layer{{{}, identity(D.rankY)}}, out = layer;
  for (int k = 1; k <= maxLen; ++k) {
    std::vector<std::pair<Word, IMat>> next;
    for (const auto& [w, m] : layer)
      for (int s = 0; s < D.rank(); ++s) {
        Word w2 = w;
        w2.push_back(s);
        next.emplace_back(w2, mul(m, reflection(D, s)));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Length of each group element reachable by words of length ≤ maxLen (first occurrence).
inline std::map<IMat, int> lengths(const kmh::RootDatum& D, int maxLen) {
  std::map<IMat, int> len;
  for (const auto& [w, m] : all_words(D, maxLen)) len.emplace(m, static_cast<int>(w.size()));
  return len;
}

/// Coordinates in the simple-coroot basis (coroots are free, so a least-squares-free solve
/// by Cramer's rule on a nonsingular minor is enough for rank ≤ 3).
inline std::vector<long> coroot_coords(const kmh::RootDatum& D, const IVec& v) {
  const int n = D.rank();
  // Choose n rows of the rankY × n coroot matrix with nonzero determinant.
  std::vector<int> rows;
  auto det2 = [&](int r0, int r1) {
    return D.coroots[0][r0] * D.coroots[1][r1] - D.coroots[1][r0] * D.coroots[0][r1];
  };
  if (n == 1) {
    for (int r = 0; r < D.rankY; ++r)
      if (D.coroots[0][r] != 0) return {v[r] / D.coroots[0][r]};
  }
  for (int r0 = 0; r0 < D.rankY; ++r0)
    for (int r1 = r0 + 1; r1 < D.rankY; ++r1)
      if (det2(r0, r1) != 0) {
        long d = det2(r0, r1);
        long x = (v[r0] * D.coroots[1][r1] - v[r1] * D.coroots[1][r0]) / d;
        long y = (D.coroots[0][r0] * v[r1] - D.coroots[0][r1] * v[r0]) / d;
        return {x, y};
      }
  return {};
}

/// Sign of a real coroot from its coordinates (only rank-2 data are used here).
inline int sign(const kmh::RootDatum& D, const IVec& v) {
  auto c = coroot_coords(D, v);
  bool pos = false, neg = false;
  for (long x : c) {
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  return pos && !neg ? 1 : (neg && !pos ? -1 : 0);
}

/// Positive real coroots u.α_s∨ over all words u of length ≤ maxLen.
inline std::set<IVec> positive_coroots(const kmh::RootDatum& D, int maxLen) {
  std::set<IVec> out;
  for (const auto& [w, m] : all_words(D, maxLen))
    for (int s = 0; s < D.rank(); ++s) {
      IVec b = apply(m, D.coroots[s]);
      if (sign(D, b) > 0) out.insert(b);
    }
  return out;
}

/// Every word of length ℓ whose product is `target`.
inline std::set<Word> words_of(const kmh::RootDatum& D, const IMat& target, int len) {
  std::set<Word> out;
  for (const auto& [w, m] : all_words(D, len))
    if (static_cast<int>(w.size()) == len && m == target) out.insert(w);
  return out;
}

/// Bruhat order by the subword property over one reduced word of w.
inline std::set<IMat> subword_products(const kmh::RootDatum& D, const Word& reduced) {
  std::set<IMat> out;
  for (unsigned mask = 0; mask < (1u << reduced.size()); ++mask) {
    IMat x = identity(D.rankY);
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (mask & (1u << i)) x = mul(x, reflection(D, reduced[i]));
    out.insert(x);
  }
  return out;
}

}  // namespace oracle
