#pragma once

// The group algebra of the infinite dihedral group D_∞ = ⟨s, t | s² = t² = 1⟩: products,
// degree, the evaluation morphisms ev_(a,b) and the two ideal lemmas used for rank 2.

#include "kmh/core.hpp"
#include "kmh/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

namespace kmh {

/** \brief A reduced word of D_∞, encoded as a signed length.
 *
 * 0 is the empty word, +k the alternating word STS… of length k and −k the word TST… .
 */
using DWord = int;

inline int dword_length(DWord w) { return std::abs(w); }

/// Product of two reduced words (concatenate, then cancel SS and TT).
inline DWord dword_mul(DWord x, DWord y) {
  int m = std::abs(x), n = std::abs(y);
  if (m == 0) return y;
  if (n == 0) return x;
  bool xs = x > 0, ys = y > 0;               // first letter is S
  bool last_s = (m % 2 == 1) ? xs : !xs;     // last letter of x is S
  if (last_s != ys) return xs ? m + n : -(m + n);
  if (m > n) return xs ? m - n : -(m - n);
  if (n > m) {
    bool first_s = (m % 2 == 0) ? ys : !ys;
    return first_s ? n - m : -(n - m);
  }
  return 0;
}

inline std::string dword_string(DWord w) {
  if (w == 0) return "1";
  std::string s;
  bool cur = w > 0;
  for (int i = 0; i < std::abs(w); ++i, cur = !cur) s += cur ? 'S' : 'T';
  return s;
}

/// Parses an alternating word over {S, T}; "1" or "" is the unit. Throws ParseError.
inline DWord parse_dword(const std::string& text) {
  if (text.empty() || text == "1") return 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'S' && text[i] != 'T') throw ParseError("bad letter in D_inf word '" + text + "'");
    if (i > 0 && text[i] == text[i - 1])
      throw ParseError("D_inf word '" + text + "' is not alternating");
  }
  int n = static_cast<int>(text.size());
  return text[0] == 'S' ? n : -n;
}

/// Π(a, b, m) for a, b ∈ {S, T}: the alternating word with m letters starting at a.
inline DWord dword_pi(bool startS, int m) { return startS ? m : -m; }

/** \brief Element of K[D_∞] for a coefficient ring K (ℚ by default). */
template <class K>
class DInfElement {
 public:
  using Terms = std::map<DWord, K>;

  DInfElement() = default;
  static DInfElement word(DWord w, const K& c = K(1)) {
    DInfElement e;
    e.add(w, c);
    return e;
  }
  static DInfElement unit(const K& c = K(1)) { return word(0, c); }
  static DInfElement S() { return word(1); }
  static DInfElement T() { return word(-1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  K coeff(DWord w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add(DWord w, const K& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Longest word length with a nonzero coefficient; −1 for zero.
  int deg() const {
    int d = -1;
    for (const auto& [w, c] : terms_) d = std::max(d, std::abs(w));
    return d;
  }

  bool is_scalar() const { return deg() <= 0; }

  friend DInfElement operator+(const DInfElement& a, const DInfElement& b) {
    DInfElement r = a;
    for (const auto& [w, c] : b.terms_) r.add(w, c);
    return r;
  }
  friend DInfElement operator-(const DInfElement& a, const DInfElement& b) {
    DInfElement r = a;
    for (const auto& [w, c] : b.terms_) r.add(w, -c);
    return r;
  }
  friend DInfElement operator*(const DInfElement& a, const DInfElement& b) {
    DInfElement r;
    for (const auto& [x, c] : a.terms_)
      for (const auto& [y, d] : b.terms_) r.add(dword_mul(x, y), c * d);
    return r;
  }
  friend DInfElement operator*(const K& k, const DInfElement& a) {
    DInfElement r;
    for (const auto& [w, c] : a.terms_) r.add(w, k * c);
    return r;
  }
  friend bool operator==(const DInfElement& a, const DInfElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DInfElement& a, const DInfElement& b) { return !(a == b); }

  /// The algebra morphism S ↦ a, T ↦ b.
  K ev(const K& a, const K& b) const {
    K r(0);
    for (const auto& [w, c] : terms_) {
      K p(1);
      bool cur = w > 0;
      for (int i = 0; i < std::abs(w); ++i, cur = !cur) p *= cur ? a : b;
      r += c * p;
    }
    return r;
  }

  /// Text form "c·[word] + …" in (length, S-first) order; "0" for zero.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::vector<DWord> ws;
    for (const auto& [w, c] : terms_) ws.push_back(w);
    std::sort(ws.begin(), ws.end(), [](DWord a, DWord b) {
      return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a > b;
    });
    std::string s;
    for (DWord w : ws) {
      if (!s.empty()) s += " + ";
      s += coeff_string(terms_.at(w)) + "·[" + dword_string(w) + "]";
    }
    return s;
  }

 private:
  Terms terms_;

  static std::string coeff_string(const K& c) {
    if constexpr (std::is_same_v<K, Q>) return to_string(c);
    else return std::to_string(c);
  }
};

using DInfElt = DInfElement<Q>;

/// Parses "c·[word] + c·[word] …" ('*' is accepted for '·'; a missing coefficient is 1).
inline DInfElt parse_dinf(const std::string& text) {
  DInfElt r;
  std::string t;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "·") == 0) {
      t += '*';
      ++i;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      t += text[i];
    }
  }
  if (t == "0") return r;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t open = t.find('[', pos), close = t.find(']', pos);
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ParseError("expected c·[word] in '" + text + "'");
    std::string c = t.substr(pos, open - pos);
    if (!c.empty() && c.back() == '*') c.pop_back();
    if (!c.empty() && c.front() == '+') c.erase(0, 1);
    Q coef = c.empty() ? Q(1) : c == "-" ? Q(-1) : parse_rational(c);
    r.add(parse_dword(t.substr(open + 1, close - open - 1)), coef);
    pos = close + 1;
  }
  return r;
}

/// The element 1 − a(ST − TS).
template <class K>
DInfElement<K> non_two_sided_generator(const K& a) {
  DInfElement<K> p = DInfElement<K>::unit();
  p.add(2, -a);
  p.add(-2, a);
  return p;
}

struct DegreeGrowthReport {
  std::size_t checked = 0;
  bool holds = true;
  std::optional<std::string> counterexample;  ///< Q with deg(P·Q) ≠ deg Q + 2
};

/** \brief deg(P·Q) = deg Q + 2 for P = 1 − a(ST − TS) and every nonconstant Q of degree ≤
 * maxDeg with coefficients in {−1, 0, 1} (the 2·maxDeg + 1 words, 3^(2·maxDeg+1) choices).
 * Integer coefficients keep the sweep exact and fast; `a` must be a nonzero integer.
 */
inline DegreeGrowthReport degree_growth_sweep(long a, int maxDeg) {
  DegreeGrowthReport rep;
  std::vector<DWord> words{0};
  for (int k = 1; k <= maxDeg; ++k) {
    words.push_back(k);
    words.push_back(-k);
  }
  const std::size_t n = words.size();
  std::vector<int> digits(n, -1);
  // P·Q = Q − a·ST·Q + a·TS·Q, accumulated term by term.
  for (bool more = true; more;) {
    int dq = -1;
    for (std::size_t k = 0; k < n; ++k)
      if (digits[k] != 0) dq = std::max(dq, dword_length(words[k]));
    if (dq > 0) {
      std::map<DWord, long> pq;
      for (std::size_t k = 0; k < n; ++k) {
        if (digits[k] == 0) continue;
        long c = digits[k];
        pq[words[k]] += c;
        pq[dword_mul(2, words[k])] -= a * c;
        pq[dword_mul(-2, words[k])] += a * c;
      }
      int d = -1;
      for (const auto& [w, c] : pq)
        if (c != 0) d = std::max(d, dword_length(w));
      ++rep.checked;
      if (d != dq + 2 && rep.holds) {
        rep.holds = false;
        DInfElement<long> q;
        for (std::size_t k = 0; k < n; ++k) q.add(words[k], digits[k]);
        rep.counterexample = q.str();
      }
    }
    // Odometer step over {−1, 0, 1}^n.
    std::size_t i = 0;
    while (i < n && digits[i] == 1) digits[i++] = -1;
    if (i == n) more = false;
    else ++digits[i];
  }
  return rep;
}

struct QuotientSpanReport {
  int n = 0;                    ///< deg P
  std::size_t spanningBound = 0;  ///< |A_n| = 2n + 1
  bool stabilized = false;      ///< every word of length ≤ checkedLength rewrote into A_n
  int checkedLength = 0;
  std::size_t quotientDim = 0;  ///< dim A_n / (relations u·P·v rewritten into A_n)
  bool dimStable = false;       ///< quotientDim unchanged between the last two windows
};

/** \brief Rewriting certificate that ℚ[D_∞]/(P) is spanned by A_n = span{words of length ≤ n}.
 *
 * The two words of length n + 1 are rewritten into A_n using a multiple S·P, T·P, P·S or P·T
 * whose only length-(n+1) word is the target; longer words are rewritten letter by letter.
 * The dimension estimate reduces the relations u·P·v (ℓ(u) + ℓ(v) ≤ window) into A_n and
 * takes the codimension of their span.
 */
inline QuotientSpanReport quotient_span_bound(const DInfElt& P, int extraLength = 6, int window = 6) {
  QuotientSpanReport rep;
  int n = P.deg();
  if (n <= 0) throw InvalidDatum("quotient_span_bound needs a non-scalar P");
  rep.n = n;
  rep.spanningBound = static_cast<std::size_t>(2 * n + 1);
  const DInfElt S = DInfElt::S(), T = DInfElt::T();
  std::map<DWord, DInfElt> rules;
  for (DWord target : {n + 1, -(n + 1)}) {
    for (const DInfElt& cand : {S * P, T * P, P * S, P * T}) {
      if (cand.deg() != n + 1 || cand.coeff(-target) != 0 || cand.coeff(target) == 0) continue;
      Q c = cand.coeff(target);
      DInfElt r = DInfElt::word(target) - (Q(1) / c) * cand;
      rules[target] = r;
      break;
    }
  }
  std::map<DWord, DInfElt> memo;
  // Rewrites a single word into A_n (nullopt when no rule applies).
  std::function<std::optional<DInfElt>(DWord)> reduce_word = [&](DWord w) -> std::optional<DInfElt> {
    if (std::abs(w) <= n) return DInfElt::word(w);
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    DInfElt out;
    if (std::abs(w) == n + 1) {
      auto r = rules.find(w);
      if (r == rules.end()) return std::nullopt;
      out = r->second;
    } else {
      // w = L·w' with L its first letter and w' of length ℓ(w) − 1.
      bool startS = w > 0;
      DWord rest = dword_pi(!startS, std::abs(w) - 1);
      auto tail = reduce_word(rest);
      if (!tail) return std::nullopt;
      DInfElt lifted = (startS ? S : T) * *tail;
      for (const auto& [v, c] : lifted.terms()) {
        auto rv = reduce_word(v);
        if (!rv) return std::nullopt;
        out = out + c * *rv;
      }
    }
    memo[w] = out;
    return out;
  };
  auto reduce = [&](const DInfElt& x) -> std::optional<DInfElt> {
    DInfElt out;
    for (const auto& [w, c] : x.terms()) {
      auto r = reduce_word(w);
      if (!r) return std::nullopt;
      out = out + c * *r;
    }
    return out;
  };
  rep.checkedLength = n + 1 + extraLength;
  rep.stabilized = true;
  for (int m = n + 1; m <= rep.checkedLength && rep.stabilized; ++m)
    for (DWord w : {m, -m})
      if (!reduce_word(w)) rep.stabilized = false;
  if (!rep.stabilized) return rep;

  auto coords = [&](const DInfElt& x) {
    QVec v(rep.spanningBound, Q(0));
    for (const auto& [w, c] : x.terms()) v[static_cast<std::size_t>(w + n)] = c;
    return v;
  };
  auto dim_for = [&](int win) {
    std::vector<DWord> us{0};
    for (int k = 1; k <= win; ++k) {
      us.push_back(k);
      us.push_back(-k);
    }
    std::vector<QVec> rel;
    for (DWord u : us)
      for (DWord v : us) {
        if (std::abs(u) + std::abs(v) > win) continue;
        auto r = reduce(DInfElt::word(u) * P * DInfElt::word(v));
        if (r) rel.push_back(coords(*r));
      }
    return rep.spanningBound - span_basis(rel, rep.spanningBound).size();
  };
  std::size_t prev = dim_for(window - 1);
  rep.quotientDim = dim_for(window);
  rep.dimStable = prev == rep.quotientDim;
  return rep;
}

}  // namespace kmh
