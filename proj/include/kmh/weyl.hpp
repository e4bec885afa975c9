#pragma once

// The Weyl group of a root datum, realised faithfully as integer matrices acting on Y.

#include "kmh/linalg.hpp"
#include "kmh/rootdatum.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>

namespace kmh {

/// Handle of an interned Weyl group element; 0 is always the identity.
using Elem = int;

/// Verdict of the bounded Tits-cone test.
enum class TitsVerdict { Inside, OutsideFixedHyperplanes, Inconclusive };

struct TitsResult {
  TitsVerdict verdict = TitsVerdict::Inconclusive;
  int steps = 0;
  IVec straightened;  ///< last iterate
};

std::string to_string(TitsVerdict v);

/** \brief The Weyl group W^v of a root datum.
 *
 * Elements are interned by their matrix on Y (faithful because the simple coroots are
 * free); words, lengths and inverses are derived data cached per element. Lookups and
 * interning are guarded by a mutex, so a WeylGroup may be shared between threads.
 */
class WeylGroup {
 public:
  explicit WeylGroup(RootDatum datum);

  const RootDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank(); }
  int dim() const { return datum_.rankY; }

  Elem identity() const { return 0; }
  Elem simple(int s) const { return simple_[s]; }

  /// Interns a matrix; throws InvalidDatum if it is not in the group generated by S.
  Elem from_matrix(const IMat& m);
  Elem from_word(const Word& w);

  Elem mul(Elem a, Elem b);
  Elem lmul(int s, Elem w);  ///< s·w
  Elem rmul(Elem w, int s);  ///< w·s
  Elem inverse(Elem w);

  IMat matrix(Elem w) const;
  int length(Elem w) const;
  /// Lexicographically smallest reduced word (greedy smallest left descent).
  Word reduced_word(Elem w) const;
  std::string name(Elem w) const { return word_to_string(reduced_word(w)); }

  IVec apply(Elem w, const IVec& lambda) const;

  bool is_left_descent(int s, Elem w);
  bool is_right_descent(Elem w, int s);

  /// Coordinates of a vector of Y in the basis of simple coroots, if it lies in their span.
  std::optional<QVec> coroot_coords(const IVec& v) const;
  /// +1 / −1 for a nonzero vector with coroot coordinates of one sign; throws NotARealCoroot otherwise.
  int coroot_sign(const IVec& v) const;
  bool is_positive_coroot(const IVec& v) const { return coroot_sign(v) > 0; }

  /// N_{Φ∨}(w) = {β∨ > 0 : w.β∨ < 0}, computed from the reduced word.
  std::vector<IVec> inversion_coroots(Elem w);

  bool bruhat_leq(Elem u, Elem w);
  std::set<Word> all_reduced_words(Elem w);

  /// Positive coroot of a reflection; throws NotAReflection.
  IVec reflection_coroot(Elem r);
  /// Reflection of a positive real coroot; throws NotARealCoroot.
  Elem coroot_reflection(const IVec& beta);
  /// (w, t) with β∨ = w.α_t∨, for a real coroot of either sign.
  std::pair<Elem, int> coroot_origin(const IVec& beta);
  /// The root β with r_β(x) = x − β(x)β∨, as a row of pairings on the Y-basis.
  IVec root_of_coroot(const IVec& beta);

  /// Elements of length ≤ L sorted by (length, reduced word).
  std::vector<Elem> ball(int L);

  /// Order of s·t (0 when it exceeds `cap`, i.e. treated as infinite).
  int coxeter_m(int s, int t, int cap = 8);

  /// True if W is exhausted by a breadth-first search of at most `cap` elements.
  bool is_finite(std::size_t cap = 5000);

  TitsResult tits_cone_contains(const IVec& lambda, int maxIter);

  std::size_t interned() const;

 private:
  struct Rec {
    IMat mat;
    int len = 0;
    Word word;
    Elem inv = -1;
    std::vector<Elem> left, right;
  };
  struct MatHash {
    std::size_t operator()(const IMat& m) const;
  };

  Elem intern_unlocked(const IMat& m);
  Elem lookup_or_add_unlocked(IMat m, int len, Word word);
  int left_descent_unlocked(const IMat& m) const;
  IMat inverse_matrix(const IMat& m) const;
  bool bruhat_unlocked(Elem u, Elem w);
  Elem lmul_unlocked(int s, Elem w);
  Elem rmul_unlocked(Elem w, int s);
  Elem mul_unlocked(Elem a, Elem b);
  Elem inverse_unlocked(Elem w);

  RootDatum datum_;
  std::vector<IMat> simple_mats_;
  std::vector<Elem> simple_;
  QMat coroot_pivot_inv_;
  std::vector<std::size_t> coroot_pivots_;

  mutable std::recursive_mutex mu_;
  std::deque<Rec> recs_;
  std::unordered_map<IMat, Elem, MatHash> index_;
  std::map<std::pair<Elem, Elem>, bool> bruhat_cache_;
  std::vector<Elem> ball_cache_;
  int ball_cache_L_ = -1;
  std::optional<bool> finite_;
};

/// Simple reflection matrix r_i(v) = v − α_i(v)α_i∨ on Y-coordinates.
IMat simple_reflection_matrix(const RootDatum& d, int i);

IMat imat_mul(const IMat& a, const IMat& b);
IVec imat_vec(const IMat& a, const IVec& v);
IMat imat_identity(int n);

}  // namespace kmh
