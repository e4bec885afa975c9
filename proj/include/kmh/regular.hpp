#pragma once

// Regular characters: the graphs of morphisms and isomorphisms between the I_{w.τ},
// the semi-distance, the submodules M_{w,τ} and their weight sets.

#include "kmh/principal_series.hpp"

#include <set>
#include <string>
#include <vector>

namespace kmh {

/// Weight sets are sets of w ∈ W, standing for the characters w.τ (a bijection for regular τ).
using WeightSet = std::set<Elem>;

struct TauEdge {
  Elem lower = 0, upper = 0;  ///< upper = s·lower, ℓ(upper) = ℓ(lower) + 1
  int letter = 0;
  bool iso = false;
  /// ζ_s(lower.τ) and ζ_s(upper.τ); an isomorphism iff both are nonzero.
  Q zeta_lower, zeta_upper;
};

struct TauGraph {
  Character tau;
  int L = 0;
  std::vector<Elem> vertices;  ///< ball(L), vertex w labels I_{w.τ}
  std::vector<TauEdge> edges;  ///< unordered pairs {w, sw} inside the ball
};

struct PathRecord {
  std::vector<Elem> vertices;
  std::vector<int> letters;  ///< vertices[i+1] = s_{letters[i]}·vertices[i]
  int non_iso = 0;           ///< ℓ_≄ of the path
};

struct SubmoduleDescriptor {
  Elem generator = 0;  ///< M_{generator,τ} = A_{generator,1,τ}(I_{generator.τ})
  WeightSet weights;
};

struct IrrReport {
  Elem w = 0;
  WeightSet weights;       ///< the iso-component of w inside the ball
  std::size_t dimension = 0;
  bool exact = false;      ///< false when the component may continue outside the ball
};

/** \brief Analysis of I_τ for a character τ that is regular on ball(L).
 *
 * The constructor scans the ball for elements fixing τ and for real coroots with
 * τ(β∨) = 1 (whose reflection would fix τ) and throws RegularityViolation naming the
 * first offender. Edge flags are evaluated from ζ on demand, so paths may leave the ball.
 */
class RegularAnalysis {
 public:
  RegularAnalysis(HeckeAlgebra& A, Character tau, int L);

  HeckeAlgebra& algebra() const { return *A_; }
  WeylGroup& group() const { return A_->group(); }
  const TauGraph& graph() const { return graph_; }
  const Character& tau() const { return graph_.tau; }
  int L() const { return graph_.L; }

  /// Iso flag of the edge {w, sw} (cached; valid outside the ball as well).
  bool edge_iso(Elem w, int s);
  /// The path w → s_r w → … following a word applied on the left, last letter first.
  PathRecord path(Elem w, const Word& leftWord);
  /// d(w, w2): ℓ_≄ along the path given by the lex-first reduced word of w2·w⁻¹.
  int semi_distance(Elem w, Elem w2);
  /// ℓ_≄ along every reduced word of w2·w⁻¹ (for path-independence checks).
  std::vector<int> semi_distance_all_paths(Elem w, Elem w2);

  /// Connected components of the iso graph restricted to the ball.
  std::vector<WeightSet> iso_components();
  /// True when no iso edge leaves the component through the sphere of radius L.
  bool component_closed(const WeightSet& comp);

  /// Wt(M_{w,τ}) ∩ ball by intersecting the image weights of the non-iso edges of a
  /// reduced path from w down to 1.
  SubmoduleDescriptor submodule_weights(Elem w);
  /// Literal computation: weights uw (ℓ(u) ≤ L) with A_{w,1,τ}(F_u(w.τ)v_{w.τ}) ≠ 0.
  /// Exact when the ball is the whole (finite) group; otherwise products leaving the
  /// ball raise OutOfBall and those u are skipped (listed in `skipped`).
  WeightSet literal_image_weights(Elem w, std::vector<Elem>* skipped = nullptr);
  /// The composed operator A_Γ : I_{w.τ} → I_τ along the lex-first reduced path.
  PSOperator path_operator(Elem w);

  IrrReport irr_report(Elem w);

  /// Maximal elements (by weight inclusion) of {M_{w,τ} : w ∈ W_M}; throws
  /// NotASubmoduleWeightSet unless W_M is a union of such sets.
  std::vector<SubmoduleDescriptor> decompose_submodule(const WeightSet& WM);
  /// All distinct nonzero submodule weight sets (unions of the Wt(M_{w,τ})) in the ball.
  std::vector<WeightSet> all_submodule_weight_sets(std::size_t cap = 4096);

  std::string dot();
  std::string json_report();

  OrbitModules& orbit() { return orbit_; }

 private:
  HeckeAlgebra* A_;
  TauGraph graph_;
  OrbitModules orbit_;
  std::map<std::pair<Elem, int>, bool> iso_cache_;
  std::map<Elem, WeightSet> sub_cache_;
  std::vector<WeightSet> components_;
  bool have_components_ = false;

  std::pair<Q, Q> edge_zetas(Elem w, int s);
};

/// Renders a weight set as "{1, s1, s2s1}" (reduced words, sorted by length then word).
std::string weight_set_string(WeylGroup& W, const WeightSet& s);

}  // namespace kmh
