#pragma once

// Characters in U_C: stabilisers W_τ ⊇ W_(τ), the R-group, the endomorphisms ψ and ψ',
// the K-basis of I_τ(τ, gen), the submodule ↔ right-ideal dictionary and the rank-2
// classification.

#include "kmh/principal_series.hpp"

#include <map>
#include <string>
#include <vector>

namespace kmh {

/// Everything is computed on ball(L); infinite groups are only seen through the ball.
struct StabilizerData {
  Character tau;
  int L = 0;
  Q sigma;
  std::vector<IVec> coroots;    ///< audited positive real coroots (W-translates from the ball)
  std::vector<IVec> PhiTau;     ///< audited positive coroots β∨ with τ(β∨) = 1
  std::vector<IVec> minusOne;   ///< audited positive coroots with τ(β∨) = −1
  std::vector<Elem> Wtau;       ///< {w ∈ ball : w.τ = τ}, ball order
  std::vector<Elem> STau;       ///< reflections r_β, β ∈ PhiTau, with N(r_β) ∩ PhiTau = {β}
  std::vector<Elem> Wparen;     ///< W_(τ) ∩ ball
  std::vector<Elem> RTau;       ///< R_τ ∩ ball
  std::vector<Elem> RGens;      ///< a generating set of R_τ ∩ ball (greedy, by length)
  std::map<Elem, Word> STauWord;  ///< fixed S_τ-reduced word (indices into STau) for Wparen
};

struct Rank2Case {
  int number = 0;  ///< 1…7
  std::string shape;
  bool ballRelative = false;  ///< infinite shapes are detected from growth, not certified
};

struct GenWeightVector {
  Elem w = 0;      ///< element of W_(τ)
  Elem wR = 0;     ///< element of R_τ
  QVec vec;        ///< K_{w̲}(τ)·ψ_{w_R}(v_τ)
};

struct EndRelation {
  Elem a = 0, b = 0, product = 0;  ///< ψ'_a ∘ ψ'_b = ψ'_{product} (product = b·a)
  bool holds = false;
};

/// An element Σ c_g ψ'_g of End(I_τ) with g ∈ R_τ.
using EndElt = std::map<Elem, Q>;

struct IdealRoundTrip {
  std::string name;
  std::vector<EndElt> ideal;   ///< spanning set of the right ideal J
  std::vector<QVec> module;    ///< basis of J(I_τ) in the ball
  std::vector<EndElt> back;    ///< basis of J_{J(I_τ)}
  bool roundTrip = false;
};

struct ChainReport {
  Elem generator = 0;          ///< generator t of R_τ ≅ ℤ
  Q a;                         ///< the shift in ψ' + a
  std::vector<std::size_t> dims;  ///< dim of ((ψ'+a)^i End)(v_τ) ∩ window, i = 0…
  bool strictlyDecreasing = false;
};

class RGroupAnalysis {
 public:
  /// Throws UnsupportedParameters (unequal parameters) or NotInUC (naming the coroot).
  RGroupAnalysis(HeckeAlgebra& A, Character tau, int L);

  const StabilizerData& data() const { return data_; }
  HeckeAlgebra& algebra() const { return *A_; }
  WeylGroup& group() const { return A_->group(); }
  PSModule& module() { return module_; }

  bool in_Wtau(Elem w);
  bool in_PhiTau(const IVec& beta) const;
  /// w = w_R·u with w_R ∈ R_τ, u ∈ W_(τ), by stripping reflections of N(w) ∩ Φ∨_(τ) on the right.
  std::pair<Elem, Elem> decompose(Elem w);
  /// ℓ_τ(w) for w ∈ W_(τ) ∩ ball (length of the fixed S_τ-word).
  int tau_length(Elem w) const;

  /// Rank-2 classification into the seven shapes; throws Ambiguous.
  Rank2Case classify_rank2();

  /// F_{w_R}(τ)v_τ and F'_{w_R}(τ)v_τ (numeric recursion, symbolic fallback).
  QVec psi_vector(Elem wR);
  QVec psi_prime_vector(Elem wR);
  PSOperator psi(Elem wR);
  PSOperator psi_prime(Elem wR);

  /// ψ'_a∘ψ'_b against ψ'_{ba} on v_τ for all pairs in R_τ ∩ ball with ℓ(a) + ℓ(b) ≤ L.
  std::vector<EndRelation> end_table();

  /// K_{w̲}(τ)ψ_{w_R}(v_τ) for w ∈ W_(τ), w_R ∈ R_τ with ℓ(w·w_R) ≤ bound.
  std::vector<GenWeightVector> gen_weight_basis(int bound);
  /// True when every pair with ℓ(w·w_R) ≤ bound is guaranteed to be enumerated.
  bool gen_weight_basis_complete(int bound) const;
  /// K_r(τ)v_τ for r ∈ S_τ.
  QVec K_vector(Elem r);

  /// J ↦ J(I_τ): span of φ(H_u v_τ) over a basis of J and ℓ(u) ≤ L − reach(J).
  std::vector<QVec> ideal_to_module(const std::vector<EndElt>& J);
  /// M ↦ J_M = {φ ∈ span ψ'_{R_τ∩ball} : φ(v_τ) ∈ M}.
  std::vector<EndElt> module_to_ideal(const std::vector<QVec>& M);
  /// The four ideals of ℚ[ℤ/2] pushed through the dictionary (requires R_τ ≅ ℤ/2).
  std::vector<IdealRoundTrip> z2_dictionary();
  /// Images (ψ' ± 1)(span ball(L − 1)) for R_τ = {1, r}.
  std::pair<std::vector<QVec>, std::vector<QVec>> z2_images();

  /// Nested images of (ψ'_t + a)^i inside the weight-τ window (requires R_τ ≅ ℤ).
  ChainReport z_chain(const Q& a, int steps);

  /// |W_(τ) ∩ ball|, number of characters w.τ in the ball, product; `stable` when the
  /// orbit count does not change between ball(L − 2) and ball(L).
  struct IrrDims {
    std::size_t paren = 0, cosets = 0, product = 0;
    bool stable = false;
  };
  IrrDims irr_dimension_report();

  std::string json_report();

 private:
  HeckeAlgebra* A_;
  StabilizerData data_;
  PSModule module_;
  std::map<Elem, int> tau_len_;
  std::map<Elem, QVec> psi_cache_, psi_prime_cache_;

  void audit();
  void build_paren_words();
};

}  // namespace kmh
