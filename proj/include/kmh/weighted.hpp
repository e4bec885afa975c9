#pragma once

// Finite-dimensional F[Y⁺]-modules given by commuting matrices: the criterion for extending
// the action to F[Y], the extension itself and the generalized weight decomposition.

#include "kmh/linalg.hpp"
#include "kmh/weyl.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmh {

struct MonoidGenerator {
  IVec lambda;  ///< element of Y⁺
  QMat matrix;  ///< ρ(λ)
};

/** \brief A representation of the additive monoid generated by finitely many λ ∈ Y⁺. */
class FiniteMonoidModule {
 public:
  /// Throws NonCommutingGenerators (naming the pair) or InvalidDatum on shape errors.
  FiniteMonoidModule(std::vector<MonoidGenerator> gens, std::size_t dim);

  const std::vector<MonoidGenerator>& generators() const { return gens_; }
  std::size_t dim() const { return dim_; }
  int rankY() const { return rankY_; }

  /// ρ(Σ c_i λ_i) = ∏ ρ(λ_i)^{c_i} for nonnegative multiplicities c.
  QMat monoid_matrix(const std::vector<int>& c) const;

  /// Checks every generator against the bounded Tits-cone test; returns the offending
  /// generators (empty when all are certified inside).
  std::vector<std::size_t> generators_outside_tits_cone(WeylGroup& W, int maxIter) const;

  nlohmann::json to_json() const;
  static FiniteMonoidModule from_json(const nlohmann::json& doc);

 private:
  std::vector<MonoidGenerator> gens_;
  std::size_t dim_;
  int rankY_ = 0;
};

struct ExtendabilityReport {
  bool extendable = true;
  std::optional<IVec> witness;   ///< a generator λ with ρ(λ) singular
  std::optional<QVec> kernel;    ///< x ≠ 0 with ρ(λ)x = 0
};

/// Invertibility of the generator matrices; this certifies extendability for the submonoid
/// the generators span, not for every λ ∈ Y⁺ outside it.
ExtendabilityReport extendable(const FiniteMonoidModule& m);

/// A decomposition μ = Σ c_i λ_i − Σ d_i λ_i with c, d ≥ 0.
struct MonoidDecomposition {
  std::vector<int> plus, minus;
};

/// All decompositions of μ with Σ c_i + Σ d_i ≤ reach (in a fixed enumeration order).
std::vector<MonoidDecomposition> decompositions(const FiniteMonoidModule& m, const IVec& mu,
                                                int reach);

/// ρ(μ) = ρ(μ₊)ρ(μ₋)⁻¹ for the first decomposition found; throws NotExtendable or ReachExceeded.
QMat extend(const FiniteMonoidModule& m, const IVec& mu, int reach = 8);
/// The same for a prescribed decomposition.
QMat extend_with(const FiniteMonoidModule& m, const MonoidDecomposition& d);

struct GenWeightSpace {
  std::vector<Q> values;   ///< τ(λ_i) on the generators
  std::vector<QVec> basis;  ///< M(τ, gen)
};

/// Simultaneous generalized eigenspaces; throws UnsplitSpectrum if some characteristic
/// polynomial does not split over ℚ.
std::vector<GenWeightSpace> gen_weight_decomposition(const FiniteMonoidModule& m);

/// Characteristic polynomial det(x − A), coefficients from x⁰ upwards.
std::vector<Q> characteristic_polynomial(const QMat& a);
/// Rational roots of a polynomial (coefficients from x⁰ upwards), with multiplicity.
std::vector<Q> rational_roots(const std::vector<Q>& poly);

}  // namespace kmh
