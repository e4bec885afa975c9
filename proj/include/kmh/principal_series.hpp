#pragma once

// Truncated principal series I_τ on a length ball, weight spaces and Frobenius operators.

#include "kmh/hecke.hpp"
#include "kmh/linalg.hpp"

#include <map>
#include <memory>
#include <optional>

namespace kmh {

/** \brief I_τ truncated to span{H_w v_τ : ℓ(w) ≤ L}.
 *
 * The basis is ball(L) sorted by (length, reduced word); vectors are dense QVec in that
 * order. Since Z^λ*H_w only involves H_v with v ≤ w, the F[Y]-action is exact on the
 * truncation. Hecke actions that would leave the ball throw OutOfBall.
 */
class PSModule {
 public:
  PSModule(HeckeAlgebra& A, Character tau, int L);

  HeckeAlgebra& algebra() const { return *A_; }
  WeylGroup& group() const { return A_->group(); }
  const Character& tau() const { return tau_; }
  int L() const { return L_; }
  const std::vector<Elem>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  /// Position of w in the basis, or −1.
  int index(Elem w) const;
  Elem element(std::size_t i) const { return basis_[i]; }

  QVec zero() const { return QVec(size(), Q(0)); }
  QVec v_tau() const { return unit(0); }
  QVec unit(Elem w) const;

  /// Matrix of Z^λ on the truncation (column i = image of H_{basis[i]} v_τ).
  const QMat& Z_matrix(const IVec& lambda);
  QVec act_Z(const IVec& lambda, const QVec& x);
  /// H_u·x.
  QVec act_basis(Elem u, const QVec& x);
  /// h·x for h with Laurent-polynomial coefficients.
  QVec act_H(const HeckeElt& h, const QVec& x);
  /// h·x for a weight vector x of weight τ': coefficients are evaluated at τ'.
  QVec act_on_weight_vector(const HeckeElt& h, const QVec& x, const Character& weight,
                            const EvalOptions& opt = {});

  bool is_weight_vector(const QVec& x, const Character& weight);

  /// Basis of I_τ(τ') ∩ span(ball(supportBound)).
  std::vector<QVec> weight_space(const Character& weight, int supportBound);
  /// Vectors killed by every product of k factors (Z^{y_j} − τ'(y_j)), supported in ball(supportBound).
  std::vector<QVec> gen_weight_space(const Character& weight, int k, int supportBound);
  /// The stable generalized weight space (k → ∞ within the truncation).
  std::vector<QVec> gen_weight_space(const Character& weight, int supportBound);

  /// F_w(τ)v_τ from the symbolic F_w; throws NotInLocalization.
  QVec F_at_tau(Elem w, const EvalOptions& opt = {});
  /// F_w(τ)v_τ by the recursion F_{s w'} = F_s F_{w'} with scalar ζ_s(w'.τ); nullopt on a pole.
  std::optional<QVec> F_at_tau_recursive(Elem w);
  /// F'_w(τ)v_τ by the same recursion with each factor divided by its ζ-value;
  /// nullopt on a pole or a vanishing ζ.
  std::optional<QVec> F_prime_at_tau_recursive(Elem w);

  /// Maximal elements of the support under the Bruhat order.
  std::vector<Elem> max_support(const QVec& x);
  int support_length(const QVec& x) const;

  std::string vector_json(const QVec& x) const;

 private:
  std::optional<QVec> recursive_F(Elem w, bool normalized);

  HeckeAlgebra* A_;
  Character tau_;
  int L_;
  std::vector<Elem> basis_;
  std::map<Elem, int> pos_;
  std::map<IVec, QMat> zcache_;
};

/** \brief Υ_x : I_{source} → target module, H_w v_{source} ↦ H_w·x. */
struct PSOperator {
  PSModule* target = nullptr;
  Character source;
  QVec x;
  int reach = 0;

  /// Applies to a vector of I_{source} written in the same ball basis; throws OutOfBall.
  QVec apply(const QVec& y) const;
  bool is_zero() const { return kmh::is_zero(x); }
};

/// Υ_x for a weight vector x ∈ M(τ'); throws NotAWeightVector.
PSOperator frobenius_op(PSModule& target, const QVec& x, const Character& weight);

/// Υ_x ∘ Υ_y = Υ_{Υ_x(y)} (y lives in the source module of Υ_x).
PSOperator compose(const PSOperator& outer, const PSOperator& inner);

/// Edge intertwiner A_{w,sw,τ} : I_{w.τ} → I_{sw.τ} and its isomorphism flag.
struct EdgeIntertwiner {
  Elem from = 0, to = 0;
  int letter = 0;
  bool iso = false;
  PSOperator op;
  /// The two ζ-values at w.τ (nullopt when undefined).
  std::optional<Q> zeta_value, twisted_zeta_value;
};

/** \brief Caches one PSModule per character in the orbit W.τ (same datum and L). */
class OrbitModules {
 public:
  OrbitModules(HeckeAlgebra& A, Character tau, int L) : A_(&A), tau_(std::move(tau)), L_(L) {}
  PSModule& module_for(Elem w);  ///< I_{w.τ}
  PSModule& module_for(const Character& c);
  const Character& tau() const { return tau_; }
  Character character(Elem w);
  int L() const { return L_; }
  HeckeAlgebra& algebra() const { return *A_; }

 private:
  std::optional<QVec> recursive_F(Elem w, bool normalized);

  HeckeAlgebra* A_;
  Character tau_;
  int L_;
  std::map<Character, std::unique_ptr<PSModule>> mods_;
};

EdgeIntertwiner edge_intertwiner(OrbitModules& orbit, Elem w, int s);

}  // namespace kmh
