#pragma once

// The Bernstein–Lusztig Hecke algebra ^BL H(T_F) and its distinguished elements.

#include "kmh/laurent.hpp"
#include "kmh/weyl.hpp"

#include <map>

namespace kmh {

/** \brief Σ_w H_w * θ_w with coefficients stored to the right of H_w. */
struct HeckeElt {
  std::map<Elem, RatFn> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  RatFn coeff(Elem w) const;
  /// Adds H_w * θ.
  void add(Elem w, const RatFn& theta);
  /// Maximal length of the support (−1 for zero).
  int reach(const WeylGroup& W) const;
};

enum class HFMembership { In, Not, Inconclusive };
std::string to_string(HFMembership m);

/** \brief Arithmetic in ^BL H(T_F) for one root datum.
 *
 * Products use H_s*H_s = (σ_s − σ_s⁻¹)H_s + 1, H_yH_s = H_{ys} when ys > y, and
 * θ*H_s = H_s*^sθ + Q_s(θ − ^sθ). F_w, F'_w are cached per element.
 */
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(WeylGroup& W);

  WeylGroup& group() const { return W_; }
  const RootDatum& datum() const { return W_.datum(); }
  int dim() const { return W_.dim(); }

  HeckeElt one() const;
  HeckeElt H(Elem w) const;
  /// H_1 * θ (θ viewed as an element of the algebra).
  HeckeElt theta(const RatFn& t) const;
  HeckeElt Zlambda(const IVec& lambda) const { return theta(RatFn::monomial(lambda)); }

  HeckeElt add(const HeckeElt& a, const HeckeElt& b) const;
  HeckeElt sub(const HeckeElt& a, const HeckeElt& b) const;
  /// h * θ (right scalar multiplication by an element of F(Y)).
  HeckeElt right_scale(const HeckeElt& h, const RatFn& t) const;
  HeckeElt mul(const HeckeElt& a, const HeckeElt& b);
  bool equal(const HeckeElt& a, const HeckeElt& b) const;

  /// θ * H_w = Σ_{v ≤ w} H_v R_v, computed fraction-free by geometric series.
  std::map<Elem, LaurentPoly> commute_past(const LaurentPoly& theta, Elem w);
  /// commute_past for a monomial Z^λ, memoised.
  const std::map<Elem, LaurentPoly>& commute_monomial_past(const IVec& lambda, Elem w);
  /// Z^λ * H_s for one letter via the closed forms (H_s coefficient, H_1 coefficient).
  std::pair<LaurentPoly, LaurentPoly> commute_monomial(const IVec& lambda, int s) const;

  /// Expansion of H_u * H_y in the basis (H_z).
  const std::map<Elem, Q>& basis_product(Elem u, Elem y);

  RatFn Q_s(int s) const;
  /// General-form Q_s = ((σ−σ⁻¹) + (σ'−σ'⁻¹)Z^{−α∨})/(1 − Z^{−2α∨}), unsimplified.
  RatFn Q_s_general(int s) const;
  RatFn zeta(int s) const;
  /// ζ_{β∨} = ^wζ_s for β∨ = w.α_s∨ (β∨ of either sign).
  RatFn zeta_coroot(const IVec& beta);
  /// Numerator / denominator split of ζ_{β∨} (equal parameters: 1 − σ²Z^{−β∨} over 1 − Z^{−β∨}).
  std::pair<LaurentPoly, LaurentPoly> zeta_split(const IVec& beta);

  HeckeElt B(int s) const;
  HeckeElt F_simple(int s) const;
  HeckeElt F_prime_simple(int s) const;

  /// F_w = F_{s_1}⋯F_{s_r} for the reduced word s_1⋯s_r; throws NotReduced.
  HeckeElt F_word(const Word& word);
  HeckeElt F(Elem w);
  /// F'_w (equal-parameter or right-angled data); throws UnsupportedParameters.
  HeckeElt F_prime_word(const Word& word);
  HeckeElt F_prime(Elem w);

  /// K_r = (F'_r − 1)·ζ_{α_r∨} for a reflection r. For a simple reflection this is
  /// F_s − ζ_s; in general it differs from F_r − ζ_{α_r∨} by the right factor
  /// ζ_{α_r∨}/∏_{γ∈N(r)} ζ_γ on F_r, which keeps it regular at every τ with
  /// N(r) ∩ Φ∨_(τ) = {α_r∨}. Needs F' (throws UnsupportedParameters) unless r is simple.
  HeckeElt K(Elem r);
  /// The unnormalised difference F_r − ζ_{α_r∨}.
  HeckeElt K_unnormalized(Elem r);
  HeckeElt K_underline(const std::vector<Elem>& reflections);

  /// Is the element in H_F (all exponents in Y⁺)? Throws NotPolynomial on fractions.
  HFMembership positive_part_check(const HeckeElt& h, int maxIter);

  /// Braid product Π(a, b, m) = a*b*a*… with m factors.
  HeckeElt braid_product(const HeckeElt& a, const HeckeElt& b, int m);

  std::string str(const HeckeElt& h) const;

  bool supports_F_prime() const;

 private:
  /// h * (H_s * a + b).
  HeckeElt right_mul_simple(const HeckeElt& h, int s, const RatFn& a, const RatFn& b);
  /// θ * H_x = Σ_y H_y ρ_y for a rational θ.
  std::map<Elem, RatFn> commute_rat(const RatFn& theta, Elem x);

  WeylGroup& W_;
  std::map<std::pair<Elem, Elem>, std::map<Elem, Q>> basis_cache_;
  std::map<std::pair<IVec, Elem>, std::map<Elem, LaurentPoly>> commute_cache_;
  std::map<Elem, HeckeElt> F_cache_, Fp_cache_;
  std::vector<RatFn> Q_, zeta_;
};

}  // namespace kmh
