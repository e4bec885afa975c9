#pragma once

// Exact Laurent polynomials in F[Y], fractions in F(Y), characters τ and evaluation at τ.

#include "kmh/core.hpp"

#include <map>
#include <optional>
#include <string>

namespace kmh {

class WeylGroup;

/** \brief Sparse Laurent polynomial Σ a_λ Z^λ with λ ∈ Y ≅ Z^d. No zero coefficients stored. */
class LaurentPoly {
 public:
  using Terms = std::map<IVec, Q>;

  LaurentPoly() = default;
  static LaurentPoly constant(int d, const Q& c);
  static LaurentPoly monomial(const IVec& lambda, const Q& c = Q(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Single term c·Z^λ (a unit of F[Y]).
  bool is_monomial() const { return terms_.size() == 1; }
  Q coeff(const IVec& lambda) const;

  void add_term(const IVec& lambda, const Q& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Q& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Q& c) { return a *= c; }
  friend LaurentPoly operator*(const Q& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ < b.terms_; }

  /// Multiplies by Z^μ.
  LaurentPoly shifted(const IVec& mu) const;
  /// Exponent-wise action of an integer matrix: Z^λ ↦ Z^{Mλ}.
  LaurentPoly transformed(const IMat& m) const;

  /// Exact quotient by a binomial 1 + c·Z^μ, if it divides.
  std::optional<LaurentPoly> divide_binomial(const IVec& mu, const Q& c) const;

  /// Canonical text: terms sorted by exponent, "c*Z^[a,b]".
  std::string str() const;

 private:
  Terms terms_;
};

/** \brief Element of F(Y): a numerator over a multiset of normalised denominator factors.
 *
 * Each factor is normalised so that its lexicographically smallest exponent is 0 with
 * coefficient 1; the unit c·Z^λ split off during normalisation moves to the numerator.
 * Sums use the least common multiple of the factor multisets. No multivariate gcd is
 * computed; the only cancellation performed is exact division by binomial factors
 * 1 + c·Z^μ and removal of a numerator that equals a factor up to a unit.
 */
class RatFn {
 public:
  using Den = std::map<LaurentPoly, int>;

  RatFn() = default;
  RatFn(LaurentPoly num);  // NOLINT: polynomials embed into F(Y)
  /// num/den stored without any cancellation (den must be nonzero).
  static RatFn fraction(const LaurentPoly& num, const LaurentPoly& den);
  static RatFn constant(int d, const Q& c) { return RatFn(LaurentPoly::constant(d, c)); }
  static RatFn monomial(const IVec& lambda, const Q& c = Q(1)) {
    return RatFn(LaurentPoly::monomial(lambda, c));
  }

  const LaurentPoly& num() const { return num_; }
  const Den& den_factors() const { return den_; }
  /// Product of the denominator factors.
  LaurentPoly den() const;
  bool is_zero() const { return num_.is_zero(); }
  /// True if the denominator is trivial (an element of F[Y]).
  bool is_polynomial() const { return den_.empty(); }

  RatFn operator-() const;
  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b);
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator/(const RatFn& a, const RatFn& b);
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  /// Equality in F(Y), tested by cross-multiplication.
  friend bool operator==(const RatFn& a, const RatFn& b);
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  RatFn inverse() const;
  RatFn transformed(const IMat& m) const;

  std::string str() const;

 private:
  static RatFn combine(const RatFn& a, const RatFn& b, bool subtract);
  void absorb_factor(const LaurentPoly& p, int mult);
  void cancel();

  LaurentPoly num_;
  Den den_;
};

/** \brief A character τ : Y → F*, given by its values on the Y-basis. */
struct Character {
  std::vector<Q> values;

  Character() = default;
  explicit Character(std::vector<Q> v);
  Q operator()(const IVec& lambda) const;
  friend bool operator==(const Character& a, const Character& b) { return a.values == b.values; }
  friend bool operator<(const Character& a, const Character& b) { return a.values < b.values; }
  std::string str() const;
};

Character parse_character(const std::string& text);

/// Shared RNG used when a caller does not supply one; reseeded by the CLI.
Rng& default_rng();
void seed_default_rng(std::uint64_t seed);

struct EvalOptions {
  int attempts = 3;
  long bound = 20;
  bool force_curve = false;  ///< use the generic-curve limit even if den(τ) ≠ 0
  Rng* rng = nullptr;        ///< defaults to default_rng()
};

Q eval_poly(const Character& tau, const LaurentPoly& p);

/// θ(τ), passing to the limit along random curves when den(τ) = 0.
Q eval_ratfn(const Character& tau, const RatFn& theta, const EvalOptions& opt = {});
/// As eval_ratfn but returns nullopt instead of throwing NotInLocalization.
std::optional<Q> try_eval_ratfn(const Character& tau, const RatFn& theta,
                                const EvalOptions& opt = {});

/// ^wθ.
RatFn w_act(WeylGroup& W, int w, const RatFn& theta);
/// (w.τ)(λ) = τ(w⁻¹.λ).
Character char_apply(WeylGroup& W, int w, const Character& tau);

}  // namespace kmh
