#pragma once

// Kac–Moody matrices and root data (matrix, lattice Y, pairing, coroots, Hecke parameters).

#include "kmh/core.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace kmh {

/** \brief One failed axiom of a Kac–Moody matrix. */
struct MatrixViolation {
  int row = 0, col = 0;  ///< 1-based cell
  std::string condition; ///< "(i)", "(ii)" or "(iii)"
  std::string message;
};

/** \brief Result of validating a Kac–Moody matrix. */
struct MatrixReport {
  std::vector<MatrixViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks a_ii = 2, a_ij <= 0 off the diagonal and a_ij = 0 <=> a_ji = 0. Total.
MatrixReport validate(const IMat& a);

/** \brief A root generating system together with Hecke parameters.
 *
 * Y ≅ Z^d with a fixed basis (y_j). pairing[i][j] = α_i(y_j); coroots[i] holds the
 * coordinates of α_i∨. sigma/sigmaPrime are indexed by the simple reflection.
 */
struct RootDatum {
  std::string name;
  IMat A;
  int rankY = 0;
  IMat pairing;
  IMat coroots;
  std::vector<Q> sigma;
  std::vector<Q> sigmaPrime;

  int rank() const { return static_cast<int>(A.size()); }

  /// α_i(λ) for λ in Y-coordinates.
  long alpha(int i, const IVec& lambda) const;

  /// All parameters equal: σ_s = σ'_s = σ for every s.
  bool equal_parameters() const;

  /// The common σ when equal_parameters(); throws UnsupportedParameters otherwise.
  Q common_sigma() const;

  /// Gcd of α_s(Y) (so α_s(Y) = gcd·Z).
  long alpha_image_gcd(int s) const;

  /// Returns a list of problems; empty means the datum is consistent.
  std::vector<std::string> check() const;

  /// Rank over Q of the coroot coordinate matrix.
  std::size_t rank_of_coroots() const;

  /// Throws InvalidDatum when check() is non-empty.
  void require_valid() const;

  /// Replaces every σ_s, σ'_s by the given value.
  RootDatum with_sigma(const Q& s) const;
};

RootDatum datum_from_json(const nlohmann::json& doc);
nlohmann::json datum_to_json(const RootDatum& d);

}  // namespace kmh
