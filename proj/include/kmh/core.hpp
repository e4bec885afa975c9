#pragma once

// Scalars, error types and small helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmh {

/// Exact rational scalar.
using Q = mpq_class;

/// Integer vector (Y-coordinates, exponents, coroot coordinates).
using IVec = std::vector<long>;

/// Dense integer matrix, row-major.
using IMat = std::vector<IVec>;

/// Word over the simple reflections, letters are indices 0..n-1.
using Word = std::vector<int>;

/// Single source of randomness; every consumer takes one by reference.
using Rng = std::mt19937_64;

/** \brief Base class of all library errors. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define KMH_DEFINE_ERROR(Name)             \
  struct Name : Error {                    \
    using Error::Error;                    \
  }

KMH_DEFINE_ERROR(ParseError);
KMH_DEFINE_ERROR(InvalidDatum);
KMH_DEFINE_ERROR(NotAReflection);
KMH_DEFINE_ERROR(NotARealCoroot);
KMH_DEFINE_ERROR(NotReduced);
KMH_DEFINE_ERROR(ZeroDenominator);
KMH_DEFINE_ERROR(NotInLocalization);
KMH_DEFINE_ERROR(UnsupportedParameters);
KMH_DEFINE_ERROR(NotPolynomial);
KMH_DEFINE_ERROR(OutOfBall);
KMH_DEFINE_ERROR(NotAWeightVector);
KMH_DEFINE_ERROR(RegularityViolation);
KMH_DEFINE_ERROR(NotASubmoduleWeightSet);
KMH_DEFINE_ERROR(NotInUC);
KMH_DEFINE_ERROR(Ambiguous);
KMH_DEFINE_ERROR(ReachExceeded);
KMH_DEFINE_ERROR(NotExtendable);
KMH_DEFINE_ERROR(NonCommutingGenerators);
KMH_DEFINE_ERROR(UnsplitSpectrum);

#undef KMH_DEFINE_ERROR

/// Parses "p/q", "p" or a decimal-free integer string into a rational.
Q parse_rational(const std::string& text);

/// Canonical text of a rational ("3/2", "-1").
std::string to_string(const Q& q);

/// Integer power of a nonzero rational (negative exponents allowed).
Q qpow(const Q& base, long exponent);

/// Word rendered as "s1s2s1" (1-based letters), "1" for the empty word.
std::string word_to_string(const Word& w);

/// Inverse of word_to_string; accepts "1", "", "s1s2", "1,2" and "[1,2]".
Word parse_word(const std::string& text);

}  // namespace kmh
