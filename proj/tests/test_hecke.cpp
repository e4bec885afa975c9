#include "kmh/hecke.hpp"
#include "kmh/presets.hpp"

#include <gtest/gtest.h>

using namespace kmh;

namespace {

LaurentPoly one_poly(int d) { return LaurentPoly::constant(d, 1); }

IVec neg(IVec v) {
  for (auto& x : v) x = -x;
  return v;
}

/// Right action of ^BL H on F(Y) ≅ (H_s ↦ σ_s) ⊗ ^BL H, written from the defining relation
/// θ*H_s = H_s*^sθ + Q_s(θ − ^sθ) with Q_s = (σ−σ⁻¹)/(1 − Z^{−α_s∨}) (equal parameters).
class RightModuleOracle {
 public:
  explicit RightModuleOracle(WeylGroup& W) : W_(W) {}

  RatFn Qs(int s) const {
    const RootDatum& d = W_.datum();
    const Q& sg = d.sigma[s];
    LaurentPoly den = one_poly(d.rankY) - LaurentPoly::monomial(neg(d.coroots[s]));
    return RatFn::fraction(LaurentPoly::constant(d.rankY, sg - 1 / sg), den);
  }

  RatFn act_simple(const RatFn& f, int s) const {
    RatFn fs = w_act(W_, W_.simple(s), f);
    return RatFn::constant(W_.dim(), W_.datum().sigma[s]) * fs + Qs(s) * (f - fs);
  }

  RatFn act(const RatFn& f, const HeckeElt& h) const {
    RatFn out;
    for (const auto& [w, theta] : h.coeffs) {
      RatFn g = f;
      for (int s : W_.reduced_word(w)) g = act_simple(g, s);
      out += g * theta;
    }
    return out;
  }

 private:
  WeylGroup& W_;
};

class HeckeTest : public ::testing::Test {
 protected:
  Preset sl3 = preset("sl3");
  WeylGroup W{sl3.datum};
  HeckeAlgebra A{W};
  Q sigma{2};
  Rng rng{99};

  RatFn c(const Q& x) const { return RatFn::constant(2, x); }
  RatFn Z(const IVec& l) const { return RatFn::monomial(l); }

  HeckeElt random_element(WeylGroup& G, HeckeAlgebra& alg, int radius) {
    auto ball = G.ball(radius);
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    std::uniform_int_distribution<int> kind(0, 2), s(0, G.rank() - 1), e(-2, 2);
    switch (kind(rng)) {
      case 0:
        return alg.H(ball[pick(rng)]);
      case 1: {
        IVec lam(G.dim());
        for (auto& x : lam) x = e(rng);
        return alg.Zlambda(lam);
      }
      default:
        return alg.F_simple(s(rng));
    }
  }
};

}  // namespace

TEST_F(HeckeTest, QuadraticRelation) {
  for (int s = 0; s < 2; ++s) {
    HeckeElt lhs = A.mul(A.H(W.simple(s)), A.H(W.simple(s)));
    HeckeElt rhs = A.add(A.right_scale(A.H(W.simple(s)), c(sigma - 1 / sigma)), A.one());
    EXPECT_TRUE(A.equal(lhs, rhs));
  }
}

TEST_F(HeckeTest, MonomialOrthogonalToRootCommutes) {
  IVec lam{1, 2};  // α1(λ) = 0
  ASSERT_EQ(sl3.datum.alpha(0, lam), 0);
  EXPECT_TRUE(A.equal(A.mul(A.H(W.simple(0)), A.Zlambda(lam)), A.mul(A.Zlambda(lam), A.H(W.simple(0)))));
}

TEST_F(HeckeTest, MonomialPastGeneratorSingleCorrectionTerm) {
  IVec lam{1, 1};  // α1(λ) = 1
  ASSERT_EQ(sl3.datum.alpha(0, lam), 1);
  HeckeElt lhs = A.mul(A.Zlambda(lam), A.H(W.simple(0)));
  HeckeElt rhs;
  rhs.add(W.simple(0), Z(W.apply(W.simple(0), lam)));
  rhs.add(W.identity(), Z(lam) * c(sigma - 1 / sigma));
  EXPECT_TRUE(A.equal(lhs, rhs));
}

TEST_F(HeckeTest, CommutePastExamples) {
  auto triv = A.commute_past(LaurentPoly::monomial({3, -1}), W.identity());
  ASSERT_EQ(triv.size(), 1u);
  EXPECT_EQ(triv.at(W.identity()), LaurentPoly::monomial({3, -1}));

  auto orth = A.commute_past(LaurentPoly::monomial({1, 2}), W.simple(0));
  ASSERT_EQ(orth.size(), 1u);
  EXPECT_EQ(orth.at(W.simple(0)), LaurentPoly::monomial({1, 2}));

  auto r = A.commute_past(LaurentPoly::monomial({1, 0}), W.simple(0));
  EXPECT_EQ(r.at(W.simple(0)), LaurentPoly::monomial({-1, 0}));
  LaurentPoly expect = (LaurentPoly::monomial({1, 0}) + one_poly(2)) * (sigma - 1 / sigma);
  EXPECT_EQ(r.at(W.identity()), expect);
}

TEST_F(HeckeTest, QsMatchesGeneralForm) {
  RightModuleOracle oracle(W);
  for (int s = 0; s < 2; ++s) {
    EXPECT_EQ(A.Q_s(s), A.Q_s_general(s));
    EXPECT_EQ(A.Q_s(s), oracle.Qs(s));
    // ζ_s = (1 − σ²Z^{−α∨})/(1 − Z^{−α∨})
    IVec m = neg(sl3.datum.coroots[s]);
    RatFn zeta = RatFn::fraction(one_poly(2) - LaurentPoly::monomial(m, sigma * sigma),
                                 one_poly(2) - LaurentPoly::monomial(m));
    EXPECT_EQ(A.zeta(s), zeta);
    auto [num, den] = A.zeta_split(sl3.datum.coroots[s]);
    EXPECT_EQ(RatFn::fraction(num, den), zeta);
    EXPECT_EQ(den, one_poly(2) - LaurentPoly::monomial(m));
  }
}

TEST_F(HeckeTest, QsUnequalParametersOnEvenLattice) {
  RootDatum d = preset("rank2-even").datum;
  d.sigmaPrime = {Q(3), Q(3)};
  ASSERT_TRUE(d.check().empty());
  WeylGroup G(d);
  HeckeAlgebra B(G);
  // ((σ−σ⁻¹) + (σ'−σ'⁻¹)Z^{−α∨})/(1 − Z^{−2α∨})
  LaurentPoly num = LaurentPoly::constant(2, Q(3, 2)) + LaurentPoly::monomial({-1, 0}, Q(8, 3));
  LaurentPoly den = one_poly(2) - LaurentPoly::monomial({-2, 0});
  EXPECT_EQ(B.Q_s(0), RatFn::fraction(num, den));
  // m(s1, s2) = ∞: the datum is right-angled, so F' exists despite σ ≠ σ'.
  ASSERT_TRUE(B.supports_F_prime());
  for (int s = 0; s < 2; ++s)
    EXPECT_TRUE(B.equal(B.mul(B.F_prime_simple(s), B.F_prime_simple(s)), B.one()));
}

TEST_F(HeckeTest, FWordExamples) {
  EXPECT_TRUE(A.equal(A.F_word({}), A.one()));
  HeckeElt Fs = A.sub(A.right_scale(A.H(W.simple(0)), c(sigma)), A.theta(c(sigma * sigma)));
  Fs = A.add(Fs, A.theta(A.zeta(0)));
  EXPECT_TRUE(A.equal(A.F_word({0}), Fs));
  EXPECT_TRUE(A.equal(A.F_word({0}), A.add(A.B(0), A.theta(A.zeta(0)))));
  EXPECT_TRUE(A.equal(A.F_word({0, 1, 0}), A.F_word({1, 0, 1})));
  EXPECT_THROW(A.F_word({0, 0}), NotReduced);
}

TEST_F(HeckeTest, FPrimeExamples) {
  ASSERT_TRUE(A.supports_F_prime());
  EXPECT_TRUE(A.equal(A.F_prime_word({}), A.one()));
  for (int s = 0; s < 2; ++s)
    EXPECT_TRUE(A.equal(A.mul(A.F_prime_simple(s), A.F_prime_simple(s)), A.one()));
  EXPECT_TRUE(A.equal(A.braid_product(A.F_prime_simple(0), A.F_prime_simple(1), 3),
                      A.braid_product(A.F_prime_simple(1), A.F_prime_simple(0), 3)));
}

TEST_F(HeckeTest, FPrimeIsMultiplicativeOnReducedProducts) {
  for (Elem v : W.ball(3))
    for (Elem w : W.ball(3)) {
      Elem vw = W.mul(v, w);
      if (W.length(vw) != W.length(v) + W.length(w)) continue;
      EXPECT_TRUE(A.equal(A.F_prime(vw), A.mul(A.F_prime(v), A.F_prime(w))));
    }
}

TEST_F(HeckeTest, KExamples) {
  EXPECT_TRUE(A.equal(A.K_underline({}), A.one()));
  for (int s = 0; s < 2; ++s) {
    HeckeElt lit = A.sub(A.F_simple(s), A.theta(A.zeta(s)));
    EXPECT_TRUE(A.equal(A.K(W.simple(s)), lit));
    EXPECT_TRUE(A.equal(A.K_unnormalized(W.simple(s)), lit));
    EXPECT_TRUE(A.equal(A.K_underline({W.simple(s)}), lit));
  }
}

TEST_F(HeckeTest, KCommutationLaw) {
  // θ*K_r = K_r*θ^r + (θ^r − θ)ζ_r for every reflection r in the group.
  std::vector<Elem> refl{W.simple(0), W.simple(1), W.from_word({0, 1, 0})};
  for (Elem r : refl) {
    IVec beta = W.reflection_coroot(r);
    RatFn zr = A.zeta_coroot(beta);
    for (IVec lam : std::vector<IVec>{{1, 0}, {0, 1}, {2, -1}, {-1, -1}}) {
      RatFn th = Z(lam), thr = w_act(W, r, th);
      HeckeElt lhs = A.mul(A.theta(th), A.K(r));
      HeckeElt rhs = A.add(A.right_scale(A.K(r), thr), A.theta((thr - th) * zr));
      EXPECT_TRUE(A.equal(lhs, rhs)) << W.name(r);
    }
  }
}

TEST_F(HeckeTest, PositivePartCheck) {
  EXPECT_EQ(A.positive_part_check(A.H(W.simple(0)), 10), HFMembership::In);
  EXPECT_EQ(A.positive_part_check(A.Zlambda({-1, 0}), 10), HFMembership::In);
  EXPECT_THROW(A.positive_part_check(A.theta(A.zeta(0)), 10), NotPolynomial);

  Preset aff = preset("affine-sl2");
  WeylGroup G(aff.datum);
  HeckeAlgebra B(G);
  EXPECT_EQ(B.positive_part_check(B.Zlambda({0, 0, -1}), 20), HFMembership::Inconclusive);
  EXPECT_EQ(B.positive_part_check(B.Zlambda({0, 0, 1}), 20), HFMembership::In);
}

// ---- properties -------------------------------------------------------------

class HeckePropertyTest : public HeckeTest, public ::testing::WithParamInterface<std::string> {};

TEST_P(HeckePropertyTest, Associativity) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  for (int t = 0; t < 30; ++t) {
    HeckeElt a = random_element(G, B, 2), b = random_element(G, B, 2), e = random_element(G, B, 2);
    EXPECT_TRUE(B.equal(B.mul(B.mul(a, b), e), B.mul(a, B.mul(b, e))));
  }
}

TEST_P(HeckePropertyTest, ProductIsCompatibleWithRightModule) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  RightModuleOracle oracle(G);
  std::uniform_int_distribution<int> e(-1, 1);
  for (int t = 0; t < 20; ++t) {
    HeckeElt a = random_element(G, B, 3), b = random_element(G, B, 3);
    IVec lam(G.dim());
    for (auto& x : lam) x = e(rng);
    RatFn f = RatFn::monomial(lam) + RatFn::constant(G.dim(), 2);
    EXPECT_EQ(oracle.act(oracle.act(f, a), b), oracle.act(f, B.mul(a, b)));
  }
}

TEST_P(HeckePropertyTest, CommutePastAgreesWithProduct) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  std::uniform_int_distribution<int> e(-2, 2);
  for (Elem w : G.ball(3)) {
    IVec lam(G.dim());
    for (auto& x : lam) x = e(rng);
    auto R = B.commute_past(LaurentPoly::monomial(lam), w);
    HeckeElt expect;
    for (const auto& [v, poly] : R) {
      EXPECT_TRUE(G.bruhat_leq(v, w));
      expect.add(v, RatFn(poly));
    }
    EXPECT_EQ(R.at(w), LaurentPoly::monomial(G.apply(G.inverse(w), lam)));
    EXPECT_TRUE(B.equal(B.mul(B.Zlambda(lam), B.H(w)), expect));
  }
}

TEST_P(HeckePropertyTest, FwTopCoefficientIsANonzeroScalar) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  for (Elem w : G.ball(4)) {
    HeckeElt F = B.F(w);
    RatFn top = F.coeff(w);
    EXPECT_FALSE(top.is_zero());
    EXPECT_TRUE(top.is_polynomial());
    ASSERT_EQ(top.num().size(), 1u);
    EXPECT_TRUE(top.num().terms().begin()->first == IVec(G.dim(), 0));
    for (const auto& [v, th] : F.coeffs) EXPECT_TRUE(G.bruhat_leq(v, w));
  }
}

TEST_P(HeckePropertyTest, ThetaPassesThroughFw) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  std::uniform_int_distribution<int> e(-1, 1);
  for (Elem w : G.ball(3)) {
    IVec lam(G.dim());
    for (auto& x : lam) x = e(rng);
    RatFn th = RatFn::monomial(lam, Q(3)) + RatFn::constant(G.dim(), 1);
    HeckeElt lhs = B.mul(B.theta(th), B.F(w));
    HeckeElt rhs = B.right_scale(B.F(w), w_act(G, G.inverse(w), th));
    EXPECT_TRUE(B.equal(lhs, rhs)) << G.name(w);
  }
}

TEST_P(HeckePropertyTest, FwIndependentOfReducedWord) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  for (Elem w : G.ball(4)) {
    HeckeElt ref = B.F(w);
    for (const Word& word : G.all_reduced_words(w)) EXPECT_TRUE(B.equal(B.F_word(word), ref));
  }
}

INSTANTIATE_TEST_SUITE_P(Presets, HeckePropertyTest,
                         ::testing::Values("sl3", "affine-sl2", "rank2-even-ext", "right-angled"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });
