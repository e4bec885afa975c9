#include "kmh/presets.hpp"
#include "kmh/principal_series.hpp"

#include <gtest/gtest.h>

using namespace kmh;

namespace {

/// Z^λ·x computed from the algebra product: Z^λ*H_w = Σ H_v θ_v and (H_vθ)v_τ = τ(θ)H_v v_τ.
QVec oracle_act_Z(PSModule& M, const IVec& lambda, const QVec& x) {
  HeckeAlgebra& A = M.algebra();
  QVec out = M.zero();
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (x[i] == 0) continue;
    HeckeElt prod = A.mul(A.Zlambda(lambda), A.H(M.element(i)));
    for (const auto& [v, theta] : prod.coeffs) {
      int j = M.index(v);
      EXPECT_GE(j, 0);
      out[j] += x[i] * eval_ratfn(M.tau(), theta);
    }
  }
  return out;
}

IVec basis_vector(int d, int j) {
  IVec e(d, 0);
  e[j] = 1;
  return e;
}

QVec random_vector(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(-3, 3);
  QVec v(n);
  for (auto& x : v) x = c(rng);
  return v;
}

QVec add(const QVec& a, const QVec& b) {
  QVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

QVec scale(const QVec& a, const Q& c) {
  QVec r = a;
  for (auto& x : r) x *= c;
  return r;
}

class PrincipalSeriesTest : public ::testing::Test {
 protected:
  void SetUp() override { seed_default_rng(5); }
  Preset sl3 = preset("sl3");
  WeylGroup W{sl3.datum};
  HeckeAlgebra A{W};
  PSModule M{A, *sl3.tau, 3};
  Q sigma{2};
  Rng rng{17};
};

}  // namespace

TEST_F(PrincipalSeriesTest, BasisIsTheBallInLengthOrder) {
  ASSERT_EQ(M.size(), 6u);
  EXPECT_EQ(M.element(0), W.identity());
  for (std::size_t i = 1; i < M.size(); ++i)
    EXPECT_LE(W.length(M.element(i - 1)), W.length(M.element(i)));
}

TEST_F(PrincipalSeriesTest, ZActsOnVTauByTheCharacter) {
  for (IVec lam : std::vector<IVec>{{1, 0}, {0, 1}, {-2, 3}})
    EXPECT_EQ(M.act_Z(lam, M.v_tau()), scale(M.v_tau(), (*sl3.tau)(lam)));
}

TEST_F(PrincipalSeriesTest, ZActionOnHs1) {
  // Z^{α1∨}·H_{s1}v = τ(−α1∨)H_{s1}v + (σ−σ⁻¹)(τ(α1∨)+1)v
  QVec y = M.act_Z({1, 0}, M.unit(W.simple(0)));
  QVec expect = M.zero();
  expect[M.index(W.simple(0))] = Q(1, 4);
  expect[0] = (sigma - 1 / sigma) * (Q(4) + 1);
  EXPECT_EQ(y, expect);
}

TEST_F(PrincipalSeriesTest, HeckeActionExamples) {
  QVec x = random_vector(rng, M.size());
  EXPECT_EQ(M.act_H(A.one(), x), x);
  EXPECT_EQ(M.act_H(A.H(W.simple(0)), M.v_tau()), M.unit(W.simple(0)));
  QVec y = M.act_H(A.H(W.simple(0)), M.unit(W.simple(0)));
  QVec expect = scale(M.unit(W.simple(0)), sigma - 1 / sigma);
  expect[0] += 1;
  EXPECT_EQ(y, expect);
}

TEST_F(PrincipalSeriesTest, TruncationIsNeverSilent) {
  Preset aff = preset("affine-sl2");
  WeylGroup G(aff.datum);
  HeckeAlgebra B(G);
  PSModule N(B, *aff.tau, 2);
  QVec top = N.unit(G.from_word({0, 1}));
  EXPECT_THROW(N.act_H(B.H(G.simple(1)), top), OutOfBall);
  EXPECT_NO_THROW(N.act_H(B.H(G.simple(0)), top));  // s1 is a left descent: stays in the ball
}

TEST_F(PrincipalSeriesTest, WeightSpacesForRegularCharacter) {
  auto same = M.weight_space(*sl3.tau, 3);
  ASSERT_EQ(same.size(), 1u);
  EXPECT_EQ(M.max_support(same[0]), std::vector<Elem>{W.identity()});
  EXPECT_EQ(M.support_length(same[0]), 0);

  Character outside(std::vector<Q>{Q(3), Q(5)});
  EXPECT_TRUE(M.weight_space(outside, 3).empty());

  Character s1tau = char_apply(W, W.simple(0), *sl3.tau);
  auto ws = M.weight_space(s1tau, 3);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(M.max_support(ws[0]), std::vector<Elem>{W.simple(0)});
  QVec F = M.F_at_tau(W.simple(0));
  EXPECT_TRUE(in_span(ws, F));
}

TEST_F(PrincipalSeriesTest, FAtTauForSimpleReflection) {
  // σH_{s1}v + (ζ_{s1}(τ) − σ²)v with ζ_{s1}(τ) = (1 − σ²/4)/(1 − 1/4) = 0.
  QVec F = M.F_at_tau(W.simple(0));
  QVec expect = M.zero();
  expect[M.index(W.simple(0))] = sigma;
  expect[0] = Q(0) - sigma * sigma;
  EXPECT_EQ(F, expect);
  EXPECT_EQ(M.F_at_tau(W.identity()), M.v_tau());
}

TEST_F(PrincipalSeriesTest, GeneralizedWeightSpaceForRegularCharacter) {
  for (Elem w : W.ball(3)) {
    Character c = char_apply(W, w, *sl3.tau);
    auto ws = M.weight_space(c, 3);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(M.gen_weight_space(c, k, 3).size(), ws.size());
    EXPECT_TRUE(M.gen_weight_space(c, 0, 3).empty());
    EXPECT_EQ(M.gen_weight_space(c, 3).size(), ws.size());
  }
}

TEST_F(PrincipalSeriesTest, FrobeniusOperatorBasics) {
  PSOperator id = frobenius_op(M, M.v_tau(), *sl3.tau);
  QVec x = random_vector(rng, M.size());
  EXPECT_EQ(id.apply(x), x);
  EXPECT_THROW(frobenius_op(M, M.unit(W.simple(0)), *sl3.tau), NotAWeightVector);

  Character c = char_apply(W, W.simple(0), *sl3.tau);
  PSModule N(A, c, 3);  // source module of the operators below
  QVec u = M.F_at_tau(W.simple(0));
  PSOperator a = frobenius_op(M, u, c);
  PSOperator b = frobenius_op(M, scale(u, 3), c);
  PSOperator ab = frobenius_op(M, add(u, scale(u, 3)), c);
  QVec y = random_vector(rng, N.size());
  EXPECT_EQ(ab.apply(y), add(a.apply(y), b.apply(y)));
  EXPECT_FALSE(a.is_zero());
}

TEST_F(PrincipalSeriesTest, EdgeIntertwinerFlagsForSl3) {
  OrbitModules orbit(A, *sl3.tau, 3);
  // τ(α_s∨) = σ² = q: arrows out of I_τ are not isomorphisms.
  EXPECT_FALSE(edge_intertwiner(orbit, W.identity(), 0).iso);
  EXPECT_FALSE(edge_intertwiner(orbit, W.identity(), 1).iso);
  // s1.τ(α2∨) = τ(α1∨ + α2∨) = 16 ∉ {q, q⁻¹}.
  auto e = edge_intertwiner(orbit, W.simple(0), 1);
  EXPECT_TRUE(e.iso);
  EXPECT_EQ(e.to, W.from_word({1, 0}));
}

TEST_F(PrincipalSeriesTest, EveryAffineEdgeIsNotAnIsomorphism) {
  Preset aff = preset("affine-sl2");
  WeylGroup G(aff.datum);
  HeckeAlgebra B(G);
  OrbitModules orbit(B, *aff.tau, 4);
  for (Elem w : G.ball(3))
    for (int s = 0; s < 2; ++s) EXPECT_FALSE(edge_intertwiner(orbit, w, s).iso) << G.name(w);
}

// ---- properties -------------------------------------------------------------

class PSPropertyTest : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override { seed_default_rng(5); }
  Rng rng{23};
};

TEST_P(PSPropertyTest, ZActionMatchesAlgebraProduct) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  PSModule N(B, *p.tau, 3);
  for (int j = 0; j < G.dim(); ++j) {
    QVec x = random_vector(rng, N.size());
    IVec y = basis_vector(G.dim(), j);
    EXPECT_EQ(N.act_Z(y, x), oracle_act_Z(N, y, x));
  }
}

TEST_P(PSPropertyTest, ZActionIsAMonoidMorphism) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  PSModule N(B, *p.tau, 3);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int t = 0; t < 5; ++t) {
    IVec l(G.dim()), m(G.dim()), lm(G.dim());
    for (int j = 0; j < G.dim(); ++j) {
      l[j] = e(rng);
      m[j] = e(rng);
      lm[j] = l[j] + m[j];
    }
    QVec x = random_vector(rng, N.size());
    EXPECT_EQ(N.act_Z(l, N.act_Z(m, x)), N.act_Z(lm, x));
  }
}

TEST_P(PSPropertyTest, ZActionNeverGrowsSupportUpward) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  PSModule N(B, *p.tau, 3);
  for (Elem w : N.basis())
    for (int j = 0; j < G.dim(); ++j) {
      QVec y = N.act_Z(basis_vector(G.dim(), j), N.unit(w));
      for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] != 0) EXPECT_TRUE(G.bruhat_leq(N.element(i), w));
    }
}

TEST_P(PSPropertyTest, FAtTauHasLeadingTermAtW) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  PSModule N(B, *p.tau, 3);
  for (Elem w : N.basis()) {
    QVec F = N.F_at_tau(w);
    EXPECT_EQ(N.max_support(F), std::vector<Elem>{w});
    auto rec = N.F_at_tau_recursive(w);
    ASSERT_TRUE(rec.has_value());
    EXPECT_EQ(*rec, F);
    EXPECT_TRUE(N.is_weight_vector(F, char_apply(G, w, *p.tau)));
  }
}

TEST_P(PSPropertyTest, RegularWeightSpacesGiveADirectSum) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  const int L = 3;
  PSModule N(B, *p.tau, L);
  std::vector<QVec> all;
  std::size_t total = 0;
  for (Elem w : N.basis()) {
    auto ws = N.weight_space(char_apply(G, w, *p.tau), L);
    EXPECT_EQ(ws.size(), 1u) << G.name(w);
    total += ws.size();
    all.insert(all.end(), ws.begin(), ws.end());
  }
  EXPECT_EQ(total, N.size());
  EXPECT_EQ(span_basis(all, N.size()).size(), N.size());
}

TEST_P(PSPropertyTest, FrobeniusOperatorsCommuteWithTheActions) {
  Preset p = preset(GetParam());
  WeylGroup G(p.datum);
  HeckeAlgebra B(G);
  const int L = 4;
  OrbitModules orbit(B, *p.tau, L);
  for (Elem w : G.ball(1))
    for (int s = 0; s < G.rank(); ++s) {
      EdgeIntertwiner e = edge_intertwiner(orbit, w, s);
      PSModule& src = orbit.module_for(w);
      PSModule& dst = orbit.module_for(e.to);
      for (Elem u : src.basis()) {
        if (G.length(u) + e.op.reach + 1 > L) continue;
        QVec x = src.unit(u);
        for (int j = 0; j < G.dim(); ++j) {
          IVec y = basis_vector(G.dim(), j);
          EXPECT_EQ(e.op.apply(src.act_Z(y, x)), dst.act_Z(y, e.op.apply(x)));
        }
        for (int t = 0; t < G.rank(); ++t) {
          HeckeElt h = B.H(G.simple(t));
          EXPECT_EQ(e.op.apply(src.act_H(h, x)), dst.act_H(h, e.op.apply(x)));
        }
      }
    }
}

INSTANTIATE_TEST_SUITE_P(Presets, PSPropertyTest,
                         ::testing::Values("sl3", "affine-sl2", "case1", "right-angled"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });
