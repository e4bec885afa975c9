#include "kmh/presets.hpp"
#include "kmh/principal_series.hpp"
#include "kmh/weighted.hpp"

#include <gtest/gtest.h>

using namespace kmh;

namespace {

QMat diag(std::vector<Q> d) {
  QMat m = zero_matrix(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

QMat mat_pow(const QMat& a, long e) {
  QMat base = a;
  if (e < 0) {
    base = *inverse(a);
    e = -e;
  }
  QMat r = identity_matrix(a.size());
  for (long k = 0; k < e; ++k) r = mat_mul(r, base);
  return r;
}

/// A random F[Y]-module of rank-2 lattice: ρ(e_j) = P·D_j·P⁻¹ with commuting upper-triangular
/// D_j whose diagonals are nonzero rationals (or contain zeros when `allowZero`).
struct RandomModel {
  QMat P, Pinv;
  std::vector<QMat> D;  // one per basis vector of Y

  /// ρ(μ) computed directly as ∏ ρ(e_j)^{μ_j}.
  QMat rho(const IVec& mu) const {
    QMat r = identity_matrix(P.size());
    for (std::size_t j = 0; j < mu.size(); ++j) r = mat_mul(r, mat_pow(D[j], mu[j]));
    return mat_mul(mat_mul(P, r), Pinv);
  }
};

RandomModel random_model(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> small(-2, 2);
  const std::vector<Q> values = {Q(2), Q(-1), Q(3), Q(1, 2), Q(-3, 2)};
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  RandomModel m;
  // Each D_j is c_j·(I + a_j·N) on 2×2 blocks and scalar on 1×1 blocks: such matrices commute.
  std::vector<int> blocks;
  for (std::size_t used = 0; used < n;) {
    int b = (used + 2 <= n && small(rng) > 0) ? 2 : 1;
    blocks.push_back(b);
    used += b;
  }
  for (int j = 0; j < 2; ++j) {
    QMat d = zero_matrix(n, n);
    std::size_t off = 0;
    for (int b : blocks) {
      Q c = values[pick(rng)];
      for (int i = 0; i < b; ++i) d[off + i][off + i] = c;
      if (b == 2) d[off][off + 1] = c * small(rng);
      off += b;
    }
    m.D.push_back(d);
  }
  for (;;) {
    m.P = zero_matrix(n, n);
    for (auto& row : m.P)
      for (auto& x : row) x = small(rng);
    if (auto inv = inverse(m.P)) {
      m.Pinv = *inv;
      return m;
    }
  }
}

FiniteMonoidModule restrict_model(const RandomModel& m, const std::vector<IVec>& gens) {
  std::vector<MonoidGenerator> g;
  for (const IVec& l : gens) g.push_back({l, m.rho(l)});
  return FiniteMonoidModule(g, m.P.size());
}

const std::vector<IVec> kGens = {{1, 0}, {0, 1}, {1, 1}};

}  // namespace

TEST(WeightedExtension, InvertibleGeneratorsAreExtendable) {
  FiniteMonoidModule m({{{1, 0}, diag({Q(2), Q(3)})}, {{0, 1}, diag({Q(1, 2), Q(-1)})}}, 2);
  EXPECT_TRUE(extendable(m).extendable);
  EXPECT_EQ(extend(m, {1, 0}), diag({Q(2), Q(3)}));
  EXPECT_EQ(extend(m, {-1, 0}), diag({Q(1, 2), Q(1, 3)}));
  EXPECT_EQ(extend(m, {2, -1}), diag({Q(8), Q(-9)}));
  EXPECT_EQ(extend(m, {0, 0}), identity_matrix(2));
}

TEST(WeightedExtension, SingularGeneratorGivesWitness) {
  QMat sing = {{Q(1), Q(2)}, {Q(2), Q(4)}};
  FiniteMonoidModule m({{{0, 1}, identity_matrix(2)}, {{1, 0}, sing}}, 2);
  auto rep = extendable(m);
  EXPECT_FALSE(rep.extendable);
  ASSERT_TRUE(rep.witness && rep.kernel);
  EXPECT_EQ(*rep.witness, (IVec{1, 0}));
  EXPECT_FALSE(is_zero(*rep.kernel));
  EXPECT_TRUE(is_zero(mat_vec(sing, *rep.kernel)));
  EXPECT_THROW(extend(m, {-1, 0}), NotExtendable);
}

TEST(WeightedExtension, ZeroDimensionalModuleIsExtendable) {
  FiniteMonoidModule m({{{1, 0}, QMat{}}}, 0);
  EXPECT_TRUE(extendable(m).extendable);
  EXPECT_TRUE(gen_weight_decomposition(m).empty());
}

TEST(WeightedExtension, ConstructionErrors) {
  QMat a = {{Q(1), Q(1)}, {Q(0), Q(1)}}, b = {{Q(1), Q(0)}, {Q(1), Q(1)}};
  EXPECT_THROW(FiniteMonoidModule({{{1, 0}, a}, {{0, 1}, b}}, 2), NonCommutingGenerators);
  EXPECT_THROW(FiniteMonoidModule({{{1, 0}, a}}, 3), InvalidDatum);
  EXPECT_THROW(FiniteMonoidModule({{{1, 0}, a}, {{0, 1, 0}, a}}, 2), InvalidDatum);
}

TEST(WeightedExtension, ReachLimits) {
  FiniteMonoidModule m({{{1, 0}, diag({Q(2)})}}, 1);
  EXPECT_THROW(extend(m, {0, 1}), ReachExceeded);
  EXPECT_THROW(extend(m, {9, 0}, 8), ReachExceeded);
  EXPECT_EQ(extend(m, {9, 0}, 9), diag({Q(512)}));
}

TEST(WeightedExtension, DecompositionsAreValid) {
  FiniteMonoidModule m({{{1, 0}, diag({Q(2)})}, {{0, 1}, diag({Q(3)})}, {{1, 1}, diag({Q(6)})}}, 1);
  auto ds = decompositions(m, {1, -1}, 5);
  ASSERT_FALSE(ds.empty());
  for (const auto& d : ds) {
    IVec s(2, 0);
    int total = 0;
    for (std::size_t k = 0; k < kGens.size(); ++k) {
      for (int j = 0; j < 2; ++j) s[j] += (d.plus[k] - d.minus[k]) * kGens[k][j];
      total += d.plus[k] + d.minus[k];
      EXPECT_GE(d.plus[k], 0);
      EXPECT_GE(d.minus[k], 0);
    }
    EXPECT_EQ(s, (IVec{1, -1}));
    EXPECT_LE(total, 5);
    EXPECT_EQ(extend_with(m, d), diag({Q(2, 3)}));
  }
}

TEST(WeightedExtension, DiagonalModuleSplitsIntoLines) {
  FiniteMonoidModule m({{{1, 0}, diag({Q(2), Q(3), Q(-1)})}}, 3);
  auto parts = gen_weight_decomposition(m);
  ASSERT_EQ(parts.size(), 3u);
  for (const auto& p : parts) EXPECT_EQ(p.basis.size(), 1u);
}

TEST(WeightedExtension, JordanBlockIsOneGeneralizedSpace) {
  QMat j = {{Q(2), Q(1), Q(0)}, {Q(0), Q(2), Q(1)}, {Q(0), Q(0), Q(2)}};
  FiniteMonoidModule m({{{1, 0}, j}}, 3);
  auto parts = gen_weight_decomposition(m);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].values, (std::vector<Q>{Q(2)}));
  EXPECT_EQ(parts[0].basis.size(), 3u);
}

TEST(WeightedExtension, SharedEigenvectorsGiveProductDecomposition) {
  // ρ(e1) = diag(2, 2, 3), ρ(e2) = diag(5, 7, 5) in the basis P: three joint weights.
  QMat P = {{Q(1), Q(1), Q(0)}, {Q(0), Q(1), Q(1)}, {Q(1), Q(0), Q(1)}};
  QMat Pinv = *inverse(P);
  auto conj = [&](const QMat& d) { return mat_mul(mat_mul(P, d), Pinv); };
  FiniteMonoidModule m({{{1, 0}, conj(diag({Q(2), Q(2), Q(3)}))}, {{0, 1}, conj(diag({Q(5), Q(7), Q(5)}))}}, 3);
  auto parts = gen_weight_decomposition(m);
  std::set<std::vector<Q>> got;
  for (const auto& p : parts) {
    got.insert(p.values);
    ASSERT_EQ(p.basis.size(), 1u);
    // The line is a joint eigenvector with the reported values.
    for (std::size_t k = 0; k < 2; ++k)
      EXPECT_EQ(mat_vec(m.generators()[k].matrix, p.basis[0]), [&] {
        QVec v = p.basis[0];
        for (auto& x : v) x *= p.values[k];
        return v;
      }());
  }
  EXPECT_EQ(got, (std::set<std::vector<Q>>{{Q(2), Q(5)}, {Q(2), Q(7)}, {Q(3), Q(5)}}));
}

TEST(WeightedExtension, UnsplitSpectrumIsReported) {
  QMat rot = {{Q(0), Q(-2)}, {Q(1), Q(0)}};  // x² + 2
  FiniteMonoidModule m({{{1, 0}, rot}}, 2);
  EXPECT_THROW(gen_weight_decomposition(m), UnsplitSpectrum);
  EXPECT_TRUE(extendable(m).extendable);
}

TEST(WeightedExtension, CharacteristicPolynomialAndRoots) {
  QMat a = {{Q(2), Q(1)}, {Q(0), Q(3)}};
  EXPECT_EQ(characteristic_polynomial(a), (std::vector<Q>{Q(6), Q(-5), Q(1)}));
  // (x − 1)²(x − 1/2) = x³ − 5/2·x² + 2x − 1/2
  auto roots = rational_roots({Q(-1, 2), Q(2), Q(-5, 2), Q(1)});
  std::sort(roots.begin(), roots.end());
  EXPECT_EQ(roots, (std::vector<Q>{Q(1, 2), Q(1), Q(1)}));
  EXPECT_TRUE(rational_roots({Q(2), Q(0), Q(1)}).empty());
}

TEST(WeightedExtension, JsonRoundTrip) {
  FiniteMonoidModule m({{{1, 0}, diag({Q(2), Q(1, 3)})}, {{0, 1}, diag({Q(-1), Q(5)})}}, 2);
  auto doc = m.to_json();
  ASSERT_TRUE(doc.contains("generators"));
  EXPECT_TRUE(doc["generators"][0].contains("lambda"));
  EXPECT_TRUE(doc["generators"][0].contains("matrix"));
  FiniteMonoidModule back = FiniteMonoidModule::from_json(doc);
  ASSERT_EQ(back.generators().size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(back.generators()[k].lambda, m.generators()[k].lambda);
    EXPECT_EQ(back.generators()[k].matrix, m.generators()[k].matrix);
  }
}

TEST(WeightedExtension, TitsConeCertification) {
  Preset sl3 = preset("sl3");
  WeylGroup W(sl3.datum);
  FiniteMonoidModule fin({{{1, 0}, diag({Q(1)})}, {{-1, -1}, diag({Q(1)})}}, 1);
  EXPECT_TRUE(fin.generators_outside_tits_cone(W, 50).empty());  // finite type: the whole space

  Preset aff = preset("affine-sl2");
  WeylGroup V(aff.datum);
  FiniteMonoidModule m({{{0, 0, 1}, diag({Q(1)})}, {{0, 0, -1}, diag({Q(1)})}, {{1, 0, 0}, diag({Q(1)})}}, 1);
  EXPECT_EQ(m.generators_outside_tits_cone(V, 50), (std::vector<std::size_t>{1, 2}));
}

// ---- properties -------------------------------------------------------------

class WeightedPropertyTest : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override { rng.seed(1000 + GetParam()); }
  Rng rng;
};

TEST_P(WeightedPropertyTest, ExtensionReproducesTheModel) {
  RandomModel model = random_model(rng, 2 + GetParam() % 3);
  FiniteMonoidModule m = restrict_model(model, kGens);
  ASSERT_TRUE(extendable(m).extendable);
  for (const IVec& mu : {IVec{-1, 0}, IVec{0, -1}, IVec{2, -3}, IVec{-2, -1}, IVec{3, 1}})
    EXPECT_EQ(extend(m, mu), model.rho(mu));
  // Inverse of a generator.
  EXPECT_EQ(extend(m, {-1, -1}), *inverse(m.generators()[2].matrix));
}

TEST_P(WeightedPropertyTest, ExtensionIsIndependentOfTheDecomposition) {
  RandomModel model = random_model(rng, 3);
  FiniteMonoidModule m = restrict_model(model, kGens);
  for (const IVec& mu : {IVec{1, -1}, IVec{0, 0}, IVec{-1, 2}}) {
    auto ds = decompositions(m, mu, 5);
    ASSERT_GE(ds.size(), 2u);
    for (const auto& d : ds) EXPECT_EQ(extend_with(m, d), extend_with(m, ds.front()));
  }
}

TEST_P(WeightedPropertyTest, ExtensionIsAGroupRepresentation) {
  RandomModel model = random_model(rng, 3);
  FiniteMonoidModule m = restrict_model(model, kGens);
  std::uniform_int_distribution<long> c(-2, 2);
  for (int t = 0; t < 5; ++t) {
    IVec mu{c(rng), c(rng)}, nu{c(rng), c(rng)};
    IVec sum{mu[0] + nu[0], mu[1] + nu[1]};
    EXPECT_EQ(mat_mul(extend(m, mu), extend(m, nu)), extend(m, sum));
  }
}

TEST_P(WeightedPropertyTest, MonoidMatrixIsMultiplicative) {
  RandomModel model = random_model(rng, 3);
  FiniteMonoidModule m = restrict_model(model, kGens);
  std::uniform_int_distribution<int> c(0, 2);
  std::vector<int> a{c(rng), c(rng), c(rng)}, b{c(rng), c(rng), c(rng)}, s(3);
  for (int k = 0; k < 3; ++k) s[k] = a[k] + b[k];
  EXPECT_EQ(mat_mul(m.monoid_matrix(a), m.monoid_matrix(b)), m.monoid_matrix(s));
  IVec lam{0, 0};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j) lam[j] += a[k] * kGens[k][j];
  EXPECT_EQ(m.monoid_matrix(a), model.rho(lam));
}

TEST_P(WeightedPropertyTest, GeneralizedWeightSpacesFillTheModule) {
  std::size_t n = 2 + GetParam() % 3;
  RandomModel model = random_model(rng, n);
  FiniteMonoidModule m = restrict_model(model, kGens);
  auto parts = gen_weight_decomposition(m);
  std::vector<QVec> all;
  std::set<std::vector<Q>> values;
  for (const auto& p : parts) {
    EXPECT_TRUE(values.insert(p.values).second);  // distinct weights
    for (const QVec& x : p.basis) {
      all.push_back(x);
      // x is killed by a power of (ρ(λ) − τ(λ)) for every generator.
      for (std::size_t k = 0; k < kGens.size(); ++k) {
        QMat shifted = mat_add(m.generators()[k].matrix, mat_scale(identity_matrix(n), -p.values[k]));
        EXPECT_TRUE(is_zero(mat_vec(mat_pow(shifted, static_cast<long>(n)), x)));
      }
    }
    // Weights are multiplicative on the generators: τ(e1 + e2) = τ(e1)τ(e2).
    EXPECT_EQ(p.values[2], p.values[0] * p.values[1]);
  }
  EXPECT_EQ(span_basis(all, n).size(), n);
  EXPECT_EQ(all.size(), n);
}

TEST_P(WeightedPropertyTest, ExtendableIffNoWeightVanishes) {
  // Diagonal models whose entries may vanish.
  std::uniform_int_distribution<int> v(-2, 2);
  std::size_t n = 3;
  std::vector<Q> d1(n), d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d1[i] = v(rng);
    d2[i] = v(rng);
  }
  FiniteMonoidModule m({{{1, 0}, diag(d1)}, {{0, 1}, diag(d2)}}, n);
  bool vanishes = false;
  for (const auto& p : gen_weight_decomposition(m))
    for (const Q& x : p.values) vanishes = vanishes || x == 0;
  auto rep = extendable(m);
  EXPECT_EQ(rep.extendable, !vanishes);
  if (!rep.extendable) {
    ASSERT_TRUE(rep.witness && rep.kernel);
    const QMat& mat = *rep.witness == IVec{1, 0} ? m.generators()[0].matrix : m.generators()[1].matrix;
    EXPECT_TRUE(is_zero(mat_vec(mat, *rep.kernel)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, WeightedPropertyTest, ::testing::Range(0, 12));

TEST(WeightedPrincipalSeries, RestrictionToDominantGeneratorsReExtends) {
  Preset p = preset("sl3");
  WeylGroup W(p.datum);
  HeckeAlgebra A(W);
  PSModule M(A, *p.tau, 2);
  std::vector<MonoidGenerator> gens;
  for (const IVec& l : {IVec{1, 1}, IVec{2, 1}, IVec{1, 2}}) gens.push_back({l, M.Z_matrix(l)});
  FiniteMonoidModule m(gens, M.size());
  EXPECT_TRUE(m.generators_outside_tits_cone(W, 50).empty());
  ASSERT_TRUE(extendable(m).extendable);
  for (const IVec& mu : {IVec{1, 0}, IVec{0, 1}, IVec{-1, 0}, IVec{1, -1}, IVec{-2, 3}})
    EXPECT_EQ(extend(m, mu), M.Z_matrix(mu));
  std::set<std::vector<Q>> expect, got;
  for (Elem w : M.basis()) {
    Character c = char_apply(W, w, *p.tau);
    std::vector<Q> v;
    for (const auto& g : gens) v.push_back(c(g.lambda));
    expect.insert(v);
  }
  for (const auto& g : gen_weight_decomposition(m)) got.insert(g.values);
  EXPECT_EQ(got, expect);
}
