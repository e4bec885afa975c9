#include "kmh/weighted.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace kmh {

namespace {

QMat mat_pow(const QMat& a, int k) {
  QMat r = identity_matrix(a.size());
  for (int i = 0; i < k; ++i) r = mat_mul(r, a);
  return r;
}

QMat shifted(const QMat& a, const Q& e) {
  QMat r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i][i] -= e;
  return r;
}

std::vector<QVec> identity_basis(std::size_t n) {
  std::vector<QVec> b;
  for (std::size_t i = 0; i < n; ++i) {
    QVec v(n, Q(0));
    v[i] = 1;
    b.push_back(std::move(v));
  }
  return b;
}

/// Positive divisors of |n| (trial division; a cofactor above the search limit is kept whole).
std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> fac;
  for (mpz_class p = 2; p * p <= n && p <= 1000000; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) fac.emplace_back(p, e);
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<mpz_class> ds{1};
  for (const auto& [p, e] : fac) {
    std::size_t base = ds.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  return ds;
}

Q horner(const std::vector<Q>& poly, const Q& x) {
  Q r = 0;
  for (std::size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
  return r;
}

std::vector<Q> deflate(const std::vector<Q>& poly, const Q& root) {
  // Synthetic division by (x − root).
  std::size_t d = poly.size() - 1;
  std::vector<Q> q(d, Q(0));
  Q carry = 0;
  for (std::size_t i = d; i-- > 0;) {
    carry = poly[i + 1] + carry * root;
    q[i] = carry;
  }
  return q;
}

}  // namespace

FiniteMonoidModule::FiniteMonoidModule(std::vector<MonoidGenerator> gens, std::size_t dim)
    : gens_(std::move(gens)), dim_(dim) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (i == 0) rankY_ = static_cast<int>(g.lambda.size());
    if (static_cast<int>(g.lambda.size()) != rankY_)
      throw InvalidDatum("generators live in lattices of different rank");
    if (g.matrix.size() != dim_)
      throw InvalidDatum("generator matrix has the wrong size");
    for (const auto& row : g.matrix)
      if (row.size() != dim_) throw InvalidDatum("generator matrix is not square");
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (mat_mul(gens_[i].matrix, gens_[j].matrix) != mat_mul(gens_[j].matrix, gens_[i].matrix))
        throw NonCommutingGenerators("generators " + std::to_string(i) + " and " +
                                     std::to_string(j) + " do not commute");
}

QMat FiniteMonoidModule::monoid_matrix(const std::vector<int>& c) const {
  QMat r = identity_matrix(dim_);
  for (std::size_t i = 0; i < c.size(); ++i) r = mat_mul(r, mat_pow(gens_[i].matrix, c[i]));
  return r;
}

std::vector<std::size_t> FiniteMonoidModule::generators_outside_tits_cone(WeylGroup& W,
                                                                          int maxIter) const {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (W.tits_cone_contains(gens_[i].lambda, maxIter).verdict != TitsVerdict::Inside)
      bad.push_back(i);
  return bad;
}

nlohmann::json FiniteMonoidModule::to_json() const {
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : gens_) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& row : g.matrix) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      m.push_back(r);
    }
    gs.push_back({{"lambda", g.lambda}, {"matrix", m}});
  }
  return {{"generators", gs}};
}

FiniteMonoidModule FiniteMonoidModule::from_json(const nlohmann::json& doc) {
  std::vector<MonoidGenerator> gens;
  std::size_t dim = 0;
  for (const auto& g : doc.at("generators")) {
    MonoidGenerator mg;
    mg.lambda = g.at("lambda").get<IVec>();
    for (const auto& row : g.at("matrix")) {
      QVec r;
      for (const auto& x : row)
        r.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Q(x.get<long>()));
      mg.matrix.push_back(std::move(r));
    }
    dim = mg.matrix.size();
    gens.push_back(std::move(mg));
  }
  return FiniteMonoidModule(std::move(gens), dim);
}

ExtendabilityReport extendable(const FiniteMonoidModule& m) {
  ExtendabilityReport rep;
  for (const auto& g : m.generators()) {
    auto ker = nullspace(g.matrix, m.dim());
    if (!ker.empty()) {
      rep.extendable = false;
      rep.witness = g.lambda;
      rep.kernel = ker.front();
      return rep;
    }
  }
  return rep;
}

std::vector<MonoidDecomposition> decompositions(const FiniteMonoidModule& m, const IVec& mu,
                                                int reach) {
  const std::size_t g = m.generators().size();
  if (static_cast<int>(mu.size()) != m.rankY())
    throw InvalidDatum("mu has the wrong rank");
  // All multiplicity vectors of total size ≤ reach, with their sums.
  std::vector<std::pair<std::vector<int>, IVec>> combos;
  std::vector<int> c(g, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == g) {
      IVec s(mu.size(), 0);
      for (std::size_t k = 0; k < g; ++k)
        for (std::size_t j = 0; j < s.size(); ++j) s[j] += c[k] * m.generators()[k].lambda[j];
      combos.emplace_back(c, s);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      c[i] = x;
      rec(i + 1, left - x);
    }
    c[i] = 0;
  };
  rec(0, reach);
  std::sort(combos.begin(), combos.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int x : a.first) sa += x;
    for (int x : b.first) sb += x;
    return sa != sb ? sa < sb : a.first < b.first;
  });
  std::vector<MonoidDecomposition> out;
  for (const auto& [minus, sm] : combos) {
    int tm = 0;
    for (int x : minus) tm += x;
    IVec target = mu;
    for (std::size_t j = 0; j < target.size(); ++j) target[j] += sm[j];
    for (const auto& [plus, sp] : combos) {
      int tp = 0;
      for (int x : plus) tp += x;
      if (tp + tm > reach) continue;
      if (sp == target) out.push_back({plus, minus});
    }
  }
  return out;
}

QMat extend_with(const FiniteMonoidModule& m, const MonoidDecomposition& d) {
  auto inv = inverse(m.monoid_matrix(d.minus));
  if (!inv) throw NotExtendable("rho(mu_-) is singular");
  return mat_mul(m.monoid_matrix(d.plus), *inv);
}

QMat extend(const FiniteMonoidModule& m, const IVec& mu, int reach) {
  auto rep = extendable(m);
  if (!rep.extendable) throw NotExtendable("a generator acts by a singular matrix");
  auto ds = decompositions(m, mu, reach);
  if (ds.empty())
    throw ReachExceeded("no decomposition mu = mu_+ - mu_- within " + std::to_string(reach) +
                        " generator steps");
  return extend_with(m, ds.front());
}

std::vector<Q> characteristic_polynomial(const QMat& a) {
  // Faddeev–LeVerrier: M_0 = 0, c_n = 1; M_k = A M_{k−1} + c_{n−k+1} I, c_{n−k} = −tr(A M_k)/k.
  const std::size_t n = a.size();
  std::vector<Q> c(n + 1, Q(0));
  c[n] = 1;
  QMat M = zero_matrix(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = mat_mul(a, M);
    for (std::size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
    QMat AM = mat_mul(a, M);
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / Q(static_cast<long>(k));
  }
  return c;
}

std::vector<Q> rational_roots(const std::vector<Q>& polyIn) {
  std::vector<Q> poly = polyIn;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  std::vector<Q> roots;
  while (poly.size() > 1 && poly.front() == 0) {
    roots.push_back(Q(0));
    poly.erase(poly.begin());
  }
  if (poly.size() <= 1) return roots;
  mpz_class l = 1;
  for (const auto& x : poly) l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> ints;
  for (const auto& x : poly) ints.push_back(mpz_class(x * l));
  std::set<Q> candidates;
  for (const auto& p : divisors(ints.front()))
    for (const auto& q : divisors(ints.back())) {
      Q c(p, q);
      c.canonicalize();
      candidates.insert(c);
      candidates.insert(-c);
    }
  for (const auto& c : candidates)
    while (poly.size() > 1 && horner(poly, c) == 0) {
      roots.push_back(c);
      poly = deflate(poly, c);
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<GenWeightSpace> gen_weight_decomposition(const FiniteMonoidModule& m) {
  const std::size_t n = m.dim();
  std::vector<GenWeightSpace> pieces{{{}, identity_basis(n)}};
  if (n == 0) return {};
  for (const auto& g : m.generators()) {
    auto roots = rational_roots(characteristic_polynomial(g.matrix));
    if (roots.size() != n)
      throw UnsplitSpectrum("characteristic polynomial of rho(" + std::to_string(g.lambda[0]) +
                            ",...) does not split over Q");
    std::vector<Q> eig(roots.begin(), roots.end());
    eig.erase(std::unique(eig.begin(), eig.end()), eig.end());
    std::vector<GenWeightSpace> next;
    for (const auto& piece : pieces)
      for (const auto& e : eig) {
        auto ker = nullspace(mat_pow(shifted(g.matrix, e), static_cast<int>(n)), n);
        auto meet = span_intersection(piece.basis, ker, n);
        if (meet.empty()) continue;
        GenWeightSpace s{piece.values, meet};
        s.values.push_back(e);
        next.push_back(std::move(s));
      }
    pieces = std::move(next);
  }
  return pieces;
}

}  // namespace kmh
