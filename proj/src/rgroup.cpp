#include "kmh/rgroup.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace kmh {

namespace {

IVec negated(IVec v) {
  for (auto& x : v) x = -x;
  return v;
}

std::string coroot_string(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

QVec end_vector(const EndElt& e, const std::vector<Elem>& G) {
  QVec v(G.size(), Q(0));
  for (std::size_t i = 0; i < G.size(); ++i) {
    auto it = e.find(G[i]);
    if (it != e.end()) v[i] = it->second;
  }
  return v;
}

bool same_span(const std::vector<QVec>& a, const std::vector<QVec>& b, std::size_t dim) {
  std::vector<QVec> both(a);
  both.insert(both.end(), b.begin(), b.end());
  std::size_t ra = span_basis(a, dim).size(), rb = span_basis(b, dim).size();
  return ra == rb && span_basis(both, dim).size() == ra;
}

}  // namespace

RGroupAnalysis::RGroupAnalysis(HeckeAlgebra& A, Character tau, int L)
    : A_(&A), module_(A, tau, L) {
  if (!A.datum().equal_parameters())
    throw UnsupportedParameters("the R-group analysis assumes sigma_s = sigma'_s = sigma for all s");
  data_.tau = std::move(tau);
  data_.L = L;
  data_.sigma = A.datum().common_sigma();
  audit();
}

bool RGroupAnalysis::in_PhiTau(const IVec& beta) const {
  return group().coroot_sign(beta) > 0 && data_.tau(beta) == 1;
}

bool RGroupAnalysis::in_Wtau(Elem w) { return char_apply(group(), w, data_.tau) == data_.tau; }

void RGroupAnalysis::audit() {
  WeylGroup& W = group();
  const Q q = data_.sigma * data_.sigma;
  std::set<IVec> seen;
  for (Elem w : W.ball(data_.L))
    for (int s = 0; s < W.rank(); ++s) {
      IVec beta = W.apply(w, W.datum().coroots[s]);
      if (W.coroot_sign(beta) < 0) beta = negated(beta);
      if (!seen.insert(beta).second) continue;
      data_.coroots.push_back(beta);
      Q v = data_.tau(beta);
      if (v == q || v == 1 / q)
        throw NotInUC("tau takes the value " + to_string(v) + " on the real coroot " +
                      coroot_string(beta));
      if (v == 1) data_.PhiTau.push_back(beta);
      if (v == -1) data_.minusOne.push_back(beta);
    }
  for (Elem w : W.ball(data_.L))
    if (in_Wtau(w)) data_.Wtau.push_back(w);
  for (const IVec& beta : data_.PhiTau) {
    Elem r = W.coroot_reflection(beta);
    int hits = 0;
    for (const IVec& g : W.inversion_coroots(r))
      if (data_.tau(g) == 1) ++hits;
    if (hits == 1) data_.STau.push_back(r);
  }
  for (Elem w : data_.Wtau) {
    auto [wR, u] = decompose(w);
    if (wR == 0) data_.Wparen.push_back(w);
    if (u == 0) data_.RTau.push_back(w);
  }
  // Greedy generating set of R_τ ∩ ball.
  auto closure = [&](const std::vector<Elem>& gens) {
    std::set<Elem> got{0};
    std::deque<Elem> todo{0};
    while (!todo.empty()) {
      Elem e = todo.front();
      todo.pop_front();
      for (Elem g : gens)
        for (Elem n : {W.mul(e, g), W.mul(e, W.inverse(g))})
          if (W.length(n) <= data_.L && got.insert(n).second) todo.push_back(n);
    }
    return got;
  };
  std::set<Elem> generated{0};
  for (Elem r : data_.RTau)
    if (!generated.count(r)) {
      data_.RGens.push_back(r);
      generated = closure(data_.RGens);
    }
  build_paren_words();
}

void RGroupAnalysis::build_paren_words() {
  WeylGroup& W = group();
  data_.STauWord[0] = {};
  tau_len_[0] = 0;
  std::deque<Elem> todo{0};
  while (!todo.empty()) {
    Elem e = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < data_.STau.size(); ++i) {
      Elem n = W.mul(e, data_.STau[i]);
      if (W.length(n) > data_.L || data_.STauWord.count(n)) continue;
      Word w = data_.STauWord[e];
      w.push_back(static_cast<int>(i));
      data_.STauWord[n] = w;
      tau_len_[n] = static_cast<int>(w.size());
      todo.push_back(n);
    }
  }
}

int RGroupAnalysis::tau_length(Elem w) const {
  auto it = tau_len_.find(w);
  if (it == tau_len_.end()) throw OutOfBall("no S_tau-word recorded for this element");
  return it->second;
}

std::pair<Elem, Elem> RGroupAnalysis::decompose(Elem w) {
  WeylGroup& W = group();
  Elem cur = w, u = 0;
  for (;;) {
    std::optional<IVec> hit;
    for (const IVec& g : W.inversion_coroots(cur))
      if (data_.tau(g) == 1) {
        hit = g;
        break;
      }
    if (!hit) break;
    Elem r = W.coroot_reflection(*hit);
    cur = W.mul(cur, r);
    u = W.mul(r, u);
  }
  return {cur, u};
}

Rank2Case RGroupAnalysis::classify_rank2() {
  WeylGroup& W = group();
  if (W.rank() != 2) throw InvalidDatum("the classification needs a rank-2 datum");
  if (W.is_finite()) throw InvalidDatum("the classification needs a non-Cartan matrix");
  const auto& d = data_;
  std::vector<Elem> refl;
  for (Elem w : d.Wtau)
    if (W.length(w) % 2 == 1) refl.push_back(w);
  Rank2Case c;
  std::size_t n = d.Wtau.size();
  if (n == 1) {
    c = {1, "W_tau = W_(tau) = R_tau = {1}", false};
  } else if (n == 2 && refl.size() == 1) {
    if (d.Wparen.size() == 2) c = {2, "W_tau = W_(tau) = Z/2, R_tau = {1}", false};
    else c = {3, "W_tau = R_tau = Z/2, W_(tau) = {1}", false};
  } else if (refl.empty()) {
    if (d.Wparen.size() != 1 || d.RTau.size() != n)
      throw Ambiguous("reflection-free stabiliser with nontrivial W_(tau)");
    c = {4, "W_tau = R_tau = Z, W_(tau) = {1}", true};
  } else if (refl.size() >= 2) {
    if (d.Wparen.size() == n) c = {5, "W_tau = W_(tau) = D_inf, R_tau = {1}", true};
    else if (d.Wparen.size() == 1) c = {6, "W_tau = R_tau = D_inf, W_(tau) = {1}", true};
    else if (d.RTau.size() == 2) c = {7, "W_tau = D_inf, W_(tau) = D_inf, R_tau = Z/2", true};
    else throw Ambiguous("dihedral stabiliser with an unexpected R-group in the ball");
  } else {
    throw Ambiguous("ball(" + std::to_string(d.L) + ") is too small to separate the shapes");
  }
  return c;
}

QVec RGroupAnalysis::psi_vector(Elem wR) {
  auto it = psi_cache_.find(wR);
  if (it != psi_cache_.end()) return it->second;
  auto v = module_.F_at_tau_recursive(wR);
  QVec x = v ? *v : module_.F_at_tau(wR);
  return psi_cache_.emplace(wR, x).first->second;
}

QVec RGroupAnalysis::psi_prime_vector(Elem wR) {
  auto it = psi_prime_cache_.find(wR);
  if (it != psi_prime_cache_.end()) return it->second;
  auto v = module_.F_prime_at_tau_recursive(wR);
  QVec x;
  if (v) {
    x = *v;
  } else {
    x = module_.zero();
    for (const auto& [u, th] : A_->F_prime(wR).coeffs)
      x[module_.index(u)] = eval_ratfn(data_.tau, th);
  }
  return psi_prime_cache_.emplace(wR, x).first->second;
}

PSOperator RGroupAnalysis::psi(Elem wR) { return frobenius_op(module_, psi_vector(wR), data_.tau); }

PSOperator RGroupAnalysis::psi_prime(Elem wR) {
  return frobenius_op(module_, psi_prime_vector(wR), data_.tau);
}

std::vector<EndRelation> RGroupAnalysis::end_table() {
  WeylGroup& W = group();
  std::vector<EndRelation> out;
  for (Elem a : data_.RTau)
    for (Elem b : data_.RTau) {
      if (W.length(a) + W.length(b) > data_.L) continue;
      EndRelation r;
      r.a = a;
      r.b = b;
      r.product = W.mul(b, a);
      if (W.length(r.product) > data_.L) continue;
      QVec lhs = psi_prime(a).apply(psi_prime_vector(b));
      r.holds = lhs == psi_prime_vector(r.product);
      out.push_back(r);
    }
  return out;
}

QVec RGroupAnalysis::K_vector(Elem r) {
  QVec x = module_.zero();
  for (const auto& [u, th] : A_->K(r).coeffs) {
    Q c = eval_ratfn(data_.tau, th);
    if (c == 0) continue;
    int i = module_.index(u);
    if (i < 0) throw OutOfBall("K_r(tau) has support outside the ball");
    x[i] = c;
  }
  return x;
}

bool RGroupAnalysis::gen_weight_basis_complete(int bound) const {
  WeylGroup& W = group();
  if (data_.STau.empty()) return bound <= data_.L;
  for (Elem wR : data_.RTau)
    if (W.length(wR) <= bound && bound + W.length(wR) > data_.L) return false;
  return true;
}

std::vector<GenWeightVector> RGroupAnalysis::gen_weight_basis(int bound) {
  WeylGroup& W = group();
  std::vector<GenWeightVector> out;
  std::map<Elem, HeckeElt> kcache;
  for (Elem w : data_.Wparen) {
    auto wit = data_.STauWord.find(w);
    if (wit == data_.STauWord.end()) continue;
    for (Elem wR : data_.RTau) {
      if (W.length(W.mul(w, wR)) > bound) continue;
      if (!kcache.count(w)) {
        std::vector<Elem> refl;
        for (int i : wit->second) refl.push_back(data_.STau[i]);
        kcache[w] = A_->K_underline(refl);
      }
      HeckeElt h = wR == 0 ? kcache[w] : A_->mul(kcache[w], A_->F(wR));
      GenWeightVector g;
      g.w = w;
      g.wR = wR;
      g.vec = module_.zero();
      for (const auto& [u, th] : h.coeffs) {
        Q c = eval_ratfn(data_.tau, th);
        if (c == 0) continue;
        int i = module_.index(u);
        if (i < 0) throw OutOfBall("K-basis vector has support outside the ball");
        g.vec[i] = c;
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<QVec> RGroupAnalysis::ideal_to_module(const std::vector<EndElt>& J) {
  WeylGroup& W = group();
  int reach = 0;
  for (const auto& phi : J)
    for (const auto& [g, c] : phi)
      if (c != 0) reach = std::max(reach, W.length(g));
  std::vector<QVec> vecs;
  for (const auto& phi : J)
    for (Elem u : module_.basis()) {
      if (W.length(u) > data_.L - reach) continue;
      QVec y = module_.zero();
      for (const auto& [g, c] : phi) {
        if (c == 0) continue;
        QVec z = module_.act_basis(u, psi_prime_vector(g));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * z[i];
      }
      vecs.push_back(std::move(y));
    }
  return span_basis(vecs, module_.size());
}

std::vector<EndElt> RGroupAnalysis::module_to_ideal(const std::vector<QVec>& M) {
  const auto& G = data_.RTau;
  std::size_t n = module_.size(), k = G.size();
  QMat a = zero_matrix(n, k + M.size());
  for (std::size_t j = 0; j < k; ++j) {
    QVec y = psi_prime_vector(G[j]);
    for (std::size_t i = 0; i < n; ++i) a[i][j] = y[i];
  }
  for (std::size_t j = 0; j < M.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][k + j] = M[j][i];
  std::vector<QVec> cs;
  for (const auto& v : nullspace(a, k + M.size())) cs.emplace_back(v.begin(), v.begin() + k);
  std::vector<EndElt> out;
  for (const auto& c : span_basis(cs, k)) {
    EndElt e;
    for (std::size_t j = 0; j < k; ++j)
      if (c[j] != 0) e[G[j]] = c[j];
    out.push_back(std::move(e));
  }
  return out;
}

std::pair<std::vector<QVec>, std::vector<QVec>> RGroupAnalysis::z2_images() {
  if (data_.RTau.size() != 2) throw Ambiguous("R_tau is not Z/2 in the ball");
  Elem r = data_.RTau[1];
  return {ideal_to_module({{{0, Q(1)}, {r, Q(1)}}}), ideal_to_module({{{0, Q(-1)}, {r, Q(1)}}})};
}

std::vector<IdealRoundTrip> RGroupAnalysis::z2_dictionary() {
  if (data_.RTau.size() != 2) throw Ambiguous("R_tau is not Z/2 in the ball");
  Elem r = data_.RTau[1];
  std::vector<IdealRoundTrip> out;
  std::vector<std::pair<std::string, std::vector<EndElt>>> ideals = {
      {"0", {}},
      {"(psi'+1)", {{{0, Q(1)}, {r, Q(1)}}}},
      {"(psi'-1)", {{{0, Q(-1)}, {r, Q(1)}}}},
      {"End", {{{0, Q(1)}}, {{r, Q(1)}}}}};
  for (auto& [name, J] : ideals) {
    IdealRoundTrip t;
    t.name = name;
    t.ideal = J;
    t.module = ideal_to_module(J);
    t.back = module_to_ideal(t.module);
    std::vector<QVec> a, b;
    for (const auto& e : t.ideal) a.push_back(end_vector(e, data_.RTau));
    for (const auto& e : t.back) b.push_back(end_vector(e, data_.RTau));
    t.roundTrip = same_span(a, b, data_.RTau.size()) &&
                  same_span(ideal_to_module(t.back), t.module, module_.size());
    out.push_back(std::move(t));
  }
  return out;
}

ChainReport RGroupAnalysis::z_chain(const Q& a, int steps) {
  WeylGroup& W = group();
  if (data_.RGens.size() != 1 || data_.Wparen.size() != 1)
    throw Ambiguous("R_tau is not infinite cyclic in the ball");
  ChainReport rep;
  rep.generator = data_.RGens[0];
  rep.a = a;
  Elem t = rep.generator, ti = W.inverse(t);
  // Window of exponents n with ℓ(t^n) ≤ L, written as vectors F'_{t^n}(τ)v_τ.
  std::map<int, QVec> y;
  y[0] = psi_prime_vector(0);
  for (int sign : {1, -1}) {
    Elem cur = 0;
    for (int n = 1;; ++n) {
      cur = W.mul(cur, sign > 0 ? t : ti);
      if (W.length(cur) > data_.L) break;
      y[sign * n] = psi_prime_vector(cur);
    }
  }
  int lo = y.begin()->first, hi = y.rbegin()->first;
  for (int i = 0; i <= steps; ++i) {
    // (ψ' + a)^i ψ'_{t^n}(v_τ) = Σ_j C(i,j) a^{i−j} ψ'_{t^{n+j}}(v_τ).
    std::vector<QVec> vecs;
    for (int n = lo; n + i <= hi; ++n) {
      QVec v = module_.zero();
      Q binom = 1;
      for (int j = 0; j <= i; ++j) {
        if (j > 0) binom = binom * (i - j + 1) / j;
        Q c = binom * qpow(a, i - j);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += c * y[n + j][k];
      }
      vecs.push_back(std::move(v));
    }
    rep.dims.push_back(span_basis(vecs, module_.size()).size());
  }
  rep.strictlyDecreasing = true;
  for (std::size_t i = 1; i < rep.dims.size(); ++i)
    rep.strictlyDecreasing = rep.strictlyDecreasing && rep.dims[i] < rep.dims[i - 1];
  return rep;
}

RGroupAnalysis::IrrDims RGroupAnalysis::irr_dimension_report() {
  WeylGroup& W = group();
  auto orbit = [&](int L) {
    std::set<Character> chars;
    for (Elem w : W.ball(L)) chars.insert(char_apply(W, w, data_.tau));
    return chars.size();
  };
  IrrDims d;
  d.paren = data_.Wparen.size();
  d.cosets = orbit(data_.L);
  d.product = d.paren * d.cosets;
  d.stable = data_.L >= 2 && orbit(data_.L - 2) == d.cosets;
  return d;
}

std::string RGroupAnalysis::json_report() {
  WeylGroup& W = group();
  using J = nlohmann::ordered_json;
  auto names = [&](const std::vector<Elem>& v) {
    J a = J::array();
    for (Elem w : v) a.push_back(W.name(w));
    return a;
  };
  J j;
  j["tau"] = data_.tau.str();
  j["L"] = data_.L;
  try {
    Rank2Case c = classify_rank2();
    j["case"] = {{"number", c.number}, {"shape", c.shape}, {"ballRelative", c.ballRelative}};
  } catch (const Error& e) {
    j["case"] = {{"number", nullptr}, {"reason", e.what()}};
  }
  j["Wtau"] = names(data_.Wtau);
  j["Wparen"] = names(data_.Wparen);
  j["STau"] = names(data_.STau);
  j["Rtau"] = names(data_.RTau);
  j["RtauGenerators"] = names(data_.RGens);
  J phi = J::array();
  for (const auto& b : data_.PhiTau) phi.push_back(coroot_string(b));
  j["PhiTau"] = phi;
  j["auditedCoroots"] = data_.coroots.size();
  J et = J::array();
  for (const auto& r : end_table())
    et.push_back({{"a", W.name(r.a)}, {"b", W.name(r.b)}, {"product", W.name(r.product)},
                  {"holds", r.holds}});
  j["endTable"] = et;
  J lattice = J::object();
  if (data_.RTau.size() == 2) {
    J ideals = J::array();
    for (const auto& t : z2_dictionary())
      ideals.push_back({{"ideal", t.name}, {"moduleDim", t.module.size()},
                        {"roundTrip", t.roundTrip}});
    lattice["ideals"] = ideals;
  } else if (data_.RGens.size() == 1 && data_.Wparen.size() == 1 && data_.RTau.size() > 2) {
    ChainReport c = z_chain(Q(1), 4);
    lattice["chain"] = {{"generator", W.name(c.generator)}, {"a", to_string(c.a)},
                        {"weightTauDims", c.dims}, {"strictlyDecreasing", c.strictlyDecreasing}};
  }
  j["idealLattice"] = lattice;
  IrrDims d = irr_dimension_report();
  j["irreducible"] = {{"Wparen", d.paren}, {"cosets", d.cosets}, {"dimN", d.product},
                      {"stable", d.stable}};
  return j.dump(2);
}

}  // namespace kmh
