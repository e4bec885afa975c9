#include "kmh/principal_series.hpp"

#include "json.hpp"

namespace kmh {

PSModule::PSModule(HeckeAlgebra& A, Character tau, int L)
    : A_(&A), tau_(std::move(tau)), L_(L), basis_(A.group().ball(L)) {
  if (static_cast<int>(tau_.values.size()) != A.dim())
    throw ParseError("character has " + std::to_string(tau_.values.size()) +
                     " values but Y has rank " + std::to_string(A.dim()));
  for (std::size_t i = 0; i < basis_.size(); ++i) pos_[basis_[i]] = static_cast<int>(i);
}

int PSModule::index(Elem w) const {
  auto it = pos_.find(w);
  return it == pos_.end() ? -1 : it->second;
}

QVec PSModule::unit(Elem w) const {
  int i = index(w);
  if (i < 0) throw OutOfBall(group().name(w) + " is outside the ball");
  QVec v = zero();
  v[i] = 1;
  return v;
}

const QMat& PSModule::Z_matrix(const IVec& lambda) {
  auto it = zcache_.find(lambda);
  if (it != zcache_.end()) return it->second;
  QMat m = zero_matrix(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& [v, p] : A_->commute_monomial_past(lambda, basis_[i])) {
      int r = index(v);
      if (r < 0) throw OutOfBall("Z-action left the ball (ball not Bruhat closed?)");
      m[r][i] = eval_poly(tau_, p);
    }
  return zcache_.emplace(lambda, std::move(m)).first->second;
}

QVec PSModule::act_Z(const IVec& lambda, const QVec& x) { return mat_vec(Z_matrix(lambda), x); }

QVec PSModule::act_basis(Elem u, const QVec& x) {
  QVec r = zero();
  for (std::size_t i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    for (const auto& [z, c] : A_->basis_product(u, basis_[i])) {
      int k = index(z);
      if (k < 0)
        throw OutOfBall("H[" + group().name(u) + "] applied to H[" + group().name(basis_[i]) +
                        "] leaves ball(" + std::to_string(L_) + ")");
      r[k] += c * x[i];
    }
  }
  return r;
}

QVec PSModule::act_H(const HeckeElt& h, const QVec& x) {
  QVec r = zero();
  for (const auto& [u, th] : h.coeffs) {
    if (!th.is_polynomial())
      throw NotPolynomial("act_H needs Laurent-polynomial coefficients");
    QVec y = zero();
    for (const auto& [lam, c] : th.num().terms()) {
      QVec z = act_Z(lam, x);
      for (std::size_t i = 0; i < size(); ++i) y[i] += c * z[i];
    }
    QVec hy = act_basis(u, y);
    for (std::size_t i = 0; i < size(); ++i) r[i] += hy[i];
  }
  return r;
}

QVec PSModule::act_on_weight_vector(const HeckeElt& h, const QVec& x, const Character& weight,
                                    const EvalOptions& opt) {
  QVec r = zero();
  for (const auto& [u, th] : h.coeffs) {
    Q c = eval_ratfn(weight, th, opt);
    if (c == 0) continue;
    QVec hy = act_basis(u, x);
    for (std::size_t i = 0; i < size(); ++i) r[i] += c * hy[i];
  }
  return r;
}

bool PSModule::is_weight_vector(const QVec& x, const Character& weight) {
  int d = A_->dim();
  for (int j = 0; j < d; ++j) {
    IVec e(d, 0);
    e[j] = 1;
    QVec z = act_Z(e, x);
    for (std::size_t i = 0; i < size(); ++i)
      if (z[i] != weight.values[j] * x[i]) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> positions_up_to(const PSModule& m, int bound) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.group().length(m.element(i)) <= bound) idx.push_back(i);
  return idx;
}

QMat restrict_matrix(const QMat& a, const std::vector<std::size_t>& idx) {
  QMat r = zero_matrix(idx.size(), idx.size());
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t q = 0; q < idx.size(); ++q) r[p][q] = a[idx[p]][idx[q]];
  return r;
}

QVec embed(const QVec& small, const std::vector<std::size_t>& idx, std::size_t n) {
  QVec v(n, Q(0));
  for (std::size_t p = 0; p < idx.size(); ++p) v[idx[p]] = small[p];
  return v;
}

}  // namespace

std::vector<QVec> PSModule::weight_space(const Character& weight, int supportBound) {
  return gen_weight_space(weight, 1, supportBound);
}

std::vector<QVec> PSModule::gen_weight_space(const Character& weight, int k, int supportBound) {
  if (k <= 0) return {};
  auto idx = positions_up_to(*this, std::min(supportBound, L_));
  std::size_t m = idx.size();
  int d = A_->dim();
  std::vector<QMat> N;
  for (int j = 0; j < d; ++j) {
    IVec e(d, 0);
    e[j] = 1;
    // Rows outside idx vanish on vectors supported in idx (the action only lowers support).
    QMat z = restrict_matrix(Z_matrix(e), idx);
    for (std::size_t i = 0; i < m; ++i) z[i][i] -= weight.values[j];
    N.push_back(std::move(z));
  }
  // K_i = ker P_i with P_0 = Id and P_{i+1} = [P_i N_1; …; P_i N_d].
  QMat P = identity_matrix(m);
  for (int step = 0; step < k; ++step) {
    QMat next;
    for (const auto& n : N) {
      QMat pn = mat_mul(P, n);
      next.insert(next.end(), pn.begin(), pn.end());
    }
    P = span_basis(next, m);
    if (P.empty()) break;
  }
  std::vector<QVec> out;
  for (const auto& v : nullspace(P, m)) out.push_back(embed(v, idx, size()));
  return out;
}

std::vector<QVec> PSModule::gen_weight_space(const Character& weight, int supportBound) {
  std::size_t last = 0;
  for (int k = 1;; ++k) {
    auto sp = gen_weight_space(weight, k, supportBound);
    if (k > 1 && sp.size() == last) return sp;
    last = sp.size();
    if (k > static_cast<int>(size()) + 1) return sp;
  }
}

QVec PSModule::F_at_tau(Elem w, const EvalOptions& opt) {
  if (group().length(w) > L_) throw OutOfBall(group().name(w) + " is outside the ball");
  HeckeElt f = A_->F(w);
  QVec r = zero();
  for (const auto& [v, th] : f.coeffs) r[index(v)] = eval_ratfn(tau_, th, opt);
  return r;
}

std::optional<QVec> PSModule::F_at_tau_recursive(Elem w) { return recursive_F(w, false); }

std::optional<QVec> PSModule::F_prime_at_tau_recursive(Elem w) { return recursive_F(w, true); }

std::optional<QVec> PSModule::recursive_F(Elem w, bool normalized) {
  WeylGroup& W = group();
  if (W.length(w) > L_) throw OutOfBall(W.name(w) + " is outside the ball");
  Word word = W.reduced_word(w);
  QVec x = v_tau();
  Elem cur = 0;  // s_{k+1}⋯s_r
  for (std::size_t k = word.size(); k-- > 0;) {
    int s = word[k];
    Character weight = char_apply(W, cur, tau_);
    auto z = try_eval_ratfn(weight, A_->zeta(s));
    if (!z || (normalized && *z == 0)) return std::nullopt;
    const Q& sg = A_->datum().sigma[s];
    QVec hx = act_basis(W.simple(s), x);
    Q scale = normalized ? Q(1 / *z) : Q(1);
    for (std::size_t i = 0; i < size(); ++i)
      x[i] = scale * (sg * hx[i] + (*z - sg * sg) * x[i]);
    cur = W.lmul(s, cur);
  }
  return x;
}

std::vector<Elem> PSModule::max_support(const QVec& x) {
  std::vector<Elem> supp, out;
  for (std::size_t i = 0; i < size(); ++i)
    if (x[i] != 0) supp.push_back(basis_[i]);
  for (Elem a : supp) {
    bool maximal = true;
    for (Elem b : supp)
      if (a != b && group().bruhat_leq(a, b)) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

int PSModule::support_length(const QVec& x) const {
  int r = -1;
  for (std::size_t i = 0; i < size(); ++i)
    if (x[i] != 0) r = std::max(r, group().length(basis_[i]));
  return r;
}

std::string PSModule::vector_json(const QVec& x) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < size(); ++i)
    if (x[i] != 0) j[group().name(basis_[i])] = x[i].get_str();
  return j.dump();
}

QVec PSOperator::apply(const QVec& y) const {
  QVec r = target->zero();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    // act_basis throws OutOfBall as soon as a product genuinely leaves the ball.
    QVec hx = target->act_basis(target->element(i), x);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += y[i] * hx[k];
  }
  return r;
}

PSOperator frobenius_op(PSModule& target, const QVec& x, const Character& weight) {
  if (!target.is_weight_vector(x, weight))
    throw NotAWeightVector("vector is not of weight " + weight.str());
  PSOperator op;
  op.target = &target;
  op.source = weight;
  op.x = x;
  op.reach = std::max(0, target.support_length(x));
  return op;
}

PSOperator compose(const PSOperator& outer, const PSOperator& inner) {
  PSOperator op;
  op.target = outer.target;
  op.source = inner.source;
  op.x = outer.apply(inner.x);
  op.reach = outer.reach + inner.reach;
  return op;
}

Character OrbitModules::character(Elem w) { return char_apply(A_->group(), w, tau_); }

PSModule& OrbitModules::module_for(const Character& c) {
  auto it = mods_.find(c);
  if (it != mods_.end()) return *it->second;
  auto m = std::make_unique<PSModule>(*A_, c, L_);
  return *mods_.emplace(c, std::move(m)).first->second;
}

PSModule& OrbitModules::module_for(Elem w) { return module_for(character(w)); }

EdgeIntertwiner edge_intertwiner(OrbitModules& orbit, Elem w, int s) {
  WeylGroup& W = orbit.algebra().group();
  HeckeAlgebra& A = orbit.algebra();
  EdgeIntertwiner e;
  e.from = w;
  e.letter = s;
  e.to = W.lmul(s, w);
  Character cw = orbit.character(w), csw = orbit.character(e.to);
  // x = F_s(sw.τ)v_{sw.τ} ∈ I_{sw.τ}(w.τ).
  PSModule& target = orbit.module_for(csw);
  Q zt = eval_ratfn(csw, A.zeta(s));
  const Q& sg = A.datum().sigma[s];
  QVec x = target.zero();
  x[target.index(W.simple(s))] = sg;
  x[0] = zt - sg * sg;
  e.op = frobenius_op(target, x, cw);
  e.zeta_value = try_eval_ratfn(cw, A.zeta(s));
  e.twisted_zeta_value = try_eval_ratfn(csw, A.zeta(s));  // w.τ(^sζ_s) = ζ_s(sw.τ)
  e.iso = e.zeta_value && e.twisted_zeta_value && *e.zeta_value != 0 &&
          *e.twisted_zeta_value != 0;
  return e;
}

}  // namespace kmh
