#include "kmh/weyl.hpp"

#include <algorithm>

namespace kmh {

std::string to_string(TitsVerdict v) {
  switch (v) {
    case TitsVerdict::Inside: return "inside";
    case TitsVerdict::OutsideFixedHyperplanes: return "outside";
    case TitsVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

IMat imat_identity(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IMat r(n, IVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      long x = a[i][l];
      if (!x) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += x * b[l][j];
    }
  return r;
}

IVec imat_vec(const IMat& a, const IVec& v) {
  IVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

IMat simple_reflection_matrix(const RootDatum& d, int i) {
  // Column j is r_i(y_j) = y_j − α_i(y_j)α_i∨.
  IMat m = imat_identity(d.rankY);
  for (int j = 0; j < d.rankY; ++j)
    for (int k = 0; k < d.rankY; ++k) m[k][j] -= d.pairing[i][j] * d.coroots[i][k];
  return m;
}

std::size_t WeylGroup::MatHash::operator()(const IMat& m) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& row : m)
    for (long x : row) h ^= std::hash<long>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

WeylGroup::WeylGroup(RootDatum datum) : datum_(std::move(datum)) {
  datum_.require_valid();
  int n = rank(), d = dim();
  // Left inverse of the coroot matrix through a set of pivot rows.
  QMat c = zero_matrix(d, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) c[k][i] = datum_.coroots[i][k];
  QMat ct = transpose(c);
  auto piv = rref(ct);
  coroot_pivots_ = piv;
  QMat b = zero_matrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < n; ++i) b[r][i] = c[piv[r]][i];
  coroot_pivot_inv_ = *kmh::inverse(b);

  Rec id;
  id.mat = imat_identity(d);
  id.inv = 0;
  id.left.assign(n, -1);
  id.right.assign(n, -1);
  recs_.push_back(id);
  index_.emplace(recs_[0].mat, 0);
  for (int s = 0; s < n; ++s) {
    simple_mats_.push_back(simple_reflection_matrix(datum_, s));
    simple_.push_back(from_matrix(simple_mats_.back()));
  }
}

std::optional<QVec> WeylGroup::coroot_coords(const IVec& v) const {
  int n = rank();
  QVec sub(n);
  for (int r = 0; r < n; ++r) sub[r] = Q(v[coroot_pivots_[r]]);
  QVec c = mat_vec(coroot_pivot_inv_, sub);
  for (int k = 0; k < dim(); ++k) {
    Q acc = 0;
    for (int i = 0; i < n; ++i) acc += c[i] * datum_.coroots[i][k];
    if (acc != v[k]) return std::nullopt;
  }
  return c;
}

int WeylGroup::coroot_sign(const IVec& v) const {
  auto c = coroot_coords(v);
  if (!c) throw NotARealCoroot("vector is outside the span of the simple coroots");
  bool pos = false, neg = false;
  for (const auto& x : *c) {
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  if (pos == neg) throw NotARealCoroot("coroot coordinates have mixed signs or vanish");
  return pos ? 1 : -1;
}

IMat WeylGroup::inverse_matrix(const IMat& m) const {
  auto inv = kmh::inverse(to_qmat(m));
  if (!inv) throw InvalidDatum("singular matrix is not a Weyl group element");
  IMat r(m.size(), IVec(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Q& x = (*inv)[i][j];
      if (x.get_den() != 1) throw InvalidDatum("matrix is not invertible over Z");
      r[i][j] = x.get_num().get_si();
    }
  return r;
}

int WeylGroup::left_descent_unlocked(const IMat& inv) const {
  // s is a left descent of w iff w⁻¹.α_s∨ < 0; `inv` is the matrix of w⁻¹.
  for (int s = 0; s < rank(); ++s) {
    IVec v = imat_vec(inv, datum_.coroots[s]);
    if (coroot_sign(v) < 0) return s;
  }
  return -1;
}

Elem WeylGroup::lookup_or_add_unlocked(IMat m, int len, Word word) {
  auto it = index_.find(m);
  if (it != index_.end()) return it->second;
  Rec r;
  r.mat = std::move(m);
  r.len = len;
  r.word = std::move(word);
  r.left.assign(rank(), -1);
  r.right.assign(rank(), -1);
  Elem id = static_cast<Elem>(recs_.size());
  recs_.push_back(std::move(r));
  index_.emplace(recs_.back().mat, id);
  return id;
}

Elem WeylGroup::intern_unlocked(const IMat& m) {
  auto it = index_.find(m);
  if (it != index_.end()) return it->second;
  // Peel smallest left descents until a known element is reached.
  IMat cur = m, inv = inverse_matrix(m);
  std::vector<int> letters;
  std::vector<IMat> chain;
  while (true) {
    auto f = index_.find(cur);
    if (f != index_.end()) {
      Elem e = f->second;
      for (std::size_t k = letters.size(); k-- > 0;) {
        Word w{letters[k]};
        const Word& tail = recs_[e].word;
        w.insert(w.end(), tail.begin(), tail.end());
        int len = recs_[e].len + 1;
        e = lookup_or_add_unlocked(chain[k], len, std::move(w));
      }
      return e;
    }
    int s = left_descent_unlocked(inv);
    if (s < 0) throw InvalidDatum("matrix is not in the Weyl group");
    if (letters.size() > 100000) throw InvalidDatum("descent peeling did not terminate");
    letters.push_back(s);
    chain.push_back(cur);
    cur = imat_mul(simple_mats_[s], cur);
    inv = imat_mul(inv, simple_mats_[s]);
  }
}

Elem WeylGroup::from_matrix(const IMat& m) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return intern_unlocked(m);
}

Elem WeylGroup::from_word(const Word& w) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  Elem e = 0;
  for (int s : w) {
    if (s < 0 || s >= rank()) throw ParseError("letter out of range in word");
    e = rmul_unlocked(e, s);
  }
  return e;
}

Elem WeylGroup::lmul_unlocked(int s, Elem w) {
  Elem c = recs_[w].left[s];
  if (c >= 0) return c;
  Elem r = intern_unlocked(imat_mul(simple_mats_[s], recs_[w].mat));
  recs_[w].left[s] = r;
  recs_[r].left[s] = w;
  return r;
}

Elem WeylGroup::rmul_unlocked(Elem w, int s) {
  Elem c = recs_[w].right[s];
  if (c >= 0) return c;
  Elem r = intern_unlocked(imat_mul(recs_[w].mat, simple_mats_[s]));
  recs_[w].right[s] = r;
  recs_[r].right[s] = w;
  return r;
}

Elem WeylGroup::mul_unlocked(Elem a, Elem b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (recs_[b].len <= 2) {
    Elem e = a;
    Word w = recs_[b].word;
    for (int s : w) e = rmul_unlocked(e, s);
    return e;
  }
  return intern_unlocked(imat_mul(recs_[a].mat, recs_[b].mat));
}

Elem WeylGroup::inverse_unlocked(Elem w) {
  if (recs_[w].inv >= 0) return recs_[w].inv;
  Elem r = intern_unlocked(inverse_matrix(recs_[w].mat));
  recs_[w].inv = r;
  recs_[r].inv = w;
  return r;
}

Elem WeylGroup::mul(Elem a, Elem b) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return mul_unlocked(a, b);
}
Elem WeylGroup::lmul(int s, Elem w) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return lmul_unlocked(s, w);
}
Elem WeylGroup::rmul(Elem w, int s) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return rmul_unlocked(w, s);
}
Elem WeylGroup::inverse(Elem w) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return inverse_unlocked(w);
}

IMat WeylGroup::matrix(Elem w) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return recs_[w].mat;
}
int WeylGroup::length(Elem w) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return recs_[w].len;
}
Word WeylGroup::reduced_word(Elem w) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return recs_[w].word;
}
std::size_t WeylGroup::interned() const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return recs_.size();
}

IVec WeylGroup::apply(Elem w, const IVec& lambda) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return imat_vec(recs_[w].mat, lambda);
}

bool WeylGroup::is_left_descent(int s, Elem w) { return length(lmul(s, w)) < length(w); }
bool WeylGroup::is_right_descent(Elem w, int s) { return length(rmul(w, s)) < length(w); }

std::vector<IVec> WeylGroup::inversion_coroots(Elem w) {
  // For w = s_1⋯s_r: {α_{s_r}∨, s_r.α_{s_{r−1}}∨, …, s_r⋯s_2.α_{s_1}∨}.
  Word word = reduced_word(w);
  std::vector<IVec> out;
  Elem suffix = 0;  // s_r⋯s_{k+1}
  for (std::size_t k = word.size(); k-- > 0;) {
    out.push_back(apply(suffix, datum_.coroots[word[k]]));
    suffix = mul(suffix, simple(word[k]));
  }
  return out;
}

bool WeylGroup::bruhat_unlocked(Elem u, Elem w) {
  if (recs_[u].len > recs_[w].len) return false;
  if (u == 0) return true;
  if (u == w) return true;
  if (recs_[u].len == recs_[w].len) return false;
  auto key = std::make_pair(u, w);
  auto it = bruhat_cache_.find(key);
  if (it != bruhat_cache_.end()) return it->second;
  int s = recs_[w].word.front();
  Elem sw = lmul_unlocked(s, w);
  Elem su = lmul_unlocked(s, u);
  bool r = recs_[su].len < recs_[u].len ? bruhat_unlocked(su, sw) : bruhat_unlocked(u, sw);
  bruhat_cache_[key] = r;
  return r;
}

bool WeylGroup::bruhat_leq(Elem u, Elem w) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return bruhat_unlocked(u, w);
}

std::set<Word> WeylGroup::all_reduced_words(Elem w) {
  std::set<Word> out;
  if (length(w) == 0) {
    out.insert(Word{});
    return out;
  }
  for (int s = 0; s < rank(); ++s) {
    Elem sw = lmul(s, w);
    if (length(sw) >= length(w)) continue;
    for (const auto& tail : all_reduced_words(sw)) {
      Word x{s};
      x.insert(x.end(), tail.begin(), tail.end());
      out.insert(std::move(x));
    }
  }
  return out;
}

IVec WeylGroup::reflection_coroot(Elem r) {
  if (r == 0 || inverse(r) != r || length(r) % 2 == 0)
    throw NotAReflection(name(r) + " is not a reflection");
  // r = s_1⋯s_k t s_k⋯s_1 with lengths dropping by two each step.
  std::vector<int> conj;
  Elem cur = r;
  while (length(cur) > 1) {
    int s = reduced_word(cur).front();
    Elem next = rmul(lmul(s, cur), s);
    if (length(next) != length(cur) - 2) throw NotAReflection(name(r) + " is not a reflection");
    conj.push_back(s);
    cur = next;
  }
  int t = reduced_word(cur).front();
  IVec beta = datum_.coroots[t];
  for (std::size_t k = conj.size(); k-- > 0;) beta = apply(simple(conj[k]), beta);
  // Confirm r(x) = x − β(x)β∨.
  IVec root = root_of_coroot(beta);
  IMat expect = imat_identity(dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) expect[i][j] -= beta[i] * root[j];
  if (expect != matrix(r)) throw NotAReflection(name(r) + " is not a reflection");
  return beta;
}

Elem WeylGroup::coroot_reflection(const IVec& beta) {
  if (int(beta.size()) != dim()) throw NotARealCoroot("coroot has wrong dimension");
  if (coroot_sign(beta) < 0) throw NotARealCoroot("coroot is not positive");
  std::vector<int> conj;
  IVec cur = beta;
  for (int guard = 0; guard < 10000; ++guard) {
    for (int s = 0; s < rank(); ++s)
      if (cur == datum_.coroots[s]) {
        Elem e = simple(s);
        for (std::size_t k = conj.size(); k-- > 0;)
          e = rmul(lmul(conj[k], e), conj[k]);
        return e;
      }
    int pick = -1;
    for (int s = 0; s < rank(); ++s)
      if (datum_.alpha(s, cur) > 0) {
        pick = s;
        break;
      }
    if (pick < 0) throw NotARealCoroot("no simple reflection lowers the coroot");
    cur = apply(simple(pick), cur);
    if (coroot_sign(cur) < 0) throw NotARealCoroot("vector is not a real coroot");
    conj.push_back(pick);
  }
  throw NotARealCoroot("coroot reduction did not terminate");
}

std::pair<Elem, int> WeylGroup::coroot_origin(const IVec& beta) {
  // Lower a positive coroot by simple reflections until it is simple.
  IVec cur = beta;
  bool negative = coroot_sign(cur) < 0;
  if (negative)
    for (auto& x : cur) x = -x;
  std::vector<int> conj;
  for (int guard = 0; guard < 10000; ++guard) {
    int t = -1;
    for (int s = 0; s < rank(); ++s)
      if (cur == datum_.coroots[s]) t = s;
    if (t >= 0) {
      Elem w = 0;
      for (int s : conj) w = rmul(w, s);
      if (negative) w = rmul(w, t);  // −α_t∨ = s_t.α_t∨
      return {w, t};
    }
    int pick = -1;
    for (int s = 0; s < rank(); ++s)
      if (datum_.alpha(s, cur) > 0) {
        pick = s;
        break;
      }
    if (pick < 0) throw NotARealCoroot("no simple reflection lowers the coroot");
    cur = apply(simple(pick), cur);
    if (coroot_sign(cur) < 0) throw NotARealCoroot("vector is not a real coroot");
    conj.push_back(pick);
  }
  throw NotARealCoroot("coroot reduction did not terminate");
}

IVec WeylGroup::root_of_coroot(const IVec& beta) {
  // β∨ = w.α_t∨  ⇒  β = α_t ∘ w⁻¹.
  auto [w, t] = coroot_origin(beta);
  IMat winv = matrix(inverse(w));
  IVec root(dim(), 0);
  for (int j = 0; j < dim(); ++j)
    for (int k = 0; k < dim(); ++k) root[j] += datum_.pairing[t][k] * winv[k][j];
  return root;
}

std::vector<Elem> WeylGroup::ball(int L) {
  if (L < 0) return {};
  std::lock_guard<std::recursive_mutex> lk(mu_);
  if (ball_cache_L_ < L) {
    std::vector<Elem> all{0}, frontier{0};
    for (int k = 1; k <= L && !frontier.empty(); ++k) {
      std::vector<Elem> next;
      std::set<Elem> seen;
      for (Elem w : frontier)
        for (int s = 0; s < rank(); ++s) {
          Elem sw = lmul_unlocked(s, w);
          if (recs_[sw].len == k && seen.insert(sw).second) next.push_back(sw);
        }
      all.insert(all.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [&](Elem a, Elem b) {
      if (recs_[a].len != recs_[b].len) return recs_[a].len < recs_[b].len;
      return recs_[a].word < recs_[b].word;
    });
    ball_cache_ = std::move(all);
    ball_cache_L_ = L;
  }
  std::vector<Elem> out;
  for (Elem e : ball_cache_)
    if (recs_[e].len <= L) out.push_back(e);
  return out;
}

int WeylGroup::coxeter_m(int s, int t, int cap) {
  IMat st = imat_mul(simple_mats_[s], simple_mats_[t]);
  IMat p = st, id = imat_identity(dim());
  for (int k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = imat_mul(p, st);
  }
  return 0;
}

bool WeylGroup::is_finite(std::size_t cap) {
  {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (finite_) return *finite_;
  }
  std::size_t count = 1;
  std::vector<Elem> frontier{0};
  bool fin = false;
  for (int k = 1; count <= cap; ++k) {
    std::set<Elem> next;
    for (Elem w : frontier)
      for (int s = 0; s < rank(); ++s) {
        Elem sw = lmul(s, w);
        if (length(sw) == k) next.insert(sw);
      }
    if (next.empty()) {
      fin = true;
      break;
    }
    count += next.size();
    frontier.assign(next.begin(), next.end());
  }
  std::lock_guard<std::recursive_mutex> lk(mu_);
  finite_ = fin;
  return fin;
}

TitsResult WeylGroup::tits_cone_contains(const IVec& lambda, int maxIter) {
  TitsResult res;
  IVec cur = lambda;
  bool infinite = !is_finite();
  for (int step = 0;; ++step) {
    int neg = -1;
    bool all_negative = rank() > 0;
    for (int i = 0; i < rank(); ++i) {
      long a = datum_.alpha(i, cur);
      if (a < 0 && neg < 0) neg = i;
      if (a >= 0) all_negative = false;
    }
    res.steps = step;
    res.straightened = cur;
    if (neg < 0) {
      res.verdict = TitsVerdict::Inside;
      return res;
    }
    // −λ in the open chamber: never in the Tits cone of an infinite Weyl group.
    if (all_negative && infinite) {
      res.verdict = TitsVerdict::OutsideFixedHyperplanes;
      return res;
    }
    if (step >= maxIter) {
      res.verdict = TitsVerdict::Inconclusive;
      return res;
    }
    cur = imat_vec(simple_mats_[neg], cur);
  }
}

}  // namespace kmh
