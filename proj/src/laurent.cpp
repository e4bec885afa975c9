#include "kmh/laurent.hpp"

#include "kmh/weyl.hpp"

#include <sstream>

namespace kmh {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(int d, const Q& c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(IVec(d, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const IVec& lambda, const Q& c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(lambda, c);
  return p;
}

Q LaurentPoly::coeff(const IVec& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Q(0) : it->second;
}

void LaurentPoly::add_term(const IVec& lambda, const Q& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(lambda, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, v] : o.terms_) add_term(k, v);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, v] : o.terms_) add_term(k, -v);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ka, va] : a.terms_)
    for (const auto& [kb, vb] : b.terms_) {
      IVec k = ka;
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      r.add_term(k, va * vb);
    }
  return r;
}

LaurentPoly LaurentPoly::shifted(const IVec& mu) const {
  LaurentPoly r;
  for (const auto& [k, v] : terms_) {
    IVec e = k;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += mu[i];
    r.terms_.emplace(std::move(e), v);
  }
  return r;
}

LaurentPoly LaurentPoly::transformed(const IMat& m) const {
  LaurentPoly r;
  for (const auto& [k, v] : terms_) {
    IVec e(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j) e[i] += m[i][j] * k[j];
    r.add_term(e, v);
  }
  return r;
}

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::optional<LaurentPoly> LaurentPoly::divide_binomial(const IVec& mu_in, const Q& c_in) const {
  if (is_zero()) return LaurentPoly();
  IVec mu = mu_in;
  Q c = c_in;
  std::size_t pivot = 0;
  while (pivot < mu.size() && mu[pivot] == 0) ++pivot;
  if (pivot == mu.size()) return std::nullopt;  // constant divisor, not a binomial
  // 1 + cZ^μ = cZ^μ(1 + c⁻¹Z^{−μ}); orient so that μ_pivot > 0.
  bool flipped = mu[pivot] < 0;
  if (flipped) {
    for (auto& x : mu) x = -x;
    c = 1 / c;
  }
  // Split into cosets of Zμ; each is a univariate Laurent polynomial in x = Z^μ.
  std::map<IVec, std::map<long, Q>> cosets;
  for (const auto& [lam, a] : terms_) {
    long k = floor_div(lam[pivot], mu[pivot]);
    IVec rep = lam;
    for (std::size_t i = 0; i < rep.size(); ++i) rep[i] -= k * mu[i];
    cosets[rep][k] = a;
  }
  LaurentPoly q;
  for (const auto& [rep, uni] : cosets) {
    long k0 = uni.begin()->first, k1 = uni.rbegin()->first;
    Q prev = 0;
    for (long k = k0; k <= k1; ++k) {
      auto it = uni.find(k);
      Q pk = it == uni.end() ? Q(0) : it->second;
      Q qk = pk - c * prev;
      if (k == k1) {
        if (qk != 0) return std::nullopt;
        break;
      }
      if (qk != 0) {
        IVec e = rep;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += k * mu[i];
        q.terms_.emplace(std::move(e), qk);
      }
      prev = qk;
    }
  }
  if (flipped) {
    // p/(1 + c_in Z^{−μ}) = Z^μ · c · p/(1 + cZ^μ) with c = c_in⁻¹.
    q *= c;
    q = q.shifted(mu);
  }
  return q;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << v.get_str();
    bool zero = true;
    for (long x : k)
      if (x) zero = false;
    if (!zero) {
      os << "*Z^[";
      for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
      os << "]";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- RatFn

namespace {

struct Normalised {
  Q unit;
  IVec shift;
  LaurentPoly atom;
};

Normalised normalise(const LaurentPoly& p) {
  const auto& [lam, c] = *p.terms().begin();
  Normalised n{c, lam, LaurentPoly()};
  IVec neg = lam;
  for (auto& x : neg) x = -x;
  n.atom = p.shifted(neg) * (1 / c);
  return n;
}

LaurentPoly power(const LaurentPoly& p, int m) {
  LaurentPoly r = LaurentPoly::constant(static_cast<int>(p.terms().begin()->first.size()), Q(1));
  for (int i = 0; i < m; ++i) r = r * p;
  return r;
}

// Binomial atom 1 + cZ^μ → (μ, c).
std::optional<std::pair<IVec, Q>> as_binomial(const LaurentPoly& atom) {
  if (atom.size() != 2) return std::nullopt;
  auto it = atom.terms().begin();
  ++it;
  return std::make_pair(it->first, it->second);
}

}  // namespace

RatFn::RatFn(LaurentPoly num) : num_(std::move(num)) {}

RatFn RatFn::fraction(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw ZeroDenominator("fraction with zero denominator");
  RatFn r(num);
  r.absorb_factor(den, 1);
  return r;
}

void RatFn::absorb_factor(const LaurentPoly& p, int mult) {
  if (p.is_zero()) throw ZeroDenominator("division by zero in F(Y)");
  Normalised n = normalise(p);
  IVec neg = n.shift;
  for (auto& x : neg) x = -x * mult;
  num_ = num_.shifted(neg) * (1 / qpow(n.unit, mult));
  if (n.atom.is_monomial()) return;  // a unit
  den_[n.atom] += mult;
}

void RatFn::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    auto bin = as_binomial(it->first);
    while (it->second > 0) {
      if (bin) {
        auto q = num_.divide_binomial(bin->first, bin->second);
        if (!q) break;
        num_ = std::move(*q);
      } else {
        Normalised n = normalise(num_);
        if (!(n.atom == it->first)) break;
        num_ = LaurentPoly::monomial(n.shift, n.unit);
      }
      --it->second;
    }
    if (it->second == 0) it = den_.erase(it);
    else ++it;
  }
}

LaurentPoly RatFn::den() const {
  int d = num_.is_zero() ? (den_.empty() ? 0 : int(den_.begin()->first.terms().begin()->first.size()))
                         : int(num_.terms().begin()->first.size());
  LaurentPoly r = LaurentPoly::constant(d, Q(1));
  for (const auto& [a, m] : den_) r = r * power(a, m);
  return r;
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) { return RatFn::combine(a, b, false); }
RatFn operator-(const RatFn& a, const RatFn& b) { return RatFn::combine(a, b, true); }

RatFn RatFn::combine(const RatFn& a, const RatFn& b, bool subtract) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return subtract ? -b : b;
  LaurentPoly na = a.num_, nb = b.num_;
  Den lcm = a.den_;
  for (const auto& [atom, m] : b.den_) {
    auto it = lcm.find(atom);
    if (it == lcm.end()) lcm.emplace(atom, m);
    else if (it->second < m) it->second = m;
  }
  for (const auto& [atom, m] : lcm) {
    auto ia = a.den_.find(atom);
    int ma = ia == a.den_.end() ? 0 : ia->second;
    auto ib = b.den_.find(atom);
    int mb = ib == b.den_.end() ? 0 : ib->second;
    if (m > ma) na = na * power(atom, m - ma);
    if (m > mb) nb = nb * power(atom, m - mb);
  }
  RatFn r(subtract ? na - nb : na + nb);
  r.den_ = std::move(lcm);
  r.cancel();
  return r;
}

RatFn operator*(const RatFn& a, const RatFn& b) {
  RatFn r(a.num_ * b.num_);
  if (r.num_.is_zero()) return r;
  r.den_ = a.den_;
  for (const auto& [atom, m] : b.den_) r.den_[atom] += m;
  r.cancel();
  return r;
}

RatFn RatFn::inverse() const {
  if (num_.is_zero()) throw ZeroDenominator("inverse of zero in F(Y)");
  int d = int(num_.terms().begin()->first.size());
  RatFn r(LaurentPoly::constant(d, Q(1)));
  for (const auto& [a, m] : den_) r.num_ = r.num_ * power(a, m);
  r.absorb_factor(num_, 1);
  r.cancel();
  return r;
}

RatFn operator/(const RatFn& a, const RatFn& b) { return a * b.inverse(); }

bool operator==(const RatFn& a, const RatFn& b) { return (a - b).is_zero(); }

RatFn RatFn::transformed(const IMat& m) const {
  RatFn r(num_.transformed(m));
  for (const auto& [a, k] : den_) r.absorb_factor(a.transformed(m), k);
  r.cancel();
  return r;
}

std::string RatFn::str() const {
  if (den_.empty()) return "(" + num_.str() + ")";
  std::string s = "(" + num_.str() + ")/(";
  bool first = true;
  for (const auto& [a, m] : den_) {
    if (!first) s += ")*(";
    first = false;
    s += a.str();
    if (m > 1) s += ")^" + std::to_string(m) + "(1";
  }
  return s + ")";
}

// ---------------------------------------------------------------- characters

Character::Character(std::vector<Q> v) : values(std::move(v)) {
  for (const auto& x : values)
    if (x == 0) throw ParseError("character values must be nonzero");
}

Q Character::operator()(const IVec& lambda) const {
  Q r = 1;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (lambda[j]) r *= qpow(values[j], lambda[j]);
  return r;
}

std::string Character::str() const {
  std::string s = "(";
  for (std::size_t j = 0; j < values.size(); ++j) s += (j ? "," : "") + values[j].get_str();
  return s + ")";
}

Character parse_character(const std::string& text) {
  std::vector<Q> v;
  std::string cur;
  for (char ch : text) {
    if (ch == '[' || ch == ']' || ch == '(' || ch == ')') continue;
    if (ch == ',') {
      v.push_back(parse_rational(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) v.push_back(parse_rational(cur));
  if (v.empty()) throw ParseError("empty character");
  return Character(std::move(v));
}

Rng& default_rng() {
  static Rng rng(0x5eedULL);
  return rng;
}

void seed_default_rng(std::uint64_t seed) { default_rng().seed(seed); }

Q eval_poly(const Character& tau, const LaurentPoly& p) {
  Q s = 0;
  for (const auto& [lam, a] : p.terms()) s += a * tau(lam);
  return s;
}

namespace {

using Uni = std::map<long, Q>;

Uni to_curve(const Character& tau, const LaurentPoly& p, const IVec& v) {
  Uni u;
  for (const auto& [lam, a] : p.terms()) {
    long e = 0;
    for (std::size_t j = 0; j < lam.size(); ++j) e += v[j] * lam[j];
    Q& slot = u[e];
    slot += a * tau(lam);
    if (slot == 0) u.erase(e);
  }
  return u;
}

Uni uni_mul(const Uni& a, const Uni& b) {
  Uni r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Q& slot = r[ea + eb];
      slot += ca * cb;
      if (slot == 0) r.erase(ea + eb);
    }
  return r;
}

// Multiplicity of the root x = 1 and the value of p/(x−1)^m at 1.
std::pair<int, Q> strip_at_one(const Uni& p) {
  long lo = p.begin()->first, hi = p.rbegin()->first;
  std::vector<Q> c(hi - lo + 1, Q(0));
  for (const auto& [e, a] : p) c[e - lo] = a;
  int mult = 0;
  while (true) {
    Q sum = 0;
    for (const auto& x : c) sum += x;
    if (sum != 0) return {mult, sum};
    // Synthetic division by (x − 1).
    std::size_t n = c.size() - 1;
    std::vector<Q> b(n, Q(0));
    b[n - 1] = c[n];
    for (std::size_t k = n - 1; k-- > 0;) b[k] = c[k + 1] + b[k + 1];
    c = std::move(b);
    ++mult;
  }
}

}  // namespace

std::optional<Q> try_eval_ratfn(const Character& tau, const RatFn& theta, const EvalOptions& opt) {
  if (theta.is_zero()) return Q(0);
  if (!opt.force_curve) {
    Q den = 1;
    for (const auto& [a, m] : theta.den_factors()) den *= qpow(eval_poly(tau, a), m);
    if (den != 0) return eval_poly(tau, theta.num()) / den;
  }
  Rng& rng = opt.rng ? *opt.rng : default_rng();
  std::uniform_int_distribution<long> dist(-opt.bound, opt.bound);
  std::size_t d = tau.values.size();
  std::optional<Q> agreed;
  int defined = 0, tries = 0;
  for (int att = 0; att < opt.attempts && tries < 20 * opt.attempts; ++tries) {
    IVec v(d);
    for (auto& x : v) x = dist(rng);
    Uni q{{0, Q(1)}};
    bool degenerate = false;
    for (const auto& [a, m] : theta.den_factors()) {
      Uni qa = to_curve(tau, a, v);
      if (qa.empty()) {
        degenerate = true;
        break;
      }
      for (int k = 0; k < m; ++k) q = uni_mul(q, qa);
    }
    if (degenerate) continue;  // direction inside the zero set of a factor: redraw
    ++att;
    Uni p = to_curve(tau, theta.num(), v);
    if (p.empty()) {
      // The numerator restricted to this curve vanishes identically: value 0.
      if (agreed && *agreed != 0) throw NotInLocalization("limit depends on the direction");
      agreed = Q(0);
      ++defined;
      continue;
    }
    auto [mp, vp] = strip_at_one(p);
    auto [mq, vq] = strip_at_one(q);
    if (mq > mp) continue;  // pole along this curve
    Q val = mp > mq ? Q(0) : vp / vq;
    if (agreed && *agreed != val) throw NotInLocalization("limit depends on the direction");
    agreed = val;
    ++defined;
  }
  if (defined == 0) return std::nullopt;
  return agreed;
}

Q eval_ratfn(const Character& tau, const RatFn& theta, const EvalOptions& opt) {
  auto v = try_eval_ratfn(tau, theta, opt);
  if (!v) throw NotInLocalization("rational function has a pole at " + tau.str());
  return *v;
}

RatFn w_act(WeylGroup& W, int w, const RatFn& theta) {
  if (w == 0) return theta;
  return theta.transformed(W.matrix(w));
}

Character char_apply(WeylGroup& W, int w, const Character& tau) {
  IMat inv = W.matrix(W.inverse(w));
  std::vector<Q> vals(tau.values.size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    IVec col(inv.size());
    for (std::size_t i = 0; i < inv.size(); ++i) col[i] = inv[i][j];
    vals[j] = tau(col);
  }
  return Character(std::move(vals));
}

}  // namespace kmh
