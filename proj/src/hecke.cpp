#include "kmh/hecke.hpp"

#include <algorithm>

namespace kmh {

RatFn HeckeElt::coeff(Elem w) const {
  auto it = coeffs.find(w);
  return it == coeffs.end() ? RatFn() : it->second;
}

void HeckeElt::add(Elem w, const RatFn& theta) {
  if (theta.is_zero()) return;
  auto it = coeffs.find(w);
  if (it == coeffs.end()) {
    coeffs.emplace(w, theta);
    return;
  }
  it->second += theta;
  if (it->second.is_zero()) coeffs.erase(it);
}

int HeckeElt::reach(const WeylGroup& W) const {
  int r = -1;
  for (const auto& [w, t] : coeffs) r = std::max(r, W.length(w));
  return r;
}

std::string to_string(HFMembership m) {
  switch (m) {
    case HFMembership::In: return "in-H_F";
    case HFMembership::Not: return "not";
    case HFMembership::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

IVec neg(IVec v) {
  for (auto& x : v) x = -x;
  return v;
}

IVec axpy(const IVec& x, long a, const IVec& y) {
  IVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * y[i];
  return r;
}

}  // namespace

HeckeAlgebra::HeckeAlgebra(WeylGroup& W) : W_(W) {
  const RootDatum& d = datum();
  for (int s = 0; s < d.rank(); ++s) {
    Q_.push_back(Q_s(s));
    zeta_.push_back(RatFn::constant(dim(), d.sigma[s] * d.sigma[s]) -
                    RatFn::constant(dim(), d.sigma[s]) * Q_.back());
  }
}

HeckeElt HeckeAlgebra::one() const { return H(0); }

HeckeElt HeckeAlgebra::H(Elem w) const {
  HeckeElt h;
  h.add(w, RatFn::constant(dim(), Q(1)));
  return h;
}

HeckeElt HeckeAlgebra::theta(const RatFn& t) const {
  HeckeElt h;
  h.add(0, t);
  return h;
}

HeckeElt HeckeAlgebra::add(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r = a;
  for (const auto& [w, t] : b.coeffs) r.add(w, t);
  return r;
}

HeckeElt HeckeAlgebra::sub(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r = a;
  for (const auto& [w, t] : b.coeffs) r.add(w, -t);
  return r;
}

HeckeElt HeckeAlgebra::right_scale(const HeckeElt& h, const RatFn& t) const {
  HeckeElt r;
  for (const auto& [w, c] : h.coeffs) r.add(w, c * t);
  return r;
}

bool HeckeAlgebra::equal(const HeckeElt& a, const HeckeElt& b) const {
  return sub(a, b).is_zero();
}

RatFn HeckeAlgebra::Q_s_general(int s) const {
  const RootDatum& d = datum();
  const Q& sg = d.sigma[s];
  const Q& sp = d.sigmaPrime[s];
  IVec a = d.coroots[s];
  LaurentPoly num = LaurentPoly::constant(dim(), sg - 1 / sg) +
                    LaurentPoly::monomial(neg(a), sp - 1 / sp);
  LaurentPoly den = LaurentPoly::constant(dim(), Q(1)) -
                    LaurentPoly::monomial(axpy(IVec(dim(), 0), -2, a));
  return RatFn::fraction(num, den);
}

RatFn HeckeAlgebra::Q_s(int s) const {
  const RootDatum& d = datum();
  const Q& sg = d.sigma[s];
  if (sg == d.sigmaPrime[s]) {
    // (σ − σ⁻¹)/(1 − Z^{−α∨}).
    LaurentPoly den = LaurentPoly::constant(dim(), Q(1)) -
                      LaurentPoly::monomial(neg(d.coroots[s]));
    return RatFn::fraction(LaurentPoly::constant(dim(), sg - 1 / sg), den);
  }
  return RatFn(Q_s_general(s).num()) *
         RatFn::fraction(LaurentPoly::constant(dim(), Q(1)), Q_s_general(s).den());
}

RatFn HeckeAlgebra::zeta(int s) const { return zeta_[s]; }

RatFn HeckeAlgebra::zeta_coroot(const IVec& beta) {
  auto [w, t] = W_.coroot_origin(beta);
  return w_act(W_, w, zeta_[t]);
}

std::pair<LaurentPoly, LaurentPoly> HeckeAlgebra::zeta_split(const IVec& beta) {
  auto [w, t] = W_.coroot_origin(beta);
  const RootDatum& d = datum();
  const Q& sg = d.sigma[t];
  const Q& sp = d.sigmaPrime[t];
  IVec a = d.coroots[t];
  LaurentPoly one = LaurentPoly::constant(dim(), Q(1));
  LaurentPoly zm = LaurentPoly::monomial(neg(a));
  LaurentPoly num, den;
  if (sg == sp) {
    num = one - zm * (sg * sg);
    den = one - zm;
  } else {
    // ζ_s = (1 − σ(σ'−σ'⁻¹)Z^{−α∨} − σ²Z^{−2α∨})/(1 − Z^{−2α∨}), with common factors removed.
    Q b = sg * (sp - 1 / sp), c = sg * sg;
    LaurentPoly full = one - zm * b - zm * zm * c;
    if (1 - b - c == 0) {
      num = *full.divide_binomial(neg(a), Q(-1));
      den = one + zm;
    } else if (1 + b - c == 0) {
      num = *full.divide_binomial(neg(a), Q(1));
      den = one - zm;
    } else {
      num = full;
      den = one - zm * zm;
    }
  }
  IMat m = W_.matrix(w);
  return {num.transformed(m), den.transformed(m)};
}

std::pair<LaurentPoly, LaurentPoly> HeckeAlgebra::commute_monomial(const IVec& lambda,
                                                                   int s) const {
  // Z^λ * H_s = H_s * Z^{sλ} + Q_s(Z^λ − Z^{sλ}), the second term as a finite geometric series.
  const RootDatum& d = datum();
  const IVec& a = d.coroots[s];
  long n = d.alpha(s, lambda);
  LaurentPoly top = LaurentPoly::monomial(axpy(lambda, -n, a));
  LaurentPoly low;
  if (n == 0) return {top, low};
  const Q& sg = d.sigma[s];
  const Q& sp = d.sigmaPrime[s];
  if (sg == sp) {
    Q k = sg - 1 / sg;
    if (n > 0) {
      for (long j = 0; j < n; ++j) low.add_term(axpy(lambda, -j, a), k);
    } else {
      for (long j = 0; j < -n; ++j) low.add_term(axpy(lambda, j + 1, a), -k);
    }
    return {top, low};
  }
  if (n % 2 != 0)
    throw UnsupportedParameters("σ_s ≠ σ'_s requires α_s(λ) even");
  LaurentPoly series;
  if (n > 0) {
    for (long j = 0; j < n / 2; ++j) series.add_term(axpy(lambda, -2 * j, a), Q(1));
  } else {
    for (long j = 0; j < -n / 2; ++j) series.add_term(axpy(lambda, 2 * j + 2, a), Q(-1));
  }
  LaurentPoly ns = LaurentPoly::constant(dim(), sg - 1 / sg) +
                   LaurentPoly::monomial(neg(a), sp - 1 / sp);
  return {top, ns * series};
}

const std::map<Elem, Q>& HeckeAlgebra::basis_product(Elem u, Elem y) {
  auto key = std::make_pair(u, y);
  auto it = basis_cache_.find(key);
  if (it != basis_cache_.end()) return it->second;
  std::map<Elem, Q> cur{{u, Q(1)}};
  for (int s : W_.reduced_word(y)) {
    std::map<Elem, Q> next;
    Q k = datum().sigma[s] - 1 / datum().sigma[s];
    for (const auto& [z, c] : cur) {
      Elem zs = W_.rmul(z, s);
      if (W_.length(zs) > W_.length(z)) {
        next[zs] += c;
      } else {
        next[z] += c * k;
        next[zs] += c;
      }
    }
    cur.clear();
    for (auto& [z, c] : next)
      if (c != 0) cur.emplace(z, c);
  }
  return basis_cache_.emplace(key, std::move(cur)).first->second;
}

std::map<Elem, LaurentPoly> HeckeAlgebra::commute_past(const LaurentPoly& theta, Elem w) {
  std::map<Elem, LaurentPoly> cur{{0, theta}};
  if (theta.is_zero()) return {};
  for (int s : W_.reduced_word(w)) {
    std::map<Elem, LaurentPoly> next;
    Q k = datum().sigma[s] - 1 / datum().sigma[s];
    for (const auto& [y, rho] : cur) {
      Elem ys = W_.rmul(y, s);
      bool up = W_.length(ys) > W_.length(y);
      for (const auto& [lam, c] : rho.terms()) {
        auto [top, low] = commute_monomial(lam, s);
        top *= c;
        low *= c;
        // (H_y H_s) * top + H_y * low
        if (up) {
          next[ys] += top;
        } else {
          next[y] += top * k;
          next[ys] += top;
        }
        next[y] += low;
      }
    }
    cur.clear();
    for (auto& [y, p] : next)
      if (!p.is_zero()) cur.emplace(y, std::move(p));
  }
  return cur;
}

const std::map<Elem, LaurentPoly>& HeckeAlgebra::commute_monomial_past(const IVec& lambda,
                                                                      Elem w) {
  auto key = std::make_pair(lambda, w);
  auto it = commute_cache_.find(key);
  if (it != commute_cache_.end()) return it->second;
  auto r = commute_past(LaurentPoly::monomial(lambda), w);
  return commute_cache_.emplace(key, std::move(r)).first->second;
}

std::map<Elem, RatFn> HeckeAlgebra::commute_rat(const RatFn& theta, Elem x) {
  if (theta.is_polynomial()) {
    std::map<Elem, RatFn> out;
    for (auto& [y, p] : commute_past(theta.num(), x)) out.emplace(y, RatFn(p));
    return out;
  }
  std::map<Elem, RatFn> cur{{0, theta}};
  for (int s : W_.reduced_word(x)) {
    std::map<Elem, RatFn> next;
    RatFn k = RatFn::constant(dim(), datum().sigma[s] - 1 / datum().sigma[s]);
    IMat ms = W_.matrix(W_.simple(s));
    for (const auto& [y, rho] : cur) {
      RatFn tw = rho.transformed(ms);
      RatFn corr = Q_[s] * (rho - tw);
      Elem ys = W_.rmul(y, s);
      if (W_.length(ys) > W_.length(y)) {
        next[ys] += tw;
      } else {
        next[y] += k * tw;
        next[ys] += tw;
      }
      next[y] += corr;
    }
    cur.clear();
    for (auto& [y, p] : next)
      if (!p.is_zero()) cur.emplace(y, std::move(p));
  }
  return cur;
}

HeckeElt HeckeAlgebra::mul(const HeckeElt& a, const HeckeElt& b) {
  HeckeElt r;
  for (const auto& [u, th] : a.coeffs)
    for (const auto& [x, ph] : b.coeffs) {
      // H_u θ H_x φ = Σ_y H_u H_y ρ_y φ.
      for (const auto& [y, rho] : commute_rat(th, x)) {
        RatFn rp = rho * ph;
        for (const auto& [z, c] : basis_product(u, y))
          r.add(z, RatFn::constant(dim(), c) * rp);
      }
    }
  return r;
}

HeckeElt HeckeAlgebra::right_mul_simple(const HeckeElt& h, int s, const RatFn& a,
                                        const RatFn& b) {
  HeckeElt r;
  Q k = datum().sigma[s] - 1 / datum().sigma[s];
  RatFn kr = RatFn::constant(dim(), k);
  IMat ms = W_.matrix(W_.simple(s));
  for (const auto& [y, rho] : h.coeffs) {
    // H_y ρ (H_s a + b) = (H_y H_s) ^sρ a + H_y [Q_s(ρ − ^sρ) a + ρ b].
    RatFn tw = rho.transformed(ms);
    RatFn ta = tw * a;
    Elem ys = W_.rmul(y, s);
    if (W_.length(ys) > W_.length(y)) {
      r.add(ys, ta);
    } else {
      r.add(y, kr * ta);
      r.add(ys, ta);
    }
    r.add(y, Q_[s] * (rho - tw) * a + rho * b);
  }
  return r;
}

HeckeElt HeckeAlgebra::B(int s) const {
  const Q& sg = datum().sigma[s];
  HeckeElt h;
  h.add(W_.simple(s), RatFn::constant(dim(), sg));
  h.add(0, RatFn::constant(dim(), -sg * sg));
  return h;
}

HeckeElt HeckeAlgebra::F_simple(int s) const {
  HeckeElt h = B(s);
  h.add(0, zeta_[s]);
  return h;
}

bool HeckeAlgebra::supports_F_prime() const {
  if (datum().equal_parameters()) return true;
  for (int s = 0; s < datum().rank(); ++s)
    for (int t = s + 1; t < datum().rank(); ++t)
      if (W_.coxeter_m(s, t) != 0) return false;
  return true;
}

HeckeElt HeckeAlgebra::F_prime_simple(int s) const {
  if (!supports_F_prime())
    throw UnsupportedParameters("F' requires equal parameters or a right-angled datum");
  return right_scale(F_simple(s), zeta_[s].inverse());
}

HeckeElt HeckeAlgebra::F_word(const Word& word) {
  Elem w = W_.from_word(word);
  if (W_.length(w) != static_cast<int>(word.size()))
    throw NotReduced(word_to_string(word) + " is not reduced");
  HeckeElt h = one();
  for (int s : word) {
    const Q& sg = datum().sigma[s];
    h = right_mul_simple(h, s, RatFn::constant(dim(), sg),
                         zeta_[s] - RatFn::constant(dim(), sg * sg));
  }
  return h;
}

HeckeElt HeckeAlgebra::F(Elem w) {
  auto it = F_cache_.find(w);
  if (it != F_cache_.end()) return it->second;
  HeckeElt h;
  Word word = W_.reduced_word(w);
  if (word.empty()) {
    h = one();
  } else {
    // F_w = F_{w'}F_s with w = w's.
    int s = word.back();
    Elem wp = W_.rmul(w, s);
    const Q& sg = datum().sigma[s];
    h = right_mul_simple(F(wp), s, RatFn::constant(dim(), sg),
                         zeta_[s] - RatFn::constant(dim(), sg * sg));
  }
  return F_cache_.emplace(w, h).first->second;
}

HeckeElt HeckeAlgebra::F_prime_word(const Word& word) {
  if (!supports_F_prime())
    throw UnsupportedParameters("F' requires equal parameters or a right-angled datum");
  Elem w = W_.from_word(word);
  if (W_.length(w) != static_cast<int>(word.size()))
    throw NotReduced(word_to_string(word) + " is not reduced");
  HeckeElt h = one();
  for (int s : word) {
    const Q& sg = datum().sigma[s];
    RatFn inv = zeta_[s].inverse();
    h = right_mul_simple(h, s, RatFn::constant(dim(), sg) * inv,
                         (zeta_[s] - RatFn::constant(dim(), sg * sg)) * inv);
  }
  return h;
}

HeckeElt HeckeAlgebra::F_prime(Elem w) {
  auto it = Fp_cache_.find(w);
  if (it != Fp_cache_.end()) return it->second;
  HeckeElt h = F_prime_word(W_.reduced_word(w));
  return Fp_cache_.emplace(w, h).first->second;
}

HeckeElt HeckeAlgebra::K(Elem r) {
  if (W_.length(r) == 1) return K_unnormalized(r);
  IVec beta = W_.reflection_coroot(r);
  RatFn z = zeta_coroot(beta);
  HeckeElt h = right_scale(F_prime(r), z);
  h.add(0, -z);
  return h;
}

HeckeElt HeckeAlgebra::K_unnormalized(Elem r) {
  IVec beta = W_.reflection_coroot(r);
  HeckeElt h = F(r);
  h.add(0, -zeta_coroot(beta));
  return h;
}

HeckeElt HeckeAlgebra::K_underline(const std::vector<Elem>& reflections) {
  HeckeElt h = one();
  for (Elem r : reflections) h = mul(h, K(r));
  return h;
}

HeckeElt HeckeAlgebra::braid_product(const HeckeElt& a, const HeckeElt& b, int m) {
  HeckeElt h = one();
  for (int i = 0; i < m; ++i) h = mul(h, i % 2 == 0 ? a : b);
  return h;
}

HFMembership HeckeAlgebra::positive_part_check(const HeckeElt& h, int maxIter) {
  bool inconclusive = false;
  for (const auto& [w, c] : h.coeffs) {
    if (!c.is_polynomial())
      throw NotPolynomial("coefficient of H[" + W_.name(w) + "] is not a Laurent polynomial");
    for (const auto& [lam, a] : c.num().terms()) {
      auto res = W_.tits_cone_contains(lam, maxIter);
      if (res.verdict == TitsVerdict::OutsideFixedHyperplanes) return HFMembership::Not;
      if (res.verdict == TitsVerdict::Inconclusive) inconclusive = true;
    }
  }
  return inconclusive ? HFMembership::Inconclusive : HFMembership::In;
}

std::string HeckeAlgebra::str(const HeckeElt& h) const {
  if (h.is_zero()) return "0";
  std::vector<Elem> keys;
  for (const auto& [w, c] : h.coeffs) keys.push_back(w);
  std::sort(keys.begin(), keys.end(), [&](Elem a, Elem b) {
    if (W_.length(a) != W_.length(b)) return W_.length(a) < W_.length(b);
    return W_.reduced_word(a) < W_.reduced_word(b);
  });
  std::string s;
  for (Elem w : keys) {
    if (!s.empty()) s += " + ";
    s += "H[" + W_.name(w) + "] * " + h.coeffs.at(w).str();
  }
  return s;
}

}  // namespace kmh
