#include "kmh/presets.hpp"

#include <map>

namespace kmh {

namespace {

// Rank-2 data live on Y = Q∨ (coroots are the standard basis, pairing = Aᵀ).
// The affine data use σ = 2, so q = σ² = 4.
const char* kSl3 = R"({
  "datum": {"name": "sl3", "A": [[2,-1],[-1,2]], "rankY": 2,
            "pairing": [[2,-1],[-1,2]], "coroots": [[1,0],[0,1]], "sigma": "2"},
  "tau": ["4", "4"], "L": 3,
  "description": "A2 on the coroot lattice, tau_1(alpha_i^vee) = sigma^2"
})";

const char* kSl3Minus = R"({
  "datum": {"name": "sl3", "A": [[2,-1],[-1,2]], "rankY": 2,
            "pairing": [[2,-1],[-1,2]], "coroots": [[1,0],[0,1]], "sigma": "2"},
  "tau": ["1/4", "1/4"], "L": 3,
  "description": "A2 on the coroot lattice, tau_{-1}(alpha_i^vee) = sigma^-2"
})";

const char* kAffine = R"({
  "datum": {"name": "affine-sl2", "A": [[2,-2],[-2,2]], "rankY": 3,
            "pairing": [[2,0,0],[-2,0,1]], "coroots": [[1,0,0],[-1,1,0]], "sigma": "2"},
  "tau": ["4", "1", "1"], "L": 6,
  "description": "affine SL2 on Y = Z alpha^vee + Z c + Z d; simple coroots alpha^vee and c - alpha^vee; tau(alpha^vee) = sigma^2, tau(c) = tau(d) = 1"
})";

const char* kRank2Even = R"({
  "datum": {"name": "rank2-even", "A": [[2,-2],[-2,2]], "rankY": 2,
            "pairing": [[2,-2],[-2,2]], "coroots": [[1,0],[0,1]], "sigma": "2"},
  "tau": ["5/7", "3/11"], "L": 8,
  "description": "affine matrix on Y = Q^vee, so alpha_s(Y) = 2Z"
})";

const char* kRank2EvenExt = R"({
  "datum": {"name": "rank2-even-ext", "A": [[2,-2],[-2,2]], "rankY": 3,
            "pairing": [[2,-2,2],[-2,2,0]], "coroots": [[1,0,0],[0,1,0]], "sigma": "2"},
  "tau": ["5/7", "3/11", "1"], "L": 8,
  "description": "affine matrix on Y = Q^vee + Z d with alpha1(d) = 2, alpha2(d) = 0: the roots are independent and alpha_s(Y) = 2Z"
})";

const char* kRightAngled = R"({
  "datum": {"name": "right-angled", "A": [[2,-3],[-3,2]], "rankY": 2,
            "pairing": [[2,-3],[-3,2]], "coroots": [[1,0],[0,1]], "sigma": "2"},
  "tau": ["4", "4"], "L": 5,
  "description": "hyperbolic rank-2 matrix (a12 a21 = 9), tau_1(alpha_i^vee) = sigma^2"
})";

struct CaseChar {
  const char* g1;
  const char* g2;
  const char* what;
  bool onQvee = false;
};

// τ = (τ(α1∨), τ(α2∨)) with τ(d) = 1 on rank2-even-ext. On Y = Q∨ the pairing is degenerate
// (c = α1∨ + α2∨ is central in the algebra) and weight spaces come out too large, so only
// case 4 uses rank2-even: over ℚ a fixator ≅ ℤ needs τ(c) = −1 with d absent.
const std::map<int, CaseChar> kCases = {
    {1, {"5/7", "3/11", "generic values: trivial stabiliser"}},
    {2, {"1", "5/7", "tau(alpha1^vee) = 1: W_tau = W_(tau) = <s1>"}},
    {3, {"-1", "5/7", "tau(alpha1^vee) = -1: W_tau = R_tau = <s1>"}},
    {4, {"5/7", "-7/5", "tau(c) = -1 with generic alpha1^vee value: W_tau = <s1 s2>", true}},
    {5, {"1", "1", "trivial character: W_tau = W_(tau) = W"}},
    {6, {"-1", "-1", "every real coroot takes the value -1: W_tau = R_tau = W"}},
    {7, {"1", "-1", "W_(tau) = <s1, s2 s1 s2>, R_tau = <s2>"}},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names{"sl3",        "sl3-minus",     "affine-sl2",
                                 "rank2-even", "rank2-even-ext", "right-angled"};
  for (const auto& [k, v] : kCases) names.push_back("case" + std::to_string(k));
  return names;
}

Preset preset_from_json(const nlohmann::json& doc, const std::string& name) {
  Preset p;
  p.name = name;
  const nlohmann::json& d = doc.contains("datum") ? doc.at("datum") : doc;
  p.datum = datum_from_json(d);
  if (doc.contains("tau")) {
    std::vector<Q> vals;
    for (const auto& x : doc.at("tau")) {
      if (x.is_string()) vals.push_back(parse_rational(x.get<std::string>()));
      else vals.push_back(Q(x.get<long>()));
    }
    p.tau = Character(std::move(vals));
  }
  p.L = doc.value("L", 3);
  p.description = doc.value("description", std::string());
  return p;
}

Preset preset(const std::string& name) {
  static const std::map<std::string, const char*> docs = {
      {"sl3", kSl3}, {"sl3-minus", kSl3Minus}, {"affine-sl2", kAffine},
      {"rank2-even", kRank2Even}, {"rank2-even-ext", kRank2EvenExt},
      {"right-angled", kRightAngled}};
  auto it = docs.find(name);
  if (it != docs.end()) return preset_from_json(nlohmann::json::parse(it->second), name);
  if (name.rfind("case", 0) == 0 && name.size() == 5) {
    int k = name[4] - '0';
    auto c = kCases.find(k);
    if (c != kCases.end()) {
      const bool q = c->second.onQvee;
      Preset p = preset_from_json(nlohmann::json::parse(q ? kRank2Even : kRank2EvenExt), name);
      std::vector<Q> vals{parse_rational(c->second.g1), parse_rational(c->second.g2)};
      if (!q) vals.push_back(Q(1));
      p.tau = Character(std::move(vals));
      p.description = c->second.what;
      p.L = 8;
      return p;
    }
  }
  throw ParseError("unknown preset '" + name + "'");
}

}  // namespace kmh
