#include "kmh/rootdatum.hpp"

#include "kmh/linalg.hpp"

#include <numeric>
#include <sstream>

namespace kmh {

std::string MatrixReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << "violation " << violations[k].condition << " at (" << violations[k].row << ","
       << violations[k].col << "): " << violations[k].message;
  }
  return os.str();
}

MatrixReport validate(const IMat& a) {
  MatrixReport rep;
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) {
      rep.violations.push_back({int(i + 1), 0, "shape", "matrix is not square"});
      return rep;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] != 2)
      rep.violations.push_back({int(i + 1), int(i + 1), "(i)", "diagonal entry must be 2"});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0)
        rep.violations.push_back(
            {int(i + 1), int(j + 1), "(ii)", "off-diagonal entry must be <= 0"});
      if (i < j && ((a[i][j] == 0) != (a[j][i] == 0))) {
        // Report the cell holding the zero.
        int r = a[i][j] == 0 ? int(i + 1) : int(j + 1);
        int c = a[i][j] == 0 ? int(j + 1) : int(i + 1);
        rep.violations.push_back({r, c, "(iii)", "a_ij = 0 must imply a_ji = 0"});
      }
    }
  return rep;
}

long RootDatum::alpha(int i, const IVec& lambda) const {
  long s = 0;
  for (int j = 0; j < rankY; ++j) s += pairing[i][j] * lambda[j];
  return s;
}

bool RootDatum::equal_parameters() const {
  for (int s = 0; s < rank(); ++s)
    if (sigma[s] != sigma[0] || sigmaPrime[s] != sigma[0]) return false;
  return true;
}

Q RootDatum::common_sigma() const {
  if (!equal_parameters())
    throw UnsupportedParameters("this operation requires sigma_s = sigma'_s = sigma for all s");
  return sigma[0];
}

long RootDatum::alpha_image_gcd(int s) const {
  long g = 0;
  for (int j = 0; j < rankY; ++j) g = std::gcd(g, std::labs(pairing[s][j]));
  return g;
}

std::vector<std::string> RootDatum::check() const {
  std::vector<std::string> problems;
  auto rep = validate(A);
  if (!rep.ok()) problems.push_back("Kac-Moody matrix: " + rep.summary());
  int n = rank();
  if (rankY <= 0) problems.push_back("rankY must be positive");
  if (int(pairing.size()) != n || int(coroots.size()) != n) {
    problems.push_back("pairing and coroots need one row per simple reflection");
    return problems;
  }
  for (int i = 0; i < n; ++i)
    if (int(pairing[i].size()) != rankY || int(coroots[i].size()) != rankY) {
      problems.push_back("pairing/coroot rows must have rankY entries");
      return problems;
    }
  if (int(sigma.size()) != n || int(sigmaPrime.size()) != n) {
    problems.push_back("sigma and sigmaPrime need one value per simple reflection");
    return problems;
  }
  if (!rep.ok()) return problems;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long v = alpha(j, coroots[i]);
      if (v != A[i][j]) {
        std::ostringstream os;
        os << "alpha_" << j + 1 << "(alpha_" << i + 1 << "^vee) = " << v << " but a_" << i + 1
           << j + 1 << " = " << A[i][j];
        problems.push_back(os.str());
      }
    }
  if (rank_of_coroots() != std::size_t(n)) problems.push_back("simple coroots are not free");
  for (int s = 0; s < n; ++s) {
    if (sigma[s] == 0 || sigmaPrime[s] == 0)
      problems.push_back("Hecke parameters must be nonzero");
    if (alpha_image_gcd(s) == 1 && sigma[s] != sigmaPrime[s])
      problems.push_back("alpha_" + std::to_string(s + 1) +
                         "(Y) = Z forces sigma = sigma' for s" + std::to_string(s + 1));
    if (sigma[s] != sigmaPrime[s] && alpha_image_gcd(s) % 2 != 0)
      problems.push_back("sigma != sigma' requires alpha_" + std::to_string(s + 1) +
                         "(Y) inside 2Z");
  }
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      if (A[s][t] == -1 && A[t][s] == -1) {
        if (sigma[s] != sigma[t] || sigma[s] != sigmaPrime[s] || sigma[t] != sigmaPrime[t])
          problems.push_back("s" + std::to_string(s + 1) + ", s" + std::to_string(t + 1) +
                             " are conjugate: their parameters must all agree");
      }
  return problems;
}

std::size_t RootDatum::rank_of_coroots() const { return kmh::rank(to_qmat(coroots)); }

void RootDatum::require_valid() const {
  auto p = check();
  if (p.empty()) return;
  std::string msg = "invalid root datum '" + name + "':";
  for (const auto& s : p) msg += " " + s + ";";
  throw InvalidDatum(msg);
}

RootDatum RootDatum::with_sigma(const Q& s) const {
  RootDatum d = *this;
  d.sigma.assign(rank(), s);
  d.sigmaPrime.assign(rank(), s);
  return d;
}

namespace {

IMat read_int_matrix(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  IMat m;
  for (const auto& row : j.at(key)) {
    IVec r;
    for (const auto& x : row) r.push_back(x.get<long>());
    m.push_back(std::move(r));
  }
  return m;
}

Q read_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Q(v.get<long>());
  throw ParseError("Hecke parameters must be integers or rational strings");
}

std::vector<Q> read_params(const nlohmann::json& j, const char* key, int n,
                           const std::vector<Q>* fallback) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    return std::vector<Q>(n, Q(2));
  }
  const auto& v = j.at(key);
  if (!v.is_object()) return std::vector<Q>(n, read_rational(v));
  std::vector<Q> out(n, Q(0));
  std::vector<bool> seen(n, false);
  for (auto it = v.begin(); it != v.end(); ++it) {
    std::string k = it.key();
    if (!k.empty() && k[0] == 's') k.erase(0, 1);
    int idx = std::stoi(k) - 1;
    if (idx < 0 || idx >= n) throw ParseError("parameter key out of range: " + it.key());
    out[idx] = read_rational(it.value());
    seen[idx] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) {
      if (fallback) out[i] = (*fallback)[i];
      else throw ParseError(std::string("missing parameter s") + std::to_string(i + 1) + " in " + key);
    }
  return out;
}

}  // namespace

RootDatum datum_from_json(const nlohmann::json& doc) {
  RootDatum d;
  d.name = doc.value("name", std::string("custom"));
  d.A = read_int_matrix(doc, "A");
  d.rankY = doc.value("rankY", 0);
  d.pairing = read_int_matrix(doc, "pairing");
  d.coroots = read_int_matrix(doc, "coroots");
  int n = static_cast<int>(d.A.size());
  d.sigma = read_params(doc, "sigma", n, nullptr);
  d.sigmaPrime = read_params(doc, "sigmaPrime", n, &d.sigma);
  return d;
}

nlohmann::json datum_to_json(const RootDatum& d) {
  nlohmann::json j;
  j["name"] = d.name;
  j["A"] = d.A;
  j["rankY"] = d.rankY;
  j["pairing"] = d.pairing;
  j["coroots"] = d.coroots;
  nlohmann::json s = nlohmann::json::object(), sp = nlohmann::json::object();
  for (int i = 0; i < d.rank(); ++i) {
    s["s" + std::to_string(i + 1)] = to_string(d.sigma[i]);
    sp["s" + std::to_string(i + 1)] = to_string(d.sigmaPrime[i]);
  }
  j["sigma"] = s;
  j["sigmaPrime"] = sp;
  return j;
}

}  // namespace kmh
