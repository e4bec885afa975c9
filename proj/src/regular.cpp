#include "kmh/regular.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kmh {

namespace {

std::vector<Elem> ordered(WeylGroup& W, const WeightSet& s) {
  std::vector<Elem> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), [&](Elem a, Elem b) {
    int la = W.length(a), lb = W.length(b);
    if (la != lb) return la < lb;
    return W.reduced_word(a) < W.reduced_word(b);
  });
  return v;
}

std::string letter_name(int s) { return "s" + std::to_string(s + 1); }

}  // namespace

std::string weight_set_string(WeylGroup& W, const WeightSet& s) {
  std::string out = "{";
  bool first = true;
  for (Elem w : ordered(W, s)) {
    if (!first) out += ", ";
    out += W.name(w);
    first = false;
  }
  return out + "}";
}

RegularAnalysis::RegularAnalysis(HeckeAlgebra& A, Character tau, int L)
    : A_(&A), orbit_(A, tau, L) {
  WeylGroup& W = A.group();
  graph_.tau = std::move(tau);
  graph_.L = L;
  graph_.vertices = W.ball(L);
  for (Elem w : graph_.vertices) {
    if (w != 0 && char_apply(W, w, graph_.tau) == graph_.tau)
      throw RegularityViolation(W.name(w) + " fixes tau = " + graph_.tau.str());
    for (int s = 0; s < W.rank(); ++s) {
      IVec beta = W.apply(w, W.datum().coroots[s]);
      if (graph_.tau(beta) == 1)
        throw RegularityViolation("tau takes the value 1 on the real coroot " +
                                  W.name(w) + "(alpha" + std::to_string(s + 1) +
                                  "^vee), so its reflection fixes tau");
    }
  }
  for (Elem w : graph_.vertices)
    for (int s = 0; s < W.rank(); ++s) {
      Elem sw = W.lmul(s, w);
      if (W.length(sw) != W.length(w) + 1 || W.length(sw) > L) continue;
      TauEdge e;
      e.lower = w;
      e.upper = sw;
      e.letter = s;
      std::tie(e.zeta_lower, e.zeta_upper) = edge_zetas(w, s);
      e.iso = e.zeta_lower != 0 && e.zeta_upper != 0;
      iso_cache_[{w, s}] = iso_cache_[{sw, s}] = e.iso;
      graph_.edges.push_back(e);
    }
}

std::pair<Q, Q> RegularAnalysis::edge_zetas(Elem w, int s) {
  WeylGroup& W = group();
  Elem sw = W.lmul(s, w);
  auto a = try_eval_ratfn(char_apply(W, w, tau()), A_->zeta(s));
  auto b = try_eval_ratfn(char_apply(W, sw, tau()), A_->zeta(s));
  if (!a || !b)
    throw RegularityViolation("zeta_" + letter_name(s) + " has a pole on the edge {" +
                              W.name(w) + ", " + W.name(sw) + "}");
  return {*a, *b};
}

bool RegularAnalysis::edge_iso(Elem w, int s) {
  auto it = iso_cache_.find({w, s});
  if (it != iso_cache_.end()) return it->second;
  auto [a, b] = edge_zetas(w, s);
  bool iso = a != 0 && b != 0;
  iso_cache_[{w, s}] = iso_cache_[{group().lmul(s, w), s}] = iso;
  return iso;
}

PathRecord RegularAnalysis::path(Elem w, const Word& leftWord) {
  PathRecord p;
  p.vertices.push_back(w);
  Elem cur = w;
  for (std::size_t k = leftWord.size(); k-- > 0;) {
    int s = leftWord[k];
    if (!edge_iso(cur, s)) ++p.non_iso;
    cur = group().lmul(s, cur);
    p.letters.push_back(s);
    p.vertices.push_back(cur);
  }
  return p;
}

int RegularAnalysis::semi_distance(Elem w, Elem w2) {
  WeylGroup& W = group();
  return path(w, W.reduced_word(W.mul(w2, W.inverse(w)))).non_iso;
}

std::vector<int> RegularAnalysis::semi_distance_all_paths(Elem w, Elem w2) {
  WeylGroup& W = group();
  std::vector<int> out;
  for (const Word& word : W.all_reduced_words(W.mul(w2, W.inverse(w))))
    out.push_back(path(w, word).non_iso);
  return out;
}

std::vector<WeightSet> RegularAnalysis::iso_components() {
  if (have_components_) return components_;
  const auto& V = graph_.vertices;
  std::map<Elem, std::size_t> pos;
  for (std::size_t i = 0; i < V.size(); ++i) pos[V[i]] = i;
  std::vector<std::size_t> parent(V.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : graph_.edges)
    if (e.iso) {
      std::size_t a = find(pos[e.lower]), b = find(pos[e.upper]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, WeightSet> groups;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < V.size(); ++i) {
    std::size_t r = find(i);
    if (!groups.count(r)) order.push_back(r);
    groups[r].insert(V[i]);
  }
  components_.clear();
  for (std::size_t r : order) components_.push_back(groups[r]);
  have_components_ = true;
  return components_;
}

bool RegularAnalysis::component_closed(const WeightSet& comp) {
  WeylGroup& W = group();
  for (Elem v : comp) {
    if (W.length(v) < L()) continue;
    for (int s = 0; s < W.rank(); ++s) {
      Elem sv = W.lmul(s, v);
      if (W.length(sv) > L() && edge_iso(v, s)) return false;
    }
  }
  return true;
}

SubmoduleDescriptor RegularAnalysis::submodule_weights(Elem w) {
  WeylGroup& W = group();
  if (W.length(w) > L()) throw OutOfBall(W.name(w) + " is outside the ball");
  SubmoduleDescriptor d;
  d.generator = w;
  auto it = sub_cache_.find(w);
  if (it != sub_cache_.end()) {
    d.weights = it->second;
    return d;
  }
  WeightSet cur(graph_.vertices.begin(), graph_.vertices.end());
  Word word = W.reduced_word(w);
  Elem wi = w;
  for (int s : word) {  // w → s1·w → s2·s1·w → … → 1
    if (!edge_iso(wi, s)) {
      // Image of A_{w_i, s w_i}: weights v.τ with (v w_i⁻¹)s > v w_i⁻¹.
      Elem wiInv = W.inverse(wi);
      for (auto v = cur.begin(); v != cur.end();) {
        if (W.is_right_descent(W.mul(*v, wiInv), s)) v = cur.erase(v);
        else ++v;
      }
    }
    wi = W.lmul(s, wi);
  }
  sub_cache_[w] = cur;
  d.weights = std::move(cur);
  return d;
}

PSOperator RegularAnalysis::path_operator(Elem w) {
  WeylGroup& W = group();
  if (w == 0) {
    PSModule& m = orbit_.module_for(Elem{0});
    return frobenius_op(m, m.v_tau(), tau());
  }
  std::optional<PSOperator> cur;
  Elem wi = w;
  for (int s : W.reduced_word(w)) {
    EdgeIntertwiner e = edge_intertwiner(orbit_, wi, s);
    cur = cur ? compose(e.op, *cur) : e.op;
    wi = e.to;
  }
  return *cur;
}

WeightSet RegularAnalysis::literal_image_weights(Elem w, std::vector<Elem>* skipped) {
  WeylGroup& W = group();
  PSOperator op = path_operator(w);
  PSModule& source = orbit_.module_for(w);
  WeightSet out;
  for (Elem u : source.basis()) {
    auto f = source.F_at_tau_recursive(u);
    if (!f) throw RegularityViolation("F_" + W.name(u) + " has a pole at " + source.tau().str());
    try {
      QVec y = op.apply(*f);
      Elem uw = W.mul(u, w);
      if (!is_zero(y) && W.length(uw) <= L()) out.insert(uw);
    } catch (const OutOfBall&) {
      if (skipped) skipped->push_back(u);
    }
  }
  return out;
}

IrrReport RegularAnalysis::irr_report(Elem w) {
  IrrReport r;
  r.w = w;
  for (const auto& c : iso_components())
    if (c.count(w)) r.weights = c;
  r.dimension = r.weights.size();
  r.exact = component_closed(r.weights);
  return r;
}

std::vector<SubmoduleDescriptor> RegularAnalysis::decompose_submodule(const WeightSet& WM) {
  WeylGroup& W = group();
  std::vector<SubmoduleDescriptor> cands;
  for (Elem w : ordered(W, WM)) {
    if (W.length(w) > L()) throw NotASubmoduleWeightSet(W.name(w) + " is outside the ball");
    SubmoduleDescriptor d = submodule_weights(w);
    if (!std::includes(WM.begin(), WM.end(), d.weights.begin(), d.weights.end()))
      throw NotASubmoduleWeightSet("Wt(M_" + W.name(w) + ") = " +
                                   weight_set_string(W, d.weights) + " is not contained in " +
                                   weight_set_string(W, WM));
    bool dup = false;
    for (const auto& c : cands) dup = dup || c.weights == d.weights;
    if (!dup) cands.push_back(std::move(d));
  }
  std::vector<SubmoduleDescriptor> out;
  for (const auto& c : cands) {
    bool maximal = true;
    for (const auto& o : cands)
      if (o.weights != c.weights &&
          std::includes(o.weights.begin(), o.weights.end(), c.weights.begin(), c.weights.end()))
        maximal = false;
    if (maximal) out.push_back(c);
  }
  return out;
}

std::vector<WeightSet> RegularAnalysis::all_submodule_weight_sets(std::size_t cap) {
  std::vector<WeightSet> gens;
  for (Elem w : graph_.vertices) {
    WeightSet s = submodule_weights(w).weights;
    if (std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
  }
  std::set<WeightSet> seen(gens.begin(), gens.end());
  std::vector<WeightSet> out(gens.begin(), gens.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      WeightSet u = out[i];
      u.insert(g.begin(), g.end());
      if (seen.insert(u).second) {
        if (out.size() >= cap) throw ReachExceeded("more than " + std::to_string(cap) + " submodules");
        out.push_back(u);
      }
    }
  std::sort(out.begin(), out.end(), [](const WeightSet& a, const WeightSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::string RegularAnalysis::dot() {
  WeylGroup& W = group();
  std::ostringstream os;
  os << "graph tau_graph {\n";
  os << "  label=\"tau = " << tau().str() << ", L = " << L() << "\";\n";
  for (Elem w : graph_.vertices) os << "  \"" << W.name(w) << "\";\n";
  for (const auto& e : graph_.edges) {
    os << "  \"" << W.name(e.lower) << "\" -- \"" << W.name(e.upper) << "\" [label=\""
       << letter_name(e.letter);
    if (!e.iso) {
      os << ": zeta_" << letter_name(e.letter) << "("
         << W.name(e.zeta_lower == 0 ? e.lower : e.upper) << ".tau) = 0\", style=dashed]";
    } else {
      os << "\", style=solid]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string RegularAnalysis::json_report() {
  WeylGroup& W = group();
  using J = nlohmann::ordered_json;
  auto names = [&](const WeightSet& s) {
    J a = J::array();
    for (Elem w : ordered(W, s)) a.push_back(W.name(w));
    return a;
  };
  J j;
  j["tau"] = tau().str();
  j["L"] = L();
  J verts = J::array();
  for (Elem w : graph_.vertices)
    verts.push_back({{"w", W.name(w)}, {"weight", char_apply(W, w, tau()).str()},
                     {"d_to_1", semi_distance(w, 0)}});
  j["vertices"] = verts;
  J edges = J::array();
  for (const auto& e : graph_.edges)
    edges.push_back({{"lower", W.name(e.lower)}, {"upper", W.name(e.upper)},
                     {"letter", letter_name(e.letter)}, {"iso", e.iso},
                     {"zeta_lower", to_string(e.zeta_lower)},
                     {"zeta_upper", to_string(e.zeta_upper)}});
  j["edges"] = edges;
  J comps = J::array();
  for (const auto& c : iso_components())
    comps.push_back({{"weights", names(c)}, {"closed_in_ball", component_closed(c)}});
  j["components"] = comps;
  J subs = J::array();
  for (Elem w : graph_.vertices) {
    IrrReport irr = irr_report(w);
    subs.push_back({{"w", W.name(w)},
                    {"weights", names(submodule_weights(w).weights)},
                    {"irr_dimension", irr.dimension},
                    {"irr_exact", irr.exact}});
  }
  j["submodules"] = subs;
  J all = J::array();
  for (const auto& s : all_submodule_weight_sets()) all.push_back(names(s));
  j["submodule_lattice"] = all;
  return j.dump(2);
}

}  // namespace kmh
