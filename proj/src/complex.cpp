#include "trisect/complex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "trisect/error.hpp"
#include "trisect/placement.hpp"
#include "trisect/slide.hpp"

namespace trisect {

namespace {

using Form = std::vector<PassToken>;

std::vector<Form> forms(const CutSystem& cs) {
  std::vector<Form> out;
  for (const auto& c : cs.curves) out.push_back(normal_form(c));
  return out;
}

std::vector<Form> sorted_without(std::vector<Form> f, std::size_t skip) {
  f.erase(f.begin() + static_cast<std::ptrdiff_t>(skip));
  std::sort(f.begin(), f.end());
  return f;
}

std::vector<Form> vertex_key(const CutSystem& cs) {
  auto f = forms(cs);
  std::sort(f.begin(), f.end());
  return f;
}

std::size_t member_index(const Curve& c, const CutSystem& cs, const char* what) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i] == c) return i;
  }
  throw Error(std::string("curve is not a member of the ") + what + " system");
}

bool good_at(const CutSystem& cs1, const CutSystem& cs2, std::size_t i, std::size_t j) {
  const Curve& c1 = cs1[i];
  const Curve& c2 = cs2[j];
  if (!is_parallel(c1, c2) && geometric_intersection(c1, c2) != 1) return false;
  for (std::size_t y = 0; y < cs2.size(); ++y) {
    if (y != j && geometric_intersection(c1, cs2[y]) != 0) return false;
  }
  for (std::size_t x = 0; x < cs1.size(); ++x) {
    if (x != i && geometric_intersection(cs1[x], c2) != 0) return false;
  }
  return true;
}

// Crossings of curves taken from different vertices. Equal slots carry no
// order between the two curves, so both tie orders are tried, then the slots
// of each curve are re-chosen against the other (a simple representative of a
// word stays in its isotopy class).
int edge_intersection(const Curve& x, const Curve& y) {
  int n = std::min(geometric_intersection(x, y), geometric_intersection(y, x));
  if (n <= 1) return n;
  for (int side = 0; side < 2 && n > 1; ++side) {
    std::vector<std::vector<Curve>> sys{{x}, {y}};
    const std::size_t mv = side == 0 ? 1 : 0;
    std::vector<SlotRequest> req;
    for (std::size_t p = 0; p < sys[mv][0].size(); ++p) req.push_back({mv, 0, p});
    place_slots(sys, req);
    if (self_intersections(sys[mv][0]) == 0) n = std::min(n, geometric_intersection(sys[0][0], sys[1][0]));
  }
  return n;
}

struct SearchNode {
  CutSystem vertex;
  int depth = 0;
  int parent = -1;
};

// Type-0 breadth-first tree from `start`; stops after `max_expand` expansions
// or at depth `max_depth`, or as soon as `stop` accepts a vertex.
template <class Stop>
std::vector<SearchNode> type0_tree(const CutSystem& start, const std::vector<Curve>& pool, int max_depth,
                                   int max_expand, Stop stop, int* hit) {
  std::vector<SearchNode> nodes{{start, 0, -1}};
  std::set<std::vector<Form>> seen{vertex_key(start)};
  *hit = stop(start) ? 0 : -1;
  std::size_t head = 0;
  int expanded = 0;
  while (*hit < 0 && head < nodes.size() && expanded < max_expand) {
    const std::size_t cur = head++;
    if (nodes[cur].depth >= max_depth) continue;
    ++expanded;
    for (auto& nb : type0_neighbours(nodes[cur].vertex, pool)) {
      if (!seen.insert(vertex_key(nb)).second) continue;
      nodes.push_back({std::move(nb), nodes[cur].depth + 1, static_cast<int>(cur)});
      if (stop(nodes.back().vertex)) {
        *hit = static_cast<int>(nodes.size() - 1);
        break;
      }
    }
  }
  return nodes;
}

std::vector<CutSystem> path_to(const std::vector<SearchNode>& nodes, int idx) {
  std::vector<CutSystem> out;
  for (int i = idx; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
    out.push_back(nodes[static_cast<std::size_t>(i)].vertex);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Type0:
      return "type0";
    case EdgeKind::Type1:
      return "type1";
    case EdgeKind::NotAdjacent:
      return "not-adjacent";
  }
  return "?";
}

CutComplexEdge edge_type(const CutSystem& v1, const CutSystem& v2) {
  CutComplexEdge e;
  if (v1.size() != v2.size() || v1.size() == 0) return e;
  const auto f1 = forms(v1);
  const auto f2 = forms(v2);
  for (std::size_t i = 0; i < v1.size(); ++i) {
    const auto rest1 = sorted_without(f1, i);
    for (std::size_t j = 0; j < v2.size(); ++j) {
      if (f1[i] == f2[j] || rest1 != sorted_without(f2, j)) continue;
      const int n = edge_intersection(v1[i], v2[j]);
      if (n > 1) continue;
      e.kind = n == 0 ? EdgeKind::Type0 : EdgeKind::Type1;
      e.changed_first = i;
      e.changed_second = j;
      return e;
    }
  }
  return e;
}

bool same_vertex(const CutSystem& v1, const CutSystem& v2) {
  return v1.size() == v2.size() && vertex_key(v1) == vertex_key(v2);
}

bool is_good_pair(const Curve& c1, const Curve& c2, const CutSystem& cs1, const CutSystem& cs2) {
  const std::size_t i = member_index(c1, cs1, "first");
  const std::size_t j = member_index(c2, cs2, "second");
  return good_at(cs1, cs2, i, j);
}

std::optional<std::vector<std::size_t>> find_good_position(const CutSystem& cs1, const CutSystem& cs2) {
  const std::size_t g = cs1.size();
  if (cs2.size() != g) return std::nullopt;
  std::vector<std::vector<bool>> good(g, std::vector<bool>(g, false));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) good[i][j] = good_at(cs1, cs2, i, j);
  }
  std::vector<std::size_t> perm(g, 0);
  std::vector<bool> used(g, false);
  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    if (i == g) return true;
    for (std::size_t j = 0; j < g; ++j) {
      if (used[j] || !good[i][j]) continue;
      used[j] = true;
      perm[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return perm;
}

std::optional<int> compute_k(const CutSystem& cs1, const CutSystem& cs2) {
  const auto perm = find_good_position(cs1, cs2);
  if (!perm) return std::nullopt;
  int k = 0;
  for (std::size_t i = 0; i < perm->size(); ++i) k += is_parallel(cs1[i], cs2[(*perm)[i]]) ? 1 : 0;
  return k;
}

std::vector<CutSystem> type0_neighbours(const CutSystem& v, const std::vector<Curve>& pool) {
  std::vector<CutSystem> out;
  const auto f = forms(v);
  const int g = static_cast<int>(v.size());
  for (const auto& p : pool) {
    const auto fp = normal_form(p);
    if (fp.empty() || std::find(f.begin(), f.end(), fp) != f.end()) continue;
    std::vector<bool> meets(v.size());
    std::size_t meeting = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      meets[i] = geometric_intersection(p, v[i]) != 0;
      meeting += meets[i] ? 1 : 0;
    }
    if (meeting > 1) continue;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (meeting == 1 && !meets[i]) continue;
      if (meets[i] && edge_intersection(p, v[i]) != 0) continue;
      CutSystem nb = v;
      nb.curves[i] = p;
      if (validate_cut_system(nb, g).ok()) out.push_back(std::move(nb));
    }
  }
  return out;
}

std::optional<std::vector<CutSystem>> type0_reachability(const CutSystem& start, const CutSystem& target,
                                                         int budget, const std::vector<Curve>& pool) {
  if (pool.empty()) throw Error("type-0 search needs a non-empty curve pool");
  if (budget < 0) throw Error("search budget must be non-negative");
  int hit = -1;
  const auto nodes = type0_tree(
      start, pool, budget, std::numeric_limits<int>::max(),
      [&](const CutSystem& v) { return same_vertex(v, target); }, &hit);
  if (hit < 0) return std::nullopt;
  return path_to(nodes, hit);
}

std::vector<Curve> candidate_pool(const TrisectionDiagram& d, int slide_depth) {
  std::vector<Curve> out;
  std::set<Form> seen;
  auto add = [&](const Curve& c) {
    auto f = normal_form(c);
    if (!f.empty() && seen.insert(std::move(f)).second) out.push_back(c);
  };
  const std::array<SystemId, 3> ids{SystemId::Alpha, SystemId::Beta, SystemId::Gamma};
  for (SystemId id : ids) {
    for (const auto& c : d.system(id).curves) add(c);
  }
  for (int j = 1; j <= d.genus(); ++j) {
    add(standard_core(Core::Alpha, j));
    add(standard_core(Core::Beta, j));
  }
  for (SystemId id : ids) {
    std::vector<TrisectionDiagram> frontier{d};
    for (int depth = 0; depth < slide_depth; ++depth) {
      std::vector<TrisectionDiagram> next;
      for (const auto& cur : frontier) {
        const CutSystem& cs = cur.system(id);
        for (std::size_t i = 0; i < cs.size(); ++i) {
          for (std::size_t k = 0; k < cs.size(); ++k) {
            if (i == k) continue;
            for (const auto& b : adjacent_bands(cs, i, k)) {
              try {
                auto slid = handle_slide(cur, id, i, k, b);
                add(slid.system(id)[i]);
                next.push_back(std::move(slid));
              } catch (const SlideRejected&) {
              }
            }
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return out;
}

bool LoopReport::ok() const {
  return std::all_of(witnesses.begin(), witnesses.end(), [](const ConditionWitness& w) { return w.passed; });
}

LoopReport verify_realization_loop(const RealizationLoopCandidate& loop, const TrisectionDiagram& d) {
  const auto& vs = loop.vertices;
  const std::size_t n = vs.size();
  const int g = d.genus();
  if (n == 0) throw StructuralError("loop has no vertices");
  const auto& mk = loop.markers;
  for (std::size_t m : {mk.alpha, mk.beta, mk.gamma, mk.alpha_beta, mk.alpha_gamma, mk.beta_alpha, mk.beta_gamma,
                        mk.gamma_alpha, mk.gamma_beta}) {
    if (m >= n) throw StructuralError("marker " + std::to_string(m) + " outside a loop of " + std::to_string(n) +
                                      " vertices");
  }

  // Pair markers must run once around the loop in one direction.
  const std::array<std::size_t, 6> ring{mk.alpha_beta, mk.alpha_gamma, mk.gamma_alpha,
                                        mk.gamma_beta, mk.beta_gamma,  mk.beta_alpha};
  auto offset = [&](std::size_t from, std::size_t to, int dir) -> std::size_t {
    const auto diff = (static_cast<long long>(to) - static_cast<long long>(from)) * dir;
    return static_cast<std::size_t>(((diff % static_cast<long long>(n)) + static_cast<long long>(n)) %
                                    static_cast<long long>(n));
  };
  int dir = 0;
  for (int cand : {1, -1}) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < 6; ++i) total += offset(ring[i], ring[(i + 1) % 6], cand);
    if (total == n || (n == 1 && total == 0)) {
      dir = cand;
      break;
    }
  }
  if (dir == 0) throw StructuralError("pair markers are not in the cyclic order of an admissible loop");
  auto on_segment = [&](std::size_t x, std::size_t from, std::size_t to) {
    return offset(from, x, dir) <= offset(from, to, dir);
  };
  if (!on_segment(mk.alpha, mk.alpha_beta, mk.alpha_gamma) || !on_segment(mk.beta, mk.beta_gamma, mk.beta_alpha) ||
      !on_segment(mk.gamma, mk.gamma_alpha, mk.gamma_beta)) {
    throw StructuralError("a base marker lies outside its type-0 segment");
  }

  LoopReport rep;
  rep.direction = dir;
  rep.l = n >= 2 ? static_cast<int>(n) : 0;

  for (std::size_t i = 0; i < n; ++i) {
    const auto v = validate_cut_system(vs[i], g);
    if (!v.ok()) {
      rep.witnesses.push_back({"vertex " + std::to_string(i), false, std::nullopt,
                               v.issues.front().kind + ": " + v.issues.front().detail});
    }
  }
  // Edge i joins vertex i and vertex i+1 (forward numbering).
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = edge_type(vs[i], vs[(i + 1) % n]);
      rep.edges.push_back(e.kind);
      if (e.kind == EdgeKind::NotAdjacent) {
        rep.witnesses.push_back({"edge", false, i, "vertices " + std::to_string(i) + " and " +
                                                       std::to_string((i + 1) % n) + " are not adjacent"});
      }
    }
  }
  auto edges_between = [&](std::size_t from, std::size_t to) {
    std::vector<std::size_t> out;
    const std::size_t len = offset(from, to, dir);
    std::size_t at = from;
    for (std::size_t s = 0; s < len; ++s) {
      const std::size_t next = dir > 0 ? (at + 1) % n : (at + n - 1) % n;
      out.push_back(dir > 0 ? at : next);
      at = next;
    }
    return out;
  };

  const std::array<std::pair<SystemId, std::size_t>, 3> bases{
      {{SystemId::Alpha, mk.alpha}, {SystemId::Beta, mk.beta}, {SystemId::Gamma, mk.gamma}}};
  for (const auto& [id, at] : bases) {
    const bool same = same_vertex(vs[at], d.system(id));
    rep.witnesses.push_back({std::string("base ") + system_name(id), same, std::nullopt,
                             same ? "" : "marked vertex differs from the diagram's system"});
  }

  struct Pair {
    const char* name;
    std::size_t first, second;  // markers; the pair subpath runs second -> first along the loop
  };
  const std::array<Pair, 3> pairs{{{"(alpha,beta)", mk.alpha_beta, mk.beta_alpha},
                                   {"(beta,gamma)", mk.beta_gamma, mk.gamma_beta},
                                   {"(gamma,alpha)", mk.gamma_alpha, mk.alpha_gamma}}};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& pr = pairs[p];
    const auto k = compute_k(vs[pr.first], vs[pr.second]);
    rep.witnesses.push_back({std::string("good ") + pr.name, k.has_value(), std::nullopt,
                             k ? "" : "marked vertices are not in good position"});
    rep.k[p] = k.value_or(0);
    if (!k) continue;
    int type1 = 0;
    for (std::size_t e : edges_between(pr.second, pr.first)) {
      if (rep.edges.empty()) break;
      if (rep.edges[e] == EdgeKind::Type1) ++type1;
    }
    const bool count_ok = type1 == g - *k;
    rep.witnesses.push_back({std::string("type1 count ") + pr.name, count_ok, std::nullopt,
                             std::to_string(type1) + " type-1 edges, expected " + std::to_string(g - *k)});
  }

  const std::array<std::pair<const char*, std::pair<std::size_t, std::size_t>>, 3> segments{
      {{"alpha", {mk.alpha_beta, mk.alpha_gamma}},
       {"gamma", {mk.gamma_alpha, mk.gamma_beta}},
       {"beta", {mk.beta_gamma, mk.beta_alpha}}}};
  for (const auto& [name, seg] : segments) {
    std::optional<std::size_t> bad;
    for (std::size_t e : edges_between(seg.first, seg.second)) {
      if (rep.edges.empty()) break;
      if (rep.edges[e] != EdgeKind::Type0) {
        bad = e;
        break;
      }
    }
    rep.witnesses.push_back({std::string("type0 segment ") + name, !bad.has_value(), bad,
                             bad ? "edge " + std::to_string(*bad) + " is not type 0" : ""});
  }

  rep.L = rep.l - 3 * g + rep.k[0] + rep.k[1] + rep.k[2];
  return rep;
}

std::optional<LengthBound> kt_length_upper_bound(const TrisectionDiagram& d, int budget, int slide_depth) {
  if (budget < 0) throw Error("search budget must be non-negative");
  const auto pool = candidate_pool(d, slide_depth);
  const std::array<SystemId, 3> ids{SystemId::Alpha, SystemId::Beta, SystemId::Gamma};
  std::array<std::vector<SearchNode>, 3> trees;
  for (std::size_t s = 0; s < 3; ++s) {
    int hit = -1;
    trees[s] = type0_tree(
        d.system(ids[s]), pool, std::numeric_limits<int>::max(), budget, [](const CutSystem&) { return false; },
        &hit);
  }

  // For each pair of systems the reached vertices in good position with the
  // smallest total type-0 distance.
  struct Choice {
    int x = -1, y = -1;
    std::vector<std::size_t> perm;
  };
  auto choose = [&](std::size_t sx, std::size_t sy) -> std::optional<Choice> {
    std::optional<Choice> best;
    int best_cost = std::numeric_limits<int>::max();
    for (std::size_t a = 0; a < trees[sx].size(); ++a) {
      for (std::size_t b = 0; b < trees[sy].size(); ++b) {
        const int cost = trees[sx][a].depth + trees[sy][b].depth;
        if (cost >= best_cost) continue;
        if (auto perm = find_good_position(trees[sx][a].vertex, trees[sy][b].vertex)) {
          best_cost = cost;
          best = Choice{static_cast<int>(a), static_cast<int>(b), std::move(*perm)};
        }
      }
    }
    return best;
  };
  const auto ab = choose(0, 1);
  const auto bg = choose(1, 2);
  const auto ga = choose(2, 0);
  if (!ab || !bg || !ga) return std::nullopt;

  enum Tag { kA, kB, kG, kAB, kAG, kBA, kBG, kGA, kGB };
  std::vector<CutSystem> seq;
  std::vector<std::vector<Tag>> tags;
  auto push = [&](const CutSystem& v, std::vector<Tag> t = {}) {
    seq.push_back(v);
    tags.push_back(std::move(t));
  };
  // Type-0 segment of system s from `from` through the base to `to`.
  auto segment = [&](std::size_t s, int from, int to, Tag t_from, Tag base, Tag t_to) {
    auto up = path_to(trees[s], from);
    auto down = path_to(trees[s], to);
    std::reverse(up.begin(), up.end());
    for (std::size_t i = 0; i < up.size(); ++i) {
      std::vector<Tag> t;
      if (i == 0) t.push_back(t_from);
      if (i + 1 == up.size()) t.push_back(base);
      if (i + 1 == up.size() && down.size() == 1) t.push_back(t_to);
      push(up[i], t);
    }
    for (std::size_t i = 1; i < down.size(); ++i) push(down[i], i + 1 == down.size() ? std::vector<Tag>{t_to} : std::vector<Tag>{});
  };
  // Interior vertices of the type-1 path replacing dual curves one at a time.
  auto dual_path = [&](const CutSystem& x, const CutSystem& y, const std::vector<std::size_t>& perm) {
    CutSystem cur = x;
    std::vector<CutSystem> out;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (is_parallel(x[i], y[perm[i]])) continue;
      cur.curves[i] = y[perm[i]];
      out.push_back(cur);
    }
    if (!out.empty()) out.pop_back();
    for (auto& v : out) push(v);
  };
  auto vtx = [&](std::size_t s, int idx) -> const CutSystem& { return trees[s][static_cast<std::size_t>(idx)].vertex; };

  // alpha_beta -> alpha -> alpha_gamma -> gamma_alpha -> gamma -> gamma_beta -> beta_gamma -> beta -> beta_alpha
  segment(0, ab->x, ga->y, kAB, kA, kAG);
  dual_path(vtx(0, ga->y), vtx(2, ga->x), [&] {
    std::vector<std::size_t> inv(ga->perm.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[ga->perm[i]] = i;
    return inv;
  }());
  segment(2, ga->x, bg->y, kGA, kG, kGB);
  dual_path(vtx(2, bg->y), vtx(1, bg->x), [&] {
    std::vector<std::size_t> inv(bg->perm.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[bg->perm[i]] = i;
    return inv;
  }());
  segment(1, bg->x, ab->y, kBG, kB, kBA);
  dual_path(vtx(1, ab->y), vtx(0, ab->x), [&] {
    std::vector<std::size_t> inv(ab->perm.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[ab->perm[i]] = i;
    return inv;
  }());

  // Collapse repeated consecutive vertices, cyclically.
  std::vector<CutSystem> vs;
  std::vector<std::vector<Tag>> vt;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!vs.empty() && same_vertex(vs.back(), seq[i])) {
      vt.back().insert(vt.back().end(), tags[i].begin(), tags[i].end());
      continue;
    }
    vs.push_back(seq[i]);
    vt.push_back(tags[i]);
  }
  while (vs.size() > 1 && same_vertex(vs.back(), vs.front())) {
    vt.front().insert(vt.front().end(), vt.back().begin(), vt.back().end());
    vs.pop_back();
    vt.pop_back();
  }

  LengthBound out;
  out.loop.vertices = vs;
  for (std::size_t i = 0; i < vt.size(); ++i) {
    for (Tag t : vt[i]) {
      auto& m = out.loop.markers;
      switch (t) {
        case kA: m.alpha = i; break;
        case kB: m.beta = i; break;
        case kG: m.gamma = i; break;
        case kAB: m.alpha_beta = i; break;
        case kAG: m.alpha_gamma = i; break;
        case kBA: m.beta_alpha = i; break;
        case kBG: m.beta_gamma = i; break;
        case kGA: m.gamma_alpha = i; break;
        case kGB: m.gamma_beta = i; break;
      }
    }
  }
  out.report = verify_realization_loop(out.loop, d);
  if (!out.report.ok()) return std::nullopt;
  out.bound = out.report.L;
  return out;
}

}  // namespace trisect
