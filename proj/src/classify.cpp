#include "trisect/classify.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <sstream>

#include "trisect/kirby.hpp"
#include "trisect/slide.hpp"

namespace trisect {

namespace {

constexpr std::array<SystemId, 3> kSystems{SystemId::Alpha, SystemId::Beta, SystemId::Gamma};

bool on_pair(const Curve& c, int j) {
  return std::all_of(c.word().begin(), c.word().end(), [&](const HandlePass& p) { return p.pair == j; });
}

bool touches_pair(const Curve& c, int j) {
  return std::any_of(c.word().begin(), c.word().end(), [&](const HandlePass& p) { return p.pair == j; });
}

Curve renumber(const Curve& c, int removed) {
  std::vector<HandlePass> w(c.word().begin(), c.word().end());
  for (auto& p : w) {
    if (p.pair == removed) {
      p.pair = 1;
    } else if (p.pair > removed) {
      --p.pair;
    }
  }
  return Curve(std::move(w));
}

// Index of the single curve of cs living on pair j, when every other curve
// avoids the pair.
std::optional<std::size_t> isolated_curve(const CutSystem& cs, int j) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!touches_pair(cs[i], j)) continue;
    if (!on_pair(cs[i], j) || found) return std::nullopt;
    found = i;
  }
  return found;
}

std::optional<SplitKind> genus_one_kind(const Curve& a, const Curve& b, const Curve& c) {
  const bool ab = is_parallel(a, b);
  const bool bc = is_parallel(b, c);
  const bool ca = is_parallel(c, a);
  if (ab && bc && ca) return SplitKind::S1xS3Summand;
  auto dual = [](const Curve& x, const Curve& y) {
    return std::abs(homological_pairing(homology_vector(x, 1), homology_vector(y, 1))) == 1;
  };
  if (ab && dual(a, c)) return SplitKind::S4Destabilization;
  if (bc && dual(b, a)) return SplitKind::S4Destabilization;
  if (ca && dual(c, b)) return SplitKind::S4Destabilization;
  return std::nullopt;
}

std::optional<std::pair<int, SplitKind>> find_removable(const TrisectionDiagram& d) {
  for (int j = 1; j <= d.genus(); ++j) {
    std::array<const Curve*, 3> cur{};
    bool ok = true;
    for (std::size_t s = 0; s < 3 && ok; ++s) {
      const auto& cs = d.system(kSystems[s]);
      const auto i = isolated_curve(cs, j);
      if (!i) {
        ok = false;
        break;
      }
      cur[s] = &cs[*i];
    }
    if (!ok) continue;
    const auto kind = genus_one_kind(renumber(*cur[0], j), renumber(*cur[1], j), renumber(*cur[2], j));
    if (kind) return std::make_pair(j, *kind);
  }
  return std::nullopt;
}

bool has_cross_parallel(const TrisectionDiagram& d) {
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t t = s + 1; t < 3; ++t) {
      for (const auto& x : d.system(kSystems[s]).curves) {
        for (const auto& y : d.system(kSystems[t]).curves) {
          if (is_parallel(x, y)) return true;
        }
      }
    }
  }
  return false;
}

std::string vertex_key(const TrisectionDiagram& d) {
  std::string key;
  for (auto id : kSystems) {
    std::vector<std::string> words;
    for (const auto& c : d.system(id).curves) {
      std::string w;
      for (const auto& t : normal_form(c)) {
        w += t.crossed == Core::Alpha ? 'A' : 'B';
        w += std::to_string(t.pair);
        w += t.sign > 0 ? '+' : '-';
      }
      words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    for (const auto& w : words) key += w + ",";
    key += "|";
  }
  return key;
}

struct SearchNode {
  TrisectionDiagram d;
  std::vector<std::string> slides;
};

std::optional<SearchNode> search_slides(const TrisectionDiagram& start, int depth) {
  std::deque<SearchNode> queue{{start, {}}};
  std::set<std::string> seen{vertex_key(start)};
  while (!queue.empty()) {
    SearchNode node = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(node.slides.size()) >= depth) continue;
    for (auto id : kSystems) {
      const auto& cs = node.d.system(id);
      for (std::size_t slid = 0; slid < cs.size(); ++slid) {
        for (std::size_t over = 0; over < cs.size(); ++over) {
          if (slid == over) continue;
          for (const auto& band : adjacent_bands(cs, slid, over)) {
            TrisectionDiagram next;
            try {
              next = handle_slide(node.d, id, slid, over, band);
            } catch (const SlideRejected&) {
              continue;
            }
            if (!seen.insert(vertex_key(next)).second) continue;
            std::ostringstream desc;
            desc << system_name(id) << "[" << slid << "] over " << system_name(id) << "[" << over << "] band ("
                 << band.slid_chord << "," << band.over_chord << ")";
            SearchNode child{std::move(next), node.slides};
            child.slides.push_back(desc.str());
            if (find_removable(child.d)) return child;
            queue.push_back(std::move(child));
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

const char* split_kind_name(SplitKind k) {
  return k == SplitKind::S4Destabilization ? "S4Destabilization" : "S1xS3Summand";
}

TrisectionDiagram connected_sum(const TrisectionDiagram& d1, const TrisectionDiagram& d2) {
  if (d1.convention != d2.convention) throw Error("connected sum of diagrams with different conventions");
  TrisectionDiagram out = d1;
  out.model.genus = d1.genus() + d2.genus();
  for (auto id : kSystems) {
    for (const auto& c : d2.system(id).curves) {
      std::vector<HandlePass> w(c.word().begin(), c.word().end());
      for (auto& p : w) p.pair += d1.genus();
      out.system(id).curves.emplace_back(std::move(w));
    }
  }
  return out;
}

TrisectionDiagram remove_pair(TrisectionDiagram& d, int j) {
  TrisectionDiagram removed;
  removed.model.genus = 1;
  removed.convention = d.convention;
  for (auto id : kSystems) {
    auto& cs = d.system(id);
    const auto i = isolated_curve(cs, j);
    if (!i) throw StructuralError("handle pair " + std::to_string(j) + " is not isolated in " + system_name(id));
    removed.system(id).curves.push_back(renumber(cs[*i], j));
    cs.curves.erase(cs.curves.begin() + static_cast<std::ptrdiff_t>(*i));
    for (auto& c : cs.curves) c = renumber(c, j);
  }
  --d.model.genus;
  return removed;
}

int removable_pair(const TrisectionDiagram& d) {
  const auto hit = find_removable(d);
  return hit ? hit->first : 0;
}

SplitResult split_summands(const TrisectionDiagram& d, int slide_depth) {
  SplitResult res{d, {}};
  std::vector<std::string> pending;
  for (;;) {
    if (res.reduced.genus() == 0) return res;
    if (const auto hit = find_removable(res.reduced)) {
      SplitEvent ev;
      ev.kind = hit->second;
      ev.pair = hit->first;
      ev.genus_before = res.reduced.genus();
      ev.removed = remove_pair(res.reduced, hit->first);
      ev.genus_after = res.reduced.genus();
      ev.slides = std::move(pending);
      pending.clear();
      res.events.push_back(std::move(ev));
      continue;
    }
    if (has_cross_parallel(res.reduced)) {
      if (auto found = search_slides(res.reduced, slide_depth)) {
        res.reduced = std::move(found->d);
        pending = std::move(found->slides);
        continue;
      }
    }
    if (!res.reduced.alpha_beta_standard()) {
      throw Stuck("alpha and beta are not standard and no genus-one summand splits off within " +
                      std::to_string(slide_depth) + " slides",
                  res);
    }
    return res;
  }
}

std::string decomposition_name(const Decomposition& d) {
  if (d.s4_trivial) return "S4";
  std::vector<std::string> parts;
  parts.insert(parts.end(), static_cast<std::size_t>(d.p), "S1xS3");
  parts.insert(parts.end(), static_cast<std::size_t>(d.q), "S2xS2");
  parts.insert(parts.end(), static_cast<std::size_t>(d.r), "CP2");
  parts.insert(parts.end(), static_cast<std::size_t>(d.s), "-CP2");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " # " : "") + parts[i];
  return out;
}

std::array<int, 3> diagram_k(const TrisectionDiagram& d) {
  return {heegaard_k(d.alpha, d.beta), heegaard_k(d.beta, d.gamma), heegaard_k(d.gamma, d.alpha)};
}

Decomposition classify(const TrisectionDiagram& d, int slide_depth) {
  auto report = validate_diagram(d);
  if (!report.ok()) throw InvalidDiagram(std::move(report));
  const auto k = diagram_k(d);

  Decomposition out;
  const SplitResult split = split_summands(d, slide_depth);
  for (const auto& ev : split.events) {
    for (const auto& s : ev.slides) out.certificate.push_back({"slide", s});
    out.certificate.push_back({"split", std::string(split_kind_name(ev.kind)) + " on handle pair " +
                                            std::to_string(ev.pair) + ", genus " + std::to_string(ev.genus_before) +
                                            " -> " + std::to_string(ev.genus_after)});
    if (ev.kind == SplitKind::S1xS3Summand) ++out.p;
  }

  if (split.reduced.genus() > 0) {
    const auto link = extract_kirby(split.reduced);
    const auto q = to_int_matrix(linking_matrix(link));
    std::ostringstream m;
    for (std::size_t i = 0; i < q.size(); ++i) {
      m << (i ? "; " : "");
      for (std::size_t j = 0; j < q.size(); ++j) m << (j ? " " : "") << q[i][j];
    }
    out.certificate.push_back({"matrix", "[" + m.str() + "]"});
    const auto red = reduce_matrix(q);
    for (const auto& op : red.log) out.certificate.push_back({"congruence", format_op(op)});
    for (const auto& b : red.blocks) {
      std::string at;
      for (auto i : b.indices) at += " b" + std::to_string(i + 1);
      switch (b.kind) {
        case BlockKind::Plus:
          ++out.r;
          out.certificate.push_back({"block", "[+1] at" + at + " -> CP2"});
          break;
        case BlockKind::Minus:
          ++out.s;
          out.certificate.push_back({"block", "[-1] at" + at + " -> -CP2"});
          break;
        case BlockKind::Hyperbolic:
          ++out.q;
          out.certificate.push_back({"block", "H at" + at + " -> S2xS2"});
          break;
        case BlockKind::Zero:
          out.certificate.push_back({"cancel", "[0] at" + at + " cancels against a 3-handle"});
          break;
      }
    }
  }
  out.s4_trivial = out.p == 0 && out.q == 0 && out.r == 0 && out.s == 0;
  if (!euler_check(d.genus(), k, out)) {
    throw InternalConsistency("Euler characteristic of the decomposition " + decomposition_name(out) +
                              " disagrees with the trisection parameters");
  }
  return out;
}

bool euler_check(int g, std::array<int, 3> k, const Decomposition& d) {
  return 2 + g - (k[0] + k[1] + k[2]) == 2 - 2 * d.p + 2 * d.q + d.r + d.s;
}

}  // namespace trisect
