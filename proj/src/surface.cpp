#include "trisect/surface.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "trisect/error.hpp"
#include "trisect/intmatrix.hpp"
#include "trisect/layout.hpp"

namespace trisect {

Curve::Curve(std::vector<HandlePass> word) : word_(std::move(word)) {
  if (word_.empty()) throw MalformedCurve("curve word is empty");
  for (const auto& p : word_) {
    if (p.pair < 1) throw MalformedCurve("handle pair index must be positive");
    if (p.sign != 1 && p.sign != -1) throw MalformedCurve("pass sign must be +1 or -1");
    if (p.slot < 0) throw MalformedCurve("slot must be non-negative");
  }
}

Curve Curve::reversed() const {
  std::vector<HandlePass> w;
  w.reserve(word_.size());
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) w.push_back(it->inverse());
  return Curve(std::move(w));
}

Curve Curve::rotated(std::size_t k) const {
  std::vector<HandlePass> w(word_.begin(), word_.end());
  std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k % w.size()), w.end());
  return Curve(std::move(w));
}

Curve Curve::with_slots(std::span<const std::int64_t> slots) const {
  if (slots.size() != word_.size()) throw MalformedCurve("slot count does not match word length");
  std::vector<HandlePass> w(word_.begin(), word_.end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i].slot = slots[i];
  return Curve(std::move(w));
}

int Curve::max_pair() const {
  int m = 0;
  for (const auto& p : word_) m = std::max(m, p.pair);
  return m;
}

bool Curve::operator==(const Curve& o) const {
  if (word_.size() != o.word_.size()) return false;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (token_of(word_[i]) != token_of(o.word_[i]) || word_[i].slot != o.word_[i].slot) return false;
  }
  return true;
}

std::vector<std::pair<int, Foot>> HandleModel::foot_order() const {
  std::vector<std::pair<int, Foot>> out;
  for (int j = 1; j <= genus; ++j) {
    for (Foot f : {Foot::AlphaMinus, Foot::BetaMinus, Foot::AlphaPlus, Foot::BetaPlus}) out.emplace_back(j, f);
  }
  return out;
}

const char* system_name(SystemId id) {
  switch (id) {
    case SystemId::Alpha:
      return "alpha";
    case SystemId::Beta:
      return "beta";
    case SystemId::Gamma:
      return "gamma";
  }
  return "?";
}

const CutSystem& TrisectionDiagram::system(SystemId id) const {
  switch (id) {
    case SystemId::Alpha:
      return alpha;
    case SystemId::Beta:
      return beta;
    default:
      return gamma;
  }
}

CutSystem& TrisectionDiagram::system(SystemId id) {
  return const_cast<CutSystem&>(std::as_const(*this).system(id));
}

namespace {

// Pair index j when the reduced word is a single crossing of the given core.
int single_crossing_pair(const Curve& c, Core crossed) {
  const auto r = reduced_tokens(c);
  if (r.size() != 1 || r[0].crossed != crossed) return 0;
  return r[0].pair;
}

}  // namespace

bool TrisectionDiagram::alpha_beta_standard() const {
  const int g = genus();
  if (static_cast<int>(alpha.size()) != g || static_cast<int>(beta.size()) != g) return false;
  std::vector<int> seen_a(static_cast<std::size_t>(g) + 1, 0);
  std::vector<int> seen_b(static_cast<std::size_t>(g) + 1, 0);
  for (const auto& c : alpha.curves) {
    const int j = single_crossing_pair(c, Core::Beta);
    if (j < 1 || j > g || seen_a[static_cast<std::size_t>(j)]++) return false;
  }
  for (const auto& c : beta.curves) {
    const int j = single_crossing_pair(c, Core::Alpha);
    if (j < 1 || j > g || seen_b[static_cast<std::size_t>(j)]++) return false;
  }
  return true;
}

Curve standard_core(Core which, int pair, std::int64_t slot) {
  if (which == Core::Alpha) return Curve({{Core::Beta, pair, +1, slot}});
  return Curve({{Core::Alpha, pair, -1, slot}});
}

CutSystem standard_system(Core which, int genus) {
  CutSystem cs;
  for (int j = 1; j <= genus; ++j) cs.curves.push_back(standard_core(which, j, kSlotStride));
  return cs;
}

std::vector<int> homology_vector(const Curve& c, int genus) {
  std::vector<int> v(2 * static_cast<std::size_t>(genus), 0);
  for (const auto& p : c.word()) {
    if (p.pair > genus) {
      throw MalformedCurve("pass on handle pair " + std::to_string(p.pair) + " exceeds genus " +
                           std::to_string(genus));
    }
    const std::size_t idx = 2 * static_cast<std::size_t>(p.pair - 1) + (p.crossed == Core::Beta ? 1 : 0);
    v[idx] += p.sign;
  }
  return v;
}

int homological_pairing(std::span<const int> v1, std::span<const int> v2) {
  if (v1.size() != v2.size()) throw MalformedCurve("homology vectors of different genus");
  int sum = 0;
  for (std::size_t j = 0; j + 1 < v1.size(); j += 2) sum += v1[j] * v2[j + 1] - v1[j + 1] * v2[j];
  return sum;
}

int algebraic_intersection(const Curve& c1, const Curve& c2) {
  const std::array<const Curve*, 2> cs{&c1, &c2};
  const auto lay = layout_chords(cs);
  int sum = 0;
  for (const auto& a : lay.chords[0]) {
    for (const auto& b : lay.chords[1]) {
      if (chords_cross(a, b)) sum += crossing_sign(a, b, lay.perimeter);
    }
  }
  return sum;
}

int geometric_intersection(const Curve& c1, const Curve& c2) {
  const std::array<const Curve*, 2> cs{&c1, &c2};
  const auto lay = layout_chords(cs);
  int count = 0;
  for (const auto& a : lay.chords[0]) {
    for (const auto& b : lay.chords[1]) count += chords_cross(a, b) ? 1 : 0;
  }
  return count;
}

int self_intersections(const Curve& c) {
  const std::array<const Curve*, 1> cs{&c};
  const auto lay = layout_chords(cs);
  const auto& ch = lay.chords[0];
  int count = 0;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    for (std::size_t k = i + 1; k < ch.size(); ++k) count += chords_cross(ch[i], ch[k]) ? 1 : 0;
  }
  return count;
}

std::vector<PassToken> reduced_tokens(const Curve& c) {
  std::vector<PassToken> st;
  for (const auto& p : c.word()) {
    const PassToken t = token_of(p);
    if (!st.empty() && st.back().crossed == t.crossed && st.back().pair == t.pair && st.back().sign == -t.sign) {
      st.pop_back();
    } else {
      st.push_back(t);
    }
  }
  // Cyclic trimming.
  std::size_t lo = 0;
  std::size_t hi = st.size();
  while (hi - lo >= 2) {
    const auto& a = st[lo];
    const auto& b = st[hi - 1];
    if (a.crossed == b.crossed && a.pair == b.pair && a.sign == -b.sign) {
      ++lo;
      --hi;
    } else {
      break;
    }
  }
  return {st.begin() + static_cast<std::ptrdiff_t>(lo), st.begin() + static_cast<std::ptrdiff_t>(hi)};
}

namespace {

std::vector<PassToken> min_rotation(const std::vector<PassToken>& w) {
  std::vector<PassToken> best = w;
  std::vector<PassToken> cur = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace

std::vector<PassToken> normal_form(const Curve& c) {
  const auto r = reduced_tokens(c);
  if (r.empty()) return r;
  std::vector<PassToken> rev;
  rev.reserve(r.size());
  for (auto it = r.rbegin(); it != r.rend(); ++it) rev.push_back({it->crossed, it->pair, -it->sign});
  return std::min(min_rotation(r), min_rotation(rev));
}

bool is_parallel(const Curve& c1, const Curve& c2) {
  const auto n1 = normal_form(c1);
  if (n1.empty()) return false;
  return n1 == normal_form(c2);
}

bool has_cocore_bigon(const Curve& c) {
  const auto w = c.word();
  if (w.size() < 2) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].cancels(w[(i + 1) % w.size()])) return true;
  }
  return false;
}

ValidationReport validate_cut_system(const CutSystem& cs, int genus) {
  ValidationReport rep;
  if (static_cast<int>(cs.size()) != genus) {
    rep.issues.push_back({"count", {}, "expected " + std::to_string(genus) + " curves, found " +
                                           std::to_string(cs.size())});
  }
  bool in_range = true;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Curve& c = cs[i];
    if (c.max_pair() > genus) {
      rep.issues.push_back({"malformed", {i}, "pass on handle pair " + std::to_string(c.max_pair()) +
                                                  " exceeds genus " + std::to_string(genus)});
      in_range = false;
      continue;
    }
    if (reduced_tokens(c).empty()) rep.issues.push_back({"inessential", {i}, "word reduces to the empty word"});
    if (const int s = self_intersections(c); s != 0) {
      rep.issues.push_back({"self-intersection", {i}, std::to_string(s) + " self-crossings"});
    }
    if (has_cocore_bigon(c)) rep.warnings.push_back("curve " + std::to_string(i) + " bounds a bigon with a cocore");
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t k = i + 1; k < cs.size(); ++k) {
      if (const int n = geometric_intersection(cs[i], cs[k]); n != 0) {
        rep.issues.push_back({"intersection", {i, k}, std::to_string(n) + " crossings"});
      }
    }
  }
  if (in_range && genus > 0 && cs.size() > 0) {
    IntMatrix m;
    for (const auto& c : cs.curves) {
      const auto v = homology_vector(c, genus);
      m.emplace_back(v.begin(), v.end());
    }
    if (const int r = matrix_rank(m); r != genus) {
      rep.issues.push_back({"rank", {}, "homology rank " + std::to_string(r) + ", expected " + std::to_string(genus)});
    }
  }
  return rep;
}

std::vector<std::vector<int>> pairing_matrix(const CutSystem& x, const CutSystem& y) {
  std::vector<std::vector<int>> m(x.size(), std::vector<int>(y.size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m[i][j] = algebraic_intersection(x[i], y[j]);
  }
  return m;
}

int heegaard_k(const CutSystem& x, const CutSystem& y) {
  if (x.size() == 0) return 0;
  return static_cast<int>(x.size()) - matrix_rank(to_int_matrix(pairing_matrix(x, y)));
}

ValidationReport validate_diagram(const TrisectionDiagram& d) {
  ValidationReport rep;
  const std::array<SystemId, 3> ids{SystemId::Alpha, SystemId::Beta, SystemId::Gamma};
  bool systems_ok = true;
  for (SystemId id : ids) {
    auto sub = validate_cut_system(d.system(id), d.genus());
    for (auto& issue : sub.issues) {
      issue.kind = std::string(system_name(id)) + "." + issue.kind;
      rep.issues.push_back(std::move(issue));
      systems_ok = false;
    }
    for (auto& w : sub.warnings) rep.warnings.push_back(std::string(system_name(id)) + ": " + w);
  }
  if (!systems_ok) return rep;
  for (std::size_t i = 0; i < 3; ++i) {
    const SystemId a = ids[i];
    const SystemId b = ids[(i + 1) % 3];
    const auto m = to_int_matrix(pairing_matrix(d.system(a), d.system(b)));
    for (auto f : invariant_factors(m)) {
      if (f != 1) {
        rep.issues.push_back({"heegaard", {}, std::string("(") + system_name(a) + ", " + system_name(b) +
                                                  ") has torsion of order " + std::to_string(f)});
        break;
      }
    }
  }
  return rep;
}

std::string format_pass(const HandlePass& p, bool with_slot) {
  std::string s(1, p.crossed == Core::Alpha ? 'A' : 'B');
  s += std::to_string(p.pair);
  s += p.sign > 0 ? '+' : '-';
  if (with_slot) {
    s += '@';
    s += std::to_string(p.slot % kSlotStride == 0 ? p.slot / kSlotStride : p.slot);
  }
  return s;
}

std::string format_curve(const Curve& c, bool with_slot) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ' ';
    os << format_pass(c[i], with_slot);
  }
  return os.str();
}

}  // namespace trisect
