#include "trisect/slide.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>

#include "trisect/error.hpp"
#include "trisect/layout.hpp"

namespace trisect {

namespace {

struct BandGeometry {
  bool adjacent = false;
  bool agree_slid = false;  // over chord lies left of the slid chord
  bool agree_over = false;  // slid chord lies left of the over chord
};

bool inside(std::int64_t x, const Chord& c) {
  const auto lo = std::min(c.from, c.to);
  const auto hi = std::max(c.from, c.to);
  return lo < x && x < hi;
}

std::vector<const Curve*> pointers(const CutSystem& cs) {
  std::vector<const Curve*> out;
  for (const auto& c : cs.curves) out.push_back(&c);
  return out;
}

void check_indices(const CutSystem& cs, std::size_t slid, std::size_t over) {
  if (slid >= cs.size() || over >= cs.size()) throw SlideRejected("curve index out of range");
  if (slid == over) throw SlideRejected("a curve cannot slide over itself");
}

BandGeometry band_geometry(const DiskLayout& lay, std::size_t slid, std::size_t over, const Band& band) {
  const auto& ks = lay.chords[slid];
  const auto& ms = lay.chords[over];
  if (band.slid_chord >= ks.size() || band.over_chord >= ms.size()) throw SlideRejected("band chord out of range");
  const Chord k = ks[band.slid_chord];
  const Chord m = ms[band.over_chord];
  BandGeometry g;
  g.adjacent = true;
  for (std::size_t ci = 0; ci < lay.chords.size() && g.adjacent; ++ci) {
    for (std::size_t x = 0; x < lay.chords[ci].size(); ++x) {
      if ((ci == slid && x == band.slid_chord) || (ci == over && x == band.over_chord)) continue;
      const Chord& c = lay.chords[ci][x];
      if (inside(k.from, c) != inside(m.from, c)) {
        g.adjacent = false;
        break;
      }
    }
  }
  g.agree_slid = in_ccw_open_arc(m.from, k.to, k.from, lay.perimeter);
  g.agree_over = in_ccw_open_arc(k.from, m.to, m.from, lay.perimeter);
  return g;
}

// Slots for the copy of `over`, each next to its original on the band side.
// nullopt when some gap between neighbouring slots is too narrow.
std::optional<std::vector<std::int64_t>> copy_slots(const Curve& over, bool left_side, const CutSystem& cs,
                                                    std::span<const Curve> context) {
  std::map<std::size_t, std::set<std::int64_t>> keys;
  auto collect = [&](const Curve& c) {
    for (const auto& p : c.word()) keys[handle_index(p)].insert(p.slot);
  };
  for (const auto& c : cs.curves) collect(c);
  for (const auto& c : context) collect(c);

  // Requests per (handle, gap lower key): copies going up sit above copies going down.
  struct Req {
    std::size_t pass;
    bool up;
  };
  std::map<std::pair<std::size_t, std::int64_t>, std::vector<Req>> gaps;
  std::map<std::pair<std::size_t, std::int64_t>, std::int64_t> gap_hi;
  for (std::size_t i = 0; i < over.size(); ++i) {
    const auto& q = over[i];
    const std::size_t h = handle_index(q);
    const auto& ks = keys[h];
    const bool up = left_side == (q.sign > 0);
    std::int64_t lo;
    std::int64_t hi;
    if (up) {
      lo = q.slot;
      const auto it = ks.upper_bound(q.slot);
      hi = it == ks.end() ? q.slot + 2 * kSlotStride : *it;
    } else {
      hi = q.slot;
      const auto it = ks.lower_bound(q.slot);
      lo = it == ks.begin() ? -1 : *std::prev(it);
    }
    gaps[{h, lo}].push_back({i, up});
    gap_hi[{h, lo}] = hi;
  }
  std::vector<std::int64_t> out(over.size(), 0);
  for (auto& [key, reqs] : gaps) {
    std::stable_sort(reqs.begin(), reqs.end(), [](const Req& a, const Req& b) { return a.up && !b.up; });
    const std::int64_t lo = key.second;
    const std::int64_t hi = gap_hi[key];
    const auto n = static_cast<std::int64_t>(reqs.size());
    const std::int64_t step = (hi - lo) / (n + 1);
    if (step < 1) return std::nullopt;
    for (std::int64_t r = 0; r < n; ++r) out[reqs[static_cast<std::size_t>(r)].pass] = lo + (r + 1) * step;
  }
  return out;
}

// Removes cyclically adjacent cancelling passes whose strands are neighbours
// in their handle among all strands of the system.
std::vector<HandlePass> cancel_bigons(std::vector<HandlePass> w, const CutSystem& cs, std::size_t replaced) {
  auto separated = [&](const HandlePass& a, const HandlePass& b, std::size_t ia, std::size_t ib) {
    const auto lo = std::min(a.slot, b.slot);
    const auto hi = std::max(a.slot, b.slot);
    const std::size_t h = handle_index(a);
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      if (ci == replaced) continue;
      for (const auto& p : cs[ci].word()) {
        if (handle_index(p) == h && lo < p.slot && p.slot < hi) return true;
      }
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i == ia || i == ib) continue;
      if (handle_index(w[i]) == h && lo < w[i].slot && w[i].slot < hi) return true;
    }
    return false;
  };
  bool changed = true;
  while (changed && !w.empty()) {
    changed = false;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (i == j) break;
      if (!w[i].cancels(w[j]) || separated(w[i], w[j], i, j)) continue;
      if (j > i) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        w.erase(w.begin());
      }
      changed = true;
      break;
    }
  }
  return w;
}

std::optional<CutSystem> try_slide(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band,
                                   std::span<const Curve> context) {
  check_indices(cs, slid, over);
  const auto ptrs = pointers(cs);
  const auto lay = layout_chords(ptrs);
  const auto geo = band_geometry(lay, slid, over, band);
  if (!geo.adjacent) throw SlideRejected("band crosses another curve of the system");
  const int eps = geo.agree_slid == geo.agree_over ? 1 : -1;

  const Curve& c = cs[slid];
  const Curve& d = cs[over];
  const auto slots = copy_slots(d, geo.agree_over, cs, context);
  if (!slots) return std::nullopt;

  std::vector<HandlePass> w;
  const std::size_t n = c.size();
  for (std::size_t i = 1; i <= n; ++i) w.push_back(c[(band.slid_chord + i) % n]);
  const std::size_t m = d.size();
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t idx = eps > 0 ? (band.over_chord + i) % m : (band.over_chord + m + 1 - i) % m;
    HandlePass p = eps > 0 ? d[idx] : d[idx].inverse();
    p.slot = (*slots)[idx];
    w.push_back(p);
  }
  w = cancel_bigons(std::move(w), cs, slid);
  if (w.empty()) throw SlideRejected("slid curve becomes null-homotopic");

  CutSystem out = cs;
  out.curves[slid] = Curve(std::move(w));
  const auto rep = validate_cut_system(out, static_cast<int>(out.size()));
  if (!rep.ok()) {
    throw SlideRejected("result is not a cut system: " + rep.issues.front().kind + " " + rep.issues.front().detail);
  }
  return out;
}

}  // namespace

std::vector<Band> adjacent_bands(const CutSystem& cs, std::size_t slid, std::size_t over) {
  check_indices(cs, slid, over);
  const auto ptrs = pointers(cs);
  const auto lay = layout_chords(ptrs);
  std::vector<Band> out;
  for (std::size_t k = 0; k < cs[slid].size(); ++k) {
    for (std::size_t m = 0; m < cs[over].size(); ++m) {
      if (band_geometry(lay, slid, over, {k, m}).adjacent) out.push_back({k, m});
    }
  }
  return out;
}

int slide_sign(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band) {
  check_indices(cs, slid, over);
  const auto ptrs = pointers(cs);
  const auto geo = band_geometry(layout_chords(ptrs), slid, over, band);
  return geo.agree_slid == geo.agree_over ? 1 : -1;
}

CutSystem handle_slide(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band) {
  return handle_slide(cs, slid, over, band, {});
}

CutSystem handle_slide(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band,
                       std::span<const Curve> context) {
  if (auto out = try_slide(cs, slid, over, band, context)) return *out;
  CutSystem spread = cs;
  std::vector<Curve> ctx(context.begin(), context.end());
  std::array<std::vector<Curve>*, 2> groups{&spread.curves, &ctx};
  spread_slots(groups);
  if (auto out = try_slide(spread, slid, over, band, ctx)) return *out;
  throw SlideRejected("no room for the parallel copy");
}

TrisectionDiagram handle_slide(const TrisectionDiagram& d, SystemId which, std::size_t slid, std::size_t over,
                               const Band& band) {
  auto context_of = [](const TrisectionDiagram& x, SystemId id) {
    std::vector<Curve> ctx;
    for (SystemId o : {SystemId::Alpha, SystemId::Beta, SystemId::Gamma}) {
      if (o == id) continue;
      for (const auto& c : x.system(o).curves) ctx.push_back(c);
    }
    return ctx;
  };
  {
    const auto ctx = context_of(d, which);
    if (auto out = try_slide(d.system(which), slid, over, band, ctx)) {
      TrisectionDiagram r = d;
      r.system(which) = *out;
      return r;
    }
  }
  TrisectionDiagram r = d;
  std::array<std::vector<Curve>*, 3> groups{&r.alpha.curves, &r.beta.curves, &r.gamma.curves};
  spread_slots(groups);
  const auto ctx = context_of(r, which);
  if (auto out = try_slide(r.system(which), slid, over, band, ctx)) {
    r.system(which) = *out;
    return r;
  }
  throw SlideRejected("no room for the parallel copy");
}

void spread_slots(std::span<std::vector<Curve>*> groups) {
  std::map<std::size_t, std::set<std::int64_t>> keys;
  for (auto* g : groups) {
    for (const auto& c : *g) {
      for (const auto& p : c.word()) keys[handle_index(p)].insert(p.slot);
    }
  }
  for (auto* g : groups) {
    for (auto& c : *g) {
      std::vector<std::int64_t> slots;
      for (const auto& p : c.word()) {
        const auto& ks = keys[handle_index(p)];
        const auto rank = static_cast<std::int64_t>(std::distance(ks.begin(), ks.find(p.slot)));
        slots.push_back((rank + 1) * kSlotStride);
      }
      c = c.with_slots(slots);
    }
  }
}

}  // namespace trisect
