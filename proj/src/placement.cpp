#include "trisect/placement.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "trisect/layout.hpp"

namespace trisect {

namespace {

constexpr long long kSelfWeight = 1'000'000;
constexpr long long kSystemWeight = 1'000;

struct Item {
  std::size_t curve = 0;  // flat index
  std::size_t pass = 0;
  bool movable = false;
};

struct Flat {
  std::vector<std::pair<std::size_t, std::size_t>> where;  // (system, curve)
  std::vector<std::vector<std::int64_t>> slots;             // per flat curve
};

long long cost_of(const std::vector<const Curve*>& curves, const std::vector<std::size_t>& system_of) {
  const auto lay = layout_chords(curves);
  long long cost = 0;
  for (std::size_t a = 0; a < curves.size(); ++a) {
    const auto& ca = lay.chords[a];
    for (std::size_t i = 0; i < ca.size(); ++i) {
      for (std::size_t k = i + 1; k < ca.size(); ++k) cost += chords_cross(ca[i], ca[k]) ? kSelfWeight : 0;
    }
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      const long long w = system_of[a] == system_of[b] ? kSystemWeight : 1;
      for (const auto& x : ca) {
        for (const auto& y : lay.chords[b]) cost += chords_cross(x, y) ? w : 0;
      }
    }
  }
  return cost;
}

// Keys for one handle order; nullopt when movable strands cannot fit between
// their fixed neighbours.
std::optional<std::vector<std::int64_t>> keys_for(const std::vector<Item>& order,
                                                  const std::vector<std::vector<Curve>>& systems,
                                                  const Flat& flat) {
  std::vector<std::int64_t> keys(order.size(), 0);
  std::size_t i = 0;
  std::optional<std::int64_t> lo;
  while (i < order.size()) {
    if (!order[i].movable) {
      const auto [s, c] = flat.where[order[i].curve];
      keys[i] = systems[s][c][order[i].pass].slot;
      lo = keys[i];
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < order.size() && order[j].movable) ++j;
    const auto run = static_cast<std::int64_t>(j - i);
    const std::int64_t low = lo ? *lo : -1;
    std::int64_t high;
    if (j < order.size()) {
      const auto [s, c] = flat.where[order[j].curve];
      high = systems[s][c][order[j].pass].slot;
    } else {
      high = low + (run + 1) * kSlotStride;
    }
    const std::int64_t step = (high - low) / (run + 1);
    if (step < 1) return std::nullopt;
    for (std::int64_t r = 0; r < run; ++r) keys[i + static_cast<std::size_t>(r)] = low + (r + 1) * step;
    i = j;
  }
  return keys;
}

}  // namespace

long long placement_cost(const std::vector<std::vector<Curve>>& systems) {
  std::vector<const Curve*> curves;
  std::vector<std::size_t> system_of;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (const auto& c : systems[s]) {
      curves.push_back(&c);
      system_of.push_back(s);
    }
  }
  return cost_of(curves, system_of);
}

void place_slots(std::vector<std::vector<Curve>>& systems, std::span<const SlotRequest> movable) {
  if (movable.empty()) return;

  Flat flat;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> flat_index;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (std::size_t c = 0; c < systems[s].size(); ++c) {
      flat_index[{s, c}] = flat.where.size();
      flat.where.emplace_back(s, c);
      const auto w = systems[s][c].word();
      flat.slots.emplace_back();
      for (const auto& p : w) flat.slots.back().push_back(p.slot);
    }
  }

  // Handle orders: fixed strands by slot, then movable strands in request order.
  std::map<std::size_t, std::vector<Item>> orders;
  std::vector<std::vector<bool>> is_movable(flat.where.size());
  for (std::size_t f = 0; f < flat.where.size(); ++f) {
    const auto [s, c] = flat.where[f];
    is_movable[f].assign(systems[s][c].size(), false);
  }
  for (const auto& r : movable) is_movable[flat_index.at({r.system, r.curve})][r.pass] = true;
  for (std::size_t f = 0; f < flat.where.size(); ++f) {
    const auto [s, c] = flat.where[f];
    const auto w = systems[s][c].word();
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (!is_movable[f][p]) orders[handle_index(w[p])].push_back({f, p, false});
    }
  }
  for (auto& [h, items] : orders) {
    std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
      const auto [sa, ca] = flat.where[a.curve];
      const auto [sb, cb] = flat.where[b.curve];
      return systems[sa][ca][a.pass].slot < systems[sb][cb][b.pass].slot;
    });
  }
  for (const auto& r : movable) {
    const Curve& c = systems[r.system][r.curve];
    orders[handle_index(c[r.pass])].push_back({flat_index.at({r.system, r.curve}), r.pass, true});
  }

  std::vector<std::size_t> system_of;
  for (const auto& [s, c] : flat.where) system_of.push_back(s);

  // Working copies of the curves; slots of one handle are rewritten per trial.
  std::vector<Curve> work;
  for (const auto& [s, c] : flat.where) work.push_back(systems[s][c]);
  std::vector<const Curve*> ptrs;
  for (const auto& c : work) ptrs.push_back(&c);

  auto apply = [&](const std::vector<Item>& order) -> bool {
    const auto keys = keys_for(order, systems, flat);
    if (!keys) return false;
    for (std::size_t i = 0; i < order.size(); ++i) flat.slots[order[i].curve][order[i].pass] = (*keys)[i];
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t f = order[i].curve;
      work[f] = work[f].with_slots(flat.slots[f]);
    }
    return true;
  };

  for (auto& [h, order] : orders) apply(order);
  long long best = cost_of(ptrs, system_of);

  for (int round = 0; round < 32 && best > 0; ++round) {
    bool improved = false;
    for (auto& [h, order] : orders) {
      std::vector<std::size_t> mov_pos;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i].movable) mov_pos.push_back(i);
      }
      if (mov_pos.empty()) continue;

      std::vector<Item> best_order = order;
      auto consider = [&](const std::vector<Item>& cand) {
        if (!apply(cand)) return;
        const long long c = cost_of(ptrs, system_of);
        if (c < best) {
          best = c;
          best_order = cand;
          improved = true;
        }
      };

      if (order.size() <= 6) {
        // Exhaustive: choose positions for movable strands, then their order.
        std::vector<Item> fixed;
        std::vector<Item> mov;
        for (const auto& it : order) (it.movable ? mov : fixed).push_back(it);
        std::vector<bool> mask(order.size(), false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(mov.size()), true);
        std::vector<std::size_t> perm(mov.size());
        do {
          for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
          do {
            std::vector<Item> cand;
            std::size_t fi = 0;
            std::size_t mi = 0;
            for (bool m : mask) cand.push_back(m ? mov[perm[mi++]] : fixed[fi++]);
            consider(cand);
          } while (std::next_permutation(perm.begin(), perm.end()));
        } while (std::prev_permutation(mask.begin(), mask.end()));
      } else {
        for (std::size_t mp : mov_pos) {
          for (std::size_t to = 0; to < order.size(); ++to) {
            if (to == mp) continue;
            std::vector<Item> cand = order;
            const Item it = cand[mp];
            cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(mp));
            cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(to), it);
            consider(cand);
          }
        }
      }
      order = best_order;
      apply(order);
    }
    if (!improved) break;
  }

  for (std::size_t f = 0; f < flat.where.size(); ++f) {
    const auto [s, c] = flat.where[f];
    systems[s][c] = work[f];
  }
}

}  // namespace trisect
