#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trisect/surface.hpp"

namespace trisect {

// A pass whose slot is free to be chosen.
struct SlotRequest {
  std::size_t system = 0;
  std::size_t curve = 0;
  std::size_t pass = 0;
};

// Chooses slots for the requested passes. Passes not listed keep their slots
// and their relative order. The objective, in priority order: every curve
// simple, curves of one system pairwise disjoint, few crossings between
// systems. Deterministic for fixed input.
void place_slots(std::vector<std::vector<Curve>>& systems, std::span<const SlotRequest> movable);

// Crossings between curves of different systems plus heavily weighted
// self-crossings and crossings inside one system.
long long placement_cost(const std::vector<std::vector<Curve>>& systems);

}  // namespace trisect
