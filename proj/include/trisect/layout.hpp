#pragma once

// Chord layout of curves in the base disk. Boundary points are numbered
// counterclockwise: pairs in index order, feet of a pair in foot order, and
// strands within a foot by slot (ascending on minus feet, descending on plus
// feet, since the bands are untwisted).

#include <cstdint>
#include <span>
#include <vector>

#include "trisect/surface.hpp"

namespace trisect {

// Chord k of a curve runs from the exit point of pass k to the entry point of
// pass k+1 (cyclically).
struct Chord {
  std::int64_t from = 0;
  std::int64_t to = 0;
};

struct StrandRef {
  std::size_t curve = 0;
  std::size_t pass = 0;
};

struct DiskLayout {
  std::int64_t perimeter = 0;
  std::vector<std::vector<Chord>> chords;  // per curve
  // Boundary coordinate of the entry/exit of each pass, per curve.
  std::vector<std::vector<std::int64_t>> entry;
  std::vector<std::vector<std::int64_t>> exit;
  // Strands of each handle in slot order; index 2*(pair-1) + (crossed == Beta).
  std::vector<std::vector<StrandRef>> handle_strands;
};

DiskLayout layout_chords(std::span<const Curve* const> curves);

bool chords_cross(const Chord& a, const Chord& b);

// +1 when the head of b lies counterclockwise between the tail and head of a.
// Only meaningful for crossing chords.
int crossing_sign(const Chord& a, const Chord& b, std::int64_t perimeter);

// True when x lies strictly inside the counterclockwise arc from `from` to `to`.
bool in_ccw_open_arc(std::int64_t x, std::int64_t from, std::int64_t to, std::int64_t perimeter);

// Handle index used by DiskLayout::handle_strands.
inline std::size_t handle_index(const HandlePass& p) {
  return 2 * static_cast<std::size_t>(p.pair - 1) + (p.crossed == Core::Beta ? 1 : 0);
}

}  // namespace trisect
