#pragma once

// Handle slides of one curve of a cut system over another.
//
// A band is named by a chord of the slid curve and a chord of the curve slid
// over (chord k runs from pass k to pass k+1). The band runs inside the base
// disk, so the two chords must bound a common region of the disk cut along
// all chords of the system.

#include <cstddef>
#include <span>
#include <vector>

#include "trisect/surface.hpp"

namespace trisect {

struct Band {
  std::size_t slid_chord = 0;
  std::size_t over_chord = 0;

  auto operator<=>(const Band&) const = default;
};

// All bands between the two curves, in lexicographic order.
std::vector<Band> adjacent_bands(const CutSystem& cs, std::size_t slid, std::size_t over);

// +1 when the slid curve picks up the over curve with its own orientation,
// -1 when it picks up the reverse.
int slide_sign(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band);

// Replaces curve `slid` by its band sum with a parallel copy of curve `over`.
// The copy is placed next to the over curve on the band side; passes that
// then cancel across a handle are removed. Throws SlideRejected when the band
// is not adjacent or the result is not a cut system.
CutSystem handle_slide(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band);

// As above; slots of `context` curves are kept clear of the copy so their
// relative order to the new strands is well defined.
CutSystem handle_slide(const CutSystem& cs, std::size_t slid, std::size_t over, const Band& band,
                       std::span<const Curve> context);

// Slide inside one system of a diagram. Slots of the whole diagram are
// renumbered when there is no room for the copy.
TrisectionDiagram handle_slide(const TrisectionDiagram& d, SystemId which, std::size_t slid, std::size_t over,
                               const Band& band);

// Maps the distinct slots of every handle to 1, 2, 3, ... times kSlotStride,
// preserving order and ties. Keeps all systems of a diagram consistent.
void spread_slots(std::span<std::vector<Curve>*> groups);

}  // namespace trisect
