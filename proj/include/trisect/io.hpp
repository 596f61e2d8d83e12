#pragma once

// Text format:
//
//   trisection v1
//   genus 2
//   convention standard
//   alpha: std
//   beta: std
//   gamma:
//     g1 = A1+@0 B2+@0
//     g2 = A2+@0 B1+@0
//
// Slots are small integers; a pass without one has slot 0. "std" stands for
// the handle cores at slot 1.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "trisect/complex.hpp"
#include "trisect/surface.hpp"

namespace trisect {

struct DiagramFile {
  TrisectionDiagram diagram;
  std::array<bool, 3> shorthand{false, false, false};   // system written as "std"
  std::array<std::vector<std::string>, 3> names;        // curve names per system
  std::array<std::vector<std::vector<bool>>, 3> slots;  // pass carries an explicit slot
};

// Throws ParseError with the line and column of the offending text.
DiagramFile parse_file(std::string_view text);
TrisectionDiagram parse(std::string_view text);

std::string serialize(const DiagramFile& f);
// Default names a1.., b1.., g1..; "std" when a system is exactly the cores;
// slots renumbered to small integers when needed.
std::string serialize(const TrisectionDiagram& d);

// Loop file (JSON): {"vertices": [...], "markers": {...}}. A vertex is the
// name of a system of the diagram ("alpha", "beta", "gamma") or an array of
// curve words. Markers name vertex indices: alpha, beta, gamma, alpha_beta,
// alpha_gamma, beta_alpha, beta_gamma, gamma_alpha, gamma_beta.
RealizationLoopCandidate parse_loop(std::string_view json_text, const TrisectionDiagram& d);
std::string serialize_loop(const RealizationLoopCandidate& loop);

// One curve word in file notation, e.g. "A1+@2 B1-".
Curve parse_curve(std::string_view text, int genus);

}  // namespace trisect
