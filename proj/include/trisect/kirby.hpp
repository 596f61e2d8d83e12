#pragma once

// Framed link induced by the third cut system once a standard pair of cut
// systems is erased. A pass of a component crossing alpha_j runs under every
// pass of any component crossing beta_j; these are all the crossings.

#include <cstddef>
#include <string>
#include <vector>

#include "trisect/surface.hpp"

namespace trisect {

struct Crossing {
  std::size_t under_component = 0;
  std::size_t over_component = 0;
  int handle_pair = 1;
  std::size_t under_pass = 0;  // index into the under component's word (an alpha crossing)
  std::size_t over_pass = 0;   // index into the over component's word (a beta crossing)
  int sign = 1;
};

struct FramedLinkDiagram {
  std::vector<Curve> components;
  std::vector<Crossing> crossings;
  std::vector<int> framings;
  Convention convention = Convention::Standard;
};

using LinkingMatrix = std::vector<std::vector<int>>;

// -1 for the standard basis, +1 for the reversed one.
int convention_factor(Convention conv);

// Crossing sign of an alpha pass under a beta pass.
int kirby_crossing_sign(const HandlePass& under, const HandlePass& over, Convention conv);

// Throws RequiresStandardization unless (alpha, beta) is standard.
FramedLinkDiagram extract_kirby(const TrisectionDiagram& d);

// -sum_j a_j b_j (standard basis) or +sum_j a_j b_j (reversed basis).
int framing_formula(const Curve& c, Convention conv = Convention::Standard);

// Half the signed crossing count between c and a push-off of c. Throws
// InternalConsistency when the push-off is not disjoint from c.
int parallel_copy_oracle(const Curve& c, Convention conv = Convention::Standard);

// Off-diagonal entries from the homology formula, checked against the
// crossing list; throws InternalConsistency on disagreement.
LinkingMatrix linking_matrix(const FramedLinkDiagram& link);
LinkingMatrix linking_matrix(const TrisectionDiagram& d);

// Certified unknot: the curve crosses the alpha curves exactly once in total,
// or the beta curves exactly once. False means "not certified".
bool unknot_by_lemma(const Curve& c);

// Components i and k form a Hopf link: one crossing with i under, one with k
// under, of equal sign, and both components certified unknotted.
bool hopf_pair_detect(std::size_t i, std::size_t k, const FramedLinkDiagram& link);

struct RegionCheck {
  bool applicable = false;
  std::string reason;  // why the hypotheses fail
  std::vector<std::string> violations;
};

// For gamma_i dual to alpha_s and gamma_j dual to alpha_t: if gamma_i is dual
// to beta_t then gamma_j must be dual to beta_s. Needs standard (alpha, beta)
// and gamma in good position with both.
RegionCheck region_lemma_check(const TrisectionDiagram& d);

// Schematic drawing: the base disk, handle bridges, components in colour,
// crossing marks and framing labels.
std::string render_svg(const FramedLinkDiagram& link, int genus);

}  // namespace trisect
