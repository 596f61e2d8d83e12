#pragma once

// Closed oriented genus-g surface presented as a base disk with 2g bands
// (handles) attached, and combinatorial curves on it.
//
// A curve is a cyclic word of handle passes. A pass records which standard
// curve it crosses: a pass crossing alpha_j runs through the band of beta_j
// and vice versa, so the word of a curve lists its intersections with the
// standard alpha/beta curves in order. Between passes the curve follows a
// chord of the base disk; the chord endpoints sit on the feet of the bands in
// the fixed cyclic foot order and, within a foot, in slot order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace trisect {

enum class Core : std::uint8_t { Alpha, Beta };

// Internal slot keys are spaced so derived curves (slides, push-offs) can be
// inserted between existing strands without renumbering.
inline constexpr std::int64_t kSlotStride = std::int64_t{1} << 20;

struct HandlePass {
  Core crossed = Core::Alpha;
  int pair = 1;  // 1-based handle pair index
  int sign = 1;  // local intersection sign with the crossed core
  std::int64_t slot = 0;

  HandlePass inverse() const { return {crossed, pair, -sign, slot}; }
  bool same_handle(const HandlePass& o) const { return crossed == o.crossed && pair == o.pair; }
  bool cancels(const HandlePass& o) const { return same_handle(o) && sign == -o.sign; }
};

// Slot-free identity of a pass.
struct PassToken {
  Core crossed;
  int pair;
  int sign;
  auto operator<=>(const PassToken&) const = default;
};

inline PassToken token_of(const HandlePass& p) { return {p.crossed, p.pair, p.sign}; }

class Curve {
 public:
  explicit Curve(std::vector<HandlePass> word);

  std::span<const HandlePass> word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  const HandlePass& operator[](std::size_t i) const { return word_[i]; }

  // Same curve traversed backwards: order reversed, every sign flipped.
  Curve reversed() const;
  Curve rotated(std::size_t k) const;
  Curve with_slots(std::span<const std::int64_t> slots) const;
  int max_pair() const;

  bool operator==(const Curve&) const;

 private:
  std::vector<HandlePass> word_;
};

// Foot labels of one handle pair in boundary order of the base disk.
enum class Foot : std::uint8_t { AlphaMinus = 0, BetaMinus = 1, AlphaPlus = 2, BetaPlus = 3 };

struct HandleModel {
  int genus = 0;

  // (pair, foot) for every foot, counterclockwise around the base disk.
  std::vector<std::pair<int, Foot>> foot_order() const;
};

struct CutSystem {
  std::vector<Curve> curves;

  std::size_t size() const { return curves.size(); }
  const Curve& operator[](std::size_t i) const { return curves[i]; }
};

enum class Convention : std::uint8_t { Standard, Reversed };

enum class SystemId : std::uint8_t { Alpha, Beta, Gamma };

const char* system_name(SystemId id);

struct TrisectionDiagram {
  HandleModel model;
  CutSystem alpha;
  CutSystem beta;
  CutSystem gamma;
  Convention convention = Convention::Standard;

  int genus() const { return model.genus; }
  const CutSystem& system(SystemId id) const;
  CutSystem& system(SystemId id);

  // (alpha, beta) is the standard genus-g Heegaard diagram of S^3: for each
  // pair j one alpha curve whose reduced word is a single beta_j crossing and
  // one beta curve whose reduced word is a single alpha_j crossing.
  bool alpha_beta_standard() const;
};

// The standard cores. alpha_j crosses beta_j once positively, beta_j crosses
// alpha_j once negatively, so that i(alpha_j, beta_j) = +1.
Curve standard_core(Core which, int pair, std::int64_t slot = 0);
// Cores at slot 1, leaving room below them in every handle.
CutSystem standard_system(Core which, int genus);

// (i(c, alpha_1), i(c, beta_1), ..., i(c, alpha_g), i(c, beta_g)) as signed
// pass counts.
std::vector<int> homology_vector(const Curve& c, int genus);

// Intersection pairing on intersection-count coordinates:
// sum_j (a1_j * b2_j - b1_j * a2_j).
int homological_pairing(std::span<const int> v1, std::span<const int> v2);

// Signed count of transverse crossings of the two representatives, traced
// through the chords of the base disk.
int algebraic_intersection(const Curve& c1, const Curve& c2);

// Unsigned count of transverse crossings of the two representatives. Strands
// with equal slots are ordered c1 first.
int geometric_intersection(const Curve& c1, const Curve& c2);

// Crossings of a curve with itself; zero iff the word describes a simple curve.
int self_intersections(const Curve& c);

// Cyclic free reduction ignoring slots.
std::vector<PassToken> reduced_tokens(const Curve& c);

// Canonical representative of the reduced word up to rotation and
// reversal-with-sign-flip.
std::vector<PassToken> normal_form(const Curve& c);

bool is_parallel(const Curve& c1, const Curve& c2);

// A cyclically adjacent cancelling pair of passes bounds a bigon with a cocore.
bool has_cocore_bigon(const Curve& c);

struct ValidationIssue {
  std::string kind;
  std::vector<std::size_t> curves;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> warnings;

  bool ok() const { return issues.empty(); }
};

ValidationReport validate_cut_system(const CutSystem& cs, int genus);

// Validates all three systems, and that each pair of systems presents a
// connected sum of copies of S^1 x S^2 homologically (free first homology).
ValidationReport validate_diagram(const TrisectionDiagram& d);

// g x g matrix of algebraic intersections i(x_i, y_j).
std::vector<std::vector<int>> pairing_matrix(const CutSystem& x, const CutSystem& y);

// Number of S^1 x S^2 summands of the 3-manifold presented by (x, y), from the
// nullity of the pairing matrix.
int heegaard_k(const CutSystem& x, const CutSystem& y);

std::string format_pass(const HandlePass& p, bool with_slot);
std::string format_curve(const Curve& c, bool with_slot = false);

}  // namespace trisect
