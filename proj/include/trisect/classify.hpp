#pragma once

// Connected-sum decomposition of low-length diagrams: split off genus-one
// S^4 and S^1 x S^3 summands, then read the remaining 2-handles off the
// reduced linking matrix.

#include <array>
#include <string>
#include <vector>

#include "trisect/error.hpp"
#include "trisect/reduce.hpp"
#include "trisect/surface.hpp"

namespace trisect {

enum class SplitKind : std::uint8_t { S4Destabilization, S1xS3Summand };

const char* split_kind_name(SplitKind k);

struct SplitEvent {
  SplitKind kind = SplitKind::S4Destabilization;
  int genus_before = 0;
  int genus_after = 0;
  int pair = 0;                     // handle pair removed, numbered in the diagram before removal
  TrisectionDiagram removed;        // genus one
  std::vector<std::string> slides;  // slides performed before the removal
};

struct SplitResult {
  TrisectionDiagram reduced;
  std::vector<SplitEvent> events;
};

// Base of the errors that mean "no decomposition could be certified".
class ClassificationNotGuaranteed : public Error {
 public:
  using Error::Error;
};

class Stuck : public ClassificationNotGuaranteed {
 public:
  Stuck(const std::string& what, SplitResult partial)
      : ClassificationNotGuaranteed(what), partial_(std::move(partial)) {}
  const SplitResult& partial() const { return partial_; }

 private:
  SplitResult partial_;
};

// Diagram fails validation; carries the first issue.
class InvalidDiagram : public Error {
 public:
  explicit InvalidDiagram(ValidationReport report)
      : Error(report.issues.empty() ? "invalid diagram"
                                    : report.issues.front().kind + ": " + report.issues.front().detail),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Diagram of d1 # d2: the handle pairs of d2 follow those of d1.
TrisectionDiagram connected_sum(const TrisectionDiagram& d1, const TrisectionDiagram& d2);

// Drops handle pair j (1-based) and returns the genus-one diagram it carried.
// Requires every curve to live entirely on pair j or to avoid it.
TrisectionDiagram remove_pair(TrisectionDiagram& d, int j);

// Handle pair whose curves split off as an S^4 or S^1 x S^3 summand, or 0.
int removable_pair(const TrisectionDiagram& d);

// Searches slides of depth at most slide_depth whenever a curve is parallel
// to a curve of another system but nothing splits off directly.
SplitResult split_summands(const TrisectionDiagram& d, int slide_depth = 2);

struct CertificateStep {
  std::string kind;  // split, slide, matrix, congruence, block, cancel
  std::string detail;
};

struct Decomposition {
  int p = 0;  // S^1 x S^3
  int q = 0;  // S^2 x S^2
  int r = 0;  // CP^2
  int s = 0;  // -CP^2
  bool s4_trivial = true;
  std::vector<CertificateStep> certificate;

  bool same_summands(const Decomposition& o) const {
    return p == o.p && q == o.q && r == o.r && s == o.s && s4_trivial == o.s4_trivial;
  }
};

// "S4", or summands joined by " # ", e.g. "S1xS3 # CP2 # -CP2".
std::string decomposition_name(const Decomposition& d);

// k for (alpha,beta), (beta,gamma), (gamma,alpha) from the pairing matrices.
std::array<int, 3> diagram_k(const TrisectionDiagram& d);

// Throws InvalidDiagram, Stuck or Irreducible; InternalConsistency if the
// Euler characteristics disagree.
Decomposition classify(const TrisectionDiagram& d, int slide_depth = 2);

// 2 + g - (k1 + k2 + k3) == 2 - 2p + 2q + r + s
bool euler_check(int g, std::array<int, 3> k, const Decomposition& d);

}  // namespace trisect
