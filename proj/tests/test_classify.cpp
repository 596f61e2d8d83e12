#include "doctest.h"
#include "test_util.hpp"
#include "trisect/classify.hpp"
#include "trisect/slide.hpp"

using namespace trisect;
using trisect::test::S;

namespace {

TrisectionDiagram cp2() { return test::standard_diagram(1, S({"A1+@2 B1-@2"})); }
TrisectionDiagram cp2bar() { return test::standard_diagram(1, S({"A1+@2 B1+@2"})); }
TrisectionDiagram s1xs3() { return test::make_diagram(1, S({"B1+@0"}), S({"B1+@1"}), S({"B1+@2"})); }
TrisectionDiagram s4_unbalanced() { return test::make_diagram(1, S({"B1+@0"}), S({"B1+@1"}), S({"A1+@0"})); }
TrisectionDiagram s4_stabilized() { return test::standard_diagram(1, S({"B1+@2"})); }
TrisectionDiagram s2xs2() { return test::standard_diagram(2, S({"A1+@0 B2+@0", "A2+@0 B1+@0"})); }
TrisectionDiagram cp2_cp2bar() { return test::standard_diagram(2, S({"A1+@2 B1-@2", "A2+@2 B2+@2"})); }

Decomposition expect(int p, int q, int r, int s) {
  Decomposition d;
  d.p = p;
  d.q = q;
  d.r = r;
  d.s = s;
  d.s4_trivial = p == 0 && q == 0 && r == 0 && s == 0;
  return d;
}

void check_classifies(const TrisectionDiagram& d, const Decomposition& want) {
  const auto got = classify(d);
  CHECK_MESSAGE(got.same_summands(want), decomposition_name(got), " vs ", decomposition_name(want));
  CHECK(euler_check(d.genus(), diagram_k(d), got));
}

}  // namespace

TEST_CASE("genus zero is S4") {
  TrisectionDiagram d;
  const auto dec = classify(d);
  CHECK(dec.s4_trivial);
  CHECK(decomposition_name(dec) == "S4");
}

TEST_CASE("genus one diagrams") {
  check_classifies(cp2(), expect(0, 0, 1, 0));
  check_classifies(cp2bar(), expect(0, 0, 0, 1));
  check_classifies(s1xs3(), expect(1, 0, 0, 0));
  check_classifies(s4_unbalanced(), expect(0, 0, 0, 0));
  check_classifies(s4_stabilized(), expect(0, 0, 0, 0));

  // gamma with homology vector (1,1) has framing -1 in the standard basis
  const auto dec = classify(cp2bar());
  CHECK(decomposition_name(dec) == "-CP2");
}

TEST_CASE("reversed convention swaps the projective planes") {
  auto d = cp2();
  d.convention = Convention::Reversed;
  check_classifies(d, expect(0, 0, 0, 1));
  auto e = cp2bar();
  e.convention = Convention::Reversed;
  check_classifies(e, expect(0, 0, 1, 0));
}

TEST_CASE("genus two diagrams") {
  check_classifies(s2xs2(), expect(0, 1, 0, 0));
  check_classifies(cp2_cp2bar(), expect(0, 0, 1, 1));
}

TEST_CASE("split events") {
  auto r1 = split_summands(s1xs3());
  REQUIRE(r1.events.size() == 1);
  CHECK(r1.events[0].kind == SplitKind::S1xS3Summand);
  CHECK(r1.events[0].genus_before == 1);
  CHECK(r1.events[0].genus_after == 0);
  CHECK(r1.reduced.genus() == 0);

  auto r2 = split_summands(s4_unbalanced());
  REQUIRE(r2.events.size() == 1);
  CHECK(r2.events[0].kind == SplitKind::S4Destabilization);

  auto r3 = split_summands(cp2());
  CHECK(r3.events.empty());
  CHECK(r3.reduced.genus() == 1);
}

TEST_CASE("connected sum with S1xS3 splits back") {
  const auto d = connected_sum(cp2(), s1xs3());
  REQUIRE(validate_diagram(d).ok());
  const auto r = split_summands(d);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].kind == SplitKind::S1xS3Summand);
  CHECK(r.events[0].pair == 2);
  CHECK(r.reduced.genus() == 1);
  CHECK(is_parallel(r.reduced.gamma[0], cp2().gamma[0]));
  check_classifies(d, expect(1, 0, 1, 0));

  // and in the other order the remaining pair is renumbered
  const auto e = connected_sum(s1xs3(), cp2());
  const auto re = split_summands(e);
  REQUIRE(re.events.size() == 1);
  CHECK(re.events[0].pair == 1);
  CHECK(re.reduced.gamma[0].max_pair() == 1);
  check_classifies(e, expect(1, 0, 1, 0));
}

TEST_CASE("an S4 summand hidden by a slide is found") {
  const auto base = connected_sum(cp2(), s4_stabilized());
  REQUIRE(validate_diagram(base).ok());
  CHECK(removable_pair(base) == 2);
  int hidden = 0;
  const auto bands = adjacent_bands(base.gamma, 0, 1);
  for (const auto& band : bands) {
    TrisectionDiagram d;
    try {
      d = handle_slide(base, SystemId::Gamma, 0, 1, band);
    } catch (const SlideRejected&) {
      continue;
    }
    if (!validate_diagram(d).ok() || removable_pair(d) != 0) continue;
    ++hidden;
    const auto dec = classify(d);
    CHECK(dec.same_summands(expect(0, 0, 1, 0)));
    CHECK(std::any_of(dec.certificate.begin(), dec.certificate.end(),
                      [](const CertificateStep& s) { return s.kind == "slide"; }));
  }
  CHECK(hidden > 0);
}

TEST_CASE("stuck and invalid inputs") {
  const auto d = test::make_diagram(1, S({"B1+@0"}), S({"A1+@0 B1+@1"}), S({"A1-@2"}));
  REQUIRE(validate_diagram(d).ok());
  CHECK_THROWS_AS(split_summands(d), Stuck);
  CHECK_THROWS_AS(classify(d), ClassificationNotGuaranteed);

  const auto bad = test::standard_diagram(1, S({"A1+@2 A1+@3"}));
  CHECK_THROWS_AS(classify(bad), InvalidDiagram);
}

TEST_CASE("euler_check") {
  CHECK(euler_check(1, {0, 0, 0}, expect(0, 0, 0, 1)));
  CHECK(euler_check(1, {1, 1, 1}, expect(1, 0, 0, 0)));
  CHECK_FALSE(euler_check(1, {0, 0, 0}, expect(1, 0, 0, 0)));
}

TEST_CASE("invariance under reordering and gamma reversal") {
  for (const auto& d : {cp2(), cp2bar(), s2xs2(), cp2_cp2bar(), connected_sum(cp2(), s1xs3())}) {
    const auto base = classify(d);
    auto reordered = d;
    std::reverse(reordered.gamma.curves.begin(), reordered.gamma.curves.end());
    std::reverse(reordered.alpha.curves.begin(), reordered.alpha.curves.end());
    CHECK(classify(reordered).same_summands(base));
    for (std::size_t i = 0; i < d.gamma.size(); ++i) {
      auto flipped = d;
      flipped.gamma.curves[i] = flipped.gamma.curves[i].reversed();
      CHECK(classify(flipped).same_summands(base));
    }
  }
}
