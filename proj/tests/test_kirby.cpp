#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "trisect/error.hpp"
#include "trisect/kirby.hpp"
#include "trisect/placement.hpp"

using namespace trisect;
using trisect::test::S;
using trisect::test::W;

namespace {

TrisectionDiagram s2xs2() { return test::standard_diagram(2, S({"A1+@0 B2+@0", "A2+@0 B1+@0"})); }

// Gamma words given; slots chosen by placement against the standard cores.
TrisectionDiagram placed(int g, std::vector<Curve> gamma) {
  auto d = test::standard_diagram(g, CutSystem{gamma});
  std::vector<std::vector<Curve>> sys{d.alpha.curves, d.beta.curves, d.gamma.curves};
  std::vector<SlotRequest> req;
  for (std::size_t c = 0; c < gamma.size(); ++c) {
    for (std::size_t p = 0; p < gamma[c].size(); ++p) req.push_back({2, c, p});
  }
  place_slots(sys, req);
  d.gamma.curves = sys[2];
  return d;
}

}  // namespace

TEST_CASE("extract_kirby examples") {
  auto one = test::standard_diagram(1, S({"A1+@2"}));
  auto k1 = extract_kirby(one);
  CHECK(k1.components.size() == 1);
  CHECK(k1.crossings.empty());
  CHECK(k1.framings == std::vector<int>{0});

  auto k2 = extract_kirby(test::standard_diagram(1, S({"A1+@2 B1+@2"})));
  REQUIRE(k2.crossings.size() == 1);
  CHECK(k2.crossings[0].sign == -1);
  CHECK(k2.crossings[0].under_component == 0);
  CHECK(k2.crossings[0].over_component == 0);
  CHECK(k2.framings == std::vector<int>{-1});

  auto k3 = extract_kirby(s2xs2());
  CHECK(k3.components.size() == 2);
  int mutual = 0;
  for (const auto& x : k3.crossings) mutual += x.under_component != x.over_component ? 1 : 0;
  CHECK(mutual == 2);
  CHECK(k3.crossings.size() == 2);
  CHECK(k3.framings == std::vector<int>{0, 0});

  auto bad = test::make_diagram(1, S({"B1+@0"}), S({"B1+@1"}), S({"A1+@0"}));
  CHECK_THROWS_AS(extract_kirby(bad), RequiresStandardization);
}

TEST_CASE("crossing rule: alpha passes run under beta passes") {
  const auto k = extract_kirby(s2xs2());
  for (const auto& x : k.crossings) {
    const auto& u = k.components[x.under_component][x.under_pass];
    const auto& o = k.components[x.over_component][x.over_pass];
    CHECK(u.crossed == Core::Alpha);
    CHECK(o.crossed == Core::Beta);
    CHECK(u.pair == x.handle_pair);
    CHECK(o.pair == x.handle_pair);
    CHECK(x.sign == -u.sign * o.sign);
  }
}

TEST_CASE("framing_formula examples") {
  CHECK(framing_formula(W("A1+")) == 0);
  CHECK(framing_formula(W("A1+ B1+")) == -1);
  CHECK(framing_formula(W("A1+ B1+@0 B1+@1")) == -2);
  CHECK(parallel_copy_oracle(W("A1+")) == 0);
  CHECK(parallel_copy_oracle(W("A1+ B1+")) == -1);
  CHECK(parallel_copy_oracle(W("A1+ B1+@0 B1+@1")) == -2);
}

TEST_CASE("framing_formula equals the parallel-copy oracle") {
  std::mt19937 rng(41);
  for (int t = 0; t < 1000; ++t) {
    const int g = 1 + t % 4;
    const Curve c = test::random_simple_curve(rng, g, 8);
    REQUIRE(framing_formula(c) == parallel_copy_oracle(c));
    CHECK(framing_formula(c, Convention::Reversed) == parallel_copy_oracle(c, Convention::Reversed));
    CHECK(framing_formula(c.reversed()) == framing_formula(c));
    CHECK(framing_formula(c, Convention::Reversed) == -framing_formula(c));
  }
}

TEST_CASE("linking_matrix") {
  CHECK(linking_matrix(s2xs2()) == LinkingMatrix{{0, -1}, {-1, 0}});
  CHECK(linking_matrix(test::standard_diagram(1, S({"A1+@2 B1+@2"}))) == LinkingMatrix{{-1}});
  const auto apart = test::standard_diagram(2, S({"A1+@2 B1-@2", "A2+@2 B2+@2"}));
  REQUIRE(validate_diagram(apart).ok());
  CHECK(linking_matrix(apart) == LinkingMatrix{{1, 0}, {0, -1}});

  auto rev = s2xs2();
  rev.convention = Convention::Reversed;
  CHECK(linking_matrix(rev) == LinkingMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("linking matrix agrees with crossings on random diagrams") {
  std::mt19937 rng(13);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 100; ++t) {
    const int g = 2 + t % 3;
    std::vector<Curve> gamma;
    for (int i = 0; i < g; ++i) gamma.push_back(test::random_simple_curve(rng, g, 4));
    const auto d = placed(g, gamma);
    if (!validate_cut_system(d.gamma, g).ok()) continue;
    ++checked;
    const auto link = extract_kirby(d);
    const auto q = linking_matrix(link);
    for (std::size_t i = 0; i < q.size(); ++i) {
      CHECK(q[i][i] == link.framings[i]);
      for (std::size_t k = 0; k < q.size(); ++k) {
        CHECK(q[i][k] == q[k][i]);
        if (i == k) continue;
        // Crossing count between two components.
        const auto vi = homology_vector(d.gamma[i], g);
        const auto vk = homology_vector(d.gamma[k], g);
        int expected = 0;
        for (int j = 0; j < g; ++j) {
          const auto a = static_cast<std::size_t>(2 * j);
          expected += std::abs(vi[a]) * std::abs(vk[a + 1]) + std::abs(vk[a]) * std::abs(vi[a + 1]);
        }
        int count = 0;
        for (const auto& x : link.crossings) {
          if ((x.under_component == i && x.over_component == k) || (x.under_component == k && x.over_component == i)) {
            ++count;
          }
        }
        // Equal for words whose passes through one handle all share a sign.
        bool monotone = true;
        for (const auto* c : {&d.gamma[i], &d.gamma[k]}) {
          for (const auto& p : c->word()) {
            for (const auto& r : c->word()) monotone = monotone && (!p.same_handle(r) || p.sign == r.sign);
          }
        }
        if (monotone) CHECK(count == expected);
      }
    }
  }
  CHECK(checked >= 50);
}

TEST_CASE("unknot_by_lemma") {
  CHECK(unknot_by_lemma(W("A1+ B1+@0 B1+@1")));
  CHECK(unknot_by_lemma(W("A1+")));
  CHECK_FALSE(unknot_by_lemma(W("A1+@0 B2+@0 A1+@1 B2+@1")));
}

TEST_CASE("hopf_pair_detect") {
  const auto link = extract_kirby(s2xs2());
  CHECK(hopf_pair_detect(0, 1, link));
  CHECK(hopf_pair_detect(1, 0, link));

  const auto apart = extract_kirby(test::standard_diagram(2, S({"A1+@2 B1-@2", "A2+@2 B2+@2"})));
  CHECK_FALSE(hopf_pair_detect(0, 1, apart));

  // Both crossings have the first component underneath.
  FramedLinkDiagram two;
  two.components = {W("A1+ A2+"), W("B1+ B2+")};
  two.crossings = {{0, 1, 1, 0, 0, -1}, {0, 1, 2, 1, 1, -1}};
  two.framings = {0, 0};
  CHECK_FALSE(hopf_pair_detect(0, 1, two));
}

TEST_CASE("region_lemma_check") {
  CHECK(region_lemma_check(s2xs2()).applicable);
  CHECK(region_lemma_check(s2xs2()).violations.empty());
  CHECK(region_lemma_check(test::standard_diagram(1, S({"A1+@2 B1+@2"}))).violations.empty());

  // Three gamma curves dual to alpha_i and beta_{i+1}: misindexed, not a cut system.
  const auto bad = placed(3, {W("A1+ B2+"), W("A2+ B3+"), W("A3+ B1+")});
  const auto rc = region_lemma_check(bad);
  REQUIRE(rc.applicable);
  CHECK_FALSE(rc.violations.empty());
  CHECK_FALSE(validate_cut_system(bad.gamma, 3).ok());

  const auto not_good = test::standard_diagram(1, S({"A1+@0 B1+@0 B1+@2"}));
  CHECK_FALSE(region_lemma_check(not_good).applicable);
  const auto nonstandard = test::make_diagram(1, S({"B1+@0"}), S({"B1+@1"}), S({"A1+@0"}));
  CHECK_FALSE(region_lemma_check(nonstandard).applicable);
}

TEST_CASE("render_svg is well formed and carries framings") {
  const auto link = extract_kirby(s2xs2());
  const auto svg = render_svg(link, 2);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("framing 0") != std::string::npos);
  CHECK(render_svg(link, 2) == svg);
}
