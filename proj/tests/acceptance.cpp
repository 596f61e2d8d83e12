// Runs each acceptance criterion and prints one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "test_util.hpp"
#include "trisect/classify.hpp"
#include "trisect/complex.hpp"
#include "trisect/corpus.hpp"
#include "trisect/io.hpp"
#include "trisect/kirby.hpp"
#include "trisect/reduce.hpp"

using namespace trisect;
using test::S;
using test::W;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps the summary short.
struct Tally {
  bool pass = true;
  std::string first_failure;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      first_failure = what;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

TrisectionDiagram corpus_diagram(const std::string& name) { return parse(read_text(corpus_file(name))); }

// ---- 1, 2: framings

Verdict framing_oracle() {
  std::mt19937 rng(20240601);
  Tally t;
  const auto start = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    const int g = 1 + i % 4;
    const Curve c = test::random_simple_curve(rng, g, 8);
    t.expect(framing_formula(c) == parallel_copy_oracle(c), format_curve(c, true));
    t.expect(framing_formula(c, Convention::Reversed) == parallel_copy_oracle(c, Convention::Reversed),
             "reversed " + format_curve(c, true));
  }
  const double secs = seconds_since(start);
  t.expect(secs < 5.0, "time budget");
  std::ostringstream os;
  os << "1000 random simple words, genus 1-4, " << secs << " s";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// Random simple curve whose passes through each pair all cross the same core.
std::optional<Curve> one_sided_curve(std::mt19937& rng, int g) {
  std::vector<Core> side(static_cast<std::size_t>(g));
  for (auto& s : side) s = rng() % 2 ? Core::Alpha : Core::Beta;
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Curve c = test::random_simple_curve(rng, g, 6);
    std::vector<HandlePass> w(c.word().begin(), c.word().end());
    for (auto& p : w) p.crossed = side[static_cast<std::size_t>(p.pair - 1)];
    bool reduced = true;
    for (std::size_t i = 0; i < w.size() && w.size() > 1; ++i) reduced = reduced && !w[i].cancels(w[(i + 1) % w.size()]);
    if (!reduced) continue;
    Curve out(std::move(w));
    if (self_intersections(out) == 0) return out;
  }
  return std::nullopt;
}

Verdict framing_examples() {
  Tally t;
  t.expect(framing_formula(W("A1+ B1+")) == -1, "(1,1) formula");
  t.expect(parallel_copy_oracle(W("A1+ B1+")) == -1, "(1,1) oracle");
  t.expect(framing_formula(W("A1+@0 B1+@0")) == -1, "(1,1) other slots");
  std::mt19937 rng(7);
  int zero_cases = 0;
  for (int i = 0; i < 2000 && zero_cases < 300; ++i) {
    const int g = 1 + i % 4;
    const auto c = one_sided_curve(rng, g);
    if (!c) continue;
    const auto v = homology_vector(*c, g);
    bool all_zero = true;
    for (int j = 0; j < g; ++j) all_zero = all_zero && v[static_cast<std::size_t>(2 * j)] * v[static_cast<std::size_t>(2 * j + 1)] == 0;
    if (!all_zero) continue;
    ++zero_cases;
    t.expect(framing_formula(*c) == 0, format_curve(*c, true));
    t.expect(parallel_copy_oracle(*c) == 0, "oracle " + format_curve(*c, true));
  }
  t.expect(zero_cases >= 100, "too few products-zero samples");
  std::ostringstream os;
  os << "vector (1,1) gives -1; " << zero_cases << " curves with all a_j*b_j = 0 give 0";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// ---- 3: loop length

int recomputed_length(const RealizationLoopCandidate& loop, int g) {
  const auto& v = loop.vertices;
  const auto& m = loop.markers;
  const int l = v.size() >= 2 ? static_cast<int>(v.size()) : 0;
  int k = 0;
  for (auto [x, y] : {std::pair{m.alpha_beta, m.beta_alpha}, std::pair{m.beta_gamma, m.gamma_beta},
                      std::pair{m.gamma_alpha, m.alpha_gamma}}) {
    // parallel pairs in the good position, counted directly
    const auto perm = find_good_position(v[x], v[y]);
    if (!perm) return 1 << 20;
    for (std::size_t i = 0; i < perm->size(); ++i) k += is_parallel(v[x][i], v[y][(*perm)[i]]) ? 1 : 0;
  }
  return l - 3 * g + k;
}

Verdict loop_length() {
  Tally t;
  int loops = 0;
  for (const auto& n : corpus_names()) {
    const auto d = corpus_diagram(n);
    if (d.genus() == 0) continue;
    const auto b = kt_length_upper_bound(d, 60);
    t.expect(b.has_value(), "no loop for " + n);
    if (!b) continue;
    ++loops;
    const auto rep = verify_realization_loop(b->loop, d);
    t.expect(rep.ok(), "loop rejected for " + n);
    t.expect(rep.L == recomputed_length(b->loop, d.genus()), "formula mismatch for " + n);
  }
  const auto s1 = corpus_diagram("s1xs3_genus1");
  RealizationLoopCandidate single;
  single.vertices = {s1.alpha};
  const auto deg = verify_realization_loop(single, s1);
  t.expect(deg.ok() && deg.l == 0 && deg.L == 0, "degenerate S1xS3 loop");

  const auto cp2 = corpus_diagram("cp2_genus1");
  const auto tri = parse_loop(read_text(corpus_dir() / "loops" / "cp2_genus1_loop3.json"), cp2);
  const auto r3 = verify_realization_loop(tri, cp2);
  t.expect(r3.ok() && r3.l == 3 && r3.edges.size() == 3 && r3.L == 0, "CP2 three-edge loop");
  t.expect(r3.L == recomputed_length(tri, 1), "CP2 formula");

  std::ostringstream os;
  os << loops << " searched corpus loops agree with l - 3g + sum k; S1xS3 degenerate L=" << deg.L
     << "; CP2 3-edge loop L=" << r3.L;
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// ---- 4: corpus classification

Verdict corpus_classification() {
  Tally t;
  const auto expected = nlohmann::json::parse(read_text(corpus_dir() / "expected.json"));
  double worst = 0;
  std::ostringstream names;
  for (const auto& n : corpus_names()) {
    const auto d = corpus_diagram(n);
    const auto start = Clock::now();
    Decomposition dec;
    try {
      dec = classify(d);
    } catch (const Error& e) {
      t.expect(false, n + ": " + e.what());
      continue;
    }
    const double secs = seconds_since(start);
    worst = std::max(worst, secs);
    t.expect(secs < 1.0, n + " too slow");
    t.expect(expected.contains(n), n + " has no recorded decomposition");
    if (!expected.contains(n)) continue;
    const auto& e = expected[n];
    t.expect(dec.p == e["p"] && dec.q == e["q"] && dec.r == e["r"] && dec.s == e["s"] && dec.s4_trivial == e["s4_trivial"],
             n + " classified as " + decomposition_name(dec));
    t.expect(euler_check(d.genus(), diagram_k(d), dec), n + " euler");
    names << (names.tellp() > 0 ? ", " : "") << n << "=" << decomposition_name(dec);
  }
  std::ostringstream os;
  os << names.str() << "; slowest " << worst << " s";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// ---- 5: region property

Curve relabel(const Curve& c, const std::vector<int>& perm) {
  std::vector<HandlePass> w(c.word().begin(), c.word().end());
  for (auto& p : w) p.pair = perm[static_cast<std::size_t>(p.pair - 1)];
  return Curve(std::move(w));
}

// Standard alpha, beta; gamma a connected sum of CP2, -CP2, stabilized S4
// and S2xS2 blocks on shuffled handle pairs.
TrisectionDiagram random_good_diagram(std::mt19937& rng, int max_genus) {
  const std::vector<std::vector<std::string>> blocks{
      {"A1+@2 B1-@2"}, {"A1+@2 B1+@2"}, {"B1+@2"}, {"A1-@2"}, {"A1+@0 B2+@0", "A2+@0 B1+@0"}};
  std::vector<Curve> gamma;
  int g = 0;
  const int target = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_genus));
  while (g < target) {
    const auto& b = blocks[rng() % blocks.size()];
    const int size = b.size() == 2 ? 2 : 1;
    if (g + size > max_genus) continue;
    for (const auto& w : b) {
      std::vector<HandlePass> word;
      const Curve block = W(w);
      for (const auto& p : block.word()) word.push_back({p.crossed, p.pair + g, p.sign, p.slot});
      gamma.emplace_back(std::move(word));
    }
    g += size;
  }
  std::vector<int> perm(static_cast<std::size_t>(g));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& c : gamma) c = relabel(c, perm);
  std::shuffle(gamma.begin(), gamma.end(), rng);
  for (auto& c : gamma) {
    if (rng() % 2) c = c.reversed();
  }
  return test::standard_diagram(g, CutSystem{gamma});
}

// Gamma curves with at most one alpha and one beta crossing each, on random
// pairs with random signs and slots. Most of these are not cut systems; the
// valid ones are the diagrams the property is about.
TrisectionDiagram random_free_diagram(std::mt19937& rng, int max_genus) {
  const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_genus));
  std::vector<int> sigma(static_cast<std::size_t>(g));
  std::vector<int> pi(static_cast<std::size_t>(g));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::iota(pi.begin(), pi.end(), 1);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::shuffle(pi.begin(), pi.end(), rng);
  CutSystem gamma;
  for (std::size_t i = 0; i < static_cast<std::size_t>(g); ++i) {
    const auto shape = rng() % 4;  // A only, B only, A then B, B then A
    auto pass = [&](Core c, int pair) {
      return HandlePass{c, pair, rng() % 2 ? 1 : -1, (rng() % 2 ? 0 : 2) * kSlotStride};
    };
    std::vector<HandlePass> w;
    if (shape != 1) w.push_back(pass(Core::Alpha, sigma[i]));
    if (shape != 0) w.push_back(pass(Core::Beta, pi[i]));
    if (shape == 3) std::swap(w[0], w[1]);
    gamma.curves.emplace_back(std::move(w));
  }
  return test::standard_diagram(g, gamma);
}

Verdict region_property() {
  Tally t;
  std::mt19937 rng(5150);
  int tested = 0;
  int attempts = 0;
  std::array<int, 5> by_genus{};
  int free_form = 0;
  while (tested < 500 && attempts < 200000) {
    ++attempts;
    const bool use_free = attempts % 2 == 0;
    const auto d = use_free ? random_free_diagram(rng, 4) : random_good_diagram(rng, 4);
    if (!validate_diagram(d).ok()) continue;
    const auto rc = region_lemma_check(d);
    if (!rc.applicable) continue;
    ++tested;
    ++by_genus[static_cast<std::size_t>(d.genus())];
    if (use_free) ++free_form;
    t.expect(rc.violations.empty(), serialize(d) + (rc.violations.empty() ? "" : rc.violations.front()));
  }
  t.expect(tested == 500, "only " + std::to_string(tested) + " diagrams generated");
  std::ostringstream os;
  os << tested << " valid diagrams meeting the hypotheses (genus 1-4: " << by_genus[1] << "/" << by_genus[2] << "/"
     << by_genus[3] << "/" << by_genus[4] << "; " << free_form << " from free-form gamma), no violations";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// ---- 6: matrix reduction

std::array<int, 3> eigen_inertia(const IntMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = static_cast<double>(m[i][j]);
  }
  std::array<int, 3> out{0, 0, 0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  for (double ev : es.eigenvalues()) ++out[ev > 1e-7 ? 0 : ev < -1e-7 ? 1 : 2];
  return out;
}

Verdict matrix_reduction() {
  Tally t;
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  int complete = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = size(rng);
    IntMatrix q(n, std::vector<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) q[a][b] = q[b][a] = entry(rng);
    }
    MatrixReduction r;
    try {
      r = reduce_matrix(q);
      ++complete;
      const auto in = block_inertia(r.blocks);
      t.expect(std::array<int, 3>{in.positive, in.negative, in.zero} == eigen_inertia(q), "block signature");
    } catch (const Irreducible& e) {
      r = e.partial();
      t.expect(std::llabs(determinant(q)) != 1, "unimodular form left unreduced");
    }
    t.expect(replay(q, r.log) == r.form, "replay");
    t.expect(eigen_inertia(q) == eigen_inertia(r.form), "signature");
    t.expect(std::llabs(determinant(q)) == std::llabs(determinant(r.form)), "|det|");
  }
  std::ostringstream os;
  os << "1000 random symmetric matrices, " << complete << " split completely; signature, |det| and replay hold";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// ---- 7: invariance

Verdict invariance() {
  Tally t;
  int variants = 0;
  for (const auto& n : corpus_names()) {
    const auto d = corpus_diagram(n);
    const auto base = classify(d);
    for (auto id : {SystemId::Alpha, SystemId::Beta, SystemId::Gamma}) {
      auto v = d;
      auto& curves = v.system(id).curves;
      std::sort(curves.begin(), curves.end(), [](const Curve& a, const Curve& b) { return a.size() < b.size(); });
      do {
        ++variants;
        t.expect(classify(v).same_summands(base), n + " reordered " + system_name(id));
      } while (std::next_permutation(curves.begin(), curves.end(),
                                     [](const Curve& a, const Curve& b) { return format_curve(a, true) < format_curve(b, true); }));
    }
    for (unsigned mask = 1; mask < (1u << d.gamma.size()); ++mask) {
      auto v = d;
      for (std::size_t i = 0; i < d.gamma.size(); ++i) {
        if (mask & (1u << i)) v.gamma.curves[i] = v.gamma.curves[i].reversed();
      }
      ++variants;
      t.expect(classify(v).same_summands(base), n + " gamma reversed");
    }
  }

  std::mt19937 rng(99);
  int words = 0;
  for (int i = 0; i < 1000; ++i) {
    const int g = 1 + i % 4;
    const Curve c1 = test::random_simple_curve(rng, g, 6);
    const Curve c2 = test::random_simple_curve(rng, g, 6);
    ++words;
    t.expect(algebraic_intersection(c1, c2) == -algebraic_intersection(c2, c1), "antisymmetry");
    // on the basis: pairing with the cores reads off the coordinates, and the
    // pairing of two curves is the bilinear extension of those values
    const auto v1 = homology_vector(c1, g);
    const auto v2 = homology_vector(c2, g);
    int bilinear = 0;
    for (int j = 1; j <= g; ++j) {
      const auto a = standard_core(Core::Alpha, j, kSlotStride);
      const auto b = standard_core(Core::Beta, j, kSlotStride);
      const auto x = static_cast<std::size_t>(2 * j - 2);
      t.expect(algebraic_intersection(c1, a) == v1[x], "pairing with alpha core");
      t.expect(algebraic_intersection(c1, b) == v1[x + 1], "pairing with beta core");
      t.expect(algebraic_intersection(a, b) == 1, "basis pairing");
      bilinear += v1[x] * v2[x + 1] - v1[x + 1] * v2[x];
    }
    t.expect(algebraic_intersection(c1, c2) == bilinear, "bilinearity");
  }
  std::ostringstream os;
  os << variants << " reordered or reversed corpus variants classify identically; " << words
     << " random word pairs antisymmetric and bilinear";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

// ---- 8: round trip and determinism

struct CliRun {
  std::string out;
  int code = -1;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(TRISECT_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Verdict round_trip() {
  Tally t;
  int files = 0;
  for (const auto& n : corpus_names()) {
    const auto text = read_text(corpus_file(n));
    ++files;
    t.expect(serialize(parse_file(text)) == text, n + " round trip");
  }
  int runs = 0;
  for (const auto& n : corpus_names()) {
    const std::string f = "corpus:" + n;
    for (const std::string c : {"validate", "intersections", "kirby", "linking", "classify"}) {
      const auto a = cli(c + " " + f);
      const auto b = cli(c + " " + f);
      ++runs;
      t.expect(a.code >= 0 && !a.out.empty(), c + " " + f + " did not run");
      t.expect(a.out == b.out && a.code == b.code, c + " " + f + " differs between runs");
    }
    const auto a = cli("length-bound " + f + " --budget 30");
    const auto b = cli("length-bound " + f + " --budget 30");
    ++runs;
    t.expect(a.out == b.out && a.code == b.code, "length-bound " + f);
  }
  for (const std::string c : {"verify-loop corpus:cp2_genus1 loop3.json", "corpus list", "corpus emit cp2_genus1",
                              "--jobs 4 classify corpus:cp2_genus1 corpus:s2xs2_genus2 corpus:cp2_cp2bar_genus2"}) {
    const auto a = cli(c);
    const auto b = cli(c);
    ++runs;
    t.expect(a.code == 0 && a.out == b.out, c);
  }
  std::ostringstream os;
  os << files << " corpus files byte-exact; " << runs << " CLI commands identical across two runs";
  if (!t.pass) os << "; first failure: " << t.first_failure;
  return {t.pass, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"framing oracle equivalence", framing_oracle},
      {"framing formula reproduction", framing_examples},
      {"length formula on loops", loop_length},
      {"corpus classification", corpus_classification},
      {"region property on random diagrams", region_property},
      {"matrix reduction soundness", matrix_reduction},
      {"invariance suite", invariance},
      {"round trip and determinism", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(start);
    if (!v.pass) ++failed;
    std::printf("criterion %zu: %s - %s: %s [%.2f s]\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                v.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
