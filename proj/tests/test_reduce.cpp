#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "trisect/reduce.hpp"

using namespace trisect;

namespace {

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

Signature eigen_signature(const IntMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = static_cast<double>(m[i][j]);
  }
  Signature s;
  if (n == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  for (double ev : es.eigenvalues()) {
    if (ev > 1e-7) {
      ++s.positive;
    } else if (ev < -1e-7) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

IntMatrix random_symmetric(std::mt19937& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = d(rng);
  }
  return m;
}

// P^T D P with P a product of random elementary moves.
IntMatrix random_unimodular_form(std::mt19937& rng, const std::vector<int>& diag, int hyperbolic) {
  const std::size_t n = diag.size() + 2 * static_cast<std::size_t>(hyperbolic);
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < diag.size(); ++i) m[i][i] = diag[i];
  for (int h = 0; h < hyperbolic; ++h) {
    const std::size_t x = diag.size() + 2 * static_cast<std::size_t>(h);
    m[x][x + 1] = m[x + 1][x] = 1;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int step = 0; step < 8; ++step) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (i == j) continue;
    apply_op(m, {CongruenceOp::Kind::AddRowCol, i, j, mult(rng)});
  }
  return m;
}

bool is_block_form(const MatrixReduction& r) {
  const std::size_t n = r.form.size();
  IntMatrix expect(n, std::vector<std::int64_t>(n, 0));
  std::vector<bool> covered(n, false);
  for (const auto& b : r.blocks) {
    for (auto i : b.indices) covered[i] = true;
    switch (b.kind) {
      case BlockKind::Plus:
        expect[b.indices[0]][b.indices[0]] = 1;
        break;
      case BlockKind::Minus:
        expect[b.indices[0]][b.indices[0]] = -1;
        break;
      case BlockKind::Hyperbolic:
        expect[b.indices[0]][b.indices[1]] = expect[b.indices[1]][b.indices[0]] = 1;
        break;
      case BlockKind::Zero:
        break;
    }
  }
  for (bool c : covered) {
    if (!c) return false;
  }
  return expect == r.form;
}

bool blocks_ordered(const MatrixReduction& r) {
  std::size_t next = 0;
  int last = 0;
  for (const auto& b : r.blocks) {
    if (static_cast<int>(b.kind) < last) return false;
    last = static_cast<int>(b.kind);
    for (auto i : b.indices) {
      if (i != next++) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("small examples") {
  auto r1 = reduce_matrix({{-1}});
  REQUIRE(r1.blocks.size() == 1);
  CHECK(r1.blocks[0].kind == BlockKind::Minus);
  CHECK(r1.log.empty());

  auto r2 = reduce_matrix({{0, -1}, {-1, 0}});
  REQUIRE(r2.blocks.size() == 1);
  CHECK(r2.blocks[0].kind == BlockKind::Hyperbolic);
  CHECK(r2.form == IntMatrix{{0, 1}, {1, 0}});
  CHECK(replay({{0, -1}, {-1, 0}}, r2.log) == r2.form);

  auto r3 = reduce_matrix({{1, 1}, {1, 0}});
  REQUIRE(r3.blocks.size() == 2);
  CHECK(r3.blocks[0].kind == BlockKind::Plus);
  CHECK(r3.blocks[1].kind == BlockKind::Minus);
  CHECK(r3.form == IntMatrix{{1, 0}, {0, -1}});

  auto r4 = reduce_matrix({{0, 0}, {0, 0}});
  CHECK(block_inertia(r4.blocks).zero == 2);

  auto empty = reduce_matrix({});
  CHECK(empty.blocks.empty());
}

TEST_CASE("odd form absorbs hyperbolic blocks") {
  // <1> + H is odd, so it must come out as two +1 and one -1.
  IntMatrix q{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  auto r = reduce_matrix(q);
  CHECK(is_block_form(r));
  CHECK(blocks_ordered(r));
  auto in = block_inertia(r.blocks);
  CHECK(in.positive == 2);
  CHECK(in.negative == 1);
  for (const auto& b : r.blocks) CHECK(b.kind != BlockKind::Hyperbolic);
}

TEST_CASE("E8-free even forms stay hyperbolic") {
  IntMatrix q{{2, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, -2}};
  auto r = reduce_matrix(q);
  CHECK(is_block_form(r));
  for (const auto& b : r.blocks) CHECK(b.kind == BlockKind::Hyperbolic);
}

TEST_CASE("non-unimodular forms are irreducible") {
  try {
    reduce_matrix({{2}});
    FAIL("expected Irreducible");
  } catch (const Irreducible& e) {
    CHECK(e.partial().residual.size() == 1);
  }
  try {
    reduce_matrix({{1, 0, 0}, {0, 0, 0}, {0, 0, 3}});
    FAIL("expected Irreducible");
  } catch (const Irreducible& e) {
    CHECK(e.partial().blocks.size() == 2);
    CHECK(replay({{1, 0, 0}, {0, 0, 0}, {0, 0, 3}}, e.partial().log) == e.partial().form);
  }
  CHECK_THROWS_AS(reduce_matrix({{1, 2}, {0, 1}}), Error);
}

TEST_CASE("random unimodular forms reduce completely") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<int> diag;
    const int units = count(rng);
    for (int u = 0; u < units; ++u) diag.push_back(coin(rng) != 0 ? 1 : -1);
    const int hyp = count(rng) % 2 + (units == 0 ? 1 : 0);
    const auto q = random_unimodular_form(rng, diag, hyp);
    const auto r = reduce_matrix(q);
    CHECK(is_block_form(r));
    CHECK(blocks_ordered(r));
    CHECK(replay(q, r.log) == r.form);
    const auto in = block_inertia(r.blocks);
    const auto sig = eigen_signature(q);
    CHECK(in.positive == sig.positive);
    CHECK(in.negative == sig.negative);
    if (units > 0) {
      for (const auto& b : r.blocks) CHECK(b.kind != BlockKind::Hyperbolic);
    }
  }
}

TEST_CASE("random symmetric matrices keep signature and determinant") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  int complete = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto q = random_symmetric(rng, size(rng), 3);
    MatrixReduction r;
    try {
      r = reduce_matrix(q);
      ++complete;
      CHECK(is_block_form(r));
      CHECK(blocks_ordered(r));
      CHECK(r.residual.empty());
    } catch (const Irreducible& e) {
      r = e.partial();
      CHECK_FALSE(r.residual.empty());
      // a form with unit determinant always splits
      CHECK(std::llabs(determinant(q)) != 1);
    }
    CHECK(replay(q, r.log) == r.form);
    CHECK(eigen_signature(q) == eigen_signature(r.form));
    CHECK(std::llabs(determinant(q)) == std::llabs(determinant(r.form)));
  }
  CHECK(complete > 0);
  MESSAGE("fully reduced: " << complete << " of 1000");
}
