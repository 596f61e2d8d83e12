#include "trisect/reduce.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>

namespace trisect {

namespace {

constexpr long long kSearchLimit = 2'000'000;

class Reducer {
 public:
  explicit Reducer(const IntMatrix& q) : m_(q), active_(q.size(), true) {
    for (const auto& row : q) {
      if (row.size() != q.size()) throw Error("matrix is not square");
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (q[i][j] != q[j][i]) throw Error("matrix is not symmetric");
      }
    }
  }

  MatrixReduction run() {
    split_all();
    if (odd_overall()) convert_hyperbolic();
    arrange();
    return result();
  }

 private:
  IntMatrix m_;
  std::vector<bool> active_;
  std::vector<CongruenceOp> log_;
  std::vector<FormBlock> blocks_;

  MatrixReduction result() const {
    MatrixReduction r;
    r.form = m_;
    r.blocks = blocks_;
    r.log = log_;
    for (std::size_t i = 0; i < active_.size(); ++i) {
      if (active_[i]) r.residual.push_back(i);
    }
    return r;
  }

  [[noreturn]] void fail(const std::string& why) const { throw Irreducible(why, result()); }

  std::vector<std::size_t> active() const {
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < active_.size(); ++i) {
      if (active_[i]) a.push_back(i);
    }
    return a;
  }

  void op(CongruenceOp o) {
    if (o.kind == CongruenceOp::Kind::AddRowCol && o.m == 0) return;
    apply_op(m_, o);
    log_.push_back(o);
  }
  void add(std::size_t i, std::size_t j, std::int64_t mult) { op({CongruenceOp::Kind::AddRowCol, i, j, mult}); }

  void pivot_unit(std::size_t p) {
    const std::int64_t e = m_[p][p];
    for (std::size_t j : active()) {
      if (j != p && m_[j][p] != 0) add(j, p, -m_[j][p] * e);
    }
    active_[p] = false;
    blocks_.push_back({e > 0 ? BlockKind::Plus : BlockKind::Minus, {p}});
  }

  // Basis change turning the primitive vector v (coordinates on `idx`) into
  // plus or minus a basis vector; returns its position.
  std::size_t to_basis_vector(std::vector<std::int64_t> v, const std::vector<std::size_t>& idx) {
    for (;;) {
      std::size_t piv = idx.size();
      std::size_t nonzero = 0;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (v[t] == 0) continue;
        ++nonzero;
        if (piv == idx.size() || std::llabs(v[t]) < std::llabs(v[piv])) piv = t;
      }
      if (nonzero <= 1) return idx[piv];
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t == piv || v[t] == 0) continue;
        const std::int64_t q = v[t] / v[piv];
        add(idx[piv], idx[t], q);
        v[t] -= q * v[piv];
      }
    }
  }

  std::int64_t active_weight(const std::vector<std::size_t>& a) const {
    std::int64_t w = 0;
    for (std::size_t i : a) {
      for (std::size_t j : a) w += m_[i][j] * m_[i][j];
    }
    return w;
  }

  // Greedy descent on the sum of squared entries: apply the single basis
  // move b_i += m b_j that shrinks it most, until none does.
  void shrink_entries(const std::vector<std::size_t>& a) {
    std::int64_t w = active_weight(a);
    for (;;) {
      std::int64_t best = w;
      CongruenceOp best_op{};
      for (std::size_t i : a) {
        for (std::size_t j : a) {
          if (i == j) continue;
          std::vector<std::int64_t> mults{1, -1};
          if (m_[j][j] != 0) mults.push_back(-m_[i][j] / m_[j][j]);
          for (std::int64_t mult : mults) {
            if (mult == 0) continue;
            IntMatrix trial = m_;
            const CongruenceOp o{CongruenceOp::Kind::AddRowCol, i, j, mult};
            apply_op(trial, o);
            std::int64_t tw = 0;
            for (std::size_t x : a) {
              for (std::size_t y : a) tw += trial[x][y] * trial[x][y];
            }
            if (tw < best) {
              best = tw;
              best_op = o;
            }
          }
        }
      }
      if (best == w) return;
      op(best_op);
      w = best;
    }
  }

  bool is_zero_row(std::size_t i) const {
    for (std::size_t j = 0; j < m_.size(); ++j) {
      if (m_[i][j] != 0) return false;
    }
    return true;
  }

  std::optional<std::vector<std::int64_t>> search(const std::vector<std::size_t>& idx,
                                                  const std::function<bool(std::int64_t)>& accept) const {
    const std::size_t n = idx.size();
    int radius = 1;
    while (radius < 6) {
      long long count = 1;
      for (std::size_t t = 0; t < n && count <= kSearchLimit; ++t) count *= 2 * (radius + 1) + 1;
      if (count > kSearchLimit) break;
      ++radius;
    }
    std::vector<std::int64_t> v(n);
    for (int r = 1; r <= radius; ++r) {
      std::fill(v.begin(), v.end(), -r);
      for (;;) {
        std::int64_t mx = 0;
        std::int64_t g = 0;
        for (auto x : v) {
          mx = std::max<std::int64_t>(mx, std::llabs(x));
          g = std::gcd(g, std::llabs(x));
        }
        if (mx == r && g == 1) {
          std::int64_t norm = 0;
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) norm += v[a] * m_[idx[a]][idx[b]] * v[b];
          }
          if (accept(norm)) return v;
        }
        std::size_t t = 0;
        while (t < n && v[t] == r) v[t++] = -r;
        if (t == n) break;
        ++v[t];
      }
    }
    return std::nullopt;
  }

  void split_hyperbolic(std::size_t p) {
    // Row Euclid: leave a single +-1 in row p among active positions.
    for (;;) {
      std::size_t piv = m_.size();
      std::size_t nonzero = 0;
      for (std::size_t k : active()) {
        if (k == p || m_[p][k] == 0) continue;
        ++nonzero;
        if (piv == m_.size() || std::llabs(m_[p][k]) < std::llabs(m_[p][piv])) piv = k;
      }
      if (piv == m_.size()) fail("isotropic vector is orthogonal to the active part");
      if (nonzero == 1) break;
      for (std::size_t k : active()) {
        if (k == p || k == piv || m_[p][k] == 0) continue;
        add(k, piv, -(m_[p][k] / m_[p][piv]));
      }
    }
    std::size_t q = m_.size();
    for (std::size_t k : active()) {
      if (k != p && m_[p][k] != 0) q = k;
    }
    if (std::llabs(m_[p][q]) != 1) fail("form is not unimodular on the active part");
    if (m_[p][q] < 0) op({CongruenceOp::Kind::Negate, q, q, 0});
    if (m_[q][q] % 2 != 0) fail("odd vector in an even form");
    add(q, p, -(m_[q][q] / 2));
    for (std::size_t j : active()) {
      if (j == p || j == q) continue;
      const std::int64_t cq = m_[j][q];
      const std::int64_t cp = m_[j][p];
      add(j, p, -cq);
      add(j, q, -cp);
    }
    active_[p] = active_[q] = false;
    blocks_.push_back({BlockKind::Hyperbolic, {p, q}});
  }

  void split_all() {
    for (;;) {
      const auto a = active();
      if (a.empty()) return;
      bool done = false;
      for (std::size_t i : a) {
        if (std::llabs(m_[i][i]) == 1) {
          pivot_unit(i);
          done = true;
          break;
        }
      }
      if (done) continue;
      for (std::size_t i : a) {
        if (is_zero_row(i)) {
          active_[i] = false;
          blocks_.push_back({BlockKind::Zero, {i}});
          done = true;
          break;
        }
      }
      if (done) continue;

      IntMatrix sub(a.size(), std::vector<std::int64_t>(a.size()));
      for (std::size_t x = 0; x < a.size(); ++x) {
        for (std::size_t y = 0; y < a.size(); ++y) sub[x][y] = m_[a[x]][a[y]];
      }
      if (const auto kv = kernel_vector(sub)) {
        to_basis_vector(*kv, a);
        continue;
      }
      if (std::llabs(determinant(sub)) != 1) fail("determinant " + std::to_string(determinant(sub)) +
                                                  " of the nondegenerate part is not a unit");
      shrink_entries(a);
      bool odd = false;
      for (std::size_t i : a) odd = odd || m_[i][i] % 2 != 0;
      if (odd) {
        const auto v = search(a, [](std::int64_t n) { return n == 1 || n == -1; });
        if (!v) fail("no vector of square +-1 found within the search bounds");
        pivot_unit(to_basis_vector(*v, a));
      } else {
        const auto v = search(a, [](std::int64_t n) { return n == 0; });
        if (!v) fail("even form without an isotropic vector within the search bounds");
        split_hyperbolic(to_basis_vector(*v, a));
      }
    }
  }

  bool odd_overall() const {
    return std::any_of(blocks_.begin(), blocks_.end(),
                       [](const FormBlock& b) { return b.kind == BlockKind::Plus || b.kind == BlockKind::Minus; });
  }

  // <e> + H is congruent to <e> + <1> + <-1>: after b_x += b_e the vector b_x
  // has square e; pivoting on it first keeps e from undoing the move.
  void convert_hyperbolic() {
    for (;;) {
      auto h = std::find_if(blocks_.begin(), blocks_.end(),
                            [](const FormBlock& b) { return b.kind == BlockKind::Hyperbolic; });
      if (h == blocks_.end()) return;
      auto u = std::find_if(blocks_.begin(), blocks_.end(),
                            [](const FormBlock& b) { return b.kind == BlockKind::Plus || b.kind == BlockKind::Minus; });
      const std::size_t x = h->indices[0];
      const std::size_t y = h->indices[1];
      const std::size_t e = u->indices[0];
      blocks_.erase(std::max(h, u));
      blocks_.erase(std::min(h, u));
      active_[x] = active_[y] = active_[e] = true;
      add(x, e, 1);
      pivot_unit(x);
      split_all();
    }
  }

  void arrange() {
    auto rank = [](BlockKind k) { return static_cast<int>(k); };
    std::stable_sort(blocks_.begin(), blocks_.end(),
                     [&](const FormBlock& a, const FormBlock& b) { return rank(a.kind) < rank(b.kind); });
    std::vector<std::size_t> order;
    for (const auto& b : blocks_) order.insert(order.end(), b.indices.begin(), b.indices.end());
    for (std::size_t i : active()) order.push_back(i);
    // where[i] = current position of original basis slot i
    std::vector<std::size_t> where(m_.size());
    std::vector<std::size_t> at(m_.size());
    std::iota(where.begin(), where.end(), 0);
    std::iota(at.begin(), at.end(), 0);
    for (std::size_t t = 0; t < order.size(); ++t) {
      const std::size_t cur = where[order[t]];
      if (cur == t) continue;
      op({CongruenceOp::Kind::Swap, t, cur, 0});
      const std::size_t moved = at[t];
      std::swap(at[t], at[cur]);
      where[order[t]] = t;
      where[moved] = cur;
    }
    for (auto& b : blocks_) {
      for (auto& i : b.indices) i = where[i];
    }
    std::vector<bool> act(m_.size(), false);
    for (std::size_t i = 0; i < m_.size(); ++i) {
      if (active_[i]) act[where[i]] = true;
    }
    active_ = act;
  }
};

}  // namespace

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::Plus:
      return "+1";
    case BlockKind::Minus:
      return "-1";
    case BlockKind::Hyperbolic:
      return "H";
    case BlockKind::Zero:
      return "0";
  }
  return "?";
}

void apply_op(IntMatrix& m, const CongruenceOp& op) {
  const std::size_t n = m.size();
  switch (op.kind) {
    case CongruenceOp::Kind::AddRowCol:
      if (op.i == op.j) throw Error("row operation needs two distinct indices");
      for (std::size_t k = 0; k < n; ++k) m[op.i][k] += op.m * m[op.j][k];
      for (std::size_t k = 0; k < n; ++k) m[k][op.i] += op.m * m[k][op.j];
      break;
    case CongruenceOp::Kind::Negate:
      for (std::size_t k = 0; k < n; ++k) m[op.i][k] = -m[op.i][k];
      for (std::size_t k = 0; k < n; ++k) m[k][op.i] = -m[k][op.i];
      break;
    case CongruenceOp::Kind::Swap:
      std::swap(m[op.i], m[op.j]);
      for (auto& row : m) std::swap(row[op.i], row[op.j]);
      break;
  }
}

IntMatrix replay(const IntMatrix& q, const std::vector<CongruenceOp>& log) {
  IntMatrix m = q;
  for (const auto& op : log) apply_op(m, op);
  return m;
}

MatrixReduction reduce_matrix(const IntMatrix& q) { return Reducer(q).run(); }

Inertia block_inertia(const std::vector<FormBlock>& blocks) {
  Inertia out;
  for (const auto& b : blocks) {
    switch (b.kind) {
      case BlockKind::Plus:
        ++out.positive;
        break;
      case BlockKind::Minus:
        ++out.negative;
        break;
      case BlockKind::Hyperbolic:
        ++out.positive;
        ++out.negative;
        break;
      case BlockKind::Zero:
        ++out.zero;
        break;
    }
  }
  return out;
}

std::string format_op(const CongruenceOp& op) {
  switch (op.kind) {
    case CongruenceOp::Kind::AddRowCol:
      return "b" + std::to_string(op.i + 1) + " += " + std::to_string(op.m) + "*b" + std::to_string(op.j + 1);
    case CongruenceOp::Kind::Negate:
      return "b" + std::to_string(op.i + 1) + " = -b" + std::to_string(op.i + 1);
    case CongruenceOp::Kind::Swap:
      return "swap b" + std::to_string(op.i + 1) + " b" + std::to_string(op.j + 1);
  }
  return "?";
}

}  // namespace trisect
