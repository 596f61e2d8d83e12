#pragma once

// Integral congruence of a symmetric form to a direct sum of [+1], [-1],
// hyperbolic [[0,1],[1,0]] and [0] blocks. Every step is a basis change
// recorded in a log that can be replayed on the input.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trisect/error.hpp"
#include "trisect/intmatrix.hpp"

namespace trisect {

struct CongruenceOp {
  enum class Kind : std::uint8_t {
    AddRowCol,  // b_i += m * b_j: row i += m row j, then column i += m column j
    Negate,     // b_i = -b_i
    Swap,       // exchange b_i and b_j
  };
  Kind kind = Kind::AddRowCol;
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t m = 0;
};

enum class BlockKind : std::uint8_t { Plus, Minus, Hyperbolic, Zero };

const char* block_kind_name(BlockKind k);

struct FormBlock {
  BlockKind kind = BlockKind::Zero;
  std::vector<std::size_t> indices;  // basis positions in the final form
};

struct MatrixReduction {
  IntMatrix form;  // the input after the logged operations
  std::vector<FormBlock> blocks;
  std::vector<CongruenceOp> log;
  std::vector<std::size_t> residual;  // positions not split into blocks
};

// The form is not congruent to a sum of the four block types (or no such
// splitting was found within the search bounds). Carries the partial result.
class Irreducible : public Error {
 public:
  Irreducible(const std::string& what, MatrixReduction partial) : Error(what), partial_(std::move(partial)) {}
  const MatrixReduction& partial() const { return partial_; }

 private:
  MatrixReduction partial_;
};

void apply_op(IntMatrix& m, const CongruenceOp& op);
IntMatrix replay(const IntMatrix& q, const std::vector<CongruenceOp>& log);

// Blocks are laid out consecutively: [+1] blocks, [-1], hyperbolic, [0].
// Hyperbolic blocks are split into [+1] + [-1] when the form is odd.
MatrixReduction reduce_matrix(const IntMatrix& q);

// (positive, negative, zero) eigenvalue counts of a reduced form.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
Inertia block_inertia(const std::vector<FormBlock>& blocks);

std::string format_op(const CongruenceOp& op);

}  // namespace trisect
