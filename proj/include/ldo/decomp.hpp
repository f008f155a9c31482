#pragma once

#include <optional>

#include "ldo/matrix.hpp"
#include "ldo/rootdata.hpp"

namespace ldo {

// h = v_minus * levi * v_plus with the block pattern of psi.
struct BlockLDU {
  MatrixK v_minus;
  MatrixK levi;
  MatrixK v_plus;
  RootSubset psi;
  MatrixK recompose() const { return v_minus * levi * v_plus; }
};

// Absent (nullopt) exactly when a leading principal minor at a block boundary vanishes.
std::optional<BlockLDU> block_ldu(const MatrixK& h, const RootSubset& psi);

// The w with h in B^- w B (B^- lower, B upper triangular), read off the ranks of the
// top-left submatrices h[0..i, 0..j]; those ranks are invariant under both Borel actions.
WeylElement bruhat_cell(const MatrixK& h);

bool cell_membership(const MatrixK& h, const RootSubset& psi, const WeylElement& w1, const WeylElement& w2);

// unipotent generators u+(a) = [[1,a],[0,1]] and u-(b) = [[1,0],[b,1]]
MatrixK u_plus(const FieldElement& a);
MatrixK u_minus(const FieldElement& b);

}  // namespace ldo
