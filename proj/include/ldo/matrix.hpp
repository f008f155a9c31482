#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldo/numfield.hpp"
#include "ldo/rootdata.hpp"

namespace ldo {

// Exact n x n matrix over a number field, row-major.
class MatrixK {
 public:
  MatrixK() = default;
  MatrixK(NumberField k, int n);  // zero matrix
  MatrixK(NumberField k, int n, std::vector<FieldElement> entries);
  static MatrixK identity(const NumberField& k, int n);
  static MatrixK from_ints(const NumberField& k, const std::vector<std::vector<long>>& rows);
  static MatrixK from_weyl(const NumberField& k, const WeylElement& w);
  static MatrixK diagonal(const std::vector<FieldElement>& d);

  int n() const { return n_; }
  const NumberField& field() const { return k_; }
  const FieldElement& operator()(int i, int j) const { return e_[static_cast<size_t>(i * n_ + j)]; }
  FieldElement& operator()(int i, int j) { return e_[static_cast<size_t>(i * n_ + j)]; }
  const std::vector<FieldElement>& entries() const { return e_; }

  MatrixK transpose() const;
  MatrixK sub(int r0, int c0, int rows, int cols) const;  // rows x cols block; only square blocks are MatrixK
  bool is_monomial() const;
  bool is_diagonal() const;
  bool is_identity() const;
  bool is_integral() const;  // all entries in Z[theta]
  std::string str() const;

  friend MatrixK operator*(const MatrixK& a, const MatrixK& b);
  friend MatrixK operator+(const MatrixK& a, const MatrixK& b);
  friend MatrixK operator-(const MatrixK& a, const MatrixK& b);
  friend bool operator==(const MatrixK& a, const MatrixK& b);
  friend bool operator!=(const MatrixK& a, const MatrixK& b) { return !(a == b); }
  friend bool operator<(const MatrixK& a, const MatrixK& b);

 private:
  NumberField k_;
  int n_ = 0;
  std::vector<FieldElement> e_;
};

// rectangular helper used by elimination routines
using KRows = std::vector<std::vector<FieldElement>>;
int rank_k(KRows a);

MatrixK mat_mul(const MatrixK& a, const MatrixK& b);
FieldElement mat_det(const MatrixK& a);
MatrixK mat_inv(const MatrixK& a);  // Singular when det = 0
std::optional<MatrixK> try_inv(const MatrixK& a);

}  // namespace ldo
