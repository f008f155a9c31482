#pragma once

#include <optional>
#include <vector>

#include "ldo/rational.hpp"

namespace ldo {

using QMatrix = std::vector<std::vector<Rational>>;

// Bareiss elimination on the row-wise denominator-cleared integer matrix.
Rational det(const QMatrix& a);
int rank(QMatrix a);
std::optional<QMatrix> inverse(const QMatrix& a);
// basis of {x : a x = 0}, in reduced echelon form (one vector per free column)
QMatrix nullspace(const QMatrix& a);
// a x = b; nullopt if inconsistent; any solution when underdetermined
std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b);
QMatrix identity_q(size_t n);
QMatrix mul(const QMatrix& a, const QMatrix& b);

}  // namespace ldo
