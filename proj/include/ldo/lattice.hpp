#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "ldo/interval.hpp"

namespace ldo {

inline long double round_t(const long double& x) { return std::nearbyint(x); }
inline BigFloat round_t(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_round(r.get(), x.get());
  return r;
}
inline bool is_zero_t(const long double& x) { return x == 0.0L; }
inline bool is_zero_t(const BigFloat& x) { return x.is_zero(); }
inline long double make_like(double v, const long double&) { return v; }
inline BigFloat make_like(double v, const BigFloat& like) { return BigFloat(v, like.prec()); }

// LLL reduction of the rows of b. Coordinates [0, skip) are carried along (e.g. a transform)
// but do not take part in inner products.
template <class T>
void lll_reduce(std::vector<std::vector<T>>& b, size_t skip = 0, double delta = 0.99) {
  const size_t n = b.size();
  if (n < 2) return;
  const size_t dim = b[0].size();
  const T zero = make_like(0.0, b[0][0]);
  auto dot = [&](const std::vector<T>& u, const std::vector<T>& v) {
    T s = zero;
    for (size_t i = skip; i < dim; ++i) s = s + u[i] * v[i];
    return s;
  };
  std::vector<std::vector<T>> mu(n, std::vector<T>(n, zero));
  std::vector<T> bn(n, zero);
  std::vector<std::vector<T>> bs(n);
  auto gram_schmidt = [&]() {
    for (size_t i = 0; i < n; ++i) {
      bs[i] = b[i];
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = is_zero_t(bn[j]) ? zero : dot(b[i], bs[j]) / bn[j];
        for (size_t t = skip; t < dim; ++t) bs[i][t] = bs[i][t] - mu[i][j] * bs[j][t];
      }
      bn[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  const T dlt = make_like(delta, zero);
  size_t k = 1;
  long guard = 0;
  while (k < n && guard++ < 200000) {
    for (size_t j = k; j-- > 0;) {
      T q = round_t(mu[k][j]);
      if (is_zero_t(q)) continue;
      for (size_t t = 0; t < dim; ++t) b[k][t] = b[k][t] - q * b[j][t];
      for (size_t i = 0; i < j; ++i) mu[k][i] = mu[k][i] - q * mu[j][i];
      mu[k][j] = mu[k][j] - q;
    }
    T lhs = bn[k];
    T rhs = (dlt - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1];
    if (lhs < rhs) {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }
}

// Gram-Schmidt data of a basis (rows), long double.
struct GramSchmidt {
  std::vector<std::vector<long double>> mu;
  std::vector<long double> bn;  // squared norms of the orthogonalized vectors
};
GramSchmidt gram_schmidt(const std::vector<std::vector<long double>>& b);

// Visits every nonzero integer combination x with |sum x_i b_i|^2 <= radius2 (up to sign:
// only x with first nonzero coordinate from the top positive). Returns false if the node
// budget ran out before completion.
bool enumerate_short(const std::vector<std::vector<long double>>& b, long double radius2,
                     const std::function<void(const std::vector<long>&)>& visit, long node_budget = 50000000);

struct RelationSearch {
  enum class Status { Found, None, Ambiguous };
  Status status = Status::None;
  // independent integer relations (rows), empty when status is None
  std::vector<std::vector<Integer>> relations;
  // smallest Gram-Schmidt norm outside the relation part, as a certificate scale
  double separation = 0.0;
};

// Integer relations sum_i e_i x_i = 0 among vectors x_i in R^q with max |e_i| <= bound.
RelationSearch integer_relations(const std::vector<std::vector<BigFloat>>& x, long bound, mpfr_prec_t prec);

}  // namespace ldo
