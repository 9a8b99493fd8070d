#ifndef GPHR_TEST_ORACLES_HPP
#define GPHR_TEST_ORACLES_HPP

#include <functional>
#include <random>

#include "gphr/model.hpp"

namespace gphr::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vec random_vec(std::mt19937_64& gen, Index size, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Vec v(size);
  for (Index i = 0; i < size; ++i) v[i] = dist(gen);
  return v;
}

// Central finite differences of a scalar function.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                       double h = 1e-6) {
  Vec g(x.size());
  Vec xp = x;
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

// Dense Jacobian of G by central differences on eval_g; independent of the
// model's analytic row kernels.
inline Mat fd_jacobian_of_g(const HamiltonianModel& m, const Vec& y, const Vec& eta,
                            double h = 1e-6) {
  Mat J(m.d, m.dim());
  Vec yp = y;
  for (Index j = 0; j < m.dim(); ++j) {
    yp[j] = y[j] + h;
    const Vec gp = eval_g(m, yp, eta);
    yp[j] = y[j] - h;
    const Vec gm = eval_g(m, yp, eta);
    yp[j] = y[j];
    J.col(j) = (gp - gm) / (2.0 * h);
  }
  return J;
}

inline Mat dense_jac_rows(const SparseRowBlock& block, Index d, Index N) {
  Mat J = Mat::Zero(d, N);
  for (Index i = 0; i < block.row_count(); ++i) {
    const Index row = block.rows[static_cast<std::size_t>(i)];
    for (Index k = block.offsets[static_cast<std::size_t>(i)];
         k < block.offsets[static_cast<std::size_t>(i) + 1]; ++k)
      J(row, block.cols[static_cast<std::size_t>(k)]) += block.vals[static_cast<std::size_t>(k)];
  }
  return J;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double rel_err(const Vec& got, const Vec& want) {
  return (got - want).norm() / std::max(1e-300, want.norm());
}

inline double rel_err(const Mat& got, const Mat& want) {
  return (got - want).norm() / std::max(1e-300, want.norm());
}

}  // namespace gphr::test

#endif
