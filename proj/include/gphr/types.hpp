#ifndef GPHR_TYPES_HPP
#define GPHR_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gphr {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

// Contract violations (bad dimensions, out-of-range indices, invalid config).
class InvalidArgument : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failures (Newton divergence, singular factorizations, rank issues).
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation counters; owned by run reports, never by shared model objects.
struct EvalCounters {
  std::uint64_t g_rows = 0;         // rows of G evaluated
  std::uint64_t jac_rows = 0;       // rows of J_G evaluated
  std::uint64_t grad_evals = 0;     // Hamiltonian gradient evaluations
  std::uint64_t rhs_evals = 0;      // right-hand side evaluations
  std::uint64_t newton_iters = 0;   // total Newton iterations

  void reset() { *this = EvalCounters{}; }
};

// Read access to a state vector, optionally offset by a stored shift and
// instrumented with an access counter (used by sparsity tests).
struct StateGather {
  const double* y = nullptr;
  const double* add = nullptr;
  std::uint64_t* access_count = nullptr;

  double operator()(Index i) const {
    if (access_count) ++(*access_count);
    double v = y[i];
    return add ? v + add[i] : v;
  }
};

// A set of rows of the sparse Jacobian J_G, stored in compressed form.
struct SparseRowBlock {
  std::vector<Index> rows;      // row ids in J_G
  std::vector<Index> offsets;   // size rows.size()+1, into cols/vals
  std::vector<Index> cols;
  std::vector<double> vals;

  Index row_count() const { return static_cast<Index>(rows.size()); }
  Index nnz(Index local_row) const { return offsets[local_row + 1] - offsets[local_row]; }

  void clear() {
    rows.clear();
    offsets.assign(1, 0);
    cols.clear();
    vals.clear();
  }
};

// Column pattern of each row of J_G; s1/s2 bound the nonzeros among the
// first/last n state components.
struct RowSparsity {
  std::vector<std::vector<Index>> cols;
  Index s1 = 0;
  Index s2 = 0;
};

struct ParamBox {
  Vec lo;
  Vec hi;

  bool contains(const Vec& eta) const {
    if (eta.size() != lo.size()) return false;
    return (eta.array() >= lo.array()).all() && (eta.array() <= hi.array()).all();
  }
};

// Canonical Poisson tensor J = [[0, I], [-I, 0]], applied in O(N) and never
// stored densely.
struct CanonicalPoisson {
  Index n;

  Vec apply(const Vec& v) const {
    Vec out(2 * n);
    out.head(n) = v.tail(n);
    out.tail(n) = -v.head(n);
    return out;
  }

  // J^T v = -J v
  Vec apply_transpose(const Vec& v) const { return -apply(v); }
};

// J * M for sparse M with 2n rows (row swap with sign flip).
SpMat poisson_times(Index n, const SpMat& M);

}  // namespace gphr

#endif
