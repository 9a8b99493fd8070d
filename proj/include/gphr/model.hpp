#ifndef GPHR_MODEL_HPP
#define GPHR_MODEL_HPP

#include <functional>
#include <memory>
#include <optional>

#include "gphr/types.hpp"

namespace gphr {

// Full-order Hamiltonian system
//   H(y, eta) = 1/2 y^T L(eta) y + y^T f(eta) + g0(eta) + c^T G(y, eta),
// with N = 2n phase-space dimension and a d-term decomposition of the
// nonlinear part. G and its Jacobian are evaluated row-wise so that
// hyper-reduced models touch only the rows they need.
struct HamiltonianModel {
  Index n = 0;  // half phase-space dimension
  Index d = 0;  // length of the decomposition vector G

  std::function<SpMat(const Vec& eta)> L;      // symmetric PSD, N x N
  std::function<Vec(const Vec& eta)> f;        // N-vector
  std::function<double(const Vec& eta)> g0;    // scalar part
  Vec c;                                       // constant decomposition weights

  // Base kernels; a nonzero `shift` means the model evaluates in the shifted
  // variable y_s = y - shift with G_s(y_s) = G(y_s + shift) - G(shift).
  std::function<void(const StateGather&, const Vec& eta, std::span<const Index> rows,
                     double* out)>
      g_rows;
  std::function<void(const StateGather&, const Vec& eta, std::span<const Index> rows,
                     SparseRowBlock& out)>
      jac_rows;
  // Hessian of c^T G; enables the analytic Newton path for the full system.
  std::function<SpMat(const StateGather&, const Vec& eta)> hess_nl;

  Vec shift;  // empty when unshifted

  RowSparsity sparsity;
  ParamBox param_box;

  std::function<Vec(const Vec& eta)> initial_state;

  Index dim() const { return 2 * n; }
  bool shifted() const { return shift.size() != 0; }
};

double eval_hamiltonian(const HamiltonianModel& m, const Vec& y, const Vec& eta);

Vec eval_gradient(const HamiltonianModel& m, const Vec& y, const Vec& eta);

// Values of G at the requested rows (all rows when `rows` is empty).
Vec eval_g(const HamiltonianModel& m, const Vec& y, const Vec& eta);
Vec eval_g_rows(const HamiltonianModel& m, const Vec& y, const Vec& eta,
                std::span<const Index> rows, std::uint64_t* access_count = nullptr);

SparseRowBlock eval_jac_g_rows(const HamiltonianModel& m, const Vec& y, const Vec& eta,
                               std::span<const Index> rows,
                               std::uint64_t* access_count = nullptr);

// Hessian of the full Hamiltonian, L + hess(c^T G); requires hess_nl.
SpMat eval_hessian(const HamiltonianModel& m, const Vec& y, const Vec& eta);

// Shift of the state variable and of G: the returned model evaluates in
// y_s = y - y0 with f_s = f + L y0, shifted constant part, G_s(y0-state) = 0
// and initial condition 0. Repeated shifts compose into a single one.
HamiltonianModel shift_model(const HamiltonianModel& m, const Vec& y0, const Vec& eta);

// Model bound to one parameter value; precomputes L(eta), f(eta), g0(eta)
// for use in time loops. Counters, when set, record row evaluations.
struct BoundModel {
  std::shared_ptr<const HamiltonianModel> model;
  Vec eta;
  SpMat L;
  Vec f;
  double g0 = 0;
  EvalCounters* counters = nullptr;

  double hamiltonian(const Vec& y) const;
  Vec gradient(const Vec& y) const;
  SpMat hessian(const Vec& y) const;
  Vec rhs(const Vec& y) const;  // J grad H
};

BoundModel bind_model(std::shared_ptr<const HamiltonianModel> m, const Vec& eta,
                      EvalCounters* counters = nullptr);

}  // namespace gphr

#endif
