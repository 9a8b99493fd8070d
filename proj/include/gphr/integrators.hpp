#ifndef GPHR_INTEGRATORS_HPP
#define GPHR_INTEGRATORS_HPP

#include <functional>
#include <optional>

#include "gphr/types.hpp"

namespace gphr {

// A first-order system y' = rhs(y) with rhs = J grad H; the gradient and the
// Poisson application are exposed separately for the average-vector-field
// scheme, and an optional Hamiltonian Hessian enables the analytic Newton
// path with sparse solves.
struct OdeSystem {
  Index dim = 0;
  std::function<Vec(const Vec&)> rhs;
  std::function<Vec(const Vec&)> grad;
  std::function<Vec(const Vec&)> poisson;                 // v -> J v
  std::function<SpMat(const Vec&)> hamiltonian_hessian;   // optional
  std::function<double(const Vec&)> hamiltonian;          // optional, diagnostics
};

struct NewtonConfig {
  double tol = 1e-10;  // residual 2-norm threshold
  int max_iter = 50;
  enum class Jacobian { Analytic, FiniteDifference } mode = Jacobian::FiniteDifference;
};

// Nodes and weights on [0, 1] for the AVF line integral.
struct QuadratureRule {
  Vec nodes;
  Vec weights;
  int exact_degree = 0;

  static QuadratureRule gauss_legendre(int points);
};

class NewtonError : public NumericalError {
 public:
  NewtonError(const std::string& what, double residual, int iters)
      : NumericalError(what), residual_(residual), iters_(iters) {}
  double residual() const { return residual_; }
  int iterations() const { return iters_; }

 private:
  double residual_;
  int iters_;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, Index step) : NumericalError(what), step_(step) {}
  Index step() const { return step_; }

 private:
  Index step_;
};

enum class Scheme { Imr, Avf };

Vec step_imr(const OdeSystem& sys, const Vec& y, double dt, const NewtonConfig& newton,
             EvalCounters* counters = nullptr);

Vec step_avf(const OdeSystem& sys, const Vec& y, double dt, const NewtonConfig& newton,
             const QuadratureRule& quad, EvalCounters* counters = nullptr);

// States at t^0..t^{n_steps}, one column per step. The callback runs after
// every accepted step (step index, new state).
Mat integrate_trajectory(const OdeSystem& sys, const Vec& y0, double dt, Index n_steps,
                         Scheme scheme, const NewtonConfig& newton, const QuadratureRule& quad,
                         const std::function<void(Index, const Vec&)>& on_step = nullptr,
                         EvalCounters* counters = nullptr);

}  // namespace gphr

#endif
