#include "gphr/integrators.hpp"

#include <Eigen/SparseLU>

#include <cmath>

namespace gphr {

QuadratureRule QuadratureRule::gauss_legendre(int points) {
  // Nodes on [-1, 1], mapped to [0, 1].
  Vec x, w;
  switch (points) {
    case 1:
      x = (Vec(1) << 0.0).finished();
      w = (Vec(1) << 2.0).finished();
      break;
    case 2: {
      const double a = 1.0 / std::sqrt(3.0);
      x = (Vec(2) << -a, a).finished();
      w = (Vec(2) << 1.0, 1.0).finished();
      break;
    }
    case 3: {
      const double a = std::sqrt(3.0 / 5.0);
      x = (Vec(3) << -a, 0.0, a).finished();
      w = (Vec(3) << 5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0).finished();
      break;
    }
    case 4: {
      const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      x = (Vec(4) << -b, -a, a, b).finished();
      w = (Vec(4) << wb, wa, wa, wb).finished();
      break;
    }
    case 5: {
      const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      x = (Vec(5) << -b, -a, 0.0, a, b).finished();
      w = (Vec(5) << wb, wa, 128.0 / 225.0, wa, wb).finished();
      break;
    }
    default:
      throw InvalidArgument("gauss_legendre: 1..5 points supported");
  }
  QuadratureRule rule;
  rule.nodes = (x.array() + 1.0) / 2.0;
  rule.weights = w / 2.0;
  rule.exact_degree = 2 * points - 1;
  return rule;
}

namespace {

// Solve F(x) = 0 by Newton iteration. `jacobian` fills the sparse Jacobian of
// F at x when the analytic mode is selected; otherwise a dense forward
// difference of F is used. The factorization is redone every iteration.
Vec newton_solve(const std::function<Vec(const Vec&)>& F,
                 const std::function<SpMat(const Vec&)>& jacobian, const Vec& x0,
                 const NewtonConfig& cfg, EvalCounters* counters) {
  Vec x = x0;
  Vec r = F(x);
  double rnorm = r.norm();
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (rnorm <= cfg.tol) return x;
    if (counters) ++counters->newton_iters;
    Vec dx;
    if (cfg.mode == NewtonConfig::Jacobian::Analytic && jacobian) {
      const SpMat J = jacobian(x);
      Eigen::SparseLU<SpMat> lu(J);
      if (lu.info() != Eigen::Success)
        throw NewtonError("Newton: singular analytic Jacobian", rnorm, it);
      dx = lu.solve(-r);
    } else {
      const Index nloc = x.size();
      Mat J(nloc, nloc);
      const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
      Vec xp = x;
      for (Index j = 0; j < nloc; ++j) {
        const double h = sqrt_eps * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        J.col(j) = (F(xp) - r) / h;
        xp[j] = x[j];
      }
      Eigen::PartialPivLU<Mat> lu(J);
      dx = lu.solve(-r);
    }
    x += dx;
    r = F(x);
    rnorm = r.norm();
  }
  if (rnorm <= cfg.tol) return x;
  throw NewtonError("Newton: no convergence after " + std::to_string(cfg.max_iter) +
                        " iterations (residual " + std::to_string(rnorm) + ")",
                    rnorm, cfg.max_iter);
}

}  // namespace

Vec step_imr(const OdeSystem& sys, const Vec& y, double dt, const NewtonConfig& newton,
             EvalCounters* counters) {
  if (dt < 0) throw InvalidArgument("step_imr: dt must be nonnegative");
  if (dt == 0.0) return y;

  auto F = [&](const Vec& x) -> Vec { return x - y - dt * sys.rhs(0.5 * (x + y)); };

  std::function<SpMat(const Vec&)> jac;
  if (sys.hamiltonian_hessian) {
    const Index half = sys.dim / 2;
    jac = [&, half](const Vec& x) -> SpMat {
      const SpMat H = sys.hamiltonian_hessian(0.5 * (x + y));
      SpMat J = poisson_times(half, H);
      J *= -0.5 * dt;
      SpMat I(sys.dim, sys.dim);
      I.setIdentity();
      return SpMat(I + J);
    };
  }
  return newton_solve(F, jac, y, newton, counters);
}

Vec step_avf(const OdeSystem& sys, const Vec& y, double dt, const NewtonConfig& newton,
             const QuadratureRule& quad, EvalCounters* counters) {
  if (dt < 0) throw InvalidArgument("step_avf: dt must be nonnegative");
  if (dt == 0.0) return y;
  if (!sys.grad || !sys.poisson)
    throw InvalidArgument("step_avf: system lacks gradient/Poisson providers");

  auto F = [&](const Vec& x) -> Vec {
    Vec avg = Vec::Zero(sys.dim);
    for (Index q = 0; q < quad.nodes.size(); ++q) {
      const double xi = quad.nodes[q];
      avg += quad.weights[q] * sys.grad(xi * x + (1.0 - xi) * y);
    }
    return x - y - dt * sys.poisson(avg);
  };

  std::function<SpMat(const Vec&)> jac;
  if (sys.hamiltonian_hessian) {
    const Index half = sys.dim / 2;
    jac = [&, half](const Vec& x) -> SpMat {
      SpMat H(sys.dim, sys.dim);
      for (Index q = 0; q < quad.nodes.size(); ++q) {
        const double xi = quad.nodes[q];
        const SpMat Hq = sys.hamiltonian_hessian(xi * x + (1.0 - xi) * y);
        H += (quad.weights[q] * xi) * Hq;
      }
      SpMat J = poisson_times(half, H);
      J *= -dt;
      SpMat I(sys.dim, sys.dim);
      I.setIdentity();
      return SpMat(I + J);
    };
  }
  return newton_solve(F, jac, y, newton, counters);
}

Mat integrate_trajectory(const OdeSystem& sys, const Vec& y0, double dt, Index n_steps,
                         Scheme scheme, const NewtonConfig& newton, const QuadratureRule& quad,
                         const std::function<void(Index, const Vec&)>& on_step,
                         EvalCounters* counters) {
  if (y0.size() != sys.dim) throw InvalidArgument("integrate_trajectory: bad initial state");
  Mat traj(sys.dim, n_steps + 1);
  traj.col(0) = y0;
  Vec y = y0;
  for (Index step = 1; step <= n_steps; ++step) {
    try {
      y = (scheme == Scheme::Imr) ? step_imr(sys, y, dt, newton, counters)
                                  : step_avf(sys, y, dt, newton, quad, counters);
    } catch (const NumericalError& err) {
      throw IntegrationError("step " + std::to_string(step) + ": " + err.what(), step);
    }
    traj.col(step) = y;
    if (on_step) on_step(step, y);
  }
  return traj;
}

}  // namespace gphr
