#include "gphr/model.hpp"

#include <cmath>
#include <iostream>

namespace gphr {

SpMat poisson_times(Index n, const SpMat& M) {
  if (M.rows() != 2 * n) throw InvalidArgument("poisson_times: M must have 2n rows");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(M.nonZeros()));
  for (int col = 0; col < M.outerSize(); ++col) {
    for (SpMat::InnerIterator it(M, col); it; ++it) {
      const Index r = it.row();
      if (r >= n)
        trip.emplace_back(r - n, col, it.value());
      else
        trip.emplace_back(r + n, col, -it.value());
    }
  }
  SpMat out(M.rows(), M.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

namespace {

void check_state_dim(const HamiltonianModel& m, const Vec& y, const char* op) {
  if (y.size() != m.dim())
    throw InvalidArgument(std::string(op) + ": state has dimension " +
                          std::to_string(y.size()) + ", expected " + std::to_string(m.dim()));
}

void check_param(const HamiltonianModel& m, const Vec& eta) {
  if (m.param_box.lo.size() > 0 && !m.param_box.contains(eta))
    std::cerr << "gphr: warning: parameter outside the model's parameter box\n";
}

void check_rows(const HamiltonianModel& m, std::span<const Index> rows) {
  for (Index r : rows)
    if (r < 0 || r >= m.d)
      throw InvalidArgument("row index " + std::to_string(r) + " out of range [0," +
                            std::to_string(m.d) + ")");
}

std::vector<Index> all_rows(Index d) {
  std::vector<Index> r(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] = i;
  return r;
}

}  // namespace

Vec eval_g_rows(const HamiltonianModel& m, const Vec& y, const Vec& eta,
                std::span<const Index> rows, std::uint64_t* access_count) {
  check_state_dim(m, y, "eval_g_rows");
  check_param(m, eta);
  check_rows(m, rows);
  Vec out(static_cast<Index>(rows.size()));
  StateGather g{y.data(), m.shifted() ? m.shift.data() : nullptr, access_count};
  m.g_rows(g, eta, rows, out.data());
  if (m.shifted()) {
    Vec base(static_cast<Index>(rows.size()));
    StateGather g0{m.shift.data(), nullptr, nullptr};
    m.g_rows(g0, eta, rows, base.data());
    out -= base;
  }
  return out;
}

Vec eval_g(const HamiltonianModel& m, const Vec& y, const Vec& eta) {
  const auto rows = all_rows(m.d);
  return eval_g_rows(m, y, eta, rows);
}

SparseRowBlock eval_jac_g_rows(const HamiltonianModel& m, const Vec& y, const Vec& eta,
                               std::span<const Index> rows, std::uint64_t* access_count) {
  check_state_dim(m, y, "eval_jac_g_rows");
  check_param(m, eta);
  check_rows(m, rows);
  SparseRowBlock out;
  out.clear();
  StateGather g{y.data(), m.shifted() ? m.shift.data() : nullptr, access_count};
  m.jac_rows(g, eta, rows, out);
  return out;
}

double eval_hamiltonian(const HamiltonianModel& m, const Vec& y, const Vec& eta) {
  check_state_dim(m, y, "eval_hamiltonian");
  const SpMat L = m.L(eta);
  const Vec f = m.f(eta);
  const Vec gv = eval_g(m, y, eta);
  return 0.5 * y.dot(L * y) + y.dot(f) + m.g0(eta) + m.c.dot(gv);
}

Vec eval_gradient(const HamiltonianModel& m, const Vec& y, const Vec& eta) {
  check_state_dim(m, y, "eval_gradient");
  const SpMat L = m.L(eta);
  const Vec f = m.f(eta);
  Vec grad = L * y + f;
  const auto rows = all_rows(m.d);
  const SparseRowBlock block = eval_jac_g_rows(m, y, eta, rows);
  for (Index i = 0; i < block.row_count(); ++i) {
    const double ci = m.c[block.rows[static_cast<std::size_t>(i)]];
    for (Index k = block.offsets[static_cast<std::size_t>(i)];
         k < block.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      grad[block.cols[static_cast<std::size_t>(k)]] += ci * block.vals[static_cast<std::size_t>(k)];
    }
  }
  return grad;
}

SpMat eval_hessian(const HamiltonianModel& m, const Vec& y, const Vec& eta) {
  check_state_dim(m, y, "eval_hessian");
  if (!m.hess_nl) throw NumericalError("eval_hessian: model has no nonlinear Hessian callback");
  StateGather g{y.data(), m.shifted() ? m.shift.data() : nullptr, nullptr};
  SpMat H = m.L(eta);
  H += m.hess_nl(g, eta);
  return H;
}

HamiltonianModel shift_model(const HamiltonianModel& m, const Vec& y0, const Vec& eta) {
  if (y0.size() != m.dim()) throw InvalidArgument("shift_model: y0 has wrong dimension");
  if (!y0.allFinite()) throw InvalidArgument("shift_model: y0 must be finite");

  HamiltonianModel s = m;
  s.shift = m.shifted() ? Vec(m.shift + y0) : y0;

  // f_s = f + L y0 and the matching constant part, composed on top of the
  // incoming model so that repeated shifts flatten.
  auto base_L = m.L;
  auto base_f = m.f;
  auto base_g0 = m.g0;
  const HamiltonianModel prev = m;  // value copy; kernels are shared std::functions
  s.f = [base_L, base_f, y0](const Vec& e) -> Vec { return base_f(e) + base_L(e) * y0; };
  s.g0 = [prev, base_L, base_f, base_g0, y0](const Vec& e) -> double {
    const Vec Ly0 = base_L(e) * y0;
    const Vec g_at_y0 = eval_g(prev, y0, e);
    return base_g0(e) + 0.5 * y0.dot(Ly0) + y0.dot(base_f(e)) + prev.c.dot(g_at_y0);
  };

  if (m.initial_state) {
    auto base_init = m.initial_state;
    s.initial_state = [base_init, y0](const Vec& e) -> Vec { return base_init(e) - y0; };
  }
  (void)eta;  // shift is parameter-generic; eta kept for call-site clarity
  return s;
}

double BoundModel::hamiltonian(const Vec& y) const {
  if (counters) counters->g_rows += static_cast<std::uint64_t>(model->d);
  const Vec gv = eval_g(*model, y, eta);
  return 0.5 * y.dot(L * y) + y.dot(f) + g0 + model->c.dot(gv);
}

Vec BoundModel::gradient(const Vec& y) const {
  if (counters) {
    counters->jac_rows += static_cast<std::uint64_t>(model->d);
    ++counters->grad_evals;
  }
  Vec grad = L * y + f;
  const auto rows = [&] {
    std::vector<Index> r(static_cast<std::size_t>(model->d));
    for (Index i = 0; i < model->d; ++i) r[static_cast<std::size_t>(i)] = i;
    return r;
  }();
  const SparseRowBlock block = eval_jac_g_rows(*model, y, eta, rows);
  for (Index i = 0; i < block.row_count(); ++i) {
    const double ci = model->c[block.rows[static_cast<std::size_t>(i)]];
    for (Index k = block.offsets[static_cast<std::size_t>(i)];
         k < block.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      grad[block.cols[static_cast<std::size_t>(k)]] += ci * block.vals[static_cast<std::size_t>(k)];
    }
  }
  return grad;
}

SpMat BoundModel::hessian(const Vec& y) const {
  if (!model->hess_nl) throw NumericalError("BoundModel: no nonlinear Hessian callback");
  StateGather g{y.data(), model->shifted() ? model->shift.data() : nullptr, nullptr};
  SpMat H = L;
  H += model->hess_nl(g, eta);
  return H;
}

Vec BoundModel::rhs(const Vec& y) const {
  if (counters) ++counters->rhs_evals;
  return CanonicalPoisson{model->n}.apply(gradient(y));
}

BoundModel bind_model(std::shared_ptr<const HamiltonianModel> m, const Vec& eta,
                      EvalCounters* counters) {
  BoundModel b;
  b.model = std::move(m);
  b.eta = eta;
  b.L = b.model->L(eta);
  b.f = b.model->f(eta);
  b.g0 = b.model->g0(eta);
  b.counters = counters;
  return b;
}

}  // namespace gphr
