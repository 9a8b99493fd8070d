#include "gphr/problems.hpp"

#include <algorithm>
#include <cmath>

namespace gphr {

namespace {

Index wrap(Index i, Index n) { return (i % n + n) % n; }

}  // namespace

SpMat swe2d_dx1(const Swe2dConfig& cfg) {
  const Index n = cfg.nx1 * cfg.nx2;
  const double h = 2.0 * cfg.Lx1 / static_cast<double>(cfg.nx1);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(2 * n));
  for (Index j = 0; j < cfg.nx2; ++j) {
    for (Index i = 0; i < cfg.nx1; ++i) {
      const Index row = j * cfg.nx1 + i;
      trip.emplace_back(row, j * cfg.nx1 + wrap(i + 1, cfg.nx1), 1.0 / (2.0 * h));
      trip.emplace_back(row, j * cfg.nx1 + wrap(i - 1, cfg.nx1), -1.0 / (2.0 * h));
    }
  }
  SpMat D(n, n);
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

SpMat swe2d_dx2(const Swe2dConfig& cfg) {
  const Index n = cfg.nx1 * cfg.nx2;
  const double h = 2.0 * cfg.Lx2 / static_cast<double>(cfg.nx2);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(2 * n));
  for (Index j = 0; j < cfg.nx2; ++j) {
    for (Index i = 0; i < cfg.nx1; ++i) {
      const Index row = j * cfg.nx1 + i;
      trip.emplace_back(row, wrap(j + 1, cfg.nx2) * cfg.nx1 + i, 1.0 / (2.0 * h));
      trip.emplace_back(row, wrap(j - 1, cfg.nx2) * cfg.nx1 + i, -1.0 / (2.0 * h));
    }
  }
  SpMat D(n, n);
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

SpMat nls1d_dxx(const Nls1dConfig& cfg) {
  const Index n = cfg.n;
  const double L = M_PI / cfg.l;
  const double h = 2.0 * L / static_cast<double>(n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(3 * n));
  const double ih2 = 1.0 / (h * h);
  for (Index i = 0; i < n; ++i) {
    trip.emplace_back(i, wrap(i - 1, n), ih2);
    trip.emplace_back(i, i, -2.0 * ih2);
    trip.emplace_back(i, wrap(i + 1, n), ih2);
  }
  SpMat D(n, n);
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

HamiltonianModel build_swe2d(const Swe2dConfig& cfg) {
  if (cfg.nx1 <= 0 || cfg.nx2 <= 0) throw InvalidArgument("build_swe2d: grid sizes must be positive");

  const Index nx1 = cfg.nx1, nx2 = cfg.nx2;
  const Index n = nx1 * nx2;
  const double h1 = 2.0 * cfg.Lx1 / static_cast<double>(nx1);
  const double h2 = 2.0 * cfg.Lx2 / static_cast<double>(nx2);

  HamiltonianModel m;
  m.n = n;
  m.d = n;
  m.c = Vec::Ones(n);

  // H = gamma/2 chi^T chi + c^T G, so L = [[gamma I, 0], [0, 0]].
  m.L = [n](const Vec& eta) -> SpMat {
    const double gamma = eta[1];
    SpMat L(2 * n, 2 * n);
    L.reserve(Eigen::VectorXi::Constant(static_cast<int>(2 * n), 1));
    for (Index i = 0; i < n; ++i) L.insert(i, i) = gamma;
    L.makeCompressed();
    return L;
  };
  m.f = [n](const Vec&) -> Vec { return Vec::Zero(2 * n); };
  m.g0 = [](const Vec&) -> double { return 0.0; };

  // Stencil neighbours of grid node i for the two first derivatives.
  struct Stencil {
    Index r1, l1, r2, l2;
  };
  auto stencil = [nx1, nx2](Index idx) -> Stencil {
    const Index i = idx % nx1;
    const Index j = idx / nx1;
    return {j * nx1 + wrap(i + 1, nx1), j * nx1 + wrap(i - 1, nx1),
            wrap(j + 1, nx2) * nx1 + i, wrap(j - 1, nx2) * nx1 + i};
  };

  m.g_rows = [n, h1, h2, stencil](const StateGather& y, const Vec& eta,
                                  std::span<const Index> rows, double* out) {
    const double gamma = eta[1];
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Index i = rows[k];
      const Stencil s = stencil(i);
      const double a = (y(n + s.r1) - y(n + s.l1)) / (2.0 * h1);
      const double b = (y(n + s.r2) - y(n + s.l2)) / (2.0 * h2);
      out[k] = 0.5 * gamma * y(i) * (a * a + b * b);
    }
  };

  m.jac_rows = [n, h1, h2, stencil](const StateGather& y, const Vec& eta,
                                    std::span<const Index> rows, SparseRowBlock& out) {
    const double gamma = eta[1];
    for (const Index i : rows) {
      const Stencil s = stencil(i);
      const double chi = y(i);
      const double a = (y(n + s.r1) - y(n + s.l1)) / (2.0 * h1);
      const double b = (y(n + s.r2) - y(n + s.l2)) / (2.0 * h2);
      out.rows.push_back(i);
      // d/dchi_i
      out.cols.push_back(i);
      out.vals.push_back(0.5 * gamma * (a * a + b * b));
      // d/dphi at the four stencil neighbours; wrap-coalesced duplicates are
      // accumulated so the column pattern stays within the sparsity list.
      const std::pair<Index, double> terms[4] = {{s.r1, gamma * chi * a / (2.0 * h1)},
                                                 {s.l1, -gamma * chi * a / (2.0 * h1)},
                                                 {s.r2, gamma * chi * b / (2.0 * h2)},
                                                 {s.l2, -gamma * chi * b / (2.0 * h2)}};
      for (const auto& [col, val] : terms) {
        const Index gcol = n + col;
        bool merged = false;
        for (Index kk = out.offsets.back() + 1; kk < static_cast<Index>(out.cols.size()); ++kk) {
          if (out.cols[static_cast<std::size_t>(kk)] == gcol) {
            out.vals[static_cast<std::size_t>(kk)] += val;
            merged = true;
            break;
          }
        }
        if (!merged) {
          out.cols.push_back(gcol);
          out.vals.push_back(val);
        }
      }
      out.offsets.push_back(static_cast<Index>(out.cols.size()));
    }
  };

  const SpMat D1 = swe2d_dx1(cfg);
  const SpMat D2 = swe2d_dx2(cfg);
  m.hess_nl = [n, D1, D2](const StateGather& y, const Vec& eta) -> SpMat {
    const double gamma = eta[1];
    Vec chi(n), phi(n);
    for (Index i = 0; i < n; ++i) {
      chi[i] = y(i);
      phi[i] = y(n + i);
    }
    const Vec a = D1 * phi;
    const Vec b = D2 * phi;
    const SpMat B = gamma * (SpMat(a.asDiagonal() * D1) + SpMat(b.asDiagonal() * D2));
    const SpMat C =
        gamma * (SpMat(D1.transpose() * SpMat(chi.asDiagonal() * D1)) +
                 SpMat(D2.transpose() * SpMat(chi.asDiagonal() * D2)));
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(2 * B.nonZeros() + C.nonZeros()));
    for (int col = 0; col < B.outerSize(); ++col)
      for (SpMat::InnerIterator it(B, col); it; ++it) {
        trip.emplace_back(it.row(), n + it.col(), it.value());
        trip.emplace_back(n + it.col(), it.row(), it.value());
      }
    for (int col = 0; col < C.outerSize(); ++col)
      for (SpMat::InnerIterator it(C, col); it; ++it)
        trip.emplace_back(n + it.row(), n + it.col(), it.value());
    SpMat H(2 * n, 2 * n);
    H.setFromTriplets(trip.begin(), trip.end());
    return H;
  };

  m.sparsity.s1 = 1;
  m.sparsity.s2 = 4;
  m.sparsity.cols.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Stencil s = stencil(i);
    std::vector<Index> cols = {i, n + s.r1, n + s.l1, n + s.r2, n + s.l2};
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    m.sparsity.cols[static_cast<std::size_t>(i)] = std::move(cols);
  }

  m.param_box.lo = (Vec(2) << 1.1, 0.7).finished();
  m.param_box.hi = (Vec(2) << 1.7, 1.3).finished();

  const double Lx1 = cfg.Lx1, Lx2 = cfg.Lx2;
  m.initial_state = [n, nx1, h1, h2, Lx1, Lx2](const Vec& eta) -> Vec {
    const double beta = eta[0];
    Vec y = Vec::Zero(2 * n);
    for (Index idx = 0; idx < n; ++idx) {
      const Index i = idx % nx1;
      const Index j = idx / nx1;
      const double x1 = -Lx1 + static_cast<double>(i) * h1;
      const double x2 = -Lx2 + static_cast<double>(j) * h2;
      y[idx] = 1.0 + 0.5 * std::exp(-beta * (x1 * x1 + x2 * x2));
    }
    return y;
  };

  return m;
}

HamiltonianModel build_nls1d(const Nls1dConfig& cfg) {
  if (cfg.n <= 0) throw InvalidArgument("build_nls1d: n must be positive");

  const Index n = cfg.n;
  const double L = M_PI / cfg.l;
  const double h = 2.0 * L / static_cast<double>(n);

  HamiltonianModel m;
  m.n = n;
  m.d = n;
  m.c = Vec::Ones(n);

  const SpMat Dxx = nls1d_dxx(cfg);
  SpMat quad(2 * n, 2 * n);
  {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(2 * Dxx.nonZeros()));
    for (int col = 0; col < Dxx.outerSize(); ++col)
      for (SpMat::InnerIterator it(Dxx, col); it; ++it) {
        trip.emplace_back(it.row(), it.col(), -it.value());
        trip.emplace_back(n + it.row(), n + it.col(), -it.value());
      }
    quad.setFromTriplets(trip.begin(), trip.end());
  }
  m.L = [quad](const Vec&) -> SpMat { return quad; };
  m.f = [n](const Vec&) -> Vec { return Vec::Zero(2 * n); };
  m.g0 = [](const Vec&) -> double { return 0.0; };

  m.g_rows = [n](const StateGather& y, const Vec& eta, std::span<const Index> rows,
                 double* out) {
    const double eps = eta[0];
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Index i = rows[k];
      const double q = y(i);
      const double p = y(n + i);
      const double s = q * q + p * p;
      out[k] = -0.25 * eps * s * s;
    }
  };

  m.jac_rows = [n](const StateGather& y, const Vec& eta, std::span<const Index> rows,
                   SparseRowBlock& out) {
    const double eps = eta[0];
    for (const Index i : rows) {
      const double q = y(i);
      const double p = y(n + i);
      const double s = q * q + p * p;
      out.rows.push_back(i);
      out.cols.push_back(i);
      out.vals.push_back(-eps * s * q);
      out.cols.push_back(n + i);
      out.vals.push_back(-eps * s * p);
      out.offsets.push_back(static_cast<Index>(out.cols.size()));
    }
  };

  m.hess_nl = [n](const StateGather& y, const Vec& eta) -> SpMat {
    const double eps = eta[0];
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(4 * n));
    for (Index i = 0; i < n; ++i) {
      const double q = y(i);
      const double p = y(n + i);
      trip.emplace_back(i, i, -eps * (3.0 * q * q + p * p));
      trip.emplace_back(i, n + i, -2.0 * eps * q * p);
      trip.emplace_back(n + i, i, -2.0 * eps * q * p);
      trip.emplace_back(n + i, n + i, -eps * (q * q + 3.0 * p * p));
    }
    SpMat H(2 * n, 2 * n);
    H.setFromTriplets(trip.begin(), trip.end());
    return H;
  };

  m.sparsity.s1 = 1;
  m.sparsity.s2 = 1;
  m.sparsity.cols.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) m.sparsity.cols[static_cast<std::size_t>(i)] = {i, n + i};

  m.param_box.lo = (Vec(1) << 0.9).finished();
  m.param_box.hi = (Vec(1) << 1.1).finished();

  m.initial_state = [n, L, h](const Vec&) -> Vec {
    Vec y(2 * n);
    for (Index i = 0; i < n; ++i) {
      const double x = -L + static_cast<double>(i) * h;
      const double amp = std::sqrt(2.0) / std::cosh(x);
      y[i] = amp * std::cos(0.5 * x);
      y[n + i] = amp * std::sin(0.5 * x);
    }
    return y;
  };

  return m;
}

}  // namespace gphr
