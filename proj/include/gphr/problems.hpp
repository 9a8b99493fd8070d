#ifndef GPHR_PROBLEMS_HPP
#define GPHR_PROBLEMS_HPP

#include "gphr/model.hpp"

namespace gphr {

// 2D shallow water equations on a periodic rectangle, centered second-order
// finite differences. State layout (chi_1..chi_n, phi_1..phi_n), unknowns
// ordered x1-fastest. Parameter eta = (beta, gamma).
struct Swe2dConfig {
  double Lx1 = 2.0;
  double Lx2 = 2.0;
  Index nx1 = 50;
  Index nx2 = 50;
};

// 1D nonlinear Schroedinger equation with periodic boundary conditions on
// [-L, L], L = pi/l. State layout (q_1..q_n, p_1..p_n). Parameter eta = (eps).
struct Nls1dConfig {
  double l = 0.11;
  Index n = 2048;
};

HamiltonianModel build_swe2d(const Swe2dConfig& cfg);
HamiltonianModel build_nls1d(const Nls1dConfig& cfg);

// Periodic centered difference operators (exposed for convergence tests).
SpMat swe2d_dx1(const Swe2dConfig& cfg);
SpMat swe2d_dx2(const Swe2dConfig& cfg);
SpMat nls1d_dxx(const Nls1dConfig& cfg);

}  // namespace gphr

#endif
