// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "risadmm/types.hpp"

namespace risadmm {

/// Dual ascent step size. The update scheme writes the multiplier steps with
/// the sparsity weight rho, which couples convergence to the noise level;
/// conventional ADMM uses the augmentation weight 2*tau instead. Both are
/// selectable, plus an explicit value.
struct DualStep {
  enum class Mode { kRho, kTwoTau, kFixed };
  Mode mode = Mode::kRho;
  double value = 0.0;  // used when mode == kFixed

  double resolve(double rho, double tau) const;

  /// Parses "rho", "2tau", or a positive number.
  static DualStep parse(const std::string& text);
  std::string str() const;
};

struct AdmmConfig {
  double rho = 1e-3;      // atomic-norm weight
  double tau = 1.0;       // augmentation weight
  DualStep dual_step{};   // multiplier step (default: rho)
  int max_iters = 100;
  bool record_residuals = false;
  bool estimate_interference = true;  // update q each iteration
  double stop_tol = 0.0;  // >0: stop once both primal residuals fall below
};

/// All solver iterates. Y and P are (M+1) x (M+1), partitioned as
/// [[Y1, y2], [y2^H, y3]] and [[P1, p2], [p2^H, p3]].
struct AdmmState {
  ComplexVector x;       // M
  Complex q{0.0, 0.0};
  ComplexVector u;       // M
  double t = 0.0;
  ComplexVector z;       // N
  ComplexMatrix big_y;   // (M+1) x (M+1)
  ComplexMatrix big_p;   // (M+1) x (M+1)
  ComplexVector w_dual;  // N
  int iter = 0;

  Index m() const { return x.size(); }
  auto y1() const { return big_y.topLeftCorner(m(), m()); }
  auto y2() const { return big_y.col(m()).head(m()); }
  double y3() const { return big_y(m(), m()).real(); }
  auto p1() const { return big_p.topLeftCorner(m(), m()); }
  auto p2() const { return big_p.col(m()).head(m()); }
  double p3() const { return big_p(m(), m()).real(); }
};

/// Solve-time constants: the data, plus c' = c / (tau ||c||^2) and
/// G' = (tau G^H G + 2 tau I)^{-1}, both computed once per solve.
struct SolverInputs {
  ComplexVector r;
  ComplexMatrix g;
  ComplexVector c;
  ComplexVector c_prime;
  ComplexMatrix g_prime;
};

SolverInputs make_solver_inputs(ComplexVector r, ComplexMatrix g,
                                ComplexVector c, double tau);

/// Per-iteration diagnostics.
struct ResidualTrace {
  std::vector<double> primal_z;   // ||G x + c q - z||_2
  std::vector<double> primal_y;   // ||Y - Q||_F
  std::vector<double> objective;  // ||r - z||^2 + rho/2 (u0 + t)
};

/// All-zeros state for an M-element aperture and N measurements.
AdmmState init_state(Index m, Index n);

// Closed-form block updates. Each is pure: it reads the state and returns
// the new value; solve() applies them in the fixed order
// q, x, u, t, (assemble Q), z, Y, duals.

/// q = c'^H (tau z - 0.5 w - tau G x).
Complex update_q(const AdmmState& state, const SolverInputs& inputs,
                 double tau);

/// x = G' [2 tau y2 + p2 + G^H (tau z - 0.5 w - tau q c)].
ComplexVector update_x(const AdmmState& state, const SolverInputs& inputs,
                       double tau);

/// u0 = (Tr(P1, 0) - rho) / (2 tau M);
/// um = (Tr(P1, m) + 2 tau Tr(Y1, m)) / (2 tau (M - m)) for m >= 1.
ComplexVector update_u(const AdmmState& state, double tau, double rho);

/// t = y3 + p3 / (2 tau) - rho / (4 tau).
double update_t(const AdmmState& state, double tau, double rho);

/// z = (r + 0.5 w + tau (G x + c q)) / (1 + tau), with the just-updated
/// x and q (Gauss-Seidel order).
ComplexVector update_z(const AdmmState& state, const SolverInputs& inputs,
                       double tau);

/// Q = [[Toep(u), x], [x^H, t]].
ComplexMatrix assemble_lifted(const ComplexVector& u, const ComplexVector& x,
                              double t);

/// Y = nearest PSD matrix to Q - P / (2 tau).
ComplexMatrix update_y(const AdmmState& state, const ComplexMatrix& q_lifted,
                       double tau);

/// P + step (Y - Q) re-Hermitized, and w + 0.5 step (G x + c q - z).
std::pair<ComplexMatrix, ComplexVector> update_duals(
    const AdmmState& state, const SolverInputs& inputs,
    const ComplexMatrix& q_lifted, double step);

struct SolveResult {
  ComplexVector x;
  Complex q{0.0, 0.0};
  ResidualTrace trace;
  int iters_run = 0;
};

/// Runs the full iteration: zero initialization, precomputed c' and G',
/// then max_iters sweeps of the block updates. Deterministic.
SolveResult solve(const ComplexVector& r, const ComplexMatrix& g,
                  const ComplexVector& c, const AdmmConfig& config);

/// rho = sigma_w sqrt(M ln M); falls back to floor_value when sigma_w = 0
/// so the noiseless problem stays non-degenerate.
double default_rho(double sigma_w, Index m, double floor_value = 1e-3);

}  // namespace risadmm
