// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/admm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "risadmm/errors.hpp"
#include "risadmm/numerics.hpp"

namespace risadmm {

double DualStep::resolve(double rho, double tau) const {
  switch (mode) {
    case Mode::kRho:
      return rho;
    case Mode::kTwoTau:
      return 2.0 * tau;
    case Mode::kFixed:
      return value;
  }
  throw std::invalid_argument("DualStep: unknown mode");
}

DualStep DualStep::parse(const std::string& text) {
  if (text == "rho") {
    return {Mode::kRho, 0.0};
  }
  if (text == "2tau") {
    return {Mode::kTwoTau, 0.0};
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || !(v > 0.0)) {
    throw std::invalid_argument(
        "dual step: expected \"rho\", \"2tau\", or a positive number, got \"" +
        text + "\"");
  }
  return {Mode::kFixed, v};
}

std::string DualStep::str() const {
  switch (mode) {
    case Mode::kRho:
      return "rho";
    case Mode::kTwoTau:
      return "2tau";
    case Mode::kFixed:
      return std::to_string(value);
  }
  return "?";
}

SolverInputs make_solver_inputs(ComplexVector r, ComplexMatrix g,
                                ComplexVector c, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("solver inputs: tau must be > 0");
  }
  if (g.rows() != r.size() || g.rows() != c.size()) {
    throw DimensionError("solver inputs: r, G, c dimensions disagree");
  }
  SolverInputs inputs;
  const double c_norm2 = c.squaredNorm();
  if (c_norm2 > 0.0) {
    inputs.c_prime = c / (tau * c_norm2);
  } else {
    inputs.c_prime = ComplexVector::Zero(c.size());
  }
  inputs.g_prime = regularized_gram_inverse(g, tau);
  inputs.r = std::move(r);
  inputs.g = std::move(g);
  inputs.c = std::move(c);
  return inputs;
}

AdmmState init_state(Index m, Index n) {
  if (m < 1 || n < 1) {
    throw DimensionError("init_state: need M >= 1 and N >= 1");
  }
  AdmmState state;
  state.x = ComplexVector::Zero(m);
  state.u = ComplexVector::Zero(m);
  state.z = ComplexVector::Zero(n);
  state.big_y = ComplexMatrix::Zero(m + 1, m + 1);
  state.big_p = ComplexMatrix::Zero(m + 1, m + 1);
  state.w_dual = ComplexVector::Zero(n);
  return state;
}

Complex update_q(const AdmmState& state, const SolverInputs& inputs,
                 double tau) {
  const ComplexVector rhs =
      tau * state.z - 0.5 * state.w_dual - tau * (inputs.g * state.x);
  return inputs.c_prime.dot(rhs);  // Eigen dot conjugates the left factor
}

ComplexVector update_x(const AdmmState& state, const SolverInputs& inputs,
                       double tau) {
  const ComplexVector rhs = tau * state.z - 0.5 * state.w_dual -
                            tau * state.q * inputs.c;
  return inputs.g_prime *
         (2.0 * tau * state.y2() + state.p2() + inputs.g.adjoint() * rhs)
             .eval();
}

ComplexVector update_u(const AdmmState& state, double tau, double rho) {
  const Index m = state.m();
  ComplexVector u(m);
  const ComplexMatrix p1 = state.p1();
  const ComplexMatrix y1 = state.y1();
  u[0] = (offset_trace(p1, 0) - rho) / (2.0 * tau * static_cast<double>(m));
  u[0] = Complex(u[0].real(), 0.0);  // real by Hermitian symmetry
  for (Index k = 1; k < m; ++k) {
    u[k] = (offset_trace(p1, k) + 2.0 * tau * offset_trace(y1, k)) /
           (2.0 * tau * static_cast<double>(m - k));
  }
  return u;
}

double update_t(const AdmmState& state, double tau, double rho) {
  return state.y3() + state.p3() / (2.0 * tau) - rho / (4.0 * tau);
}

ComplexVector update_z(const AdmmState& state, const SolverInputs& inputs,
                       double tau) {
  ComplexVector z = inputs.r + 0.5 * state.w_dual +
                    tau * (inputs.g * state.x + inputs.c * state.q);
  z /= (1.0 + tau);
  return z;
}

ComplexMatrix assemble_lifted(const ComplexVector& u, const ComplexVector& x,
                              double t) {
  const Index m = u.size();
  if (x.size() != m) {
    throw DimensionError("assemble_lifted: u and x lengths differ");
  }
  ComplexMatrix q(m + 1, m + 1);
  q.topLeftCorner(m, m) = toeplitz_hermitian(u);
  q.col(m).head(m) = x;
  q.row(m).head(m) = x.adjoint();
  q(m, m) = Complex(t, 0.0);
  return q;
}

ComplexMatrix update_y(const AdmmState& state, const ComplexMatrix& q_lifted,
                       double tau) {
  return project_psd(q_lifted - state.big_p / (2.0 * tau));
}

std::pair<ComplexMatrix, ComplexVector> update_duals(
    const AdmmState& state, const SolverInputs& inputs,
    const ComplexMatrix& q_lifted, double step) {
  ComplexMatrix p = state.big_p + step * (state.big_y - q_lifted);
  p = 0.5 * (p + p.adjoint()).eval();
  ComplexVector w =
      state.w_dual +
      0.5 * step * (inputs.g * state.x + inputs.c * state.q - state.z);
  return {std::move(p), std::move(w)};
}

SolveResult solve(const ComplexVector& r, const ComplexMatrix& g,
                  const ComplexVector& c, const AdmmConfig& config) {
  if (config.max_iters < 1) {
    throw std::invalid_argument("solve: max_iters must be >= 1");
  }
  if (!(config.rho > 0.0)) {
    throw std::invalid_argument("solve: rho must be > 0");
  }
  if (config.estimate_interference && c.squaredNorm() == 0.0) {
    throw std::invalid_argument(
        "solve: interference estimation needs a nonzero signature c");
  }
  const Index m = g.cols();
  const Index n = g.rows();
  SolverInputs inputs = make_solver_inputs(r, g, c, config.tau);
  AdmmState state = init_state(m, n);
  const double step = config.dual_step.resolve(config.rho, config.tau);
  if (!(step > 0.0)) {
    throw std::invalid_argument("solve: dual step must resolve to > 0");
  }

  SolveResult result;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    if (config.estimate_interference) {
      state.q = update_q(state, inputs, config.tau);
    }
    state.x = update_x(state, inputs, config.tau);
    state.u = update_u(state, config.tau, config.rho);
    state.t = update_t(state, config.tau, config.rho);
    const ComplexMatrix q_lifted = assemble_lifted(state.u, state.x, state.t);
    state.z = update_z(state, inputs, config.tau);
    state.big_y = update_y(state, q_lifted, config.tau);
    auto [p_next, w_next] = update_duals(state, inputs, q_lifted, step);
    state.big_p = std::move(p_next);
    state.w_dual = std::move(w_next);
    state.iter = iter + 1;

    const double primal_z =
        (inputs.g * state.x + inputs.c * state.q - state.z).norm();
    const double primal_y = (state.big_y - q_lifted).norm();
    if (config.record_residuals) {
      result.trace.primal_z.push_back(primal_z);
      result.trace.primal_y.push_back(primal_y);
      result.trace.objective.push_back(
          (inputs.r - state.z).squaredNorm() +
          0.5 * config.rho * (state.u[0].real() + state.t));
    }
    if (config.stop_tol > 0.0 && primal_z < config.stop_tol &&
        primal_y < config.stop_tol) {
      break;
    }
  }
  result.x = state.x;
  result.q = state.q;
  result.iters_run = state.iter;
  return result;
}

double default_rho(double sigma_w, Index m, double floor_value) {
  if (sigma_w < 0.0) {
    throw std::invalid_argument("default_rho: sigma_w must be >= 0");
  }
  if (m < 2) {
    throw std::invalid_argument("default_rho: need M >= 2");
  }
  if (sigma_w == 0.0) {
    return floor_value;
  }
  return sigma_w * std::sqrt(static_cast<double>(m) *
                             std::log(static_cast<double>(m)));
}

}  // namespace risadmm
