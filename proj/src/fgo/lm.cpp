#include "jpcm/fgo/lm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>

namespace jpcm::fgo {

namespace {

struct NormalEq {
  Eigen::MatrixXd A;  // JᵀJ, whitened
  Eigen::VectorXd g;  // Jᵀb, whitened
  double cost = 0.0;
};

void assemble(const FactorGraph& graph, const Values& values,
              const Ordering& ordering, NormalEq& out) {
  const int n = ordering.total_dim;
  out.A.setZero(n, n);
  out.g.setZero(n);
  out.cost = 0.0;

  for (const auto& f : graph.factors()) {
    const Eigen::VectorXd wr = f->noise().whiten(f->error(values));
    out.cost += 0.5 * wr.squaredNorm();

    std::vector<Eigen::MatrixXd> js = f->jacobians(values);
    if (js.size() != f->keys().size()) {
      throw std::runtime_error("solve_lm: jacobian block count mismatch");
    }
    for (std::size_t i = 0; i < js.size(); ++i) {
      if (js[i].rows() != f->dim() ||
          js[i].cols() != values.tangent_dim(f->keys()[i])) {
        throw std::runtime_error("solve_lm: jacobian shape mismatch at " +
                                 to_string(f->keys()[i]));
      }
      js[i] = f->noise().whiten_jacobian(js[i]);
    }

    for (std::size_t i = 0; i < js.size(); ++i) {
      const int oi = ordering.offset_of(f->keys()[i]);
      const int di = static_cast<int>(js[i].cols());
      out.g.segment(oi, di).noalias() += js[i].transpose() * wr;
      for (std::size_t j = i; j < js.size(); ++j) {
        const int oj = ordering.offset_of(f->keys()[j]);
        const int dj = static_cast<int>(js[j].cols());
        const Eigen::MatrixXd block = js[i].transpose() * js[j];
        out.A.block(oi, oj, di, dj).noalias() += block;
        if (j != i) {
          out.A.block(oj, oi, dj, di).noalias() += block.transpose();
        }
      }
    }
  }
}

// Solves (A + λI)δ = -g through a Jacobi rescaling of the damped system.
bool try_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& g,
               double lambda, Eigen::VectorXd& delta) {
  Eigen::VectorXd d = A.diagonal();
  d.array() += lambda;
  if (!(d.array() > 0.0).all()) return false;
  const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();

  Eigen::MatrixXd As = s.asDiagonal() * A * s.asDiagonal();
  As.diagonal() += lambda * s.cwiseProduct(s);

  // Each factor couples at most three variables, so the scaled system is
  // block sparse; a fill-reducing factorization keeps the per-iteration cost
  // near linear in the horizon length.
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(As.sparseView());
  if (llt.info() != Eigen::Success) return false;
  const Eigen::VectorXd rhs = -s.cwiseProduct(g);
  delta = s.cwiseProduct(Eigen::VectorXd(llt.solve(rhs)));
  return delta.allFinite();
}

Values retract_all(const Values& x, const Ordering& o,
                   const Eigen::VectorXd& delta) {
  Values out = x;
  for (std::size_t i = 0; i < o.keys.size(); ++i) {
    out.retract_in_place(o.keys[i], delta.segment(o.offsets[i], o.dims[i]));
  }
  return out;
}

}  // namespace

SolveResult solve_lm(const FactorGraph& graph, const Values& initial,
                     const SolverConfig& config) {
  if (graph.size() == 0) {
    throw std::invalid_argument("solve_lm: empty graph");
  }
  const Ordering ordering = Ordering::make(graph, initial);
  for (const Key k : initial.keys()) {
    // A value no factor touches would make the system singular by design.
    if (ordering.keys.end() ==
        std::find(ordering.keys.begin(), ordering.keys.end(), k)) {
      throw std::invalid_argument("solve_lm: unconstrained variable " +
                                  to_string(k));
    }
  }

  SolveResult result;
  result.values = initial;

  NormalEq eq;
  assemble(graph, result.values, ordering, eq);
  if (!std::isfinite(eq.cost)) {
    throw std::runtime_error("solve_lm: non-finite initial cost");
  }

  SolveStats& stats = result.stats;
  stats.initial_cost = eq.cost;
  stats.cost_history.push_back(eq.cost);

  double lambda = config.initial_lambda;
  double cost = eq.cost;
  bool stalled = false;

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    if (eq.g.lpNorm<Eigen::Infinity>() <= config.gradient_tol) {
      stats.converged = true;
      stats.reason = StopReason::kGradient;
      break;
    }

    // Inner loop: grow λ until a step reduces the cost.
    bool accepted = false;
    double new_cost = cost;
    while (true) {
      Eigen::VectorXd delta;
      if (try_solve(eq.A, eq.g, lambda, delta)) {
        const Values candidate = retract_all(result.values, ordering, delta);
        const double candidate_cost = graph.cost(candidate);
        if (std::isfinite(candidate_cost) && candidate_cost < cost) {
          result.values = candidate;
          new_cost = candidate_cost;
          accepted = true;
          break;
        }
      }
      lambda *= config.lambda_increase;
      if (lambda > config.max_lambda) break;
    }
    if (!accepted) {
      stalled = true;
      break;
    }

    stats.iterations += 1;
    stats.cost_history.push_back(new_cost);
    stats.lambda_history.push_back(lambda);
    lambda = std::max(lambda * config.lambda_decrease, config.min_lambda);

    const double decrease = cost - new_cost;
    cost = new_cost;
    if (decrease <= config.relative_cost_tol * std::max(cost, 1e-300)) {
      stats.converged = true;
      stats.reason = StopReason::kRelativeCost;
      break;
    }

    assemble(graph, result.values, ordering, eq);
  }

  if (stalled) {
    stats.reason = StopReason::kStalled;
  } else if (!stats.converged) {
    stats.reason = StopReason::kMaxIterations;
  }
  stats.final_cost = cost;
  return result;
}

}  // namespace jpcm::fgo
