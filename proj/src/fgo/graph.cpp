#include "jpcm/fgo/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace jpcm::fgo {

void FactorGraph::add(FactorPtr f) {
  if (!f) throw std::invalid_argument("FactorGraph: null factor");
  if (f->keys().empty()) {
    throw std::invalid_argument("FactorGraph: factor with no keys");
  }
  factors_.push_back(std::move(f));
}

std::vector<Key> FactorGraph::variable_keys() const {
  std::vector<Key> keys;
  for (const auto& f : factors_) {
    keys.insert(keys.end(), f->keys().begin(), f->keys().end());
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

double FactorGraph::cost(const Values& v) const {
  double c = 0.0;
  for (const auto& f : factors_) c += f->cost(v);
  return c;
}

int Ordering::slot_of(Key k) const {
  const auto it = std::lower_bound(keys.begin(), keys.end(), k);
  if (it == keys.end() || !(*it == k)) {
    throw std::invalid_argument("Ordering: unknown key " + to_string(k));
  }
  return static_cast<int>(it - keys.begin());
}

Ordering Ordering::make(const FactorGraph& graph, const Values& values) {
  Ordering o;
  o.keys = graph.variable_keys();
  o.offsets.reserve(o.keys.size());
  o.dims.reserve(o.keys.size());
  for (const Key k : o.keys) {
    const int d = values.tangent_dim(k);  // throws if the key is missing
    o.offsets.push_back(o.total_dim);
    o.dims.push_back(d);
    o.total_dim += d;
  }
  return o;
}

Linearization linearize(const FactorGraph& graph, const Values& values) {
  Linearization lin;
  lin.ordering = Ordering::make(graph, values);

  int rows = 0;
  for (const auto& f : graph.factors()) rows += f->dim();
  lin.jacobian.setZero(rows, lin.ordering.total_dim);
  lin.residual.resize(rows);

  int row = 0;
  for (const auto& f : graph.factors()) {
    const Eigen::VectorXd r = f->error(values);
    if (r.size() != f->dim()) {
      throw std::runtime_error("linearize: residual dimension mismatch");
    }
    const std::vector<Eigen::MatrixXd> js = f->jacobians(values);
    if (js.size() != f->keys().size()) {
      throw std::runtime_error("linearize: jacobian block count mismatch");
    }
    lin.residual.segment(row, f->dim()) = f->noise().whiten(r);
    for (std::size_t i = 0; i < js.size(); ++i) {
      const Key k = f->keys()[i];
      const int dim = values.tangent_dim(k);
      if (js[i].rows() != f->dim() || js[i].cols() != dim) {
        throw std::runtime_error("linearize: jacobian shape mismatch at " +
                                 to_string(k));
      }
      lin.jacobian.block(row, lin.ordering.offset_of(k), f->dim(), dim) =
          f->noise().whiten_jacobian(js[i]);
    }
    row += f->dim();
  }
  lin.cost = 0.5 * lin.residual.squaredNorm();
  return lin;
}

}  // namespace jpcm::fgo
