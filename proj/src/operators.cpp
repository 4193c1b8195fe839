#include "srgkit/operators.hpp"

#include <stdexcept>

namespace srgkit {

Operator Operator::matrix(Mat a) {
  if (!a.is_square() || a.rows() == 0) {
    throw std::invalid_argument("Operator::matrix: square matrix required");
  }
  const std::size_t n = a.rows();
  return Operator(n, "matrix", std::move(a));
}

Operator Operator::pointwise(std::size_t dim, std::string label, EvalFn fn) {
  if (dim == 0) throw std::invalid_argument("Operator::pointwise: dim 0");
  if (!fn) throw std::invalid_argument("Operator::pointwise: empty evaluator");
  return Operator(dim, std::move(label), std::move(fn));
}

Operator Operator::finite_graph(GraphPairs pairs) {
  if (pairs.empty()) {
    throw std::invalid_argument("Operator::finite_graph: no pairs");
  }
  const std::size_t n = pairs.front().first.size();
  for (const auto& [x, y] : pairs) {
    if (x.size() != n || y.size() != n) {
      throw std::invalid_argument(
          "Operator::finite_graph: inconsistent dimensions");
    }
  }
  return Operator(n, "graph", std::move(pairs));
}

Vec Operator::operator()(const Vec& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("Operator: dimension mismatch");
  }
  if (const Mat* m = std::get_if<Mat>(&impl_)) return m->apply(x);
  if (const EvalFn* f = std::get_if<EvalFn>(&impl_)) return (*f)(x);
  throw std::domain_error("Operator: a finite graph has no point evaluator");
}

bool Operator::has_matrix() const {
  return std::holds_alternative<Mat>(impl_);
}

const Mat& Operator::matrix_form() const {
  if (const Mat* m = std::get_if<Mat>(&impl_)) return *m;
  throw std::domain_error("Operator: no matrix form");
}

bool Operator::is_graph() const {
  return std::holds_alternative<GraphPairs>(impl_);
}

const Operator::GraphPairs& Operator::graph() const {
  if (const GraphPairs* g = std::get_if<GraphPairs>(&impl_)) return *g;
  throw std::domain_error("Operator: not a finite graph");
}

Operator Operator::inverse() const {
  if (has_matrix()) return matrix(matrix_form().inverse());
  if (is_graph()) {
    GraphPairs swapped;
    swapped.reserve(graph().size());
    for (const auto& [x, y] : graph()) swapped.emplace_back(y, x);
    return finite_graph(std::move(swapped));
  }
  throw std::domain_error("Operator: point evaluators cannot be inverted");
}

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

Operator op_add(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "op_add");
  if (a.has_matrix() && b.has_matrix()) {
    return Operator::matrix(a.matrix_form() + b.matrix_form());
  }
  const std::string label = a.label() + "+" + b.label();
  return Operator::pointwise(a.dim(), label,
                             [a, b](const Vec& x) { return a(x) + b(x); });
}

Operator op_compose(const Operator& outer, const Operator& inner) {
  require_same_dim(outer, inner, "op_compose");
  if (outer.has_matrix() && inner.has_matrix()) {
    return Operator::matrix(outer.matrix_form().multiply(inner.matrix_form()));
  }
  const std::string label = outer.label() + "*" + inner.label();
  return Operator::pointwise(
      outer.dim(), label,
      [outer, inner](const Vec& x) { return outer(inner(x)); });
}

Operator op_scale(double alpha, const Operator& a) {
  if (a.has_matrix()) return Operator::matrix(alpha * a.matrix_form());
  const std::string label = "scaled " + a.label();
  return Operator::pointwise(a.dim(), label,
                             [alpha, a](const Vec& x) { return alpha * a(x); });
}

}  // namespace srgkit
