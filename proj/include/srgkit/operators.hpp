#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srgkit/vec.hpp"

namespace srgkit {

/// An operator on R^n given as a matrix, a point evaluator, or a finite
/// list of (input, output) pairs (possibly multivalued).
class Operator {
 public:
  using EvalFn = std::function<Vec(const Vec&)>;
  using GraphPairs = std::vector<std::pair<Vec, Vec>>;

  static Operator matrix(Mat a);
  static Operator pointwise(std::size_t dim, std::string label, EvalFn fn);
  static Operator finite_graph(GraphPairs pairs);

  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }

  /// Evaluates at a point; finite graphs are not evaluatable this way.
  Vec operator()(const Vec& x) const;

  bool has_matrix() const;
  const Mat& matrix_form() const;
  bool is_graph() const;
  const GraphPairs& graph() const;

  /// Inverse relation: explicit inverse for matrices, swapped pairs for
  /// finite graphs. Plain point evaluators cannot be inverted.
  Operator inverse() const;

 private:
  Operator(std::size_t dim, std::string label,
           std::variant<Mat, EvalFn, GraphPairs> impl)
      : dim_(dim), label_(std::move(label)), impl_(std::move(impl)) {}

  std::size_t dim_;
  std::string label_;
  std::variant<Mat, EvalFn, GraphPairs> impl_;
};

Operator op_add(const Operator& a, const Operator& b);
Operator op_compose(const Operator& outer, const Operator& inner);
Operator op_scale(double alpha, const Operator& a);

}  // namespace srgkit
