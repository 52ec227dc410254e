#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chronosparse/array.hpp"

namespace csp::autodiff {

using NodeId = std::size_t;

// The closed operator set. Every reference model compiles to these; there is
// deliberately no general broadcasting or reshape machinery.
enum class Op {
  constant,
  matmul,            // (m,k)x(k,n) or batched (B,m,k)x(k,n)
  add,               // broadcast over leading axes
  mul,               // elementwise, same shape
  relu,
  sigmoid,
  embed,             // table lookup by integer ids
  masked_mean_pool,  // mean over the sequence axis, mask-true positions only
  masked_mse_loss,
  masked_mae_loss,
};

struct Node {
  Op op = Op::constant;
  std::vector<NodeId> inputs;
  Array value;
  Array grad;  // allocated during backward
  bool needs_grad = false;
  Mask mask;                      // pool / loss payload
  std::vector<std::int32_t> ids;  // embed payload
};

// One tape records one forward pass and is freed afterwards. Gradients
// accumulate additively across fan-out; a tape is single-threaded for its
// lifetime.
class Tape {
 public:
  NodeId constant(Array value);
  // A differentiable leaf (parameter values enter the graph here).
  NodeId leaf(Array value);

  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);
  NodeId relu(NodeId x);
  NodeId sigmoid(NodeId x);
  // ids.size() must equal rows*cols; output is (rows, cols, d) for rows > 1,
  // else (cols, d).
  NodeId embed(NodeId table, std::vector<std::int32_t> ids, std::size_t rows,
               std::size_t cols);
  // x: (B,N,d) with mask (B,N) -> (B,d); or (N,d) with mask (N) -> (d).
  // Rows with no mask-true position yield zeros (max(1,n) guard).
  NodeId masked_mean_pool(NodeId x, Mask mask);
  // sum over mask of (p-t)^2 (resp. |p-t|) / max(1, n_mask); scalar output.
  NodeId masked_mse_loss(NodeId pred, NodeId truth, Mask mask);
  NodeId masked_mae_loss(NodeId pred, NodeId truth, Mask mask);

  // Generic dispatch for the payload-free operators.
  NodeId apply(Op op, const std::vector<NodeId>& inputs);

  // Reverse sweep from a scalar loss. Mask-excluded positions receive
  // exactly zero gradient.
  void backward(NodeId loss);

  const Array& value(NodeId id) const { return nodes_[id].value; }
  const Array& grad(NodeId id) const { return nodes_[id].grad; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  NodeId push(Node node);
  std::vector<Node> nodes_;
};

struct Parameter {
  std::string name;
  Array value;
  Array grad;  // same shape, zeroed at step start
};

// Insertion-ordered, unique names ("model.submodule.tensor").
class ParameterSet {
 public:
  Parameter& add(std::string name, Array value);
  bool contains(std::string_view name) const;
  Parameter& at(std::string_view name);
  const Parameter& at(std::string_view name) const;
  std::vector<Parameter>& items() { return items_; }
  const std::vector<Parameter>& items() const { return items_; }
  std::size_t count() const { return items_.size(); }
  std::size_t total_elements() const;
  void zero_grads();

 private:
  std::vector<Parameter> items_;
};

// Leafs every parameter onto a tape (in set order) so a model forward can
// reference them by name; harvest() adds the tape gradients back into the
// parameter grad buffers.
class ParameterBinding {
 public:
  ParameterBinding(Tape& tape, const ParameterSet& params);
  NodeId id(std::string_view name) const;
  void harvest(const Tape& tape, ParameterSet& params) const;

 private:
  std::vector<std::pair<std::string, NodeId>> ids_;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double tolerance = 0.0;
  bool passed = false;
};

// Central-difference check: loss_and_grad must run a fresh forward+backward
// for the current parameter values, leave the analytic gradients in the
// parameter grad buffers, and return the loss. Numeric side perturbs each
// element by +-h; relative error is |a-n| / max(1e-8, |a|+|n|).
GradCheckReport grad_check(ParameterSet& params,
                           const std::function<double(ParameterSet&)>& loss_and_grad,
                           double tolerance, double h = 1e-5);

}  // namespace csp::autodiff
