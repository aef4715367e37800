#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rllab/autodiff/tensor.hpp"

namespace rllab::ad {

enum class OpKind : std::uint8_t {
  kConstant,
  kParameter,
  kMatMul,        // (m,k) x (k,n)
  kAddRow,        // (m,n) + (1,n) broadcast over rows
  kBroadcastRows, // (1,n) -> (rows,n)
  kAdd,
  kSub,
  kMul,
  kNeg,
  kScale,         // x * c
  kShift,         // x + c
  kTanh,
  kExp,
  kLog,
  kSqrt,          // derivative taken as 0 where the input is exactly 0
  kSquare,
  kRelu,
  kMin,           // elementwise minimum of two tensors
  kClamp,         // elementwise clamp to constant [lo, hi]
  kSum,           // all elements -> scalar
  kMean,          // all elements -> scalar
  kSumCols,       // (m,n) -> (m,1)
  kRowNorm,       // (m,n) -> (m,1) Euclidean norm; zero rows get zero gradient
  kStep,          // 1[x < c], no gradient
};

const char* op_name(OpKind kind);

class Tape;

// Handle to a node on a Tape. Cheap to copy; only valid while the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape() const { return tape_; }
  std::size_t id() const { return id_; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Append-only record of a computation. Node ids are assigned in creation
// order, so inputs always precede their consumers and a single reverse sweep
// visits every node once.
class Tape {
 public:
  struct Node {
    OpKind kind;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    double c0 = 0.0;
    double c1 = 0.0;
    int arity = 0;
    bool requires_grad = false;
    Tensor value;
  };

  Var constant(Tensor value);
  Var parameter(Tensor value);

  // Appends a node; used by the op functions in ops.hpp.
  Var push(OpKind kind, Tensor value, std::size_t lhs, std::size_t rhs = 0, double c0 = 0.0,
           double c1 = 0.0, int arity = 1);

  // Reverse sweep from a single-element output. Runs at most once per tape
  // until reset().
  void backward(Var output);

  const Tensor& value(Var v) const;
  const Tensor& gradient(Var v) const;
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  bool backward_done() const { return backward_done_; }
  void reset();

  // Number of nodes whose adjoint was accumulated in the last backward pass.
  std::size_t visited_count() const { return visited_; }

 private:
  void check_owned(Var v) const;
  void propagate(std::size_t id);

  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
  bool backward_done_ = false;
  std::size_t visited_ = 0;
};

// Gradient of a scalar-valued function at the given points. `f` receives the
// tape and one parameter Var per input tensor.
using ScalarFunction = std::function<Var(Tape&, std::span<const Var>)>;
std::vector<Tensor> grad(const ScalarFunction& f, std::span<const Tensor> at);

}  // namespace rllab::ad
