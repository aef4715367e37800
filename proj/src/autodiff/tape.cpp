#include "rllab/autodiff/tape.hpp"

#include <cmath>

#include "rllab/errors.hpp"

namespace rllab::ad {

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kConstant: return "constant";
    case OpKind::kParameter: return "parameter";
    case OpKind::kMatMul: return "matmul";
    case OpKind::kAddRow: return "add_row";
    case OpKind::kBroadcastRows: return "broadcast_rows";
    case OpKind::kAdd: return "add";
    case OpKind::kSub: return "sub";
    case OpKind::kMul: return "mul";
    case OpKind::kNeg: return "neg";
    case OpKind::kScale: return "scale";
    case OpKind::kShift: return "shift";
    case OpKind::kTanh: return "tanh";
    case OpKind::kExp: return "exp";
    case OpKind::kLog: return "log";
    case OpKind::kSqrt: return "sqrt";
    case OpKind::kSquare: return "square";
    case OpKind::kRelu: return "relu";
    case OpKind::kMin: return "min";
    case OpKind::kClamp: return "clamp";
    case OpKind::kSum: return "sum";
    case OpKind::kMean: return "mean";
    case OpKind::kSumCols: return "sum_cols";
    case OpKind::kRowNorm: return "row_norm";
    case OpKind::kStep: return "step";
  }
  return "unknown";
}

const Tensor& Var::value() const {
  if (tape_ == nullptr) throw GraphError("Var is not attached to a tape");
  return tape_->value(*this);
}

Var Tape::constant(Tensor value) {
  nodes_.push_back(Node{OpKind::kConstant, 0, 0, 0.0, 0.0, 0, false, std::move(value)});
  return Var(this, nodes_.size() - 1);
}

Var Tape::parameter(Tensor value) {
  nodes_.push_back(Node{OpKind::kParameter, 0, 0, 0.0, 0.0, 0, true, std::move(value)});
  return Var(this, nodes_.size() - 1);
}

Var Tape::push(OpKind kind, Tensor value, std::size_t lhs, std::size_t rhs, double c0, double c1, int arity) {
  if (kind == OpKind::kConstant || kind == OpKind::kParameter || static_cast<int>(kind) > static_cast<int>(OpKind::kStep))
    throw GraphError(std::string("cannot record op kind '") + op_name(kind) + "' as an interior node");
  if (lhs >= nodes_.size() || (arity == 2 && rhs >= nodes_.size()))
    throw GraphError("op input refers to a node that does not exist yet");
  bool needs = nodes_[lhs].requires_grad || (arity == 2 && nodes_[rhs].requires_grad);
  if (kind == OpKind::kStep) needs = false;
  nodes_.push_back(Node{kind, lhs, rhs, c0, c1, arity, needs, std::move(value)});
  return Var(this, nodes_.size() - 1);
}

void Tape::check_owned(Var v) const {
  if (v.tape() != this) throw GraphError("Var belongs to a different tape");
  if (v.id() >= nodes_.size()) throw GraphError("Var id out of range");
}

const Tensor& Tape::value(Var v) const {
  check_owned(v);
  return nodes_[v.id()].value;
}

const Tensor& Tape::gradient(Var v) const {
  check_owned(v);
  if (!backward_done_) throw GraphError("gradient requested before backward()");
  return grads_[v.id()];
}

void Tape::reset() {
  nodes_.clear();
  grads_.clear();
  backward_done_ = false;
  visited_ = 0;
}

void Tape::backward(Var output) {
  check_owned(output);
  if (backward_done_) throw GraphError("backward() already ran on this tape; reset() before reuse");
  const Tensor& out = nodes_[output.id()].value;
  require(out.size() == 1, "backward() needs a scalar output, got shape " + shape_string(out.shape()));

  grads_.assign(nodes_.size(), Tensor());
  grads_[output.id()] = Tensor::unchecked(out.shape(), {1.0});
  visited_ = 0;
  for (std::size_t id = output.id() + 1; id-- > 0;) {
    if (grads_[id].size() == 0) continue;
    ++visited_;
    propagate(id);
  }
  // Leaves that were never reached still get a zero adjoint of the right shape.
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (grads_[id].size() == 0) grads_[id] = Tensor::unchecked(nodes_[id].value.shape(),
                                                               std::vector<double>(nodes_[id].value.size(), 0.0));
  }
  backward_done_ = true;
}

namespace {

Tensor& slot(std::vector<Tensor>& grads, const std::vector<Tape::Node>& nodes, std::size_t id) {
  if (grads[id].size() == 0)
    grads[id] = Tensor::unchecked(nodes[id].value.shape(), std::vector<double>(nodes[id].value.size(), 0.0));
  return grads[id];
}

}  // namespace

void Tape::propagate(std::size_t id) {
  const Node& n = nodes_[id];
  if (!n.requires_grad) return;
  const Tensor& g = grads_[id];
  const Tensor& y = n.value;
  const bool lhs_grad = n.arity >= 1 && nodes_[n.lhs].requires_grad;
  const bool rhs_grad = n.arity == 2 && nodes_[n.rhs].requires_grad;
  Tensor unused;
  Tensor& dx = lhs_grad ? slot(grads_, nodes_, n.lhs) : unused;
  const Tensor& x = nodes_[n.lhs].value;
  const std::size_t len = g.size();

  switch (n.kind) {
    case OpKind::kConstant:
    case OpKind::kParameter:
    case OpKind::kStep:
      return;
    case OpKind::kMatMul: {
      const Tensor& b = nodes_[n.rhs].value;
      const std::size_t m = x.rows(), k = x.cols(), p = b.cols();
      if (lhs_grad) {
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t c = 0; c < p; ++c) acc += g[i * p + c] * b[j * p + c];
            dx[i * k + j] += acc;
          }
      }
      if (rhs_grad) {
        Tensor& db = slot(grads_, nodes_, n.rhs);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < k; ++j) {
            const double a = x[i * k + j];
            for (std::size_t c = 0; c < p; ++c) db[j * p + c] += a * g[i * p + c];
          }
      }
      return;
    }
    case OpKind::kAddRow: {
      if (lhs_grad)
        for (std::size_t i = 0; i < len; ++i) dx[i] += g[i];
      if (rhs_grad) {
        Tensor& db = slot(grads_, nodes_, n.rhs);
        const std::size_t cols = db.size();
        for (std::size_t i = 0; i < len; ++i) db[i % cols] += g[i];
      }
      return;
    }
    case OpKind::kBroadcastRows: {
      const std::size_t cols = x.size();
      for (std::size_t i = 0; i < len; ++i) dx[i % cols] += g[i];
      return;
    }
    case OpKind::kAdd:
    case OpKind::kSub: {
      if (lhs_grad)
        for (std::size_t i = 0; i < len; ++i) dx[i] += g[i];
      if (rhs_grad) {
        Tensor& db = slot(grads_, nodes_, n.rhs);
        const double sign = n.kind == OpKind::kAdd ? 1.0 : -1.0;
        for (std::size_t i = 0; i < len; ++i) db[i] += sign * g[i];
      }
      return;
    }
    case OpKind::kMul: {
      const Tensor& b = nodes_[n.rhs].value;
      if (lhs_grad)
        for (std::size_t i = 0; i < len; ++i) dx[i] += g[i] * b[i];
      if (rhs_grad) {
        Tensor& db = slot(grads_, nodes_, n.rhs);
        for (std::size_t i = 0; i < len; ++i) db[i] += g[i] * x[i];
      }
      return;
    }
    case OpKind::kNeg:
      for (std::size_t i = 0; i < len; ++i) dx[i] -= g[i];
      return;
    case OpKind::kScale:
      for (std::size_t i = 0; i < len; ++i) dx[i] += g[i] * n.c0;
      return;
    case OpKind::kShift:
      for (std::size_t i = 0; i < len; ++i) dx[i] += g[i];
      return;
    case OpKind::kTanh:
      for (std::size_t i = 0; i < len; ++i) dx[i] += g[i] * (1.0 - y[i] * y[i]);
      return;
    case OpKind::kExp:
      for (std::size_t i = 0; i < len; ++i) dx[i] += g[i] * y[i];
      return;
    case OpKind::kLog:
      for (std::size_t i = 0; i < len; ++i) dx[i] += g[i] / x[i];
      return;
    case OpKind::kSqrt:
      for (std::size_t i = 0; i < len; ++i)
        if (x[i] != 0.0) dx[i] += g[i] / (2.0 * y[i]);
      return;
    case OpKind::kSquare:
      for (std::size_t i = 0; i < len; ++i) dx[i] += 2.0 * x[i] * g[i];
      return;
    case OpKind::kRelu:
      for (std::size_t i = 0; i < len; ++i)
        if (x[i] > 0.0) dx[i] += g[i];
      return;
    case OpKind::kMin: {
      const Tensor& b = nodes_[n.rhs].value;
      Tensor* db = rhs_grad ? &slot(grads_, nodes_, n.rhs) : nullptr;
      for (std::size_t i = 0; i < len; ++i) {
        if (x[i] <= b[i]) {
          if (lhs_grad) dx[i] += g[i];
        } else if (db != nullptr) {
          (*db)[i] += g[i];
        }
      }
      return;
    }
    case OpKind::kClamp:
      for (std::size_t i = 0; i < len; ++i)
        if (x[i] >= n.c0 && x[i] <= n.c1) dx[i] += g[i];
      return;
    case OpKind::kSum:
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] += g[0];
      return;
    case OpKind::kMean: {
      const double w = g[0] / static_cast<double>(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] += w;
      return;
    }
    case OpKind::kSumCols: {
      const std::size_t cols = x.cols();
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] += g[i / cols];
      return;
    }
    case OpKind::kRowNorm: {
      const std::size_t cols = x.cols();
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i / cols];
        if (r > 0.0) dx[i] += g[i / cols] * x[i] / r;
      }
      return;
    }
  }
  throw GraphError(std::string("no backward rule registered for op '") + op_name(n.kind) + "'");
}

std::vector<Tensor> grad(const ScalarFunction& f, std::span<const Tensor> at) {
  Tape tape;
  std::vector<Var> inputs;
  inputs.reserve(at.size());
  for (const Tensor& t : at) {
    require(t.all_finite(), "grad(): inputs must be finite");
    inputs.push_back(tape.parameter(t));
  }
  Var out = f(tape, inputs);
  tape.backward(out);
  std::vector<Tensor> result;
  result.reserve(inputs.size());
  for (Var v : inputs) result.push_back(tape.gradient(v));
  return result;
}

}  // namespace rllab::ad
