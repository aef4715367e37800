#include "rllab/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>

#include "rllab/errors.hpp"

namespace rllab::ad {

namespace {

Tape& common_tape(Var a, Var b) {
  if (a.tape() == nullptr || a.tape() != b.tape()) throw GraphError("operands live on different tapes");
  return *a.tape();
}

Tape& tape_of(Var x) {
  if (x.tape() == nullptr) throw GraphError("Var is not attached to a tape");
  return *x.tape();
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  require(a.shape() == b.shape(), std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                                      shape_string(b.shape()));
}

void require_matrix(const Tensor& t, const char* op) {
  require(t.rank() == 2, std::string(op) + ": expected a rank-2 tensor, got shape " + shape_string(t.shape()));
}

template <typename F>
Tensor map(const Tensor& x, F f) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  return Tensor::unchecked(x.shape(), std::move(out));
}

template <typename F>
Tensor zip(const Tensor& a, const Tensor& b, F f) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return Tensor::unchecked(a.shape(), std::move(out));
}

template <typename F>
Var unary(Var x, OpKind kind, F f, double c0 = 0.0, double c1 = 0.0) {
  Tape& t = tape_of(x);
  return t.push(kind, map(x.value(), f), x.id(), 0, c0, c1, 1);
}

template <typename F>
Var binary(Var a, Var b, OpKind kind, F f) {
  Tape& t = common_tape(a, b);
  require_same_shape(a.value(), b.value(), op_name(kind));
  return t.push(kind, zip(a.value(), b.value(), f), a.id(), b.id(), 0.0, 0.0, 2);
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  require(b.rows() == k, "matmul: inner dimensions differ " + shape_string(a.shape()) + " x " + shape_string(b.shape()));
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double aij = a[i * k + j];
      for (std::size_t c = 0; c < n; ++c) out[i * n + c] += aij * b[j * n + c];
    }
  return Tensor::unchecked({m, n}, std::move(out));
}

Tensor add_row(const Tensor& x, const Tensor& row) {
  require_matrix(x, "add_row");
  require(row.size() == x.cols(), "add_row: row length " + std::to_string(row.size()) + " does not match " +
                                      std::to_string(x.cols()) + " columns");
  std::vector<double> out(x.size());
  const std::size_t cols = x.cols();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + row[i % cols];
  return Tensor::unchecked(x.shape(), std::move(out));
}

void tanh_inplace(Tensor& x) {
  for (double& v : x.data()) v = std::tanh(v);
}

Var matmul(Var a, Var b) {
  Tape& t = common_tape(a, b);
  return t.push(OpKind::kMatMul, matmul(a.value(), b.value()), a.id(), b.id(), 0.0, 0.0, 2);
}

Var add_row(Var x, Var row) {
  Tape& t = common_tape(x, row);
  return t.push(OpKind::kAddRow, add_row(x.value(), row.value()), x.id(), row.id(), 0.0, 0.0, 2);
}

Var broadcast_rows(Var row, std::size_t rows) {
  Tape& t = tape_of(row);
  const Tensor& r = row.value();
  const std::size_t cols = r.size();
  std::vector<double> out(rows * cols);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i % cols];
  return t.push(OpKind::kBroadcastRows, Tensor::unchecked({rows, cols}, std::move(out)), row.id());
}

Var add(Var a, Var b) { return binary(a, b, OpKind::kAdd, [](double u, double v) { return u + v; }); }
Var sub(Var a, Var b) { return binary(a, b, OpKind::kSub, [](double u, double v) { return u - v; }); }
Var mul(Var a, Var b) { return binary(a, b, OpKind::kMul, [](double u, double v) { return u * v; }); }
Var minimum(Var a, Var b) {
  return binary(a, b, OpKind::kMin, [](double u, double v) { return u <= v ? u : v; });
}

Var neg(Var x) { return unary(x, OpKind::kNeg, [](double v) { return -v; }); }
Var scale(Var x, double c) { return unary(x, OpKind::kScale, [c](double v) { return v * c; }, c); }
Var shift(Var x, double c) { return unary(x, OpKind::kShift, [c](double v) { return v + c; }, c); }
Var tanh(Var x) { return unary(x, OpKind::kTanh, [](double v) { return std::tanh(v); }); }
Var exp(Var x) { return unary(x, OpKind::kExp, [](double v) { return std::exp(v); }); }
Var log(Var x) { return unary(x, OpKind::kLog, [](double v) { return std::log(v); }); }
Var sqrt(Var x) { return unary(x, OpKind::kSqrt, [](double v) { return std::sqrt(v); }); }
Var square(Var x) { return unary(x, OpKind::kSquare, [](double v) { return v * v; }); }
Var relu(Var x) { return unary(x, OpKind::kRelu, [](double v) { return v > 0.0 ? v : 0.0; }); }

Var clamp(Var x, double lo, double hi) {
  require(!(hi < lo), "clamp: upper bound below lower bound");
  return unary(x, OpKind::kClamp, [lo, hi](double v) { return std::clamp(v, lo, hi); }, lo, hi);
}

Var less_than(Var x, double c) {
  return unary(x, OpKind::kStep, [c](double v) { return v < c ? 1.0 : 0.0; }, c);
}

Var sum(Var x) {
  Tape& t = tape_of(x);
  double acc = 0.0;
  for (double v : x.value().data()) acc += v;
  return t.push(OpKind::kSum, Tensor::unchecked({}, {acc}), x.id());
}

Var mean(Var x) {
  Tape& t = tape_of(x);
  const Tensor& v = x.value();
  require(v.size() > 0, "mean of an empty tensor");
  double acc = 0.0;
  for (double e : v.data()) acc += e;
  return t.push(OpKind::kMean, Tensor::unchecked({}, {acc / static_cast<double>(v.size())}), x.id());
}

Var sum_cols(Var x) {
  Tape& t = tape_of(x);
  const Tensor& v = x.value();
  require_matrix(v, "sum_cols");
  const std::size_t rows = v.rows(), cols = v.cols();
  std::vector<double> out(rows, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i / cols] += v[i];
  return t.push(OpKind::kSumCols, Tensor::unchecked({rows, 1}, std::move(out)), x.id());
}

Var row_norm(Var x) {
  Tape& t = tape_of(x);
  const Tensor& v = x.value();
  require_matrix(v, "row_norm");
  const std::size_t rows = v.rows(), cols = v.cols();
  std::vector<double> out(rows, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i / cols] += v[i] * v[i];
  for (double& r : out) r = std::sqrt(r);
  return t.push(OpKind::kRowNorm, Tensor::unchecked({rows, 1}, std::move(out)), x.id());
}

}  // namespace rllab::ad
