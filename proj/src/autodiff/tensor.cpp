#include "rllab/autodiff/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "rllab/errors.hpp"

namespace rllab::ad {

std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string shape_string(const Shape& shape) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ", ";
    out << shape[i];
  }
  out << ')';
  return out.str();
}

Tensor::Tensor(Shape shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
  require(shape_size(shape_) == data_.size(),
          "tensor data length " + std::to_string(data_.size()) + " does not match shape " + shape_string(shape_));
  require(all_finite(), "tensor data contains NaN or Inf");
}

Tensor Tensor::zeros(Shape shape) { return filled(std::move(shape), 0.0); }

Tensor Tensor::filled(Shape shape, double value) {
  const std::size_t n = shape_size(shape);
  return Tensor(std::move(shape), std::vector<double>(n, value));
}

Tensor Tensor::scalar(double value) { return Tensor({}, {value}); }

Tensor Tensor::row(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({1, n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

Tensor Tensor::unchecked(Shape shape, std::vector<double> data) {
  Tensor t;
  t.shape_ = std::move(shape);
  t.data_ = std::move(data);
  return t;
}

std::size_t Tensor::rows() const {
  if (rank() < 2) return 1;
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (rank() == 0) return 1;
  if (rank() == 1) return shape_[0];
  return shape_[1];
}

double Tensor::item() const {
  require(data_.size() == 1, "item() needs a single-element tensor, got shape " + shape_string(shape_));
  return data_[0];
}

bool Tensor::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace rllab::ad
