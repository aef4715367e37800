#pragma once

#include "rllab/autodiff/tape.hpp"
#include "rllab/autodiff/tensor.hpp"

namespace rllab::ad {

// Plain (tape-free) kernels shared by the recorded ops and by inference
// paths, so both produce bitwise-identical results.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor add_row(const Tensor& x, const Tensor& row);
void tanh_inplace(Tensor& x);

Var matmul(Var a, Var b);
Var add_row(Var x, Var row);
Var broadcast_rows(Var row, std::size_t rows);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var neg(Var x);
Var scale(Var x, double c);
Var shift(Var x, double c);
Var tanh(Var x);
Var exp(Var x);
Var log(Var x);
Var sqrt(Var x);
Var square(Var x);
Var relu(Var x);
Var minimum(Var a, Var b);
Var clamp(Var x, double lo, double hi);
Var sum(Var x);
Var mean(Var x);
Var sum_cols(Var x);
Var row_norm(Var x);
Var less_than(Var x, double c);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator*(Var a, Var b) { return mul(a, b); }
inline Var operator-(Var x) { return neg(x); }
inline Var operator*(Var x, double c) { return scale(x, c); }
inline Var operator*(double c, Var x) { return scale(x, c); }
inline Var operator+(Var x, double c) { return shift(x, c); }
inline Var operator+(double c, Var x) { return shift(x, c); }
inline Var operator-(Var x, double c) { return shift(x, -c); }
inline Var operator-(double c, Var x) { return shift(neg(x), c); }

}  // namespace rllab::ad
