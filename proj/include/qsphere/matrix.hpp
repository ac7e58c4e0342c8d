#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsphere/errors.hpp"

namespace qsphere {

// Dense row-major matrix over a possibly noncommutative ring. Products keep
// the factor order (A*B)_ij = sum_k A_ik B_kj.
template <class T>
class Matrix {
 public:
  using Scalar = T;

  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
    if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix column(int k) const {
    Matrix out(rows_, 1);
    for (int i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, k);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DomainError("matrix product shape mismatch " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                        " * " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        if constexpr (requires { typename T::Accumulator; }) {
          typename T::Accumulator acc;
          for (int k = 0; k < a.cols_; ++k) acc.add_product(a(i, k), b(k, j));
          out(i, j) = acc.result();
        } else {
          T& acc = out(i, j);
          for (int k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        }
      }
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw DomainError("matrix index out of range");
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Column bullet product: (v . w)_{i*len(w)+j} = v_i w_j for column vectors.
template <class T>
Matrix<T> bullet(const Matrix<T>& v, const Matrix<T>& w) {
  if (v.cols() != 1 || w.cols() != 1) throw DomainError("bullet product expects column vectors");
  Matrix<T> out(v.rows() * w.rows(), 1);
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < w.rows(); ++j) out(i * w.rows() + j, 0) = v(i, 0) * w(j, 0);
  return out;
}

}  // namespace qsphere
