#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "anw/error.hpp"

namespace anw {

using cplx = std::complex<double>;

/// Dense row-major matrix. Sizes in this project stay in the low thousands,
/// so a flat std::vector is all the storage we need.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  std::span<const T> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;

inline void require_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2,
                               const char* what) {
  if (r1 != r2 || c1 != c2) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(r1) + "x" +
                          std::to_string(c1) + " vs " + std::to_string(r2) + "x" +
                          std::to_string(c2) + ")");
  }
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <typename T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const T& v : a.values()) m = std::max(m, static_cast<double>(std::abs(v)));
  return m;
}

/// Max-norm of the entrywise difference.
template <typename A, typename B>
double max_abs_diff(const Matrix<A>& a, const Matrix<B>& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, static_cast<double>(std::abs(a(i, j) - b(i, j))));
  return m;
}

/// Largest |a(i,j) - a(j,i)|.
template <typename T>
double asymmetry(const Matrix<T>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      m = std::max(m, static_cast<double>(std::abs(a(i, j) - a(j, i))));
  return m;
}

template <typename T, typename U>
auto hadamard(const Matrix<T>& a, const Matrix<U>& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "hadamard");
  using R = decltype(T{} * U{});
  Matrix<R> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * b(i, j);
  return out;
}

template <typename T, typename S>
Matrix<T> scaled(Matrix<T> a, S factor) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto& v : a.row(i)) v *= factor;
  return a;
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

}  // namespace anw
