#pragma once

#include <cstddef>
#include <vector>

namespace macdecay {

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

}  // namespace macdecay
