#pragma once

#include <cstddef>
#include <vector>

#include "wptv/errors.hpp"

namespace wptv {

/// Dense m-by-n grid of doubles with unit spacing, stored row-major.
/// Convention throughout the library: i is the row index (first dimension),
/// j the column index. Grids are at least 2x2 so every stencil has one
/// interior relation.
class Field2D {
 public:
  Field2D(int rows, int cols, double value = 0.0);

  /// Takes ownership of row-major data. Rejects wrong sizes and
  /// non-finite entries.
  static Field2D from_data(int rows, int cols, std::vector<double> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double operator()(int i, int j) const { return data_[index(i, j)]; }
  double& operator()(int i, int j) { return data_[index(i, j)]; }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  bool same_shape(const Field2D& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_;
  int cols_;
  std::vector<double> data_;
};

/// Reads f at (i, j) through one layer of replicate ghost cells: an index one
/// step outside the grid is clamped back to the nearest edge (the discrete
/// zero-flux conditions w_{i,0} = w_{i,1}, w_{m+1,j} = w_{m,j}, ...).
/// Indices more than one cell outside are a contract violation.
double sample_with_neumann(const Field2D& f, int i, int j);

}  // namespace wptv
