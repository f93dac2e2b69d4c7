#include "wptv/field2d.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace wptv {

Field2D::Field2D(int rows, int cols, double value)
    : rows_(rows), cols_(cols) {
  if (rows < 2 || cols < 2) {
    throw ContractError("Field2D: need at least 2x2, got " +
                        std::to_string(rows) + "x" + std::to_string(cols));
  }
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               value);
}

Field2D Field2D::from_data(int rows, int cols, std::vector<double> data) {
  Field2D f(rows, cols);
  if (data.size() != f.size()) {
    throw ContractError("Field2D::from_data: size mismatch");
  }
  f.data_ = std::move(data);
  if (!f.all_finite()) {
    throw ContractError("Field2D::from_data: non-finite value");
  }
  return f;
}

bool Field2D::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double sample_with_neumann(const Field2D& f, int i, int j) {
  if (i < -1 || i > f.rows() || j < -1 || j > f.cols()) {
    throw ContractError("sample_with_neumann: index (" + std::to_string(i) +
                        ", " + std::to_string(j) +
                        ") is beyond the one-cell ghost layer of a " +
                        std::to_string(f.rows()) + "x" +
                        std::to_string(f.cols()) + " field");
  }
  const int ci = i < 0 ? 0 : (i >= f.rows() ? f.rows() - 1 : i);
  const int cj = j < 0 ? 0 : (j >= f.cols() ? f.cols() - 1 : j);
  return f(ci, cj);
}

}  // namespace wptv
