#include "lapsewick/grid.hpp"

#include <cmath>

namespace lapsewick {

Grid::Grid(int d, int n_t, int n_x, double extent_t, double extent_x,
           std::size_t point_cap)
    : d_(d), n_t_(n_t), n_x_(n_x), extent_t_(extent_t), extent_x_(extent_x) {
  if (d < 1 || d > 3) throw std::invalid_argument("Grid: d must be in [1,3]");
  if (n_t < 4 || n_x < 4)
    throw std::invalid_argument("Grid: n_t, n_x must be >= 4");
  if (!(extent_t > 0.0) || !(extent_x > 0.0))
    throw std::invalid_argument("Grid: extents must be positive");
  h_t_ = extent_t_ / n_t_;
  h_x_ = extent_x_ / n_x_;
  size_ = static_cast<std::size_t>(n_t_);
  for (int a = 0; a < d_; ++a) size_ *= static_cast<std::size_t>(n_x_);
  if (size_ > point_cap)
    throw std::invalid_argument("Grid: point count " + std::to_string(size_) +
                                " exceeds cap " + std::to_string(point_cap));
}

double Grid::cell_volume() const {
  return h_t_ * std::pow(h_x_, d_);
}

std::size_t Grid::index(int it, const std::array<int, 3>& ix) const {
  auto wrap = [](int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
  };
  std::size_t idx = static_cast<std::size_t>(wrap(it, n_t_));
  for (int a = 0; a < d_; ++a)
    idx = idx * n_x_ + static_cast<std::size_t>(wrap(ix[a], n_x_));
  return idx;
}

std::size_t Grid::neighbor(std::size_t idx, int axis, int shift) const {
  int it;
  std::array<int, 3> ix;
  unpack(idx, it, ix);
  if (axis == 0)
    it += shift;
  else
    ix[axis - 1] += shift;
  return index(it, ix);
}

void Grid::unpack(std::size_t idx, int& it, std::array<int, 3>& ix) const {
  ix = {0, 0, 0};
  for (int a = d_ - 1; a >= 0; --a) {
    ix[a] = static_cast<int>(idx % n_x_);
    idx /= n_x_;
  }
  it = static_cast<int>(idx);
}

Point Grid::point(std::size_t idx) const {
  int it;
  std::array<int, 3> ix;
  unpack(idx, it, ix);
  Point p;
  p.t = it * h_t_;
  p.x = Vec(d_);
  for (int a = 0; a < d_; ++a) p.x[a] = ix[a] * h_x_;
  return p;
}

bool Grid::is_interior(std::size_t idx, int margin) const {
  int it;
  std::array<int, 3> ix;
  unpack(idx, it, ix);
  if (it < margin || it >= n_t_ - margin) return false;
  for (int a = 0; a < d_; ++a)
    if (ix[a] < margin || ix[a] >= n_x_ - margin) return false;
  return true;
}

bool Grid::operator==(const Grid& o) const {
  return d_ == o.d_ && n_t_ == o.n_t_ && n_x_ == o.n_x_ &&
         extent_t_ == o.extent_t_ && extent_x_ == o.extent_x_;
}

}  // namespace lapsewick
