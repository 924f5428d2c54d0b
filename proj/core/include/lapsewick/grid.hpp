#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lapsewick {

using cplx = std::complex<double>;

/// Small dynamic-size vectors/matrices capped at spatial dimension 3
/// (no heap allocation).
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, 3, 1>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// (1+d) x (1+d) spacetime matrices.
using StMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using StVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, 4, 1>;
using StVecR = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

struct Point {
  double t = 0.0;
  Vec x;
};

/// Uniform periodic grid on [0, extent_t) x [0, extent_x)^d.
/// Axis 0 is time, axes 1..d are spatial.
class Grid {
public:
  Grid(int d, int n_t, int n_x, double extent_t, double extent_x,
       std::size_t point_cap = 20000);

  int dim() const { return d_; }
  int nt() const { return n_t_; }
  int nx() const { return n_x_; }
  double extent_t() const { return extent_t_; }
  double extent_x() const { return extent_x_; }
  double ht() const { return h_t_; }
  double hx() const { return h_x_; }
  double spacing(int axis) const { return axis == 0 ? h_t_ : h_x_; }
  std::size_t size() const { return size_; }
  /// Cell measure h_t * h_x^d.
  double cell_volume() const;

  std::size_t index(int it, const std::array<int, 3>& ix) const;
  /// Index of the neighbor `shift` steps along `axis` (periodic wrap).
  std::size_t neighbor(std::size_t idx, int axis, int shift) const;
  /// Decompose flat index into (it, ix).
  void unpack(std::size_t idx, int& it, std::array<int, 3>& ix) const;
  Point point(std::size_t idx) const;
  /// True if the point is at least `margin` cells away from the wrap seam
  /// on every axis.
  bool is_interior(std::size_t idx, int margin) const;

  bool operator==(const Grid& o) const;

private:
  int d_, n_t_, n_x_;
  double extent_t_, extent_x_, h_t_, h_x_;
  std::size_t size_;
};

}  // namespace lapsewick
