#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lapsewick/grid.hpp"

namespace lapsewick {

/// 1+d block decomposition of a Jacobian matrix dy'/dy (or its inverse).
struct JacobianBlocks {
  double dt_dt = 1.0;  ///< dt'/dt
  Vec dt_dx;           ///< dt'/dx^a
  Vec dx_dt;           ///< dx'^a/dt
  Mat dx_dx;           ///< dx'^a/dx^b (row a, column b)

  static JacobianBlocks identity(int d);
  /// Assembled (1+d) x (1+d) matrix, time row/column first.
  Eigen::MatrixXd full() const;
  int dim() const { return static_cast<int>(dt_dx.size()); }
};

/// Foliation-changing diffeomorphism given by closed-form forward maps,
/// with analytic or central-difference block Jacobians.
class DiffeoMap {
public:
  using TimeMap = std::function<double(double, const Vec&)>;
  using SpaceMap = std::function<Vec(double, const Vec&)>;
  using JacFn = std::function<JacobianBlocks(double, const Vec&)>;

  DiffeoMap() = default;
  DiffeoMap(int d, TimeMap t, SpaceMap x, JacFn jac = nullptr);

  int dim() const { return d_; }
  Point map(const Point& p) const;
  bool analytic_jacobian() const { return static_cast<bool>(jac_); }

  /// Forward Jacobian blocks at p; finite-difference mode uses central
  /// differences of step `fd_step`. Throws on non-finite derivatives.
  JacobianBlocks jacobian(const Point& p) const;

  double fd_step() const { return fd_step_; }
  void set_fd_step(double h) { fd_step_ = h; }

  bool has_inverse() const { return static_cast<bool>(inverse_); }
  const DiffeoMap& inverse() const;
  void set_inverse(DiffeoMap inv);

private:
  int d_ = 1;
  TimeMap tmap_;
  SpaceMap xmap_;
  JacFn jac_;
  double fd_step_ = 1e-5;
  std::shared_ptr<DiffeoMap> inverse_;
};

/// Inverse blocks dy/dy' from forward blocks dy'/dy, via the block
/// Sherman-Morrison route. Throws std::domain_error when dt'/dt vanishes,
/// the spatial block is singular, or the rank-one denominator vanishes.
JacobianBlocks invert_jacobian_blocks(const JacobianBlocks& b);

/// Blockwise composition second after first; analytic Jacobians compose by
/// the block chain rule when both factors carry them.
DiffeoMap compose_diffeos(const DiffeoMap& first, const DiffeoMap& second);

// ---- catalog -------------------------------------------------------------

DiffeoMap identity_map(int d);
/// t' = f(t), x' = x.  finv and fprime are required for inverse/analytic use.
DiffeoMap time_reparam_map(int d, std::function<double(double)> f,
                           std::function<double(double)> fprime,
                           std::function<double(double)> finv);
/// Lorentz-type boost mixing t with x^1: t' = gamma (t - v x1),
/// x1' = gamma (x1 - v t). |v| < 1.
DiffeoMap boost_map(int d, double v);
/// Shear t' = t + lambda sin(2 pi k x1 / period), x' = x (periodic in x).
DiffeoMap shear_map(int d, double lambda, int k, double period);
/// Spatial flow x1' = x1 + lambda sin(2 pi k t / period_t), t' = t.
DiffeoMap spatial_flow_map(int d, double lambda, int k, double period_t);

/// Parses catalog specs of the form "identity", "boost:0.5",
/// "shear:0.1,1", "tscale:2", "flow:0.1,1". Periods come from the caller.
DiffeoMap parse_map_spec(const std::string& spec, int d, double extent_t,
                         double extent_x);

}  // namespace lapsewick
