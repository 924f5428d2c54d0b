#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lapsewick/fields.hpp"
#include "lapsewick/grid.hpp"

namespace lapsewick {

/// Signature of the reconstructed line element.
enum class Signature : int { Lorentzian = -1, Euclidean = +1 };

inline double sig_value(Signature s) { return static_cast<double>(s); }

/// Lapse, shift, and spatial metric at a single point.
struct TripleValue {
  cplx lapse;
  CVec shift;
  CMat gamma;
};

/// ADM triple sampled on a point set. For triples in the fiducial chart the
/// points are the grid nodes; transformed triples carry the image point of
/// each grid node instead, so no interpolation ever happens.
class AdmTriple {
public:
  AdmTriple(const Grid& g, Signature sig);

  const Grid& grid() const { return grid_; }
  Signature signature() const { return sig_; }
  void set_signature(Signature s) { sig_ = s; }

  /// Rotation angle theta of the fiducial lapse-Wick rotation, if applied.
  std::optional<double> rotation() const { return theta_; }
  void set_rotation(std::optional<double> th) { theta_ = th; }
  bool rotated() const { return theta_.has_value(); }

  cplx& lapse(std::size_t i) { return lapse_[i]; }
  const cplx& lapse(std::size_t i) const { return lapse_[i]; }
  CVec& shift(std::size_t i) { return shift_[i]; }
  const CVec& shift(std::size_t i) const { return shift_[i]; }
  CMat& gamma(std::size_t i) { return gamma_[i]; }
  const CMat& gamma(std::size_t i) const { return gamma_[i]; }

  TripleValue value(std::size_t i) const {
    return {lapse_[i], shift_[i], gamma_[i]};
  }
  void set_value(std::size_t i, const TripleValue& tv) {
    lapse_[i] = tv.lapse;
    shift_[i] = tv.shift;
    gamma_[i] = tv.gamma;
  }

  /// Chart point at which sample i lives (grid node unless transformed).
  const Point& point(std::size_t i) const { return points_[i]; }
  Point& point(std::size_t i) { return points_[i]; }
  /// True if the samples still sit on the grid nodes of the fiducial chart.
  bool on_grid_nodes() const { return on_grid_; }
  void mark_off_grid() { on_grid_ = false; }

  std::size_t size() const { return lapse_.size(); }

  /// Checks positivity of Re N (un-rotated), symmetry and positive
  /// definiteness of gamma, and phase consistency of a rotated lapse.
  /// Throws std::domain_error on violation.
  void validate() const;

private:
  Grid grid_;
  Signature sig_;
  std::optional<double> theta_;
  bool on_grid_ = true;
  std::vector<cplx> lapse_;
  std::vector<CVec> shift_;
  std::vector<CMat> gamma_;
  std::vector<Point> points_;
};

/// Closed-form background: callables for the ADM data, evaluable anywhere.
struct Background {
  std::function<cplx(double, const Vec&)> lapse;
  std::function<CVec(double, const Vec&)> shift;
  std::function<CMat(double, const Vec&)> gamma;
  Signature sig = Signature::Lorentzian;
  std::optional<double> theta;

  TripleValue at(double t, const Vec& x) const {
    return {lapse(t, x), shift(t, x), gamma(t, x)};
  }
};

/// Samples a closed-form background on the grid nodes.
AdmTriple sample_triple(const Background& bg, const Grid& g);

/// Flat backgrounds: N = 1, zero shift, identity spatial metric.
Background flat_background(int d, Signature sig);

/// Smooth periodic curved background used by tests and suites; the fields
/// are low-order trigonometric polynomials with amplitude `eps` on the
/// periodic box of the given extents.
Background curved_background(int d, Signature sig, double extent_t,
                             double extent_x, double eps, unsigned seed);

}  // namespace lapsewick
