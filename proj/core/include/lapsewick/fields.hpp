#pragma once

#include <functional>
#include <vector>

#include "lapsewick/grid.hpp"

namespace lapsewick {

/// Per-point values on a Grid, row-major in the grid's flat index.
template <class T>
struct Field {
  Grid grid;
  std::vector<T> v;

  explicit Field(const Grid& g) : grid(g), v(g.size()) {}
  Field(const Grid& g, const T& init) : grid(g), v(g.size(), init) {}

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return v.size(); }
};

template <class T, class F>
Field<T> sample_field(const Grid& g, F&& fn) {
  Field<T> out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point p = g.point(i);
    out[i] = fn(p.t, p.x);
  }
  return out;
}

/// Second-order central difference along `axis` (0 = time, 1..d = space),
/// periodic wrap.
template <class T>
Field<T> central_diff(const Field<T>& f, int axis) {
  const Grid& g = f.grid;
  const double h = g.spacing(axis);
  Field<T> out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const T& fp = f[g.neighbor(i, axis, +1)];
    const T& fm = f[g.neighbor(i, axis, -1)];
    out[i] = (fp - fm) * (1.0 / (2.0 * h));
  }
  return out;
}

/// Fourier (trigonometric-interpolation) derivative along `axis`.
/// Exact for band-limited periodic data; the Nyquist mode is dropped.
Field<cplx> spectral_diff(const Field<cplx>& f, int axis);
Field<double> spectral_diff(const Field<double>& f, int axis);

}  // namespace lapsewick
