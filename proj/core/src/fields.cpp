#include "lapsewick/fields.hpp"

#include <cmath>
#include <numbers>

namespace lapsewick {

namespace {

// Derivative of one periodic line by direct DFT; O(n^2) but lines are short.
void dft_derivative(std::vector<cplx>& line, double period) {
  const int n = static_cast<int>(line.size());
  std::vector<cplx> coeff(n, cplx(0.0));
  const double w = 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    cplx acc(0.0);
    for (int j = 0; j < n; ++j)
      acc += line[j] * std::polar(1.0, -w * k * j);
    coeff[k] = acc / static_cast<double>(n);
  }
  std::vector<cplx> out(n, cplx(0.0));
  for (int k = 0; k < n; ++k) {
    int khat = (k <= n / 2) ? k : k - n;
    if (2 * k == n) continue;  // Nyquist
    const cplx ik(0.0, 2.0 * std::numbers::pi * khat / period);
    for (int j = 0; j < n; ++j)
      out[j] += ik * coeff[k] * std::polar(1.0, w * k * j);
  }
  line = std::move(out);
}

}  // namespace

Field<cplx> spectral_diff(const Field<cplx>& f, int axis) {
  const Grid& g = f.grid;
  const int n = (axis == 0) ? g.nt() : g.nx();
  const double period = (axis == 0) ? g.extent_t() : g.extent_x();
  Field<cplx> out(g);
  std::vector<bool> done(g.size(), false);
  std::vector<std::size_t> idxs(n);
  std::vector<cplx> line(n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (done[i]) continue;
    for (int k = 0; k < n; ++k) {
      idxs[k] = g.neighbor(i, axis, k);
      line[k] = f[idxs[k]];
    }
    dft_derivative(line, period);
    for (int k = 0; k < n; ++k) {
      out[idxs[k]] = line[k];
      done[idxs[k]] = true;
    }
  }
  return out;
}

Field<double> spectral_diff(const Field<double>& f, int axis) {
  Field<cplx> fc(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) fc[i] = f[i];
  Field<cplx> dc = spectral_diff(fc, axis);
  Field<double> out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = dc[i].real();
  return out;
}

}  // namespace lapsewick
