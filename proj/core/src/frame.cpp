#include "lapsewick/frame.hpp"

namespace lapsewick {

FrameValue foliation_frame_value(const TripleValue& tv) {
  const int d = static_cast<int>(tv.shift.size());
  FrameValue fr;
  fr.dt = StVec::Zero(d + 1);
  fr.dt[0] = 1.0;
  fr.m = StVec::Zero(d + 1);
  fr.m[0] = 1.0;
  for (int a = 0; a < d; ++a) fr.m[1 + a] = -tv.shift[a];
  fr.e_up.resize(d, d + 1);
  fr.e_dn.resize(d, d + 1);
  fr.e_up.setZero();
  fr.e_dn.setZero();
  for (int a = 0; a < d; ++a) {
    fr.e_up(a, 0) = tv.shift[a];  // e^a = dx^a + N^a dt
    fr.e_up(a, 1 + a) = 1.0;
    fr.e_dn(a, 1 + a) = 1.0;      // e_a = d/dx^a
  }
  fr.sigma = StMat::Identity(d + 1, d + 1) - fr.dt * fr.m.transpose();
  fr.tproj = fr.dt * fr.m.transpose();
  return fr;
}

FoliationFrame foliation_frame(const AdmTriple& triple) {
  FoliationFrame out;
  out.values.reserve(triple.size());
  for (std::size_t i = 0; i < triple.size(); ++i)
    out.values.push_back(foliation_frame_value(triple.value(i)));
  return out;
}

double FoliationFrame::duality_residual() const {
  double r = 0.0;
  for (const auto& fr : values)
    r = std::max(r, std::abs((fr.m.transpose() * fr.dt)(0, 0) - cplx(1.0)));
  return r;
}

double FoliationFrame::completeness_residual() const {
  double r = 0.0;
  for (const auto& fr : values) {
    const int d = static_cast<int>(fr.e_up.rows());
    // e_a^alpha e^b_alpha = delta_a^b
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        cplx s = 0.0;
        for (int al = 0; al <= d; ++al) s += fr.e_dn(a, al) * fr.e_up(b, al);
        r = std::max(r, std::abs(s - (a == b ? cplx(1.0) : cplx(0.0))));
      }
    // Sigma_alpha^beta = e^a_alpha e_a^beta
    for (int al = 0; al <= d; ++al)
      for (int be = 0; be <= d; ++be) {
        cplx s = 0.0;
        for (int a = 0; a < d; ++a) s += fr.e_up(a, al) * fr.e_dn(a, be);
        r = std::max(r, std::abs(fr.sigma(al, be) - s));
      }
  }
  return r;
}

}  // namespace lapsewick
