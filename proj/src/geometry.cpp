#include "muhs/geometry.hpp"

#include <cmath>

#include "muhs/spectral.hpp"

namespace muhs {

double metric_inner(const RealField& u, const RealField& v) {
  return mean(u) * mean(v) + integral(derivative(u, 1) * derivative(v, 1));
}

RealField christoffel(const RealField& u, const RealField& v) {
  const RealField ux = derivative(u, 1);
  const RealField vx = derivative(v, 1);
  return -ainv_dx(mean(u) * v + mean(v) * u + 0.5 * (ux * vx));
}

RealField coadjoint(const RealField& v, const RealField& u) {
  const RealField au = apply_A(u);
  return apply_A_inverse(2.0 * (derivative(v, 1) * au) +
                         v * derivative(au, 1));
}

double curvature_quadratic(const RealField& u, const RealField& v) {
  const RealField guv = christoffel(u, v);
  const RealField guu = christoffel(u, u);
  const RealField gvv = christoffel(v, v);
  const double twist = mean(derivative(u, 1) * v);
  return metric_inner(guv, guv) - metric_inner(guu, gvv) -
         3.0 * twist * twist;
}

double curvature_expanded(const RealField& u, const RealField& v) {
  const RealField ux = derivative(u, 1);
  const RealField vx = derivative(v, 1);
  const double mu_u = mean(u);
  const double mu_v = mean(v);
  const double int_uxvx = integral(ux * vx);
  const double int_ux2 = integral(ux * ux);
  const double int_vx2 = integral(vx * vx);
  const double twist = mean(ux * v);

  return mu_u * mu_u * (mean(v * v) + mean(vx * vx)) +
         mu_v * mu_v * (mean(u * u) + mean(ux * ux)) +
         mu_u * mean((v * ux - u * vx) * vx) +
         mu_v * mean((u * vx - v * ux) * ux) -
         2.0 * mu_u * mu_v * (mean(u * v) + mean(ux * vx)) -
         0.25 * int_uxvx * int_uxvx + 0.25 * int_ux2 * int_vx2 -
         3.0 * twist * twist;
}

namespace {

double gram_determinant(const RealField& u, const RealField& v,
                        Eigen::Matrix2d* gram = nullptr) {
  const double guu = metric_inner(u, u);
  const double gvv = metric_inner(v, v);
  const double guv = metric_inner(u, v);
  if (gram) *gram << guu, guv, guv, gvv;
  return guu * gvv - guv * guv;
}

}  // namespace

double sectional(const RealField& u, const RealField& v) {
  const double det = gram_determinant(u, v);
  if (det <= 1e-12) {
    throw DegeneratePlane("sectional: Gram determinant " +
                          std::to_string(det) + " is not above 1e-12");
  }
  return curvature_quadratic(u, v) / det;
}

TangentPair orthonormal_pair(const RealField& u, const RealField& v) {
  if (gram_determinant(u, v) <= 1e-12) {
    throw DegeneratePlane("orthonormal_pair: vectors are not independent");
  }
  // In-plane zero-mean direction: mu(u) w_v - mu(v) w_u kills the mean; a
  // genuine 2-plane always contains one.
  const double mu_u = mean(u);
  const double mu_v = mean(v);
  RealField w = (std::abs(mu_u) >= std::abs(mu_v))
                    ? mu_u * v - mu_v * u
                    : (std::abs(mu_v) > 0.0 ? mu_v * u - mu_u * v : v);
  const double wn = std::sqrt(metric_inner(w, w));
  if (!(wn > 0.0)) {
    throw DegeneratePlane("orthonormal_pair: zero-mean direction vanished");
  }
  const RealField e2 = (1.0 / wn) * w;
  RealField e1_raw = u - metric_inner(u, e2) * e2;
  double n1 = std::sqrt(metric_inner(e1_raw, e1_raw));
  if (!(n1 > 1e-12)) {
    e1_raw = v - metric_inner(v, e2) * e2;
    n1 = std::sqrt(metric_inner(e1_raw, e1_raw));
  }
  const RealField e1 = (1.0 / n1) * e1_raw;
  TangentPair out{e1, e2, Eigen::Matrix2d()};
  gram_determinant(e1, e2, &out.gram);
  return out;
}

}  // namespace muhs
