#include "fpinn/field.hpp"

#include <cmath>

namespace fpinn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void NetworkField::values(std::span<const Pt> pts, std::span<double> u) const {
  for (std::size_t i = 0; i < pts.size(); ++i)
    u[i] = eval_.value(net_.params.data(), pts[i].t, pts[i].x, ws_);
}

void NetworkField::values_and_dt(std::span<const Pt> pts, std::span<double> u,
                                 std::span<double> u_t) const {
  for (std::size_t i = 0; i < pts.size(); ++i)
    eval_.value_and_dt(net_.params.data(), pts[i].t, pts[i].x, ws_, u[i], u_t[i]);
}

void NetworkField::jets(std::span<const Pt> pts, std::span<PointJets> out) const {
  for (std::size_t i = 0; i < pts.size(); ++i)
    out[i] = eval_.jets(net_.params.data(), pts[i].t, pts[i].x, ws_);
}

void ExactSolutionField::values(std::span<const Pt> pts, std::span<double> u) const {
  for (std::size_t i = 0; i < pts.size(); ++i)
    u[i] = p_.exact_time_profile(pts[i].t) * std::sin(p_.k_mode * kPi * pts[i].x);
}

void ExactSolutionField::values_and_dt(std::span<const Pt> pts, std::span<double> u,
                                       std::span<double> u_t) const {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double s = std::sin(p_.k_mode * kPi * pts[i].x);
    u[i] = p_.exact_time_profile(pts[i].t) * s;
    u_t[i] = p_.exact_time_profile_derivative(pts[i].t) * s;
  }
}

void ExactSolutionField::jets(std::span<const Pt> pts, std::span<PointJets> out) const {
  const double kpi = p_.k_mode * kPi;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double g = p_.exact_time_profile(pts[i].t);
    const double gp = p_.exact_time_profile_derivative(pts[i].t);
    const double s = std::sin(kpi * pts[i].x), c = std::cos(kpi * pts[i].x);
    out[i] = {g * s, gp * s, g * kpi * c, -g * kpi * kpi * s};
  }
}

}  // namespace fpinn
