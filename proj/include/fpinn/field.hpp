#pragma once

#include <span>
#include <vector>

#include "fpinn/fracderiv.hpp"
#include "fpinn/network.hpp"
#include "fpinn/problems.hpp"

namespace fpinn {

struct Pt {
  double t, x;
};

// A scalar field on (t,x) exposing batched values, time derivatives and the
// full jet pack. Backed either by a network or by an analytic solution;
// residual evaluation and RAD work against this interface.
class SpaceTimeField {
 public:
  virtual ~SpaceTimeField() = default;
  virtual void values(std::span<const Pt> pts, std::span<double> u) const = 0;
  virtual void values_and_dt(std::span<const Pt> pts, std::span<double> u,
                             std::span<double> u_t) const = 0;
  virtual void jets(std::span<const Pt> pts, std::span<PointJets> out) const = 0;
};

class NetworkField final : public SpaceTimeField {
 public:
  explicit NetworkField(const NetworkParams& net) : net_(net), eval_(net) {}
  void values(std::span<const Pt> pts, std::span<double> u) const override;
  void values_and_dt(std::span<const Pt> pts, std::span<double> u,
                     std::span<double> u_t) const override;
  void jets(std::span<const Pt> pts, std::span<PointJets> out) const override;

 private:
  const NetworkParams& net_;
  NetworkEval eval_;
  mutable NetworkEval::Workspace ws_;
};

class ExactSolutionField final : public SpaceTimeField {
 public:
  explicit ExactSolutionField(const ProblemSpec& p) : p_(p) {}
  void values(std::span<const Pt> pts, std::span<double> u) const override;
  void values_and_dt(std::span<const Pt> pts, std::span<double> u,
                     std::span<double> u_t) const override;
  void jets(std::span<const Pt> pts, std::span<PointJets> out) const override;

 private:
  const ProblemSpec& p_;
};

/// Fixed-x time section of a SpaceTimeField, usable by the scalar Caputo
/// estimators and the reference oracle.
class TimeSection final : public TemporalField {
 public:
  TimeSection(const SpaceTimeField& f, double x) : f_(f), x_(x) {}
  double value(double t) const override {
    Pt p{t, x_};
    double u;
    f_.values({&p, 1}, {&u, 1});
    return u;
  }
  double first_derivative(double t) const override {
    Pt p{t, x_};
    double u, ut;
    f_.values_and_dt({&p, 1}, {&u, 1}, {&ut, 1});
    return ut;
  }

 private:
  const SpaceTimeField& f_;
  double x_;
};

}  // namespace fpinn
