#pragma once

// Grid model of the cone C0((0,1], M_d) and the suspension: functions
// sampled at t_j = j/G. The exponential boundary of a qC representation
// is built from the linear cone lift and read off as a winding number.

#include "nccell/rep.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace nccell::cone {

using linalg::CMat;
using linalg::Complex;
using linalg::Index;

struct GridFun {
  int grid = 0;  // samples at j/grid for j = 0..grid
  Index dim = 0;
  std::vector<CMat> samples;
  bool vanish_at_0 = false;
  bool vanish_at_1 = false;

  double t(int j) const { return static_cast<double>(j) / grid; }
  /// Throws std::invalid_argument if a flagged endpoint has norm > 1e-10.
  void check() const;
};

GridFun sample(int grid, Index dim, const std::function<CMat(double)>& f, bool vanish_at_0 = false,
               bool vanish_at_1 = false);

struct ConeLift {
  GridFun h, k, x;
  /// P relations at sample j.
  reps::Rep at(int j) const;
  /// Worst P-relation residual over the grid.
  double worst_residual() const;
};

/// h(t) = s(t) h0, k(t) = s(t) k0, x(t) = s(t) x0 with s the identity
/// unless a reparametrization of [0, 1] fixing the endpoints is given.
/// Throws std::invalid_argument if rep fails the qC relations at 1e-9.
ConeLift cone_lift_qc(const reps::Rep& qc, int grid, const std::function<double(double)>& reparam = {});

/// Thrown when consecutive samples turn by pi/2 or more.
struct PhaseStepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Winding {
  int value = 0;
  double raw = 0;    // unwrapped phase over 2 pi
  double drift = 0;  // |raw - value|
  double max_step = 0;
};

/// Throws std::invalid_argument on a zero sample or open loop (1e-6),
/// PhaseStepError on a step >= pi/2, std::runtime_error on drift > 1e-6.
Winding winding(const std::vector<Complex>& samples);

struct UnitaryLoop {
  GridFun u;
  double unitarity = 0;  // worst ||u*u - 1||, ||uu* - 1||
  double endpoint = 0;   // max of ||u(0) - 1||, ||u(1) - 1||
};

struct ExpBoundary {
  UnitaryLoop loop;
  Winding wind;
  int cls = 0;
  int grid = 0;  // after any doubling
  double lift_residual = 0;
};

/// u(t) = -1 + v11 + v12 + v21 + v22 with v = exp(2 pi i P(t)) and
/// P(t) = [[1 - h(t), x(t)*], [x(t), k(t)]]. The grid doubles (up to 2^15)
/// while the phase steps of det u are too large. Throws std::runtime_error
/// if u leaves the unitaries by more than 1e-6.
ExpBoundary exp_boundary_u(const reps::Rep& qc, int grid = 512, const std::function<double(double)>& reparam = {});

/// Same on a given lift, without grid doubling.
ExpBoundary exp_boundary_from_lift(const ConeLift& lift);

UnitaryLoop unitary_loop(const ConeLift& lift);
/// det along the loop.
std::vector<Complex> det_samples(const GridFun& u);

struct ConeCell {
  int class_in = 0;   // rank p
  int class_out = 0;  // winding of det exp(2 pi i t p)
};

/// Throws std::invalid_argument if p is not a projection within 1e-10.
ConeCell cone_cell_check(const CMat& p, int grid = 256);

}  // namespace nccell::cone
