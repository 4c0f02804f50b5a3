#pragma once

// The cell-diagram boundary map on the two concrete extension models:
// lift the quotient data, push the lift through psi_0 into the ideal, and
// read off integer classes by a trace or winding pairing.

#include "nccell/conegrid.hpp"
#include "nccell/report.hpp"
#include "nccell/toeplitz.hpp"

#include <concepts>
#include <cstdint>
#include <string>
#include <variant>

namespace nccell::bnd {

using linalg::CMat;
using linalg::Index;

enum class ModelKind { Toeplitz, ConeGrid };
enum class Pairing { Trace, Winding };

const char* model_name(ModelKind m);
const char* pairing_name(Pairing p);

/// 0 -> U -> P -> R -> 0 with psi_0 : Q -> U. psi_0 involves a square root
/// or an exponential, so it is recorded as a formula and evaluated by the
/// model rather than held as a generator map.
struct CellDiagram {
  std::string name;
  std::string q, p, r;  // presentation names
  int parity = 0;       // K_i(R) = K_{i+1}(Q) = Z
  ModelKind model = ModelKind::Toeplitz;
  Pairing xi = Pairing::Trace;      // class of the input, on R
  Pairing lambda = Pairing::Trace;  // class of the output, on Q
  int sign = 1;                     // output class = sign * input class
  std::string psi0;
  std::string convention;
};

/// Q = G2st, P = D, R = C0(0,1); input a unitary symbol standing for 1 + x.
const CellDiagram& index_cell();
/// Q = C0(0,1), P = the P presentation, R = qC; input a qC rep.
const CellDiagram& exponential_cell();
const CellDiagram& cell_get(std::string_view name);

// ---- models ----

template <class M>
concept ExtensionModel = requires(const M& m, const typename M::Quotient& q, const typename M::Element& e) {
  { M::kind } -> std::convertible_to<ModelKind>;
  { m.lift(q) } -> std::same_as<typename M::Element>;
  { m.quotient(e) } -> std::same_as<typename M::Quotient>;
  { m.ideal_residual(e) } -> std::convertible_to<double>;
  { m.contraction_lift(e) } -> std::same_as<typename M::Element>;
};

/// Toeplitz-plus-finite-rank operators over their symbols.
struct ToeplitzModel {
  static constexpr ModelKind kind = ModelKind::Toeplitz;
  using Quotient = toep::LaurentPoly;
  using Element = toep::ToepOp;

  Element lift(const Quotient& q) const { return toep::toep(q); }
  Quotient quotient(const Element& e) const { return e.symbol(); }
  /// sup norm of the symbol on the circle
  double ideal_residual(const Element& e) const;
  /// b (1 + (b*b - 1)_+)^(-1/2); throws if the symbol is not unitary.
  Element contraction_lift(const Element& b) const;
};

/// C0((0,1], M_d) on a grid over evaluation at t = 1.
struct ConeGridModel {
  static constexpr ModelKind kind = ModelKind::ConeGrid;
  using Quotient = CMat;
  using Element = cone::GridFun;
  int grid = 512;

  /// t -> t q
  Element lift(const Quotient& q) const;
  Quotient quotient(const Element& e) const { return e.samples.back(); }
  double ideal_residual(const Element& e) const { return linalg::op_norm(e.samples.back()); }
  /// Pointwise b (1 + (b*b - 1)_+)^(-1/2); throws if b(1) is not unitary.
  Element contraction_lift(const Element& b) const;
};

static_assert(ExtensionModel<ToeplitzModel>);
static_assert(ExtensionModel<ConeGridModel>);

// ---- results ----

/// A representation of Q in functions on the grid, e.g. C0(0,1) -> SM_d.
struct GridRep {
  std::string presentation;
  std::map<std::string, cone::GridFun> images;
  reps::Rep at(int j) const;
  double worst_residual() const;
};

using QRep = std::variant<reps::Rep, GridRep>;

struct BoundaryResult {
  int input_class = 0;
  QRep output;
  int output_class = 0;
  struct Diagnostics {
    double relation_residual = 0;  // Q relations on the output
    double ideal_residual = 0;     // output images outside the ideal
    double drift = 0;              // output pairing before rounding
    double input_drift = 0;
    double unitarity = 0;          // input symbol or u(t)
    int grid = 0;
    Index corner = 0;
  } diag;
};

/// Index cell on the Toeplitz model. The input class is the winding number
/// of det u on the circle.
BoundaryResult boundary_map(const CellDiagram& cell, const ToeplitzModel& model, const toep::LaurentPoly& u);
/// Same with a chosen lift of u instead of toep(u).
BoundaryResult boundary_map_with_lift(const CellDiagram& cell, const ToeplitzModel& model, const toep::ToepOp& lift);
/// Exponential cell on the cone grid. The input class is round(tr(k0 - h0)).
BoundaryResult boundary_map(const CellDiagram& cell, const ConeGridModel& model, const reps::Rep& qc);
/// Same with a chosen lift into the cone over P.
BoundaryResult boundary_map_with_lift(const CellDiagram& cell, const ConeGridModel& model, const cone::ConeLift& lift);

/// Index cell: round(tr h - tr k) on a G2st rep. Exponential side: winding of
/// det(1 + x) on a C0(0,1) grid rep. Throws std::invalid_argument when the
/// rep fails Q at 1e-7 or the pairing does not match the cell, and
/// std::runtime_error when the rounding drift exceeds 1e-6.
int class_of_Q_rep(const CellDiagram& cell, const QRep& rep);

/// Winding number of det u(z) over 256 circle samples.
int symbol_winding(const toep::LaurentPoly& u);

struct SuiteOptions {
  int trials = 50;
  std::uint64_t seed = 0;
  Index dim = 6;
  int grid = 512;
};

/// Per trial: homotopic input, lift choice, amplification by e11 and the
/// corner embedding M_d -> M_{d+1}; each case passes iff the classes agree.
report::Report invariance_suite(const CellDiagram& cell, const SuiteOptions& opts);

}  // namespace nccell::bnd
