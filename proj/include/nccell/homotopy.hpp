#pragma once

// Parameterized families of representations realizing the homotopies of
// the Grassmannian picture, and the extension of a P-representation to the
// free product.

#include "nccell/rep.hpp"

namespace nccell::reps {

/// Null homotopy of id (+) eta on G2st, clock s in [0, 2]. Segment one
/// (alpha = 1 - s) rotates the off-diagonal part of X; segment two
/// (gamma = 2 - s) shrinks everything to zero.
Rep null_homotopy_at(const Rep& g2st, double s);
Rep null_homotopy_segment1(const Rep& g2st, double alpha);
Rep null_homotopy_segment2(const Rep& g2st, double gamma);
/// s = 0 endpoint: h -> diag(h, k), k -> diag(k, h), x -> diag(x, x*).
Rep id_plus_eta(const Rep& g2st);

/// w_t = sin(pi t/2) e11 + cos(pi t/2) e21, a partial isometry with
/// w_t* w_t = e11 for every t.
CMat partial_isometry_path(double t);

/// h -> h (x) w*w, k -> k (x) ww*, x -> x (x) w for w = w_t; from lambda o rho
/// at t = 0 to id (x) e11 at t = 1.
Rep lambda_rho_homotopy_at(const Rep& g2st, double t);
/// Same template on qC generators: (rho (x) id) o lambda to id (x) e11.
Rep lambda_rho_homotopy_qc_at(const Rep& qc, double t);

struct Extension {
  CMat r;     // support projection of h
  CMat lhat;  // r - h + x + x* + k
  double spectrum_excess = 0;  // distance of spec(lhat) outside [0, 1]
  double roundtrip = 0;        // max over h, k, x of || theta-formula - original ||
};

/// Throws std::invalid_argument if the input fails the P relations at 1e-9
/// or lhat leaves [-1e-7, 1 + 1e-7].
Extension reconstruct_extension(const Rep& p_rep);

}  // namespace nccell::reps
