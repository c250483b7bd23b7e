#pragma once

#include <cstddef>

#include "pivotlab/error.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/lp/result.hpp"

namespace pivotlab::lp {

/// Multipliers of the inequality-form dual: min y^T b s.t. y^T A = c^T, y >= 0.
struct DualCertificate {
  Vector y;
  Rational value;
};

inline DualCertificate duality_certificate(const LinearProgram& lp, const SolveResult& res) {
  if (res.status != SolveStatus::Optimal)
    throw Error(ErrorKind::InvalidInput, "duality certificate needs an optimal result");
  if (!res.final_tableau) throw Error(ErrorKind::CertificateUnavailable, "result carries no final tableau");
  DualCertificate cert{res.final_tableau->dual_solution(), 0};
  for (std::size_t i = 0; i < lp.rows(); ++i) cert.value += cert.y[i] * lp.rhs()[i];
  return cert;
}

/// Pure recomputation: y >= 0, y^T A = c^T and y^T b = primal value.
inline bool verify_certificate(const LinearProgram& lp, const DualCertificate& cert, const Rational& primal) {
  if (cert.y.size() != lp.rows()) return false;
  Rational yb = 0;
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    if (cert.y[i] < 0) return false;
    yb += cert.y[i] * lp.rhs()[i];
  }
  for (std::size_t k = 0; k < lp.variables(); ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i < lp.rows(); ++i) s += cert.y[i] * lp.row(i)[k];
    if (s != lp.objective()[k]) return false;
  }
  return yb == cert.value && yb == primal;
}

}  // namespace pivotlab::lp
