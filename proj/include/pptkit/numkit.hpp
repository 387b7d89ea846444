// Dense complex linear algebra with tolerance-based rank decisions.
//
// Everything here is a thin, policy-aware layer over Eigen's dense solvers.
// All decompositions are deterministic for a fixed input (Jacobi SVD and the
// self-adjoint eigensolver use no randomized pivoting), so any verdict built
// on top of them is reproducible.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pptkit {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFinite : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Tolerances
//
// Rank thresholds are relative to the largest singular value, so every
// decision is invariant under rescaling of the state.  A rank decision where
// some singular value falls within a factor of 10 of the threshold is flagged
// "marginal"; verdict-level code re-runs at rank_rel_tol*10 and /10 and
// reports Indeterminate on disagreement.

struct TolerancePolicy {
  double rank_rel_tol = 1e-9;
  double psd_abs_tol = 1e-10;
  double root_tol = 1e-8;
  double residual_tol = 1e-8;

  void validate() const {
    if (!(rank_rel_tol > 0.0 && rank_rel_tol < 1.0))
      throw DomainError("TolerancePolicy: rank_rel_tol must be in (0,1)");
    if (!(psd_abs_tol > 0.0) || !(root_tol > 0.0) || !(residual_tol > 0.0))
      throw DomainError("TolerancePolicy: tolerances must be positive");
  }

  // Same policy with the rank threshold scaled; used for the x10 / /10
  // agreement re-runs.
  TolerancePolicy with_rank_scale(double factor) const {
    TolerancePolicy t = *this;
    t.rank_rel_tol *= factor;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Small helpers

inline bool all_finite(const CMat& m) { return m.allFinite(); }

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_finite(const CMat& m, const char* who) {
  if (!m.allFinite()) throw NonFinite(std::string(who) + ": non-finite entries");
}

inline void require_square(const CMat& m, const char* who) {
  if (m.rows() != m.cols())
    throw DomainError(std::string(who) + ": matrix must be square");
}

inline double hermiticity_defect(const CMat& m) {
  return max_abs(m - m.adjoint());
}

inline void require_hermitian(const CMat& m, const TolerancePolicy& tol,
                              const char* who) {
  require_square(m, who);
  require_finite(m, who);
  const double scale = max_abs(m);
  if (hermiticity_defect(m) > tol.residual_tol * std::max(scale, 1e-300))
    throw NotHermitian(std::string(who) + ": matrix is not Hermitian within tolerance");
}

// Frobenius inner product restricted to Hermitian matrices: real by symmetry.
inline double herm_inner(const CMat& a, const CMat& b) {
  return (a.adjoint() * b).trace().real();
}

// ---------------------------------------------------------------------------
// Eigendecomposition of Hermitian matrices

struct EigResult {
  RVec values;   // ascending
  CMat vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

inline EigResult eig_hermitian(const CMat& m,
                               const TolerancePolicy& tol = TolerancePolicy{}) {
  require_hermitian(m, tol, "eig_hermitian");
  const CMat sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver failed to converge");
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const CMat& m,
                             const TolerancePolicy& tol = TolerancePolicy{}) {
  return eig_hermitian(m, tol).values(0);
}

// ---------------------------------------------------------------------------
// Singular values, rank, range and kernel bases

inline RVec singular_values(const CMat& m) {
  require_finite(m, "singular_values");
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues();  // descending
}

struct RankDecision {
  int rank = 0;
  bool marginal = false;  // some singular value within 10x of the threshold
};

inline RankDecision rank_decision_from_singular_values(
    const RVec& sv, const TolerancePolicy& tol) {
  RankDecision d;
  if (sv.size() == 0) return d;
  const double smax = sv(0);
  if (smax <= 0.0) return d;  // zero matrix
  const double thr = tol.rank_rel_tol * smax;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr) ++d.rank;
    if (sv(i) >= 0.1 * thr && sv(i) <= 10.0 * thr) d.marginal = true;
  }
  return d;
}

inline RankDecision rank_decision(const CMat& m,
                                  const TolerancePolicy& tol = TolerancePolicy{}) {
  return rank_decision_from_singular_values(singular_values(m), tol);
}

inline int numerical_rank(const CMat& m,
                          const TolerancePolicy& tol = TolerancePolicy{}) {
  return rank_decision(m, tol).rank;
}

// Orthonormal basis of the column space (d x r) of a square matrix.
inline CMat orthonormal_range_basis(const CMat& m,
                                    const TolerancePolicy& tol = TolerancePolicy{}) {
  require_square(m, "orthonormal_range_basis");
  require_finite(m, "orthonormal_range_basis");
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU);
  const int r = rank_decision_from_singular_values(svd.singularValues(), tol).rank;
  return svd.matrixU().leftCols(r);
}

// Orthonormal basis of the null space (d x (d-r)) of a square matrix.
inline CMat orthonormal_kernel_basis(const CMat& m,
                                     const TolerancePolicy& tol = TolerancePolicy{}) {
  require_square(m, "orthonormal_kernel_basis");
  require_finite(m, "orthonormal_kernel_basis");
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const int r = rank_decision_from_singular_values(svd.singularValues(), tol).rank;
  return svd.matrixV().rightCols(m.cols() - r);
}

// Moore-Penrose inverse of a Hermitian PSD matrix: inverts the spectrum above
// the rank threshold, zero on the kernel.
inline CMat pseudoinverse(const CMat& m,
                          const TolerancePolicy& tol = TolerancePolicy{}) {
  const EigResult eig = eig_hermitian(m, tol);
  const double lmax = eig.values.cwiseAbs().maxCoeff();
  const double thr = tol.rank_rel_tol * lmax;
  RVec inv = RVec::Zero(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (std::abs(eig.values(i)) > thr) inv(i) = 1.0 / eig.values(i);
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

// Orthonormal basis of null(L) for a real m x n matrix, as columns.
inline RMat real_linear_nullspace(const RMat& L,
                                  const TolerancePolicy& tol = TolerancePolicy{}) {
  if (!L.allFinite()) throw NonFinite("real_linear_nullspace: non-finite entries");
  const Eigen::Index n = L.cols();
  if (L.rows() == 0 || L.size() == 0) return RMat::Identity(n, n);
  Eigen::JacobiSVD<RMat> svd(L, Eigen::ComputeFullV);
  const int r = rank_decision_from_singular_values(svd.singularValues(),
                                                   tol).rank;
  return svd.matrixV().rightCols(n - r);
}

}  // namespace pptkit
