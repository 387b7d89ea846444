// Density matrices over tensor-product spaces: partial transposition,
// PPT checks, rank profiles, and the concrete state families used
// throughout the qubit-ququart and multiqubit analyses.
//
// Index convention: party 0 is the slowest-varying tensor factor, so a
// bipartite 2 x 4 matrix has the block layout [[A, B], [B^dag, C]] with
// 4 x 4 blocks indexed by the first party.

#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pptkit/numkit.hpp"
#include "pptkit/rng.hpp"

namespace pptkit {

struct BadSubset : Error {
  using Error::Error;
};
struct NotAState : Error {
  using Error::Error;
};
struct NotPPT : Error {
  using Error::Error;
};
struct GenerationFailed : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Party dimensions and subsystem subsets

struct PartyDims {
  std::vector<int> dims;

  PartyDims() = default;
  PartyDims(std::initializer_list<int> d) : dims(d) { validate(); }
  explicit PartyDims(std::vector<int> d) : dims(std::move(d)) { validate(); }

  void validate() const {
    if (dims.empty()) throw DomainError("PartyDims: need at least one party");
    for (int d : dims)
      if (d < 2) throw DomainError("PartyDims: local dimensions must be >= 2");
  }

  int parties() const { return static_cast<int>(dims.size()); }

  int total() const {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  }

  bool operator==(const PartyDims& o) const { return dims == o.dims; }

  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < dims.size(); ++i) {
      if (i) s += "x";
      s += std::to_string(dims[i]);
    }
    return s;
  }
};

// A nonempty proper subset of party positions, kept sorted.
struct SubsystemSubset {
  std::vector<int> indices;

  SubsystemSubset() = default;
  SubsystemSubset(std::initializer_list<int> idx) : indices(idx) { normalize(); }
  explicit SubsystemSubset(std::vector<int> idx) : indices(std::move(idx)) {
    normalize();
  }

  void normalize() {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  }

  void validate(const PartyDims& dims) const {
    if (indices.empty()) throw BadSubset("SubsystemSubset: empty subset");
    if (static_cast<int>(indices.size()) >= dims.parties())
      throw BadSubset("SubsystemSubset: must be a proper subset of the parties");
    for (int i : indices)
      if (i < 0 || i >= dims.parties())
        throw BadSubset("SubsystemSubset: party index out of range");
  }

  bool contains(int party) const {
    return std::binary_search(indices.begin(), indices.end(), party);
  }

  bool operator==(const SubsystemSubset& o) const { return indices == o.indices; }

  // "A", "B", "AB", ... by party position.
  std::string label() const {
    std::string s;
    for (int i : indices) s += static_cast<char>('A' + i);
    return s;
  }
};

inline std::vector<SubsystemSubset> default_subsets(const PartyDims& dims) {
  // Sufficient transpose sets: {A} for bipartite; {A},{B} for three parties
  // (the rest follow from the global transpose); {A},{AB} for four parties,
  // which covers the symmetric four-qubit analysis.
  switch (dims.parties()) {
    case 2:
      return {SubsystemSubset{0}};
    case 3:
      return {SubsystemSubset{0}, SubsystemSubset{1}};
    case 4:
      return {SubsystemSubset{0}, SubsystemSubset{0, 1}};
    default: {
      std::vector<SubsystemSubset> out;
      for (int i = 0; i + 1 < dims.parties(); ++i)
        out.push_back(SubsystemSubset{i});
      return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Partial transposition

namespace detail {

inline std::vector<int> strides(const PartyDims& dims) {
  std::vector<int> s(dims.parties());
  int acc = 1;
  for (int k = dims.parties() - 1; k >= 0; --k) {
    s[k] = acc;
    acc *= dims.dims[k];
  }
  return s;
}

}  // namespace detail

inline CMat partial_transpose(const CMat& m, const PartyDims& dims,
                              const SubsystemSubset& subset) {
  subset.validate(dims);
  const int d = dims.total();
  if (m.rows() != d || m.cols() != d)
    throw DomainError("partial_transpose: matrix side does not match dims");
  const auto str = detail::strides(dims);
  const int n = dims.parties();
  CMat out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      int rr = 0, cc = 0;
      for (int k = 0; k < n; ++k) {
        const int rk = (r / str[k]) % dims.dims[k];
        const int ck = (c / str[k]) % dims.dims[k];
        if (subset.contains(k)) {
          rr += ck * str[k];
          cc += rk * str[k];
        } else {
          rr += rk * str[k];
          cc += ck * str[k];
        }
      }
      out(rr, cc) = m(r, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density matrices

class DensityMatrix {
 public:
  // Validates Hermiticity (symmetrizing away defects below residual_tol),
  // positivity within psd_abs_tol, and unit trace within residual_tol;
  // the stored matrix is renormalized to exactly unit trace.
  DensityMatrix(PartyDims dims, CMat mat,
                const TolerancePolicy& tol = TolerancePolicy{})
      : dims_(std::move(dims)), mat_(std::move(mat)) {
    dims_.validate();
    if (mat_.rows() != mat_.cols())
      throw NotAState("DensityMatrix: matrix must be square");
    if (mat_.rows() != dims_.total())
      throw NotAState("DensityMatrix: matrix side does not match party dims");
    if (!mat_.allFinite()) throw NotAState("DensityMatrix: non-finite entries");
    const double scale = std::max(max_abs(mat_), 1e-300);
    if (hermiticity_defect(mat_) > tol.residual_tol * scale)
      throw NotAState("DensityMatrix: matrix is not Hermitian within tolerance");
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > tol.residual_tol)
      throw NotAState("DensityMatrix: trace differs from 1 beyond tolerance");
    mat_ /= tr;
    Eigen::SelfAdjointEigenSolver<CMat> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol.psd_abs_tol)
      throw NotAState("DensityMatrix: negative eigenvalue beyond tolerance");
  }

  const PartyDims& dims() const { return dims_; }
  const CMat& mat() const { return mat_; }
  int side() const { return static_cast<int>(mat_.rows()); }

  CMat transposed(const SubsystemSubset& subset) const {
    return partial_transpose(mat_, dims_, subset);
  }

 private:
  PartyDims dims_;
  CMat mat_;
};

inline DensityMatrix pure_state(const PartyDims& dims, const CVec& psi,
                                const TolerancePolicy& tol = TolerancePolicy{}) {
  const double n = psi.norm();
  if (n <= 0.0) throw DomainError("pure_state: zero vector");
  const CVec v = psi / n;
  return DensityMatrix(dims, v * v.adjoint(), tol);
}

// ---------------------------------------------------------------------------
// PPT verdicts and rank profiles

struct PptReport {
  bool ppt = true;
  std::vector<double> min_eigenvalues;  // one per subset, same order
};

inline PptReport is_ppt(const DensityMatrix& rho,
                        const std::vector<SubsystemSubset>& subsets,
                        const TolerancePolicy& tol = TolerancePolicy{}) {
  PptReport rep;
  for (const auto& s : subsets) {
    const CMat pt = rho.transposed(s);
    const double lmin = min_eigenvalue(pt, tol);
    rep.min_eigenvalues.push_back(lmin);
    if (lmin < -tol.psd_abs_tol) rep.ppt = false;
  }
  return rep;
}

struct RankProfile {
  RankDecision base;
  std::vector<std::pair<SubsystemSubset, RankDecision>> transposes;

  int base_rank() const { return base.rank; }

  int rank_of(const SubsystemSubset& s) const {
    for (const auto& [sub, dec] : transposes)
      if (sub == s) return dec.rank;
    throw BadSubset("RankProfile: subset not profiled");
  }

  std::vector<int> tuple() const {
    std::vector<int> t{base.rank};
    for (const auto& [sub, dec] : transposes) t.push_back(dec.rank);
    return t;
  }

  int total() const {
    int sum = 0;
    for (int r : tuple()) sum += r;
    return sum;
  }

  bool any_marginal() const {
    if (base.marginal) return true;
    for (const auto& [sub, dec] : transposes)
      if (dec.marginal) return true;
    return false;
  }

  std::string to_string() const {
    std::string s = "(";
    const auto t = tuple();
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(t[i]);
    }
    return s + ")";
  }
};

inline RankProfile rank_profile(const DensityMatrix& rho,
                                const std::vector<SubsystemSubset>& subsets,
                                const TolerancePolicy& tol = TolerancePolicy{}) {
  RankProfile p;
  p.base = rank_decision(rho.mat(), tol);
  for (const auto& s : subsets)
    p.transposes.emplace_back(s, rank_decision(rho.transposed(s), tol));
  return p;
}

// ---------------------------------------------------------------------------
// Tensor helpers

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// ---------------------------------------------------------------------------
// State families

// The 2 x 4 family sigma(b): PPT for all b in [0,1], entangled with bi-rank
// (5,5) in the open interval, separable at the ends.
inline DensityMatrix horodecki_sigma(double b,
                                     const TolerancePolicy& tol = TolerancePolicy{}) {
  if (!(b >= 0.0 && b <= 1.0))
    throw DomainError("horodecki_sigma: b must lie in [0,1]");
  CMat m = CMat::Zero(8, 8);
  for (int i = 0; i < 4; ++i) m(i, i) = b;
  m(5, 5) = b;
  m(6, 6) = b;
  m(0, 5) = m(5, 0) = b;
  m(1, 6) = m(6, 1) = b;
  m(2, 7) = m(7, 2) = b;
  const double h = 0.5 * (1.0 + b);
  const double g = 0.5 * std::sqrt(std::max(0.0, 1.0 - b * b));
  m(4, 4) = h;
  m(7, 7) = h;
  m(4, 7) = m(7, 4) = g;
  m /= (1.0 + 7.0 * b);
  return DensityMatrix(PartyDims{2, 4}, m, tol);
}

// The 2 x 4 family rho(a,t): spectrum
//   (2a, 1+a^2, 1+a^2, a(1-t), a(1+t), 0, 0, 0) / (2(1+a)^2),
// PPT with bi-rank (5,6) for 0<a<1, |t|<a, and (5,5) at t=a.
inline DensityMatrix rho_at(double a, double t,
                            const TolerancePolicy& tol = TolerancePolicy{}) {
  if (!(a > 0.0)) throw DomainError("rho_at: a must be positive");
  const double ia = 1.0 / a;
  CMat m = CMat::Zero(8, 8);
  m(0, 0) = a;
  m(1, 1) = 1.0;
  m(2, 2) = ia;
  m(3, 3) = 1.0;
  m(4, 4) = 1.0;
  m(5, 5) = ia;
  m(6, 6) = 1.0;
  m(7, 7) = a;
  m(0, 5) = m(5, 0) = -1.0;
  m(1, 6) = m(6, 1) = -1.0;
  m(2, 7) = m(7, 2) = -1.0;
  m(3, 4) = m(4, 3) = t;
  m /= 2.0 * (2.0 + a + ia);
  return DensityMatrix(PartyDims{2, 4}, m, tol);
}

inline RVec rho_at_spectrum(double a, double t) {
  if (!(a > 0.0)) throw DomainError("rho_at_spectrum: a must be positive");
  const double c = 1.0 / (2.0 * (1.0 + a) * (1.0 + a));
  RVec v(8);
  v << 2.0 * a, 1.0 + a * a, 1.0 + a * a, a * (1.0 - t), a * (1.0 + t), 0.0, 0.0,
      0.0;
  v *= c;
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// Three-qubit bound entangled state built from the "Shifts" unextendible
// product basis: normalized projector complement of
// span{|0,1,+>, |1,+,0>, |+,0,1>, |-,-,->}.
inline DensityMatrix upb_shifts_state(const TolerancePolicy& tol = TolerancePolicy{}) {
  const double s = 1.0 / std::sqrt(2.0);
  CVec zero(2), one(2), plus(2), minus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << s, s;
  minus << s, -s;
  std::vector<CVec> members = {
      kron(zero, kron(one, plus)),
      kron(one, kron(plus, zero)),
      kron(plus, kron(zero, one)),
      kron(minus, kron(minus, minus)),
  };
  CMat proj = CMat::Zero(8, 8);
  for (const auto& v : members) proj += v * v.adjoint();
  CMat m = (CMat::Identity(8, 8) - proj) / 4.0;
  return DensityMatrix(PartyDims{2, 2, 2}, m, tol);
}

inline std::vector<CVec> upb_shifts_members() {
  const double s = 1.0 / std::sqrt(2.0);
  CVec zero(2), one(2), plus(2), minus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << s, s;
  minus << s, -s;
  return {kron(zero, kron(one, plus)), kron(one, kron(plus, zero)),
          kron(plus, kron(zero, one)), kron(minus, kron(minus, minus))};
}

// Isometry onto the permutation-symmetric subspace of four qubits (16 x 5),
// columns ordered by excitation number: |0000>, |W>, the normalized sum of
// the six weight-2 strings, |Wbar>, |1111>.
inline CMat symmetric_basis_4qubit() {
  CMat v = CMat::Zero(16, 5);
  auto weight = [](int idx) {
    int w = 0;
    for (int b = 0; b < 4; ++b) w += (idx >> b) & 1;
    return w;
  };
  const double norms[5] = {1.0, 2.0, std::sqrt(6.0), 2.0, 1.0};
  for (int idx = 0; idx < 16; ++idx) {
    const int w = weight(idx);
    v(idx, w) = 1.0 / norms[w];
  }
  return v;
}

// Full-rank separable state: seeded mixture of random product states.
inline DensityMatrix random_ppt_state(const PartyDims& dims, std::uint64_t seed,
                                      const TolerancePolicy& tol = TolerancePolicy{}) {
  Rng rng(seed);
  const int d = dims.total();
  const int terms = 2 * d * d;
  CMat m = CMat::Zero(d, d);
  for (int i = 0; i < terms; ++i) {
    CVec prod(1);
    prod.resize(1);
    prod(0) = 1.0;
    for (int p = 0; p < dims.parties(); ++p) {
      CVec local = rng.cgauss_vector(dims.dims[p]);
      local.normalize();
      prod = kron(prod, local).eval();
    }
    const double w = rng.uniform() + 1e-6;
    m += w * (prod * prod.adjoint());
  }
  m /= m.trace().real();
  return DensityMatrix(dims, m, tol);
}

}  // namespace pptkit
