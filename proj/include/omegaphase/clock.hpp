// Copyright 2026 The omegaphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file clock.hpp
/// Feynman-Kitaev clock Hamiltonians: assembly, the rotated frame, the
/// five-case decomposition of a projector pair, closed-form block spectra,
/// the impurity-walk root solver, acceptance probability and ground energy.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegaphase/errors.hpp"
#include "omegaphase/lanczos.hpp"

namespace omegaphase {

using Complex = std::complex<double>;
using SparseCMatrix = Eigen::SparseMatrix<Complex>;

// ---------------------------------------------------------------------------
// Small linear-algebra checks.

inline bool is_unitary(const CMatrix& u, double tol = 1e-12) {
  if (u.rows() != u.cols()) return false;
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_hermitian(const CMatrix& a, double tol = 1e-12) {
  return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_projector(const CMatrix& p, double tol = 1e-12) {
  return is_hermitian(p, tol) && (p * p - p).cwiseAbs().maxCoeff() <= tol;
}

/// Orthonormal columns spanning the eigenspaces of a Hermitian matrix with
/// eigenvalue above (`above` = true) or at most `threshold`.
inline CMatrix spectral_subspace(const CMatrix& h, double threshold, bool above) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if ((es.eigenvalues()(i) > threshold) == above) keep.push_back(i);
  }
  CMatrix out(h.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  return out;
}

/// Projector onto the orthogonal complement of ker(a), a positive semidefinite.
inline CMatrix range_projector(const CMatrix& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const CMatrix v = spectral_subspace(a, 1e-10 * scale, true);
  return v * v.adjoint();
}

// ---------------------------------------------------------------------------
// Clock specification.

struct ClockSpec {
  int T = 1;
  int comp_dim = 1;
  std::vector<CMatrix> unitaries;         ///< U_1 ... U_T
  std::vector<CMatrix> input_projectors;  ///< summed into the input penalty
  CMatrix output_projector;

  void validate() const {
    if (T < 1) throw ConstraintError("clock spec: T must be >= 1");
    if (comp_dim < 1) throw ConstraintError("clock spec: comp_dim must be >= 1");
    if (static_cast<int>(unitaries.size()) != T) {
      throw ConstraintError("clock spec: expected " + std::to_string(T) + " unitaries, got " +
                            std::to_string(unitaries.size()));
    }
    auto check_dim = [&](const CMatrix& m, const std::string& what) {
      if (m.rows() != comp_dim || m.cols() != comp_dim) {
        throw ConstraintError("clock spec: " + what + " has shape " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected " + std::to_string(comp_dim) + "x" +
                              std::to_string(comp_dim));
      }
    };
    for (std::size_t t = 0; t < unitaries.size(); ++t) {
      check_dim(unitaries[t], "U_" + std::to_string(t + 1));
      if (!is_unitary(unitaries[t])) throw ConstraintError("clock spec: U_" + std::to_string(t + 1) + " is not unitary");
    }
    for (std::size_t j = 0; j < input_projectors.size(); ++j) {
      check_dim(input_projectors[j], "input projector " + std::to_string(j));
      if (!is_projector(input_projectors[j])) throw ConstraintError("clock spec: input projector is not a projector");
    }
    check_dim(output_projector, "output projector");
    if (!is_projector(output_projector)) throw ConstraintError("clock spec: output projector is not a projector");
  }

  CMatrix input_sum() const {
    CMatrix s = CMatrix::Zero(comp_dim, comp_dim);
    for (const auto& p : input_projectors) s += p;
    return s;
  }

  /// U_T ... U_1.
  CMatrix circuit() const {
    CMatrix u = CMatrix::Identity(comp_dim, comp_dim);
    for (const auto& ut : unitaries) u = ut * u;
    return u;
  }
};

/// Which operator sits on the first clock site.
enum class InputPenalty {
  Sum,             ///< the sum of the input projectors
  RangeProjector,  ///< the projector onto the complement of its kernel
};

namespace detail {

inline void add_block(std::vector<Eigen::Triplet<Complex>>& trip, Eigen::Index r0, Eigen::Index c0,
                      const CMatrix& m, Complex factor = 1.0) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex(0)) trip.emplace_back(r0 + i, c0 + j, factor * m(i, j));
    }
  }
}

inline SparseCMatrix assemble_clock(int T, int d, const std::vector<const CMatrix*>& hops,
                                    const CMatrix& first_penalty, const CMatrix& last_penalty) {
  const Eigen::Index D = static_cast<Eigen::Index>(T + 1) * d;
  std::vector<Eigen::Triplet<Complex>> trip;
  const CMatrix id = CMatrix::Identity(d, d);
  for (int t = 0; t < T; ++t) {
    const Eigen::Index a = static_cast<Eigen::Index>(t) * d, b = a + d;
    add_block(trip, a, a, id);
    add_block(trip, b, b, id);
    const CMatrix u = hops[static_cast<std::size_t>(t)] ? *hops[static_cast<std::size_t>(t)] : id;
    add_block(trip, b, a, u, -1.0);
    add_block(trip, a, b, u.adjoint(), -1.0);
  }
  add_block(trip, 0, 0, first_penalty);
  add_block(trip, static_cast<Eigen::Index>(T) * d, static_cast<Eigen::Index>(T) * d, last_penalty);
  SparseCMatrix h(D, D);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

}  // namespace detail

/// H = H_prop + H_in + H_out on clock (x) computation, index t * comp_dim + i.
/// Either penalty can be left out for diagnostics.
inline SparseCMatrix build_hamiltonian(const ClockSpec& spec, InputPenalty in = InputPenalty::Sum,
                                       bool with_input = true, bool with_output = true) {
  spec.validate();
  std::vector<const CMatrix*> hops;
  for (const auto& u : spec.unitaries) hops.push_back(&u);
  const CMatrix zero = CMatrix::Zero(spec.comp_dim, spec.comp_dim);
  CMatrix first = zero;
  if (with_input) first = in == InputPenalty::Sum ? spec.input_sum() : range_projector(spec.input_sum());
  return detail::assemble_clock(spec.T, spec.comp_dim, hops, first, with_output ? spec.output_projector : zero);
}

/// The clock Hamiltonian in the frame rotated by sum_t |t><t| (x) U_t...U_1:
/// path Laplacian (x) 1 plus boundary penalties.
struct RotatedClock {
  int T = 1;
  int comp_dim = 1;
  CMatrix input_penalty;
  CMatrix output_projector;  ///< (U_T...U_1)^dag Pi_out (U_T...U_1)

  SparseCMatrix hamiltonian() const {
    std::vector<const CMatrix*> hops(static_cast<std::size_t>(T), nullptr);
    return detail::assemble_clock(T, comp_dim, hops, input_penalty, output_projector);
  }
};

inline RotatedClock conjugate_rotate(const ClockSpec& spec, InputPenalty in = InputPenalty::Sum) {
  spec.validate();
  const CMatrix u = spec.circuit();
  CMatrix out = u.adjoint() * spec.output_projector * u;
  out = 0.5 * (out + out.adjoint());
  return {spec.T, spec.comp_dim, in == InputPenalty::Sum ? spec.input_sum() : range_projector(spec.input_sum()), out};
}

// ---------------------------------------------------------------------------
// Five-case decomposition of a pair of projectors.

struct JordanBlock {
  int case_tag = 1;            ///< 1..5
  std::vector<CVector> basis;  ///< one vector, or (e1, e2) for case 5
  double mu = 0;               ///< case 5 only
};

inline constexpr double kJordanDegeneracy = 1e-10;

/// Splits C^d into blocks on which (P_in, P_out) is one of
///   1: (0, 0)   2: (1, 0)   3: (0, 1)   4: (1, 1)
///   5: ([[1, 0], [0, 0]], [[1 - mu, -xi], [-xi, mu]]), xi = sqrt(mu (1 - mu)).
inline std::vector<JordanBlock> jordan_decompose(const CMatrix& p_in, const CMatrix& p_out) {
  if (p_in.rows() != p_out.rows() || p_in.cols() != p_out.cols()) {
    throw ConstraintError("jordan_decompose: projectors differ in dimension");
  }
  if (!is_projector(p_in, 1e-9) || !is_projector(p_out, 1e-9)) {
    throw ConstraintError("jordan_decompose: inputs must be Hermitian idempotents");
  }
  const Eigen::Index d = p_in.rows();
  std::vector<JordanBlock> blocks;
  const CMatrix va = spectral_subspace(p_in, 0.5, true);
  CMatrix rest = CMatrix::Identity(d, d) - va * va.adjoint();  // projector onto ker P_in, shrinking

  if (va.cols() > 0) {
    const CMatrix k = va.adjoint() * p_out * va;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (k + k.adjoint()));
    for (Eigen::Index j = 0; j < va.cols(); ++j) {
      const double c = std::clamp(es.eigenvalues()(j), 0.0, 1.0);
      const CVector e1 = (va * es.eigenvectors().col(j)).normalized();
      if (c >= 1.0 - kJordanDegeneracy) {
        blocks.push_back({4, {e1}, 0});
      } else if (c <= kJordanDegeneracy) {
        blocks.push_back({2, {e1}, 0});
      } else {
        const double mu = 1.0 - c;
        const double xi = std::sqrt(mu * (1.0 - mu));
        CVector e2 = -(p_out * e1 - c * e1) / xi;
        e2 -= va * (va.adjoint() * e2);
        e2.normalize();
        rest -= e2 * e2.adjoint();
        blocks.push_back({5, {e1, e2}, mu});
      }
    }
  }
  const CMatrix vr = spectral_subspace(0.5 * (rest + rest.adjoint()), 0.5, true);
  if (vr.cols() > 0) {
    const CMatrix m = vr.adjoint() * p_out * vr;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
    for (Eigen::Index j = 0; j < vr.cols(); ++j) {
      const double c = es.eigenvalues()(j);
      const CVector v = (vr * es.eigenvectors().col(j)).normalized();
      if (c >= 1.0 - 1e-8) blocks.push_back({3, {v}, 0});
      else if (c <= 1e-8) blocks.push_back({1, {v}, 0});
      else throw NumericalError("jordan_decompose: complement is not invariant (eigenvalue " + std::to_string(c) + ")");
    }
  }

  // Reconstruction certificate.
  CMatrix rin = CMatrix::Zero(d, d), rout = CMatrix::Zero(d, d);
  for (const auto& b : blocks) {
    const CVector& e1 = b.basis[0];
    switch (b.case_tag) {
      case 2: rin += e1 * e1.adjoint(); break;
      case 3: rout += e1 * e1.adjoint(); break;
      case 4:
        rin += e1 * e1.adjoint();
        rout += e1 * e1.adjoint();
        break;
      case 5: {
        const CVector& e2 = b.basis[1];
        const double xi = std::sqrt(b.mu * (1.0 - b.mu));
        rin += e1 * e1.adjoint();
        rout += (1.0 - b.mu) * e1 * e1.adjoint() + b.mu * e2 * e2.adjoint() -
                xi * (e1 * e2.adjoint() + e2 * e1.adjoint());
        break;
      }
      default: break;
    }
  }
  const double err = std::max((rin - p_in).cwiseAbs().maxCoeff(), (rout - p_out).cwiseAbs().maxCoeff());
  if (err > 1e-9) throw NumericalError("jordan_decompose: reconstruction error " + std::to_string(err));
  return blocks;
}

// ---------------------------------------------------------------------------
// Block spectra.

/// Path Laplacian on T+1 sites, plus +1 on the first and/or last site.
inline Eigen::MatrixXd path_block(int T, bool first, bool last) {
  const int n = T + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < T; ++t) {
    h(t, t) += 1;
    h(t + 1, t + 1) += 1;
    h(t, t + 1) = h(t + 1, t) = -1;
  }
  if (first) h(0, 0) += 1;
  if (last) h(T, T) += 1;
  return h;
}

/// The case-5 block: the first input-penalised vector runs t = 0..T, the
/// second runs back from t = T to 0, coupled by -xi at t = T.
inline Eigen::MatrixXd impurity_walk_matrix(int T, double mu) {
  if (T < 1) throw ConstraintError("impurity_walk_matrix: T must be >= 1");
  if (!(mu > 0.0 && mu < 1.0)) throw ConstraintError("impurity_walk_matrix: mu must lie in (0, 1)");
  const int n = 2 * (T + 1);
  const double xi = std::sqrt(mu * (1.0 - mu));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.topLeftCorner(T + 1, T + 1) = path_block(T, true, false);
  const Eigen::MatrixXd lower = path_block(T, false, false);
  // Reverse the second block so that t = T sits next to the first block's end.
  for (int i = 0; i <= T; ++i) {
    for (int j = 0; j <= T; ++j) h(T + 1 + i, T + 1 + j) = lower(T - i, T - j);
  }
  h(T, T) += 1.0 - mu;
  h(T + 1, T + 1) += mu;
  h(T, T + 1) = h(T + 1, T) = -xi;
  return h;
}

inline Eigen::MatrixXd block_hamiltonian(int case_tag, int T, double mu = 0) {
  switch (case_tag) {
    case 1: return path_block(T, false, false);
    case 2: return path_block(T, true, false);
    case 3: return path_block(T, false, true);
    case 4: return path_block(T, true, true);
    case 5: return impurity_walk_matrix(T, mu);
    default: throw ConstraintError("case tag must lie in 1..5");
  }
}

struct Case5Roots {
  double k0 = 0;
  std::vector<double> roots_minus;  ///< cos((T+3/2)k) - sqrt(1-mu) cos(k/2) = 0 on (0, 2pi)
  std::vector<double> roots_plus;   ///< the same with +
  int sign_changes_minus = 0;
  int sign_changes_plus = 0;
  /// Eigenvalues 2 - 2cos(k) over roots in (0, pi) of both factors, sorted.
  std::vector<double> energies() const {
    std::vector<double> e;
    for (const auto* r : {&roots_minus, &roots_plus}) {
      for (double k : *r) {
        if (k < std::numbers::pi - 1e-9) e.push_back(2.0 - 2.0 * std::cos(k));
      }
    }
    std::sort(e.begin(), e.end());
    return e;
  }
};

namespace detail {

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NumericalError("root bracket without a sign change");
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Roots of cos((T+3/2)k) -+ sqrt(1-mu) cos(k/2) on (0, 2pi). Each factor
/// changes sign on every interval [j pi/(T+3/2), (j+1) pi/(T+3/2)], which
/// gives 2T+3 roots per factor, k = pi among them.
inline Case5Roots root_solve_case5(int T, double mu, double tol = 1e-14) {
  if (T < 1) throw ConstraintError("root_solve_case5: T must be >= 1");
  if (!(mu > 0.0 && mu < 1.0)) throw NumericalError("root_solve_case5: mu must lie strictly in (0, 1)");
  if (!(tol >= 1e-14)) throw ConstraintError("root_solve_case5: tol must be >= 1e-14");
  const double a = std::sqrt(1.0 - mu);
  const double w = T + 1.5;
  const double pi = std::numbers::pi;
  Case5Roots out;
  for (int sign : {-1, +1}) {
    auto f = [&](double k) { return std::cos(w * k) + sign * a * std::cos(0.5 * k); };
    std::vector<double>& roots = sign < 0 ? out.roots_minus : out.roots_plus;
    int changes = 0;
    for (int j = 0; j < 2 * T + 3; ++j) {
      const double lo = j * pi / w, hi = (j + 1) * pi / w;
      if ((f(lo) > 0) != (f(hi) > 0)) ++changes;
      // The root at pi is exact; keep it exact.
      if (lo < pi && pi < hi) {
        roots.push_back(pi);
        continue;
      }
      roots.push_back(detail::bisect(f, lo, hi, tol));
    }
    (sign < 0 ? out.sign_changes_minus : out.sign_changes_plus) = changes;
  }
  auto fm = [&](double k) { return std::cos(w * k) - a * std::cos(0.5 * k); };
  out.k0 = detail::bisect(fm, 0.0, pi / (2 * T + 3), tol);
  return out;
}

/// Lowest eigenvalue of a clock block in closed form.
inline double case_eigenvalue(int case_tag, int T, std::optional<double> mu = std::nullopt) {
  if (T < 1) throw ConstraintError("case_eigenvalue: T must be >= 1");
  const double pi = std::numbers::pi;
  switch (case_tag) {
    case 1: return 0.0;
    case 2:
    case 3: return 2.0 - 2.0 * std::cos(pi / (2 * T + 3));
    case 4: return 2.0 - 2.0 * std::cos(pi / (T + 2));
    case 5:
      if (!mu) throw ConstraintError("case_eigenvalue: case 5 requires mu");
      return 2.0 - 2.0 * std::cos(root_solve_case5(T, *mu).k0);
    default: throw ConstraintError("case tag must lie in 1..5");
  }
}

/// The case-5 canonical pair on C^2.
inline std::pair<CMatrix, CMatrix> canonical_case5_pair(double mu) {
  const double xi = std::sqrt(mu * (1.0 - mu));
  CMatrix pin = CMatrix::Zero(2, 2), pout(2, 2);
  pin(0, 0) = 1;
  pout << 1.0 - mu, -xi, -xi, mu;
  return {pin, pout};
}

/// T steps of identity on C^2 with the case-5 canonical penalties.
inline ClockSpec canonical_case5_spec(int T, double mu) {
  auto [pin, pout] = canonical_case5_pair(mu);
  ClockSpec s;
  s.T = T;
  s.comp_dim = 2;
  s.unitaries.assign(static_cast<std::size_t>(T), CMatrix::Identity(2, 2));
  s.input_projectors = {pin};
  s.output_projector = pout;
  return s;
}

// ---------------------------------------------------------------------------
// Acceptance probability and ground energy.

/// Largest probability that a state in ker(sum Pi_in) is accepted:
/// squared top singular value of Q_out U Q_in.
inline double compute_epsilon(const ClockSpec& spec) {
  spec.validate();
  const int d = spec.comp_dim;
  const CMatrix qin_basis = spectral_subspace(spec.input_sum(), 1e-10, false);
  if (qin_basis.cols() == 0) return 0.0;
  const CMatrix qout = CMatrix::Identity(d, d) - spec.output_projector;
  const CMatrix m = qout * spec.circuit() * qin_basis;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const double s = svd.singularValues()(0);
  return std::clamp(s * s, 0.0, 1.0);
}

enum class SpectralMethod { Dense, Iterative, ClosedForm, RootSolve };

inline const char* to_string(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::Dense: return "dense";
    case SpectralMethod::Iterative: return "iterative";
    case SpectralMethod::ClosedForm: return "closed_form";
    case SpectralMethod::RootSolve: return "root_solve";
  }
  return "?";
}

struct SpectralReport {
  double lambda0 = 0;
  double lambda1 = 0;
  double gap = 0;
  SpectralMethod method = SpectralMethod::Dense;
  double residual = 0;   ///< ||H v0 - lambda0 v0||
  double residual1 = 0;  ///< the same for lambda1
  double norm_bound = 0;
  int iterations = 0;
};

inline constexpr Eigen::Index kDenseLimit = 4000;

inline double gershgorin_bound(const SparseCMatrix& h) {
  double best = 0;
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(h.rows());
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseCMatrix::InnerIterator it(h, k); it; ++it) rows(it.row()) += std::abs(it.value());
  }
  if (rows.size() > 0) best = rows.maxCoeff();
  return best;
}

inline SpectralReport ground_energy(const SparseCMatrix& h, SpectralMethod method,
                                    const LanczosOptions& opts = {}) {
  SpectralReport r;
  r.method = method;
  r.norm_bound = gershgorin_bound(h);
  const Eigen::Index D = h.rows();
  if (method == SpectralMethod::Dense) {
    if (D > kDenseLimit) throw ConstraintError("dense method needs dimension <= 4000");
    const CMatrix dense = CMatrix(h);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(dense);
    r.lambda0 = es.eigenvalues()(0);
    r.residual = (dense * es.eigenvectors().col(0) - r.lambda0 * es.eigenvectors().col(0)).norm();
    if (D > 1) {
      r.lambda1 = es.eigenvalues()(1);
      r.residual1 = (dense * es.eigenvectors().col(1) - r.lambda1 * es.eigenvectors().col(1)).norm();
    } else {
      r.lambda1 = r.lambda0;
    }
  } else if (method == SpectralMethod::Iterative) {
    auto apply = [&](const CVector& v) -> CVector { return h * v; };
    const LanczosResult g = lanczos_lowest(apply, D, r.norm_bound, opts);
    r.lambda0 = g.value;
    r.residual = g.residual;
    r.iterations = g.iterations;
    if (D > 1) {
      // Deflate the ground state above the spectrum.
      const double shift = 2.0 * r.norm_bound + 1.0;
      const CVector v0 = g.vector;
      auto deflated = [&](const CVector& v) -> CVector { return h * v + shift * v0 * v0.dot(v); };
      LanczosOptions o1 = opts;
      o1.seed = opts.seed + 1;
      const LanczosResult e1 = lanczos_lowest(deflated, D, 3.0 * r.norm_bound + 1.0, o1);
      r.lambda1 = e1.value;
      r.residual1 = e1.residual;
      r.iterations += e1.iterations;
    } else {
      r.lambda1 = r.lambda0;
    }
  } else {
    throw ConstraintError("ground_energy: only dense and iterative methods act on a matrix");
  }
  if (r.lambda1 < r.lambda0) r.lambda1 = r.lambda0;
  r.gap = r.lambda1 - r.lambda0;
  return r;
}

inline SpectralReport ground_energy(const ClockSpec& spec, SpectralMethod method,
                                    const LanczosOptions& opts = {}, InputPenalty in = InputPenalty::Sum) {
  return ground_energy(build_hamiltonian(spec, in), method, opts);
}

/// Lowest two eigenvalues from the five-case decomposition of the rotated
/// frame; requires the input penalty to be a projector.
inline SpectralReport ground_energy_by_blocks(const ClockSpec& spec, InputPenalty in = InputPenalty::Sum) {
  const RotatedClock rc = conjugate_rotate(spec, in);
  const auto blocks = jordan_decompose(rc.input_penalty, rc.output_projector);
  std::vector<double> levels;
  bool any_case5 = false;
  for (const auto& b : blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block_hamiltonian(b.case_tag, spec.T, b.mu));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) levels.push_back(es.eigenvalues()(i));
    any_case5 = any_case5 || b.case_tag == 5;
  }
  std::sort(levels.begin(), levels.end());
  SpectralReport r;
  r.method = any_case5 ? SpectralMethod::RootSolve : SpectralMethod::ClosedForm;
  double closed = 1e300;
  for (const auto& b : blocks) {
    closed = std::min(closed, case_eigenvalue(b.case_tag, spec.T, b.case_tag == 5 ? std::optional<double>(b.mu) : std::nullopt));
  }
  r.lambda0 = closed;
  r.lambda1 = levels.size() > 1 ? levels[1] : levels[0];
  r.gap = r.lambda1 - r.lambda0;
  return r;
}

// ---------------------------------------------------------------------------
// Output-penalty bounds of the wrapped circuit.

struct PenaltyBounds {
  double lower = 0;
  double upper = 0;
};

/// 1 - (1 + alpha sqrt(eta))^2 / 4 <= <psi_T| ... |psi_T> <= (3/4) |alpha sqrt(1-eta) + sqrt(1-alpha^2)|^2.
inline PenaltyBounds halting_penalty_bounds(double alpha, double eta) {
  if (!(alpha >= 0 && alpha <= 1 && eta >= 0 && eta <= 1)) {
    throw ConstraintError("halting_penalty_bounds: arguments must lie in [0, 1]");
  }
  const double lo = 1.0 - (1.0 + alpha * std::sqrt(eta)) * (1.0 + alpha * std::sqrt(eta)) / 4.0;
  const double amp = alpha * std::sqrt(1.0 - eta) + std::sqrt(1.0 - alpha * alpha);
  return {lo, 0.75 * amp * amp};
}

}  // namespace omegaphase
