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

/// \file lanczos.hpp
/// Lowest eigenpair of a Hermitian operator given only its action, by
/// Lanczos iteration with full reorthogonalisation.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "omegaphase/errors.hpp"

namespace omegaphase {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct LanczosOptions {
  double tol = 1e-10;        ///< target residual, relative to the operator norm
  int max_iter = 600;        ///< Krylov dimension cap
  int check_every = 5;
  std::uint64_t seed = 0x5eed;
};

struct LanczosResult {
  double value = 0;
  CVector vector;
  double residual = 0;  ///< ||A v - value v||
  int iterations = 0;
};

/// `norm_bound` must bound the spectral norm of A (a Gershgorin bound is fine).
inline LanczosResult lanczos_lowest(const std::function<CVector(const CVector&)>& apply, Eigen::Index dim,
                                    double norm_bound, const LanczosOptions& opts = {}) {
  if (dim <= 0) throw ConstraintError("lanczos: empty operator");
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> g;
  CVector q(dim);
  for (Eigen::Index i = 0; i < dim; ++i) q(i) = {g(rng), g(rng)};
  q.normalize();

  const int kmax = static_cast<int>(std::min<Eigen::Index>(dim, opts.max_iter));
  CMatrix Q(dim, kmax);
  Eigen::VectorXd alpha(kmax), beta(kmax);
  const double scale = std::max(norm_bound, 1e-300);

  auto ritz = [&](int k) {
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha(i);
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    return es;
  };
  auto finish = [&](int k) -> LanczosResult {
    auto es = ritz(k);
    CVector v = Q.leftCols(k) * es.eigenvectors().col(0).cast<std::complex<double>>();
    v.normalize();
    const CVector av = apply(v);
    const double lam = v.dot(av).real();
    return {lam, v, (av - lam * v).norm(), k};
  };

  for (int j = 0; j < kmax; ++j) {
    Q.col(j) = q;
    CVector w = apply(q);
    alpha(j) = q.dot(w).real();
    w -= alpha(j) * q;
    if (j > 0) w -= beta(j - 1) * Q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * w);
    beta(j) = w.norm();
    const int k = j + 1;
    const bool invariant = beta(j) <= 1e-14 * scale;
    if (invariant || k == kmax || k % opts.check_every == 0) {
      auto es = ritz(k);
      const double estimate = std::abs(beta(j) * es.eigenvectors()(k - 1, 0));
      if (invariant || estimate <= opts.tol * scale || k == kmax) {
        LanczosResult r = finish(k);
        if (r.residual <= opts.tol * scale * 10 || invariant) return r;
        if (k == kmax) {
          throw NumericalError("lanczos did not converge after " + std::to_string(k) +
                               " iterations (residual " + std::to_string(r.residual) + ")");
        }
      }
    }
    q = w / beta(j);
  }
  throw NumericalError("lanczos exhausted its iteration budget");
}

}  // namespace omegaphase
