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

/// \file experiments.hpp
/// The twelve acceptance experiments. Each compares a module against an
/// independent small-instance oracle (dense diagonalisation, exhaustive
/// enumeration, hand-verified zoo values) and tallies violations.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "omegaphase/chaitin.hpp"
#include "omegaphase/clock.hpp"
#include "omegaphase/composition.hpp"
#include "omegaphase/dyadic.hpp"
#include "omegaphase/gap_law.hpp"
#include "omegaphase/phase.hpp"
#include "omegaphase/qpe.hpp"
#include "omegaphase/xy_chain.hpp"
#include "omegaphase/zoo.hpp"

namespace omegaphase::experiments {

struct Report {
  int criterion = 0;
  std::string title;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst = 0;          ///< largest error or smallest margin, named by `worst_label`
  std::string worst_label;  ///< empty when only violations are counted
  std::string note;
  bool pass() const noexcept { return checks > 0 && violations == 0; }
};

namespace detail {

/// fn(i) for i in [0, count) on a small pool; results must go to slot i.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex lock;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline double lowest_eigenvalue(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline std::vector<double> eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(d, d);
}

inline CMatrix random_projector(int d, int rank, std::mt19937_64& rng) {
  const CMatrix v = random_unitary(d, rng).leftCols(rank);
  const CMatrix p = v * v.adjoint();
  return 0.5 * (p + p.adjoint());
}

inline CMatrix random_hermitian(int d, std::mt19937_64& rng, double shift) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  CMatrix h = (a + a.adjoint()) / 2;
  h.diagonal().array() += shift;
  return h;
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Oracles shared with the unit tests.

/// -1/2 sum (XX + YY) on an open chain, assembled in the computational
/// basis and diagonalised densely.
inline std::vector<double> dense_xy_spectrum(int L) {
  const int dim = 1 << L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    for (int i = 0; i + 1 < L; ++i) {
      const int a = (s >> i) & 1, b = (s >> (i + 1)) & 1;
      if (a != b) h((s ^ (1 << i)) ^ (1 << (i + 1)), s) += -1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Two sites, each (C^2_uu x C^2_dense) + C^2_trivial. Local index 2u + d
/// for the first sector, 4 + t for the second. Neighbours in different
/// sectors pay `penalty`.
struct BlockModel {
  CMatrix uu, dense, trivial;
  double beta = 1, penalty = 1;

  CMatrix assemble() const {
    const int D = 6;
    CMatrix h = CMatrix::Zero(D * D, D * D);
    auto idx = [&](int a, int b) { return a * D + b; };
    for (int u1 = 0; u1 < 2; ++u1)
      for (int u2 = 0; u2 < 2; ++u2)
        for (int d1 = 0; d1 < 2; ++d1)
          for (int d2 = 0; d2 < 2; ++d2)
            for (int v1 = 0; v1 < 2; ++v1)
              for (int v2 = 0; v2 < 2; ++v2) {
                h(idx(2 * v1 + d1, 2 * v2 + d2), idx(2 * u1 + d1, 2 * u2 + d2)) +=
                    beta * uu(2 * v1 + v2, 2 * u1 + u2);
                h(idx(2 * d1 + v1, 2 * d2 + v2), idx(2 * d1 + u1, 2 * d2 + u2)) +=
                    beta * dense(2 * v1 + v2, 2 * u1 + u2);
              }
    for (int t1 = 0; t1 < 2; ++t1)
      for (int t2 = 0; t2 < 2; ++t2)
        for (int s1 = 0; s1 < 2; ++s1)
          for (int s2 = 0; s2 < 2; ++s2)
            h(idx(4 + s1, 4 + s2), idx(4 + t1, 4 + t2)) += trivial(2 * s1 + s2, 2 * t1 + t2);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        const bool split = (a < 4) != (b < 4);
        if (split) h(idx(a, b), idx(a, b)) += penalty;
      }
    return h;
  }

  /// The 16 mixed configurations: 4 x 2 for each ordering.
  std::vector<double> mixed() const { return std::vector<double>(16, penalty); }
};

// ---------------------------------------------------------------------------
// 1. Closed-form block eigenvalues.

struct ClosedFormParams {
  int t_min = 1;
  int t_max = 200;
  double tol = 1e-10;
};

inline Report closed_forms(const ClosedFormParams& p = {}) {
  Report r{1, "closed-form spectra of cases 2, 3, 4"};
  r.worst_label = "max |closed form - dense|";
  for (int T = p.t_min; T <= p.t_max; ++T) {
    for (int c : {2, 3, 4}) {
      const double err = std::fabs(case_eigenvalue(c, T) - detail::lowest_eigenvalue(block_hamiltonian(c, T)));
      ++r.checks;
      r.violations += !(err <= p.tol);
      r.worst = std::max(r.worst, err);
    }
  }
  r.note = "T in [" + std::to_string(p.t_min) + ", " + std::to_string(p.t_max) + "]";
  return r;
}

// ---------------------------------------------------------------------------
// 2, 3. The impurity walk and the gap law.

struct ImpurityGridParams {
  int t_min = 2;
  int t_max = 64;
  std::vector<double> mus{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double tol = 1e-9;
  unsigned threads = 0;
};

inline Report impurity_walk(const ImpurityGridParams& p = {}) {
  Report r{2, "impurity-walk roots and lowest level"};
  r.worst_label = "max |2 - 2cos k0 - dense|";
  const int nt = p.t_max - p.t_min + 1;
  const std::size_t cells = static_cast<std::size_t>(nt) * p.mus.size();
  std::vector<double> err(cells);
  std::vector<int> bad(cells);
  detail::parallel_for(cells, p.threads, [&](std::size_t i) {
    const int T = p.t_min + static_cast<int>(i / p.mus.size());
    const double mu = p.mus[i % p.mus.size()];
    const Case5Roots roots = root_solve_case5(T, mu);
    const std::size_t want = 2 * static_cast<std::size_t>(T) + 3;
    bad[i] += roots.roots_minus.size() != want || roots.roots_plus.size() != want;
    bad[i] += roots.sign_changes_minus != static_cast<int>(want) || roots.sign_changes_plus != static_cast<int>(want);
    err[i] = std::fabs(2.0 - 2.0 * std::cos(roots.k0) - detail::lowest_eigenvalue(impurity_walk_matrix(T, mu)));
    bad[i] += !(err[i] <= p.tol);
  });
  for (std::size_t i = 0; i < cells; ++i) {
    r.checks += 3;
    r.violations += static_cast<std::uint64_t>(bad[i]);
    r.worst = std::max(r.worst, err[i]);
  }
  r.note = std::to_string(cells) + " (T, mu) cells";
  return r;
}

inline Report gap_law_band(const ImpurityGridParams& p = {}) {
  Report r{3, "gap law band"};
  r.worst_label = "smallest relative margin to a band edge";
  const int nt = p.t_max - p.t_min + 1;
  const std::size_t cells = static_cast<std::size_t>(nt) * p.mus.size();
  std::vector<double> ratio(cells), k0ratio(cells), eps_err(cells);
  detail::parallel_for(cells, p.threads, [&](std::size_t i) {
    const int T = p.t_min + static_cast<int>(i / p.mus.size());
    const double mu = p.mus[i % p.mus.size()];
    const ClockSpec s = canonical_case5_spec(T, mu);
    const double eps = compute_epsilon(s);
    const double l0 = ground_energy(s, SpectralMethod::Dense).lambda0;
    ratio[i] = l0 * T * T / (1 - eps);
    k0ratio[i] = root_solve_case5(T, mu).k0 * T / std::sqrt(mu);
    eps_err[i] = std::fabs(eps - (1 - mu));
  });
  double lo = INFINITY, hi = -INFINITY, klo = INFINITY, khi = -INFINITY;
  r.worst = INFINITY;
  for (std::size_t i = 0; i < cells; ++i) {
    r.checks += 3;
    r.violations += !(ratio[i] >= gap_law::kCLo && ratio[i] <= gap_law::kCHi);
    r.violations += !(k0ratio[i] >= gap_law::kK0RatioLo && k0ratio[i] <= gap_law::kK0RatioHi);
    r.violations += !(eps_err[i] <= 1e-9);
    lo = std::min(lo, ratio[i]);
    hi = std::max(hi, ratio[i]);
    klo = std::min(klo, k0ratio[i]);
    khi = std::max(khi, k0ratio[i]);
    r.worst = std::min({r.worst, ratio[i] / gap_law::kCLo - 1, 1 - ratio[i] / gap_law::kCHi,
                        k0ratio[i] / gap_law::kK0RatioLo - 1, 1 - k0ratio[i] / gap_law::kK0RatioHi});
  }
  r.note = "lambda0 T^2/(1-eps) in [" + detail::fmt(lo) + ", " + detail::fmt(hi) + "] within [" +
           detail::fmt(gap_law::kCLo) + ", " + detail::fmt(gap_law::kCHi) + "]; k0 T/sqrt(mu) in [" +
           detail::fmt(klo) + ", " + detail::fmt(khi) + "] within [" + detail::fmt(gap_law::kK0RatioLo) + ", " +
           detail::fmt(gap_law::kK0RatioHi) + "]";
  return r;
}

// ---------------------------------------------------------------------------
// 4, 5. Phase estimation bounds.

struct QpeGridParams {
  std::size_t phases = 256;
  std::uint64_t seed = 2024;
  int n_max = 14;
  double slack = 1e-12;  ///< floating-point allowance on the probability sums
  unsigned threads = 0;
};

/// `phases` points (j + u_j)/phases with 40-bit pseudo-random offsets, and
/// ten points just below 1 where rounding wraps to 0.
inline std::vector<Dyadic> qpe_phase_grid(std::size_t phases = 256, std::uint64_t seed = 2024) {
  std::mt19937_64 rng(seed);
  std::vector<Dyadic> grid;
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < phases) ++bits;
  for (std::uint64_t j = 0; j < phases; ++j) {
    const std::uint64_t u = rng() & ((std::uint64_t{1} << 40) - 1);
    grid.emplace_back(BigInt((j << 40) | u), 40 + bits);
  }
  for (int k = 3; k <= 30; k += 3) grid.push_back(Dyadic(1) - Dyadic::pow2(-k) - Dyadic(BigInt(1), 50));
  return grid;
}

namespace detail {

inline Report qpe_bound(int criterion, bool rounded, const QpeGridParams& p) {
  Report r{criterion, rounded ? "rounded estimate success bound" : "phase estimation tail bound"};
  r.worst_label = "smallest margin to 2^-(n-m)";
  const auto grid = qpe_phase_grid(p.phases, p.seed);
  std::vector<std::uint64_t> checks(grid.size()), bad(grid.size());
  std::vector<double> margin(grid.size(), INFINITY);
  parallel_for(grid.size(), p.threads, [&](std::size_t i) {
    for (int n = 2; n <= p.n_max; ++n) {
      const auto d = qpe_distribution(grid[i], n);
      for (int m = 1; m < n; ++m) {
        const double bound = std::ldexp(1.0, m - n);
        const double gap = rounded ? rounded_success_probability(d, m) - (1.0 - bound)
                                   : bound - tail_probability(d, m);
        ++checks[i];
        bad[i] += !(gap >= -p.slack);
        margin[i] = std::min(margin[i], gap);
      }
    }
  });
  r.worst = INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.checks += checks[i];
    r.violations += bad[i];
    r.worst = std::min(r.worst, margin[i]);
  }
  r.note = std::to_string(grid.size()) + " phases incl. 10 wrapping near 1, n <= " + std::to_string(p.n_max);
  return r;
}

}  // namespace detail

inline Report qpe_tail(const QpeGridParams& p = {}) { return detail::qpe_bound(4, false, p); }

inline Report qpe_rounded(const QpeGridParams& p = {}) { return detail::qpe_bound(5, true, p); }

// ---------------------------------------------------------------------------
// 6. Rounding lemma, exhaustively.

struct RoundingParams {
  std::size_t n_max = 12;
  unsigned threads = 0;
};

inline Report rounding_lemma(const RoundingParams& p = {}) {
  Report r{6, "rounding lemma, exhaustive"};
  struct Job {
    std::size_t n, m;
  };
  std::vector<Job> jobs;
  for (std::size_t n = 2; n <= p.n_max; ++n)
    for (std::size_t m = 1; m < n; ++m) jobs.push_back({n, m});
  std::vector<std::uint64_t> checks(jobs.size()), bad(jobs.size());
  detail::parallel_for(jobs.size(), p.threads, [&](std::size_t j) {
    const auto [n, m] = jobs[j];
    const std::uint64_t N = std::uint64_t{1} << n;
    const std::uint64_t radius = N >> (m + 1);  // 2^-(m+1) in grid units
    for (std::uint64_t a = 0; a < N; ++a) {
      const Dyadic phi(BigInt(a), n);
      const auto im = interval_im(phi, m);
      // Every phi' on the circle strictly closer than the radius.
      for (std::uint64_t off = 0; off + 1 < 2 * radius; ++off) {
        const std::uint64_t b = (a + N - radius + 1 + off) % N;
        const Dyadic est = truncate(round_up_mth(Dyadic(BigInt(b), n), m, n), m);
        ++checks[j];
        bad[j] += std::find(im.begin(), im.end(), est) == im.end();
      }
    }
  });
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    r.checks += checks[j];
    r.violations += bad[j];
  }
  r.note = "all n-bit pairs, 2 <= n <= " + std::to_string(p.n_max) + ", 1 <= m < n";
  return r;
}

// ---------------------------------------------------------------------------
// 7, 8. Zoo machines.

struct ZooParams {
  std::vector<std::string> machines;  ///< empty means every zoo machine
  std::uint64_t scan = 4096;          ///< stages checked one by one
  std::uint64_t deep = std::uint64_t{1} << 20;
  std::uint64_t huge = std::uint64_t{1} << 60;
  int grid_bits = 6;
  std::uint64_t sweep_extra = 4096;  ///< sweep budget past s'
  unsigned threads = 0;
};

namespace detail {

inline std::vector<std::string> zoo_names(const ZooParams& p) {
  if (!p.machines.empty()) return p.machines;
  std::vector<std::string> out;
  for (const auto& e : zoo::entries()) out.push_back(e.name);
  return out;
}

}  // namespace detail

inline Report omega_limit(const ZooParams& p = {}) {
  Report r{7, "omega monotone, exact after settling, truncations stable"};
  for (const auto& name : detail::zoo_names(p)) {
    const MachineSpec M = zoo::load(name);
    const Dyadic omega = zoo::omega(name);
    const std::uint64_t settle = zoo::settle_stage(name);
    const std::uint64_t last = std::max(p.scan, settle + 64);
    const OmegaTrace trace(M, std::max(p.deep, last));
    const auto seq = omega_truncated_sequence(M, last);
    Dyadic prev;
    for (std::uint64_t s = 0; s <= last; ++s) {
      const Dyadic v = trace.value_at(s);
      r.checks += 3;
      r.violations += v < prev;
      r.violations += (v == omega) != (s >= settle);
      r.violations += !(v < Dyadic(1));
      if (s >= 1) {
        ++r.checks;
        const Dyadic cut = seq[s - 1];
        r.violations += s >= settle ? cut != truncate(omega, s) : cut > truncate(omega, s);
      }
      prev = v;
    }
    r.checks += 2;
    r.violations += trace.value_at(p.deep) != omega;
    r.violations += OmegaTrace(M, p.huge).value_at(p.huge) != omega;
  }
  r.note = "stages 0.." + std::to_string(p.scan) + ", 2^20 and 2^60";
  return r;
}

inline Report witness_and_sweep(const ZooParams& p = {}) {
  Report r{8, "witness halts iff phi < omega; sweep agrees"};
  const SquareEnergyModel model = calibrated(SquareEnergyModel{});
  const std::uint64_t budget = *model.s_prime + p.sweep_extra;
  const std::uint64_t N = std::uint64_t{1} << p.grid_bits;
  std::vector<Dyadic> sweep_grid;
  for (std::uint64_t j = 1; j <= N; ++j) sweep_grid.emplace_back(BigInt(j), p.grid_bits);
  for (const auto& name : detail::zoo_names(p)) {
    const MachineSpec M = zoo::load(name);
    const Dyadic omega = zoo::omega(name);
    const std::uint64_t settle = zoo::settle_stage(name);
    const OmegaTrace trace(M, p.deep);
    for (std::uint64_t j = 0; j < N; ++j) {
      const Dyadic phi(BigInt(j), p.grid_bits);
      const WitnessResult w = witness_w(trace, phi, p.deep);
      ++r.checks;
      r.violations += w.halted_at.has_value() != (phi < omega);
      if (w.halted_at) {
        ++r.checks;
        r.violations += *w.halted_at > settle;
      }
    }
    for (const auto& res : sweep(sweep_grid, M, budget, model, p.threads)) {
      ++r.checks;
      r.violations += (res.classification == Classification::GaplessEvidence) != (res.phi < omega);
    }
  }
  r.note = std::to_string(N) + "-point grids, witness budget 2^20, sweep budget s' + " + std::to_string(p.sweep_extra);
  return r;
}

// ---------------------------------------------------------------------------
// 9. Jordan decomposition.

struct JordanParams {
  int random_trials = 200;
  int structured_trials = 200;
  int d_max = 8;
  std::uint64_t seed = 31;
  double tol = 1e-9;
};

inline Report jordan_reconstruction(const JordanParams& p = {}) {
  Report r{9, "Jordan decomposition and reconstruction"};
  r.worst_label = "max reconstruction or epsilon error";
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  std::array<std::uint64_t, 6> seen{};
  auto check = [&](const CMatrix& pin, const CMatrix& pout, const std::array<int, 6>* want,
                   std::vector<double> mus) {
    const Eigen::Index d = pin.rows();
    const auto blocks = jordan_decompose(pin, pout);
    CMatrix rin = CMatrix::Zero(d, d), rout = CMatrix::Zero(d, d);
    std::array<int, 6> count{};
    std::vector<double> got_mu;
    for (const auto& b : blocks) {
      ++count[static_cast<std::size_t>(b.case_tag)];
      ++seen[static_cast<std::size_t>(b.case_tag)];
      const CVector& e1 = b.basis[0];
      if (b.case_tag == 2 || b.case_tag == 4) rin += e1 * e1.adjoint();
      if (b.case_tag == 3 || b.case_tag == 4) rout += e1 * e1.adjoint();
      if (b.case_tag != 5) continue;
      const CVector& e2 = b.basis[1];
      const double xi = std::sqrt(b.mu * (1 - b.mu));
      rin += e1 * e1.adjoint();
      rout += (1 - b.mu) * e1 * e1.adjoint() + b.mu * e2 * e2.adjoint() - xi * (e1 * e2.adjoint() + e2 * e1.adjoint());
      // The valid input of the block is e2; its acceptance is the top
      // squared singular value of (1 - P_out) restricted to it.
      Eigen::JacobiSVD<CMatrix> svd((CMatrix::Identity(d, d) - pout) * e2 * e2.adjoint());
      const double sv = svd.singularValues()(0);
      const double e = std::fabs(sv * sv - (1 - b.mu));
      ++r.checks;
      r.violations += !(e <= p.tol);
      r.worst = std::max(r.worst, e);
      got_mu.push_back(b.mu);
    }
    const double err = std::max((rin - pin).cwiseAbs().maxCoeff(), (rout - pout).cwiseAbs().maxCoeff());
    ++r.checks;
    r.violations += !(err <= p.tol);
    r.worst = std::max(r.worst, err);
    if (!want) return;
    ++r.checks;
    bool ok = true;
    for (int c = 1; c <= 5; ++c) ok = ok && count[c] == (*want)[c];
    std::sort(got_mu.begin(), got_mu.end());
    std::sort(mus.begin(), mus.end());
    ok = ok && got_mu.size() == mus.size();
    for (std::size_t i = 0; ok && i < mus.size(); ++i) ok = std::fabs(got_mu[i] - mus[i]) <= p.tol;
    r.violations += !ok;
  };

  for (int t = 0; t < p.random_trials; ++t) {
    const int d = 1 + static_cast<int>(rng() % p.d_max);
    const CMatrix pin = detail::random_projector(d, static_cast<int>(rng() % (d + 1)), rng);
    const CMatrix pout = detail::random_projector(d, static_cast<int>(rng() % (d + 1)), rng);
    check(pin, pout, nullptr, {});
  }
  // Prescribed block content in a random basis.
  for (int t = 0; t < p.structured_trials; ++t) {
    std::array<int, 6> want{};
    int d = 0;
    while (d == 0) {
      for (int c = 1; c <= 5; ++c) {
        const int room = p.d_max - d;
        const int size = c == 5 ? 2 : 1;
        want[c] = room >= size ? static_cast<int>(rng() % (room / size + 1)) % 3 : 0;
        d += want[c] * size;
      }
    }
    CMatrix pin0 = CMatrix::Zero(d, d), pout0 = CMatrix::Zero(d, d);
    std::vector<double> mus;
    int at = 0;
    for (int c = 1; c <= 4; ++c) {
      for (int k = 0; k < want[c]; ++k, ++at) {
        if (c == 2 || c == 4) pin0(at, at) = 1;
        if (c == 3 || c == 4) pout0(at, at) = 1;
      }
    }
    for (int k = 0; k < want[5]; ++k, at += 2) {
      const double mu = unif(rng);
      mus.push_back(mu);
      const auto [a, b] = canonical_case5_pair(mu);
      pin0.block(at, at, 2, 2) = a;
      pout0.block(at, at, 2, 2) = b;
    }
    const CMatrix u = detail::random_unitary(d, rng);
    CMatrix pin = u * pin0 * u.adjoint(), pout = u * pout0 * u.adjoint();
    pin = 0.5 * (pin + pin.adjoint());
    pout = 0.5 * (pout + pout.adjoint());
    check(pin, pout, &want, mus);
  }
  // The canonical clock spec has epsilon exactly 1 - mu.
  for (double mu : {0.05, 0.3, 0.5, 0.8, 0.95}) {
    const double e = std::fabs(compute_epsilon(canonical_case5_spec(3, mu)) - (1 - mu));
    ++r.checks;
    r.violations += !(e <= p.tol);
    r.worst = std::max(r.worst, e);
  }
  std::ostringstream note;
  note << "blocks seen per case:";
  for (int c = 1; c <= 5; ++c) note << ' ' << seen[static_cast<std::size_t>(c)];
  r.note = note.str();
  for (int c = 1; c <= 5; ++c) {
    ++r.checks;
    r.violations += seen[static_cast<std::size_t>(c)] == 0;
  }
  return r;
}

// ---------------------------------------------------------------------------
// 10. XY chain.

struct XyParams {
  int l_max = 8;
  std::vector<int> lengths{4, 8, 16, 32, 64};
  double tol = 1e-9;
};

inline Report xy_oracle(const XyParams& p = {}) {
  Report r{10, "XY chain against dense diagonalisation"};
  r.worst_label = "max |free fermion - dense|";
  for (int L = 2; L <= p.l_max; ++L) {
    const XySpectrum x = xy_chain_spectrum(L, std::size_t{1} << L);
    const auto dense = dense_xy_spectrum(L);
    ++r.checks;
    if (!x.complete || x.energies.size() != dense.size()) {
      ++r.violations;
      continue;
    }
    for (std::size_t i = 0; i < dense.size(); ++i) {
      const double e = std::fabs(x.energies[i] - dense[i]);
      ++r.checks;
      r.violations += !(e <= p.tol);
      r.worst = std::max(r.worst, e);
    }
  }
  std::ostringstream note;
  note << "gaps";
  double prev = INFINITY;
  for (int L : p.lengths) {
    const XySpectrum x = xy_chain_spectrum(L, 16);
    const double level_gap = x.energies[1] - x.energies[0];
    r.checks += 2;
    r.violations += !(x.gap < prev);
    r.violations += !(std::fabs(level_gap - x.gap) <= p.tol);
    note << ' ' << L << ':' << detail::fmt(x.gap);
    prev = x.gap;
  }
  r.note = note.str();
  return r;
}

// ---------------------------------------------------------------------------
// 11. Spectrum composition.

struct CompositionParams {
  int trials = 30;
  std::uint64_t seed = 12;
  double tol = 1e-9;
};

inline Report composition_oracle(const CompositionParams& p = {}) {
  Report r{11, "composed spectrum against assembled block models"};
  r.worst_label = "max |composed - dense|";
  std::mt19937_64 rng(p.seed);
  for (int t = 0; t < p.trials; ++t) {
    BlockModel bm;
    bm.uu = detail::random_hermitian(4, rng, t % 3 == 0 ? -3 : 0.5);
    bm.dense = detail::random_hermitian(4, rng, 1);
    bm.trivial = detail::random_hermitian(4, rng, -1);
    bm.beta = std::exp2(t % 7 - 3);
    bm.penalty = 1 + 0.25 * (t % 4);
    const auto oracle = detail::eigenvalues(bm.assemble());
    const auto c = compose_total_spectrum(detail::eigenvalues(bm.uu), detail::eigenvalues(bm.dense),
                                          detail::eigenvalues(bm.trivial), bm.beta, bm.mixed());
    ++r.checks;
    if (c.levels.size() != oracle.size()) {
      ++r.violations;
      continue;
    }
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const double e = std::fabs(c.levels[i].energy - oracle[i]);
      ++r.checks;
      r.violations += !(e <= p.tol);
      r.worst = std::max(r.worst, e);
    }
  }
  // min_uu >= 0: the trivial ground state wins with gap exactly 1.
  const auto xy = xy_chain_spectrum(8).energies;
  std::vector<double> dense;
  for (double e : xy) dense.push_back(e - xy.front());
  for (int L : {2, 5, 16, 64}) {
    for (double beta : {1e-3, 1.0, 10.0}) {
      const auto c = compose_total_spectrum({0.0, 0.25, 3.0}, dense, trivial_levels(-L, 1, 8), beta, {1.0, 2.0});
      r.checks += 3;
      r.violations += c.gap != 1.0;
      r.violations += c.ground_energy != -L;
      r.violations += c.ground_origin != Origin::Trivial;
    }
  }
  r.note = std::to_string(p.trials) + " random 36-dim block models; gap-one branch on L in {2, 5, 16, 64}";
  return r;
}

// ---------------------------------------------------------------------------
// 12. Schedule and separation.

struct ScheduleParams {
  std::uint64_t n_max = 10000;
  int samples = 20000;
  std::uint64_t seed = 99;
};

inline Report schedule_and_separation(const ScheduleParams& p = {}) {
  Report r{12, "schedule constraint and interval separation"};
  for (std::uint64_t n = 2; n <= p.n_max; ++n) {
    const std::uint64_t m = choose_m(n);
    r.checks += 2;
    r.violations += !schedule_constraint_holds(n, m);
    r.violations += !(m >= 1 && m < n);
  }
  const SquareEnergyModel model = calibrated(SquareEnergyModel{});
  const std::uint64_t sp = *model.s_prime, cap = model.s_max();
  ++r.checks;
  r.violations += !(sp <= cap);
  // Breakpoints of ceil(s^{1/8}) and of n - m, then random sides.
  std::vector<std::uint64_t> sides{sp, sp + 1, cap - 1, cap};
  for (std::uint64_t k = iroot_ceil(sp, 8); omegaphase::detail::ipow_sat(k, 8) < cap; ++k) {
    for (std::uint64_t d : {0, 1}) sides.push_back(omegaphase::detail::ipow_sat(k, 8) + d);
  }
  for (std::uint64_t q = iroot_ceil(sp - 5, 4); omegaphase::detail::ipow_sat(q, 4) + 6 < cap; q += 7) {
    for (std::uint64_t d : {5, 6}) sides.push_back(omegaphase::detail::ipow_sat(q, 4) + d);
  }
  std::mt19937_64 rng(p.seed);
  for (int i = 0; i < p.samples; ++i) sides.push_back(sp + rng() % (cap - sp + 1));
  for (std::uint64_t s : sides) {
    if (s < sp || s > cap) continue;
    const ExtReal mag = model.marker_magnitude(s);
    r.checks += 3;
    r.violations += !model.separated_at(s);
    r.violations += !(model.comp_interval(s, Regime::Halting).upper < mag);
    r.violations += !(ExtReal(3.0) * mag < model.comp_interval(s, Regime::Nonhalting).lower);
  }
  r.note = "s' = " + std::to_string(sp) + ", checked up to " + std::to_string(cap) + " on " +
           std::to_string(sides.size()) + " sides";
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::function<Report()>>& all() {
  static const std::vector<std::function<Report()>> list = {
      [] { return closed_forms(); },       [] { return impurity_walk(); },
      [] { return gap_law_band(); },       [] { return qpe_tail(); },
      [] { return qpe_rounded(); },        [] { return rounding_lemma(); },
      [] { return omega_limit(); },        [] { return witness_and_sweep(); },
      [] { return jordan_reconstruction(); }, [] { return xy_oracle(); },
      [] { return composition_oracle(); }, [] { return schedule_and_separation(); },
  };
  return list;
}

}  // namespace omegaphase::experiments
