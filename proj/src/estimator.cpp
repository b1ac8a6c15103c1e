// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/estimator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "splitcc/noise.hpp"

namespace splitcc {

long long excitations_per_spin(int n, int zeta, int nu) {
  auto choose = [](long long a, long long b) -> long long {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (long long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
    return r;
  };
  return choose(zeta, nu) * choose(n - zeta, nu);
}

long long count_overlaps(int n_spatial_active, int n_alpha, int n_beta,
                         SplitMethod method) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial_active ||
      n_beta > n_spatial_active) {
    throw std::invalid_argument("electron counts exceed active orbitals");
  }
  const int max_rank = method == SplitMethod::tccsd ? 2 : 4;
  long long total = 0;
  for (int rank = 0; rank <= max_rank; ++rank) {
    for (int na = 0; na <= rank; ++na) {
      total += excitations_per_spin(n_spatial_active, n_alpha, na) *
               excitations_per_spin(n_spatial_active, n_beta, rank - na);
    }
  }
  return total;
}

double prefactor_from_t1diag(double t1_diag, double floor) {
  if (t1_diag < 0.0) throw std::invalid_argument("t1_diag must be >= 0");
  return std::max(375.9 * t1_diag - 0.84, floor);
}

double predict_error(double a, double d, double N, double sigma,
                     const PowerLawModel& model) {
  return a * std::pow(d, model.beta) * std::pow(N, model.gamma) * sigma;
}

namespace {

double budget(double a, double target, double d, double N, int n, double beta,
              double gamma) {
  return a * a / (target * target) * std::pow(d, 2.0 * beta) *
         std::pow(N, 2.0 * gamma) * std::sqrt(2.0 * n);
}

long long ceil_count(double s) { return static_cast<long long>(std::ceil(s - 1e-9 * s)); }

}  // namespace

ShotBudget shot_budget(const ShotBudgetQuery& q, const PowerLawModel& model) {
  if (!q.assume_half_filling) {
    throw std::invalid_argument("shot budget implemented for half filling only");
  }
  if (!(q.target_error > 0.0)) throw std::invalid_argument("target_error must be > 0");
  if (q.n <= 0 || q.n % 2 != 0) throw std::invalid_argument("n must be positive and even");
  if (!(q.d > 0.0) || !(q.N > 0.0)) throw std::invalid_argument("d and N must be positive");
  ShotBudget out;
  out.a = prefactor_from_t1diag(q.t1_diag);
  out.s_exact = budget(out.a, q.target_error, q.d, q.N, q.n, model.beta, model.gamma);
  out.s = ceil_count(out.s_exact);
  out.s_low = ceil_count(budget(out.a, q.target_error, q.d, q.N, q.n,
                                model.beta - model.beta_err, model.gamma - model.gamma_err));
  out.s_high = ceil_count(budget(out.a, q.target_error, q.d, q.N, q.n,
                                 model.beta + model.beta_err, model.gamma + model.gamma_err));
  return out;
}

CurveBudget total_curve_budget(const std::vector<double>& t1_diags, double d,
                               double N, int n, double target_error,
                               const PowerLawModel& model) {
  CurveBudget out;
  for (double t : t1_diags) {
    ShotBudgetQuery q;
    q.t1_diag = t;
    q.target_error = target_error;
    q.d = d;
    q.N = N;
    q.n = n;
    out.rows.push_back(shot_budget(q, model));
    out.total += out.rows.back().s;
  }
  return out;
}

namespace {

struct Fit {
  double c, beta, gamma;
};

Fit global_fit(const std::vector<PowerLawRecord>& r, const std::vector<std::size_t>& pick) {
  const std::size_t n = pick.size();
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = r[pick[k]];
    A(k, 0) = 1.0;
    A(k, 1) = std::log(x.d);
    A(k, 2) = std::log(x.N);
    y[k] = std::log(x.mean_abs_error / x.sigma);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw std::invalid_argument("degenerate power-law design matrix");
  const Eigen::VectorXd c = qr.solve(y);
  return {c[0], c[1], c[2]};
}

}  // namespace

PowerLawModel fit_power_law(const std::vector<PowerLawRecord>& records, int n_bootstrap,
                            std::uint64_t seed) {
  std::set<double> ds, Ns;
  for (const auto& r : records) {
    if (!(r.d > 0) || !(r.N > 0) || !(r.sigma > 0) || !(r.mean_abs_error > 0)) {
      throw std::invalid_argument("power-law records must be positive");
    }
    ds.insert(r.d);
    Ns.insert(r.N);
  }
  if (ds.size() < 2 || Ns.size() < 2) {
    throw std::invalid_argument("need at least two distinct d and N values");
  }
  std::vector<std::size_t> all(records.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  const Fit f = global_fit(records, all);

  PowerLawModel m;
  m.beta = f.beta;
  m.gamma = f.gamma;
  m.a_global = std::exp(f.c);
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& r : records) {
    const double resid = std::log(r.mean_abs_error / r.sigma) - f.beta * std::log(r.d) -
                         f.gamma * std::log(r.N);
    auto& [s, c] = acc[r.label];
    s += resid;
    ++c;
  }
  for (const auto& [label, sc] : acc) m.per_label_prefactors[label] = std::exp(sc.first / sc.second);

  m.beta_err = 0.0;
  m.gamma_err = 0.0;
  if (n_bootstrap > 1) {
    PhiloxStream rng(seed, 0);
    std::vector<double> bs, gs;
    std::vector<std::size_t> pick(records.size());
    for (int b = 0; b < n_bootstrap; ++b) {
      for (auto& p : pick) p = rng.next_u32() % records.size();
      try {
        const Fit fb = global_fit(records, pick);
        bs.push_back(fb.beta);
        gs.push_back(fb.gamma);
      } catch (const std::invalid_argument&) {
        // Degenerate resample; skipped.
      }
    }
    auto stdev = [](const std::vector<double>& x) {
      if (x.size() < 2) return 0.0;
      double mean = 0.0;
      for (double v : x) mean += v;
      mean /= x.size();
      double var = 0.0;
      for (double v : x) var += (v - mean) * (v - mean);
      return std::sqrt(var / (x.size() - 1));
    };
    m.beta_err = stdev(bs);
    m.gamma_err = stdev(gs);
  }
  return m;
}

}  // namespace splitcc
