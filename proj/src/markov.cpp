// Copyright 2026 The zdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zdlab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zdlab/errors.hpp"

namespace zdlab {
namespace {

Vec4 row_times(const Vec4& v, const Mat4& a) {
  Vec4 out{};
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) out[j] += v[i] * a(i, j);
  }
  return out;
}

double max_row_gap(const Mat4& a) {
  double gap = 0.0;
  for (int i = 1; i < 4; ++i) gap = std::max(gap, (a.row(i) - a.row(0)).cwiseAbs().maxCoeff());
  return gap;
}

}  // namespace

Mat4 transition_matrix(const StrategyVector& p, const StrategyVector& q) {
  Mat4 m;
  for (int k = 0; k < 4; ++k) {
    const double px = p[k];
    const double qy = q[swap_perspective(k)];
    m(k, 0) = px * qy;
    m(k, 1) = px * (1.0 - qy);
    m(k, 2) = (1.0 - px) * qy;
    m(k, 3) = (1.0 - px) * (1.0 - qy);
  }
  return m;
}

Vec4 default_initial(const StrategyVector& p, const StrategyVector& q) {
  const double x = p.first_move(), y = q.first_move();
  return {x * y, x * (1.0 - y), (1.0 - x) * y, (1.0 - x) * (1.0 - y)};
}

MarkovChain make_chain(const StrategyVector& p, const StrategyVector& q,
                       std::optional<Vec4> mu1) {
  MarkovChain c{transition_matrix(p, q), mu1.value_or(default_initial(p, q))};
  double total = 0.0;
  for (double v : c.mu1) {
    if (v < 0.0) throw InvalidArgument("initial distribution has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("initial distribution does not sum to 1");
  }
  return c;
}

double determinant_d(const StrategyVector& p, const StrategyVector& q,
                     const Vec4& f) {
  Mat4 a;
  a << p[0] * q[0] - 1.0, p[0] - 1.0, q[0] - 1.0, f[0],
       p[1] * q[2],       p[1] - 1.0, q[2],       f[1],
       p[2] * q[1],       p[2],       q[1] - 1.0, f[2],
       p[3] * q[3],       p[3],       q[3],       f[3];
  return a.determinant();
}

ExpectedPayoffs expected_payoffs(const StrategyVector& p,
                                 const StrategyVector& q, const StageGame& game,
                                 std::optional<Vec4> mu1) {
  const auto s = game.payoff_vectors();
  ExpectedPayoffs out;
  out.denominator = determinant_d(p, q, {1, 1, 1, 1});
  const double mag = std::abs(out.denominator);

  if (mag >= kDegenerateDenominator) {
    out.pi_x = determinant_d(p, q, s.sx) / out.denominator;
    out.pi_y = determinant_d(p, q, s.sy) / out.denominator;
    for (int k = 0; k < 4; ++k) {
      Vec4 e{};
      e[k] = 1.0;
      out.stationary[k] = determinant_d(p, q, e) / out.denominator;
    }
    out.method = PayoffMethod::kDeterminant;
    if (mag >= kCrossCheckDenominator) return out;
  }

  const auto chain = make_chain(p, q, mu1);
  const auto ces = cesaro_stationary(chain.m, chain.mu1);
  if (mag >= kDegenerateDenominator) {
    double gap = 0.0;
    for (int k = 0; k < 4; ++k) {
      gap = std::max(gap, std::abs(ces.distribution[k] - out.stationary[k]));
    }
    out.cross_check_gap = gap;
    if (gap <= kCrossCheckDenominator) return out;
  }
  out.method = PayoffMethod::kCesaro;
  out.stationary = ces.distribution;
  out.start_dependent = ces.start_dependent;
  out.pi_x = out.pi_y = 0.0;
  for (int k = 0; k < 4; ++k) {
    out.pi_x += out.stationary[k] * s.sx[k];
    out.pi_y += out.stationary[k] * s.sy[k];
  }
  return out;
}

Mat4 cesaro_matrix(const Mat4& m, int n) {
  if (n < 1) throw InvalidArgument("Cesaro horizon must be positive");
  Mat4 power = Mat4::Identity();
  Mat4 sum = Mat4::Zero();
  for (int i = 0; i < n; ++i) {
    sum += power;
    power = power * m;
  }
  return sum / static_cast<double>(n);
}

std::vector<int> reachable_states(const Mat4& m, const Vec4& mu1) {
  std::array<bool, 4> seen{};
  std::vector<int> stack;
  for (int k = 0; k < 4; ++k) {
    if (mu1[k] > 0.0) {
      seen[k] = true;
      stack.push_back(k);
    }
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < 4; ++j) {
      if (!seen[j] && m(i, j) > 0.0) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  std::vector<int> out;
  for (int k = 0; k < 4; ++k) {
    if (seen[k]) out.push_back(k);
  }
  return out;
}

namespace {

void normalize_rows(Mat4& a) {
  for (int i = 0; i < 4; ++i) {
    const double sum = a.row(i).sum();
    if (sum > 0.0) a.row(i) /= sum;
  }
}

}  // namespace

CesaroResult cesaro_stationary(const Mat4& m, const Vec4& mu1,
                               const CesaroOptions& opts) {
  Mat4 avg = Mat4::Identity();  // A_1
  Mat4 power = m;               // M^1
  double horizon = 1.0;
  double residual = 0.0;
  for (int round = 0; round < opts.max_rounds; ++round) {
    Mat4 next = 0.5 * (avg + power * avg);
    normalize_rows(next);
    residual = (next - avg).cwiseAbs().maxCoeff();
    avg = next;
    // Squaring doubles any row-sum drift, so renormalize every round.
    power = power * power;
    normalize_rows(power);
    horizon *= 2.0;
    // One extra doubling past the tolerance guards against a round whose
    // change vanishes by accident (period-2 chains at horizon 1 -> 2).
    if (residual < opts.tol && round > 0) {
      CesaroResult r;
      r.limit = avg;
      r.distribution = row_times(mu1, avg);
      r.start_dependent = max_row_gap(avg) > 1e-9;
      r.horizon = horizon;
      r.residual = residual;
      return r;
    }
  }
  std::ostringstream os;
  os << "Cesaro average did not converge after " << opts.max_rounds
     << " doublings (residual " << residual << ")";
  throw ConvergenceError(os.str(), row_times(mu1, avg), residual);
}

ConvergenceBound convergence_constant(const StrategyVector& p,
                                      const StrategyVector& q, double s_hat,
                                      std::optional<Vec4> mu1) {
  if (!(s_hat > 0.0)) throw InvalidArgument("s_hat must be positive");
  const auto chain = make_chain(p, q, mu1);
  ConvergenceBound b;
  b.s_hat = s_hat;
  b.reduced_states = reachable_states(chain.m, chain.mu1);
  const int n = static_cast<int>(b.reduced_states.size());

  Eigen::MatrixXd reduced(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      reduced(i, j) = chain.m(b.reduced_states[i], b.reduced_states[j]);
    }
  }
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd a4 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < 4; ++i) {
    a4 += power;
    power = power * reduced;
  }
  a4 /= 4.0;

  for (int j = 0; j < n; ++j) {
    const double col_min = a4.col(j).minCoeff();
    if (col_min > b.epsilon) {
      b.epsilon = col_min;
      b.column = b.reduced_states[j];
    }
  }
  if (!(b.epsilon > 0.0)) {
    throw DomainError(
        "no column of A_4 on the reachable states is strictly positive; the "
        "chain must be reduced further");
  }
  b.c = 6.0 * s_hat * s_hat / b.epsilon;
  return b;
}

}  // namespace zdlab
