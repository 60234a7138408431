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

#include "zdlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>

#include "zdlab/errors.hpp"
#include "zdlab/markov.hpp"

namespace zdlab {
namespace {

void check_shares(const std::vector<double>& shares, std::size_t n) {
  if (shares.size() != n) {
    throw InvalidArgument("share count does not match strategy count");
  }
  double sum = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0)) throw InvalidArgument("population shares must be >= 0");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidArgument("population shares must sum to 1");
  }
}

std::vector<double> fitness(const std::vector<double>& x, const PayoffTable& t) {
  std::vector<double> f(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) f[i] += x[j] * t.u[i][j];
  return f;
}

}  // namespace

void Population::validate() const { check_shares(shares, strategies.size()); }

PayoffTable payoff_table(const std::vector<NamedStrategy>& strategies,
                         const StageGame& game) {
  const std::size_t n = strategies.size();
  PayoffTable t;
  t.u.assign(n, std::vector<double>(n, 0.0));
  t.start_dependent.assign(n, std::vector<bool>(n, false));
  const Vec4 uniform{0.25, 0.25, 0.25, 0.25};
  for (std::size_t i = 0; i < n; ++i) {
    t.names.push_back(strategies[i].name);
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = expected_payoffs(strategies[i].strategy,
                                      strategies[j].strategy, game, uniform);
      t.u[i][j] = e.pi_x;
      t.start_dependent[i][j] = e.start_dependent;
    }
  }
  return t;
}

double mean_fitness(const std::vector<double>& shares, const PayoffTable& table) {
  const auto f = fitness(shares, table);
  return std::inner_product(shares.begin(), shares.end(), f.begin(), 0.0);
}

std::vector<std::vector<double>> replicator_trajectory(
    const std::vector<double>& shares, const PayoffTable& table, double dt,
    long steps, long record_every) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be >= 0");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
  check_shares(shares, table.size());

  std::vector<std::vector<double>> rows{shares};
  std::vector<double> x = shares;
  for (long s = 1; s <= steps; ++s) {
    const auto f = fitness(x, table);
    const double avg = std::inner_product(x.begin(), x.end(), f.begin(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::max(0.0, x[i] + dt * x[i] * (f[i] - avg));
      sum += x[i];
    }
    for (double& xi : x) xi /= sum;
    if (s % record_every == 0) rows.push_back(x);
  }
  return rows;
}

std::optional<double> stable_share_omega(const PayoffTable& table,
                                         std::size_t invader,
                                         std::size_t incumbent) {
  if (invader >= table.size() || incumbent >= table.size() ||
      invader == incumbent) {
    throw InvalidArgument("omega needs two distinct strategies of the table");
  }
  const auto& u = table.u;
  const double num = u[invader][incumbent] - u[incumbent][incumbent];
  const double den = num + u[incumbent][invader] - u[invader][invader];
  if (!(den > 0.0)) return std::nullopt;
  const double w = num / den;
  if (w < 0.0 || w > 1.0) return std::nullopt;
  return w;
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<std::vector<double>>& rows,
                          long record_every) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  os << "step";
  for (std::size_t i = 1; i <= n; ++i) os << ",share_" << i;
  os << '\n' << std::setprecision(17);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << static_cast<long>(r) * record_every;
    for (double v : rows[r]) os << ',' << v;
    os << '\n';
  }
}

}  // namespace zdlab
