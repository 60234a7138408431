// Brute-force reference computations used by the tests. Written
// independently of the library: joint-action enumeration, hand-rolled
// Gaussian elimination and plain matrix powers.
#ifndef ZDLAB_TESTS_ORACLE_HPP_
#define ZDLAB_TESTS_ORACLE_HPP_

#include <array>
#include <cmath>
#include <random>
#include <utility>

namespace oracle {

using V4 = std::array<double, 4>;
using M4 = std::array<V4, 4>;

// State index 2*aX + aY with up=0, down=1, from X's side. Y reads the
// same state with the roles reversed.
inline M4 transition(const V4& p, const V4& q) {
  M4 m{};
  for (int ax = 0; ax < 2; ++ax) {
    for (int ay = 0; ay < 2; ++ay) {
      const double px = p[2 * ax + ay];
      const double qy = q[2 * ay + ax];
      m[2 * ax + ay][0] = px * qy;
      m[2 * ax + ay][1] = px * (1 - qy);
      m[2 * ax + ay][2] = (1 - px) * qy;
      m[2 * ax + ay][3] = (1 - px) * (1 - qy);
    }
  }
  return m;
}

inline V4 step(const V4& mu, const M4& m) {
  V4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[j] += mu[i] * m[i][j];
  return out;
}

// (1/t) sum_{s<t} mu M^s
inline V4 running_average(const M4& m, V4 mu, long t) {
  V4 acc{};
  for (long s = 0; s < t; ++s) {
    for (int j = 0; j < 4; ++j) acc[j] += mu[j];
    mu = step(mu, m);
  }
  for (double& a : acc) a /= static_cast<double>(t);
  return acc;
}

// Solves pi (M - I) = 0, sum pi = 1 by Gaussian elimination with partial
// pivoting. Only meaningful for a chain with a single recurrent class.
inline V4 stationary(const M4& m) {
  double a[4][5] = {};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 4; ++i) a[j][i] = m[i][j] - (i == j ? 1.0 : 0.0);
  }
  for (int i = 0; i < 4; ++i) a[3][i] = 1.0;
  a[3][4] = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    for (int k = 0; k < 5; ++k) std::swap(a[c][k], a[piv][k]);
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  V4 pi{};
  for (int i = 0; i < 4; ++i) pi[i] = a[i][4] / a[i][i];
  return pi;
}

inline double dot(const V4& a, const V4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Random strategy bounded away from the deterministic corners.
inline V4 interior(std::mt19937_64& rng, double margin = 0.02) {
  std::uniform_real_distribution<double> u(margin, 1.0 - margin);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace oracle

#endif  // ZDLAB_TESTS_ORACLE_HPP_
