#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// library's eigensolver or pipeline: eigenpairs come from cyclic Jacobi
// rotations on the dense matrix, and Q(z) is assembled from the analytic
// time integral of exp(i W t) diag(eta) exp(i W t) in that eigenbasis.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "anw/matrix.hpp"

namespace testref {

using anw::cplx;
using anw::ComplexMatrix;
using anw::RealMatrix;

struct Eig {
  std::vector<double> values;  // decreasing
  RealMatrix rows;             // row k = eigenvector of values[k], first nonzero entry positive
};

inline Eig jacobi(RealMatrix a) {
  const std::size_t n = a.rows();
  RealMatrix v = RealMatrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  Eig out;
  out.rows = RealMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]));
    double sign = 0.0;
    for (std::size_t m = 0; m < n && sign == 0.0; ++m)
      if (std::abs(v(m, order[k])) > 1e-12) sign = v(m, order[k]) > 0 ? 1.0 : -1.0;
    for (std::size_t m = 0; m < n; ++m) out.rows(k, m) = sign * v(m, order[k]);
  }
  return out;
}

inline RealMatrix tridiagonal(const std::vector<double>& couplings) {
  const std::size_t n = couplings.size() + 1;
  RealMatrix w(n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) w(j, j + 1) = w(j + 1, j) = couplings[j];
  return w;
}

/// Q(z) = i s int_0^z exp(iWt) diag(eta) exp(iWt) dt, with the integral done
/// in closed form per eigenvalue pair: int_0^z exp(i mu t) dt.
inline ComplexMatrix reference_q(const RealMatrix& w, const std::vector<cplx>& eta, double strength, double z) {
  const Eig e = jacobi(w);
  const std::size_t n = w.rows();
  ComplexMatrix inner(n, n);  // sum_j V_ja eta_j V_jb times the time integral
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      cplx p = 0.0;
      for (std::size_t j = 0; j < n; ++j) p += e.rows(a, j) * eta[j] * e.rows(b, j);
      const double mu = e.values[a] + e.values[b];
      const cplx integral = std::abs(mu * z) < 1e-9 ? cplx(z, 0.5 * mu * z * z)
                                                     : (std::exp(cplx(0.0, mu * z)) - 1.0) / cplx(0.0, mu);
      inner(a, b) = p * integral;
    }
  }
  ComplexMatrix q(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m) {
      cplx acc = 0.0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) acc += e.rows(a, k) * inner(a, b) * e.rows(b, m);
      q(k, m) = cplx(0.0, strength) * acc;
    }
  return q;
}

/// K = D o Q with D = sqrt(2) on the diagonal and 2 elsewhere.
inline ComplexMatrix with_degeneracy(ComplexMatrix q) {
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) *= (i == j ? std::sqrt(2.0) : 2.0);
  return q;
}

/// Correlation matrix restated from its definition: |K|^2 over the unordered-pair sum.
inline RealMatrix reference_gamma(const ComplexMatrix& k) {
  double norm = 0.0;
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = i; j < k.cols(); ++j) norm += std::norm(k(i, j));
  RealMatrix g(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) g(i, j) = std::norm(k(i, j)) / norm;
  return g;
}

struct Random {
  std::mt19937_64 gen;
  explicit Random(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  std::size_t integer(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(gen); }
  std::vector<double> factors(std::size_t n) {
    std::vector<double> f(n > 0 ? n - 1 : 0);
    for (double& x : f) x = uniform(0.2, 2.0);
    return f;
  }
  std::vector<cplx> unit_pump(std::size_t n) {
    std::vector<cplx> eta(n);
    double norm = 0.0;
    for (cplx& x : eta) {
      x = std::polar(uniform(0.05, 1.0), uniform(0.0, 6.283185307179586));
      norm += std::norm(x);
    }
    for (cplx& x : eta) x /= std::sqrt(norm);
    return eta;
  }
};

template <typename T>
double max_diff(const anw::Matrix<T>& a, const anw::Matrix<T>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, static_cast<double>(std::abs(a(i, j) - b(i, j))));
  return m;
}

}  // namespace testref
