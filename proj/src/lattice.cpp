#include "anw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace anw {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::homogeneous: return "homogeneous";
    case ProfileKind::parabolic: return "parabolic";
    case ProfileKind::square_root: return "square_root";
    case ProfileKind::custom: return "custom";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "homogeneous") return ProfileKind::homogeneous;
  if (name == "parabolic") return ProfileKind::parabolic;
  if (name == "square_root" || name == "square-root") return ProfileKind::square_root;
  if (name == "custom") return ProfileKind::custom;
  throw ValidationError("unknown coupling profile kind '" + std::string(name) + "'");
}

CouplingProfile make_profile(ProfileKind kind, std::size_t n, double c0,
                             const std::optional<std::vector<double>>& custom_factors) {
  if (n < 1) throw ValidationError("profile: n_waveguides must be >= 1");
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw ValidationError("profile: c0 must be a positive finite number");

  CouplingProfile p;
  p.kind = kind;
  p.n_waveguides = n;
  p.c0 = c0;
  p.factors.resize(n - 1);

  const auto nd = static_cast<double>(n);
  for (std::size_t idx = 0; idx + 1 < n; ++idx) {
    const auto j = static_cast<double>(idx + 1);
    switch (kind) {
      case ProfileKind::homogeneous: p.factors[idx] = 1.0; break;
      case ProfileKind::parabolic: p.factors[idx] = std::sqrt(j * (nd - j)) / 2.0; break;
      case ProfileKind::square_root: p.factors[idx] = std::sqrt(j); break;
      case ProfileKind::custom: break;
    }
  }

  if (kind == ProfileKind::custom) {
    if (!custom_factors) throw ValidationError("profile: custom kind requires factors");
    if (custom_factors->size() != n - 1) {
      throw ValidationError("profile: custom factors must have n - 1 = " + std::to_string(n - 1) +
                            " entries, got " + std::to_string(custom_factors->size()));
    }
    for (double f : *custom_factors) {
      if (f == 0.0 || !std::isfinite(f)) throw ValidationError("profile: custom factors must be finite and nonzero");
    }
    p.factors = *custom_factors;
  } else if (custom_factors) {
    throw ValidationError("profile: factors are only accepted for the custom kind");
  }
  return p;
}

std::vector<double> CouplingMatrix::off_diagonal() const {
  std::vector<double> e;
  for (std::size_t j = 0; j + 1 < size(); ++j) e.push_back(entries(j, j + 1));
  return e;
}

CouplingMatrix build_coupling_matrix(const CouplingProfile& profile) {
  const std::size_t n = profile.n_waveguides;
  if (profile.factors.size() + 1 != n) throw ValidationError("profile: factors length must be n - 1");
  CouplingMatrix omega{RealMatrix(n, n)};
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double c = profile.coupling(j);
    omega.entries(j, j + 1) = c;
    omega.entries(j + 1, j) = c;
  }
  return omega;
}

namespace {

void validate_tridiagonal(const CouplingMatrix& omega) {
  const RealMatrix& a = omega.entries;
  if (!a.square() || a.rows() == 0) throw ValidationError("coupling matrix must be square and non-empty");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j);
      const bool band = (i + 1 == j) || (j + 1 == i);
      if (!band && v != 0.0) throw ValidationError("coupling matrix must be tridiagonal with zero diagonal");
      if (band && v != a(j, i)) throw ValidationError("coupling matrix must be symmetric");
      if (band && v == 0.0) throw ValidationError("coupling matrix has a zero coupling (reduced tridiagonal)");
    }
  }
}

// Flips each row so that its first component is positive. The first
// component can be tiny (for example at the spectral edges of a parabolic
// array), so its sign is not read off directly. Instead it is recovered from
// the row's dominant component through the three-term recurrence
//   v[j+1] = p_j(lambda) / (C_1 ... C_j) * v[1],
// where p_j is the characteristic polynomial of the leading j x j block. The
// sign of p_j is accumulated from Sturm ratios, which stays reliable even
// when an intermediate ratio passes close to zero.
void fix_signs(Eigensystem& es, const std::vector<double>& off) {
  const std::size_t n = es.size();
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t k = 0; k < n; ++k) {
    auto row = es.s_matrix.row(k);
    std::size_t dom = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(row[j]) > std::abs(row[dom])) dom = j;

    const double lambda = es.eigenvalues[k];
    int sign = 1;
    double ratio = 0.0;
    for (std::size_t j = 0; j < dom; ++j) {
      // ratio_j = p_{j+1} / p_j; 0-based j here runs over the leading blocks.
      ratio = (j == 0) ? lambda : lambda - off[j - 1] * off[j - 1] / ratio;
      if (ratio == 0.0) ratio = tiny;
      if (ratio < 0.0) sign = -sign;
      if (off[j] < 0.0) sign = -sign;
    }
    if ((row[dom] < 0.0) != (sign < 0)) {
      for (double& v : row) v = -v;
    }
  }
}

}  // namespace

Eigensystem diagonalize(const CouplingMatrix& omega) {
  validate_tridiagonal(omega);
  const std::size_t n = omega.size();
  const std::vector<double> off = omega.off_diagonal();

  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  // Row i of vt is the i-th eigenvector column of the classic formulation,
  // so every plane rotation touches two contiguous rows.
  RealMatrix vt = RealMatrix::identity(n);

  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t iteration_cap = 50 * n;
  std::size_t iterations = 0;
  double f = 0.0;
  double tst1 = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      do {
        if (++iterations > iteration_cap) {
          throw ConvergenceError("diagonalize: implicit QL exceeded " + std::to_string(iteration_cap) +
                                 " iterations");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);

          double* lo = vt.row(ii).data();
          double* hi = vt.row(ii + 1).data();
          for (std::size_t k = 0; k < n; ++k) {
            const double t = hi[k];
            hi[k] = s * lo[k] + c * t;
            lo[k] = c * lo[k] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  Eigensystem es;
  es.eigenvalues.resize(n);
  es.s_matrix = RealMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.eigenvalues[k] = d[order[k]];
    std::copy_n(vt.row(order[k]).data(), n, es.s_matrix.row(k).data());
  }
  fix_signs(es, off);
  return es;
}

Eigensystem analytic_eigensystem_homogeneous(std::size_t n, double c0) {
  if (n < 1) throw ValidationError("analytic_eigensystem_homogeneous: n must be >= 1");
  const double step = std::numbers::pi / static_cast<double>(n + 1);
  Eigensystem es;
  es.eigenvalues.resize(n);
  es.s_matrix = RealMatrix(n, n);
  for (std::size_t a = 1; a <= n; ++a) {
    es.eigenvalues[a - 1] = 2.0 * c0 * std::cos(static_cast<double>(a) * step);
    double norm2 = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double v = std::sin(static_cast<double>(k * a) * step);
      norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t b = 1; b <= n; ++b)
      es.s_matrix(a - 1, b - 1) = std::sin(static_cast<double>(a * b) * step) * inv;
  }
  return es;
}

double reconstruction_residual(const Eigensystem& es, const CouplingMatrix& omega) {
  const std::size_t n = es.size();
  require_same_shape(n, n, omega.size(), omega.size(), "reconstruction_residual");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += es.s_matrix(k, i) * es.eigenvalues[k] * es.s_matrix(k, j);
      worst = std::max(worst, std::abs(acc - omega.entries(i, j)));
    }
  return worst;
}

double orthogonality_residual(const Eigensystem& es) {
  const std::size_t n = es.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += es.s_matrix(i, k) * es.s_matrix(j, k);
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace anw
