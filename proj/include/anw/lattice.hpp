#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "anw/matrix.hpp"

namespace anw {

enum class ProfileKind { homogeneous, parabolic, square_root, custom };

std::string_view to_string(ProfileKind kind);
/// Parses "homogeneous", "parabolic", "square_root" (or "square-root"), "custom".
ProfileKind parse_profile_kind(std::string_view name);

/// Nearest-neighbour coupling C_j = factors[j] * c0 between waveguides j and j+1.
struct CouplingProfile {
  ProfileKind kind = ProfileKind::homogeneous;
  std::size_t n_waveguides = 1;
  double c0 = 1.0;
  std::vector<double> factors;  // n_waveguides - 1 entries, none zero

  double coupling(std::size_t j) const { return factors.at(j) * c0; }
};

/// Builds a profile. homogeneous: f_j = 1; parabolic: f_j = sqrt(j (N - j)) / 2;
/// square_root: f_j = sqrt(j) (j = 1..N-1); custom: `custom_factors` verbatim.
/// Throws ValidationError for n < 1, c0 <= 0, a zero custom factor, or a
/// custom sequence of the wrong length.
CouplingProfile make_profile(ProfileKind kind, std::size_t n, double c0,
                             const std::optional<std::vector<double>>& custom_factors = std::nullopt);

/// Real symmetric tridiagonal matrix with zero diagonal.
struct CouplingMatrix {
  RealMatrix entries;
  std::size_t size() const { return entries.rows(); }
  /// Off-diagonal C_j, j = 0..N-2.
  std::vector<double> off_diagonal() const;
};

CouplingMatrix build_coupling_matrix(const CouplingProfile& profile);

/// Supermodes of the array.
///
/// eigenvalues are strictly decreasing; row k of s_matrix is the unit
/// eigenvector belonging to eigenvalues[k]. Each row is signed so that its
/// first component is positive. For an unreduced tridiagonal matrix that
/// component is never zero, and this choice makes the mirror pair relation
/// S(N-1-k, m) = (-1)^m S(k, m) (0-based) hold with a plus sign.
struct Eigensystem {
  std::vector<double> eigenvalues;
  RealMatrix s_matrix;
  std::size_t size() const { return eigenvalues.size(); }
};

/// Implicit-shift QL on the tridiagonal form. Throws ConvergenceError when the
/// total iteration count exceeds 50 * N, ValidationError when a coupling is
/// zero or the matrix is not tridiagonal with zero diagonal.
Eigensystem diagonalize(const CouplingMatrix& omega);

/// Closed-form supermodes of a homogeneous array:
/// lambda_n = 2 c0 cos(n pi / (N + 1)), S(n, m) = sin(n m pi / (N + 1)) / norm_n.
Eigensystem analytic_eigensystem_homogeneous(std::size_t n, double c0);

/// max |S^T diag(lambda) S - omega|.
double reconstruction_residual(const Eigensystem& es, const CouplingMatrix& omega);
/// max |S S^T - I|.
double orthogonality_residual(const Eigensystem& es);

}  // namespace anw
