#pragma once

#include <utility>
#include <vector>

#include "wellcascade/potential.hpp"
#include "wellcascade/quantities.hpp"

namespace wellcascade {

// Finite-difference reference solver: central second differences of
// -(hbar^2/2m) psi'' + V psi on a uniform grid with Dirichlet walls. Used to
// check the transcendental solver independently of the matching equations.

struct FdConfig {
  int grid_points = 20001;  // nodes including both wall nodes; odd, >= 1001
  double padding = 0.0;     // A of barrier-top potential added beyond each wall
  bool extrapolate = false;  // Richardson step-halving

  void validate() const;
  bool operator==(const FdConfig&) const = default;
};

struct FdLevels {
  std::vector<double> levels;  // eV, ascending, all below max(profile)
  // Richardson correction per level, |extrapolated - unextrapolated|: an error
  // estimate for the plain run at cfg.grid_points. Empty unless extrapolation
  // was requested.
  std::vector<double> error_estimates;
  bool truncated = false;  // fewer bound states than requested
};

/// Lowest `n_levels` bound-state eigenvalues of the discretised Hamiltonian,
/// by Sturm-sequence bisection on the symmetric tridiagonal matrix.
FdLevels fd_levels(const PotentialProfile& profile, int n_levels, const FdConfig& cfg = {},
                   const PhysicalConstants& c = codata2018());

struct FdSplitting {
  double value;           // eV, E_j - E_i
  double error_estimate;  // eV; 0 without extrapolation
};

FdSplitting fd_splitting(const PotentialProfile& profile, std::pair<int, int> level_indices,
                         const FdConfig& cfg = {}, const PhysicalConstants& c = codata2018());

struct FdEigenvector {
  double energy;
  std::vector<double> x;    // A, interior nodes
  std::vector<double> psi;  // integral of psi^2 dx is 1, first significant lobe positive
};

/// Eigenvector by inverse iteration at the bisected eigenvalue.
FdEigenvector fd_eigenvector(const PotentialProfile& profile, int index, const FdConfig& cfg = {},
                             const PhysicalConstants& c = codata2018());

/// Sign changes of a sampled function, ignoring samples below
/// `relative_floor` times the maximum magnitude.
int count_nodes(const std::vector<double>& psi, double relative_floor = 1e-12);

}  // namespace wellcascade
