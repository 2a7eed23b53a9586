#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dualcheck/finite_diff.hpp"
#include "dualcheck/kernels.hpp"
#include "dualcheck/problems.hpp"
#include "dualcheck/report.hpp"

namespace dualcheck {

struct OracleConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  double radius = 0.5;
  double margin = 1e-6;  // relative: applied as margin * max(1, |reference|)
  int grid_resolution = 81;
  Exec exec = Exec::kParallel;
};

void validate(const OracleConfig& cfg);

double effective_margin(const OracleConfig& cfg, double reference);

// Produces feasible points near a center; the count is a request, not a promise.
using NeighborSampler = std::function<std::vector<Vector>(const OracleConfig&)>;

/// Samples feasible neighbours of `center` within cfg.radius and reports
/// strict improvements beyond the margin in either direction. LocalMin or
/// LocalMax is evidence of absence of a witness, never a proof.
LocalExtremumVerdict classify_local_extremum(const ScalarField& objective,
                                             const NeighborSampler& sampler,
                                             const Vector& center, const OracleConfig& cfg);

struct BinaryMinimum {
  std::vector<std::uint64_t> argmins;  // codes, bit n-1-i holds x_i
  double value;
  Eigen::Index n;

  std::vector<std::string> bitstrings() const;
};

BinaryMinimum brute_force_binary_min(const BinaryProblem& p, Exec exec = Exec::kParallel);

struct GridMinimum {
  Vector point;
  double value;
  std::uint64_t evaluated;
};

// Exhaustive uniform grid over [lo, hi]; ties go to the lexicographically
// first grid point. Dimension is capped at 6.
GridMinimum grid_min(const ScalarField& objective, const Vector& lo, const Vector& hi,
                     int resolution, Exec exec = Exec::kParallel);

// Symmetric Q and f with entries uniform in [-scale, scale].
BinaryProblem random_instance(std::uint64_t seed, Eigen::Index n, double scale);

Vector binary_point(std::uint64_t code, Eigen::Index n);
std::string bitstring(std::uint64_t code, Eigen::Index n);

// Feasible samplers --------------------------------------------------------

// {x : 1/2 x'Cx <= level} near `center`. For n == 2 a deterministic polar
// grid around the center; otherwise seeded uniform draws in the ball. Points
// falling outside are pulled radially onto the boundary.
NeighborSampler ellipsoid_neighbors(const SymMatrix& C, double level, Vector center);

// Whole ellipsoid {x : 1/2 x'Cx <= level}: polar grid (n == 2) or uniform
// draws (general n), plus boundary points.
std::vector<Vector> ellipsoid_cover(const SymMatrix& C, double level, const OracleConfig& cfg);

// Box [lo, hi] near `center`: seeded draws in the radius ball, clipped onto the box.
NeighborSampler box_neighbors(Vector lo, Vector hi, Vector center);

std::vector<Vector> uniform_box_samples(const Vector& lo, const Vector& hi, std::size_t count,
                                        std::uint64_t seed);

}  // namespace dualcheck
