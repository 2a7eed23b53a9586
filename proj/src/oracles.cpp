#include "dualcheck/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dualcheck/error.hpp"
#include "dualcheck/rng.hpp"

namespace dualcheck {

void validate(const OracleConfig& cfg) {
  if (cfg.samples < 100) throw Error(ErrorCode::kInvalidArgument, "oracle samples must be >= 100");
  if (!(cfg.radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "oracle radius must be positive");
  if (!(cfg.margin >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "oracle margin must be >= 0");
  if (cfg.grid_resolution < 2) throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 2");
}

double effective_margin(const OracleConfig& cfg, double reference) {
  return cfg.margin * std::max(1.0, std::abs(reference));
}

LocalExtremumVerdict classify_local_extremum(const ScalarField& objective,
                                             const NeighborSampler& sampler,
                                             const Vector& center, const OracleConfig& cfg) {
  validate(cfg);
  const double center_value = objective(center);
  if (!std::isfinite(center_value)) {
    throw Error(ErrorCode::kInvalidArgument, "objective is not finite at the center point");
  }
  std::vector<Vector> points = sampler(cfg);
  const double reach = cfg.radius * (1.0 + 1e-12);
  std::erase_if(points, [&](const Vector& x) {
    return x.size() != center.size() || (x - center).norm() > reach;
  });
  if (points.empty()) throw Error(ErrorCode::kEmptySampler, "sampler produced no neighbour in radius");

  const auto ext = kernels::extrema(cfg.exec, objective, points);
  if (ext.evaluated == 0) throw Error(ErrorCode::kEmptySampler, "no finite objective value near center");

  LocalExtremumVerdict out{ExtremumKind::kLocalMin, center_value, std::nullopt, std::nullopt,
                           ext.evaluated, cfg.radius, effective_margin(cfg, center_value)};
  if (ext.min < center_value - out.margin) {
    out.witness_low = Witness{points[static_cast<std::size_t>(ext.argmin)], ext.min};
  }
  if (ext.max > center_value + out.margin) {
    out.witness_high = Witness{points[static_cast<std::size_t>(ext.argmax)], ext.max};
  }
  if (out.witness_low && out.witness_high) {
    out.verdict = ExtremumKind::kNeitherWitnessed;
  } else if (out.witness_low) {
    out.verdict = ExtremumKind::kLocalMax;
  }
  return out;
}

std::vector<std::string> BinaryMinimum::bitstrings() const {
  std::vector<std::string> out;
  out.reserve(argmins.size());
  for (auto code : argmins) out.push_back(bitstring(code, n));
  return out;
}

BinaryMinimum brute_force_binary_min(const BinaryProblem& p, Exec exec) {
  auto scan = exec == Exec::kSerial ? kernels::serial::binary_min(p.Q, p.f)
                                    : kernels::parallel::binary_min(p.Q, p.f);
  return {std::move(scan.argmins), scan.value, p.dim()};
}

GridMinimum grid_min(const ScalarField& objective, const Vector& lo, const Vector& hi,
                     int resolution, Exec exec) {
  if (lo.size() != hi.size() || lo.size() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid box bounds mismatch");
  }
  const auto scan = exec == Exec::kSerial ? kernels::serial::grid_argmin(objective, lo, hi, resolution)
                                          : kernels::parallel::grid_argmin(objective, lo, hi, resolution);
  return {kernels::grid_point(scan.index, lo, hi, resolution), scan.value, scan.evaluated};
}

BinaryProblem random_instance(std::uint64_t seed, Eigen::Index n, double scale) {
  if (n < 1 || !(scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "random_instance needs n >= 1, scale > 0");
  Rng rng(seed);
  Matrix q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      q(i, j) = rng.uniform(-scale, scale);
      q(j, i) = q(i, j);
    }
  }
  Vector f(n);
  for (Eigen::Index i = 0; i < n; ++i) f(i) = rng.uniform(-scale, scale);
  return BinaryProblem(SymMatrix(q), f);
}

Vector binary_point(std::uint64_t code, Eigen::Index n) {
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = static_cast<double>((code >> (n - 1 - i)) & 1U);
  return x;
}

std::string bitstring(std::uint64_t code, Eigen::Index n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (Eigen::Index i = 0; i < n; ++i) {
    if ((code >> (n - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

namespace {

// Radial pull onto {1/2 x'Cx <= level}.
Vector pull_inside(const SymMatrix& C, double level, Vector y) {
  const double h = 0.5 * C.quadratic_form(y);
  if (h > level) y *= std::sqrt(level / h);
  return y;
}

}  // namespace

NeighborSampler ellipsoid_neighbors(const SymMatrix& C, double level, Vector center) {
  return [C, level, center = std::move(center)](const OracleConfig& cfg) {
    std::vector<Vector> out;
    if (level < 0.0) return out;
    const Eigen::Index n = center.size();
    out.reserve(cfg.samples);
    if (n == 2) {
      const auto radii = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(cfg.samples)));
      const auto angles = (cfg.samples + radii - 1) / radii;
      for (std::size_t i = 0; i < radii; ++i) {
        const double rho = cfg.radius * static_cast<double>(i + 1) / static_cast<double>(radii);
        for (std::size_t j = 0; j < angles; ++j) {
          const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles);
          Vector y = center;
          y(0) += rho * std::cos(theta);
          y(1) += rho * std::sin(theta);
          out.push_back(pull_inside(C, level, std::move(y)));
        }
      }
    } else {
      Rng rng(cfg.seed);
      for (std::size_t k = 0; k < cfg.samples; ++k) {
        out.push_back(pull_inside(C, level, center + rng.in_ball(n, cfg.radius)));
      }
    }
    return out;
  };
}

std::vector<Vector> ellipsoid_cover(const SymMatrix& C, double level, const OracleConfig& cfg) {
  std::vector<Vector> out;
  if (level < 0.0) return out;
  const Eigen::Index n = C.dim();
  // x = sqrt(2 level) L^{-T} z maps the unit ball onto the ellipsoid, C = L L'.
  const Eigen::LLT<Matrix> llt(C.matrix());
  const Matrix to_x = std::sqrt(2.0 * level) *
                      llt.matrixU().solve(Matrix::Identity(n, n));
  if (n == 2) {
    const int radii = cfg.grid_resolution;
    const int angles = 4 * cfg.grid_resolution;
    out.reserve(static_cast<std::size_t>(radii * angles));
    for (int i = 0; i < radii; ++i) {
      const double r = static_cast<double>(i) / (radii - 1);
      for (int j = 0; j < angles; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angles;
        Vector z(2);
        z << r * std::cos(theta), r * std::sin(theta);
        out.push_back(to_x * z);
        if (i == 0) break;
      }
    }
  } else {
    Rng rng(cfg.seed);
    for (std::size_t k = 0; k < cfg.samples; ++k) out.push_back(to_x * rng.in_ball(n, 1.0));
    for (std::size_t k = 0; k < cfg.samples / 4; ++k) out.push_back(to_x * rng.unit_vector(n));
  }
  return out;
}

NeighborSampler box_neighbors(Vector lo, Vector hi, Vector center) {
  return [lo = std::move(lo), hi = std::move(hi), center = std::move(center)](const OracleConfig& cfg) {
    std::vector<Vector> out;
    out.reserve(cfg.samples);
    Rng rng(cfg.seed);
    for (std::size_t k = 0; k < cfg.samples; ++k) {
      Vector y = center + rng.in_ball(center.size(), cfg.radius);
      out.push_back(y.cwiseMax(lo).cwiseMin(hi));
    }
    return out;
  };
}

std::vector<Vector> uniform_box_samples(const Vector& lo, const Vector& hi, std::size_t count,
                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(rng.in_box(lo, hi));
  return out;
}

}  // namespace dualcheck
