#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualcheck/sym_matrix.hpp"

namespace dualcheck {

struct Witness {
  Vector point;
  double value;
};

enum class Status { kConfirmed, kRefuted, kPass, kFail };

std::string_view to_string(Status status);

// One judged statement: a theorem claim (CONFIRMED/REFUTED) or a
// certificate clause (PASS/FAIL), with the tolerance it was judged against.
struct ClaimVerdict {
  std::string claim_id;
  Status status;
  std::optional<Witness> witness;
  double reference_value = 0.0;
  double tolerance = 0.0;
  std::size_t samples_used = 0;
  std::string detail;
};

enum class ExtremumKind { kLocalMin, kLocalMax, kNeitherWitnessed };

std::string_view to_string(ExtremumKind kind);

struct LocalExtremumVerdict {
  ExtremumKind verdict;
  double center_value;
  std::optional<Witness> witness_low;
  std::optional<Witness> witness_high;
  std::size_t samples_used;
  double radius;
  double margin;  // absolute margin actually applied
};

struct RefutationReport {
  std::string family;
  std::string classification;  // definiteness tag or dual-set membership
  Vector x_bar;
  double primal_value = 0.0;
  double dual_value = 0.0;
  std::optional<LocalExtremumVerdict> local;
  std::vector<ClaimVerdict> claims;

  // Throws Error(kInvalidArgument) if no claim has this id.
  const ClaimVerdict& claim(std::string_view id) const;
  bool has_claim(std::string_view id) const;
};

struct Certificate {
  std::string part;
  std::vector<ClaimVerdict> clauses;
  std::optional<double> epsilon;

  bool passed() const;
  const ClaimVerdict& clause(std::string_view id) const;
};

}  // namespace dualcheck
