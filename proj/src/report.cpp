#include "dualcheck/report.hpp"

#include <algorithm>

#include "dualcheck/error.hpp"

namespace dualcheck {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kConfirmed: return "CONFIRMED";
    case Status::kRefuted: return "REFUTED";
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
  }
  return "UNKNOWN";
}

std::string_view to_string(ExtremumKind kind) {
  switch (kind) {
    case ExtremumKind::kLocalMin: return "LocalMin";
    case ExtremumKind::kLocalMax: return "LocalMax";
    case ExtremumKind::kNeitherWitnessed: return "NeitherWitnessed";
  }
  return "Unknown";
}

namespace {
const ClaimVerdict* find(const std::vector<ClaimVerdict>& all, std::string_view id) {
  auto it = std::find_if(all.begin(), all.end(), [&](const auto& c) { return c.claim_id == id; });
  return it == all.end() ? nullptr : &*it;
}
}  // namespace

const ClaimVerdict& RefutationReport::claim(std::string_view id) const {
  if (const auto* c = find(claims, id)) return *c;
  throw Error(ErrorCode::kInvalidArgument, "no claim '" + std::string(id) + "' in report");
}

bool RefutationReport::has_claim(std::string_view id) const { return find(claims, id) != nullptr; }

bool Certificate::passed() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const auto& c) { return c.status == Status::kPass; });
}

const ClaimVerdict& Certificate::clause(std::string_view id) const {
  if (const auto* c = find(clauses, id)) return *c;
  throw Error(ErrorCode::kInvalidArgument, "no clause '" + std::string(id) + "' in certificate");
}

}  // namespace dualcheck
