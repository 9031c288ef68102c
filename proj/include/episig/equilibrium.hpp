#pragma once

#include "episig/game.hpp"
#include "episig/polytope.hpp"
#include "episig/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace episig {

enum class FamilyKind {
  kSeparating,
  kPoolingM0,
  kPoolingM1,
  kBeliefIndependent,
  kCandidateI,
  kCandidateII,
  kCandidateIII,
  kCandidateIV,
  kCandidateV,
  kCandidateVI,
};

/// Rows (i)..(vi) of the belief-dependent equilibrium candidates.
enum class CandidateId { kI = 1, kII, kIII, kIV, kV, kVI };

inline constexpr std::array<CandidateId, 6> kCandidates{CandidateId::kI,   CandidateId::kII,
                                                       CandidateId::kIII, CandidateId::kIV,
                                                       CandidateId::kV,   CandidateId::kVI};

const char* name(FamilyKind k);
const char* name(CandidateId id);  // "i" .. "vi"
std::optional<FamilyKind> parse_family_kind(const std::string& s);
std::optional<CandidateId> parse_candidate(const std::string& s);
FamilyKind kind_of(CandidateId id);

struct NamedConstant {
  std::string name;
  double value = 0.0;
};

/// One PBE family: linear constraints over the free strategy parameters plus a
/// checkable representative profile and its supporting posterior.
struct EquilibriumFamily {
  FamilyKind kind = FamilyKind::kSeparating;
  // Over (s00, s10).
  std::vector<SenderConstraint> sender_constraints;
  // Over sigma^r(a0|m,theta^r) flattened as [(m0,r0), (m0,r1), (m1,r0), (m1,r1)].
  std::vector<ReceiverConstraint> receiver_constraints;
  StrategyProfile representative;
  BeliefSystem posterior;
  std::vector<NamedConstant> constants;
  // Closure of the sender set.
  ConvexRegion sender_region;
  // Exists only on a measure-zero belief line, or uses a constant at 0 or 1.
  bool boundary = false;
  // The sender set collapsed to a single point.
  bool degenerate = false;
};

/// Result of a single solver: a family, or the reason there is none.
struct SolveResult {
  std::optional<EquilibriumFamily> family;
  std::string absent_reason;

  explicit operator bool() const { return family.has_value(); }
  static SolveResult absent(std::string why) { return {std::nullopt, std::move(why)}; }
};

struct RegionCase {
  char label = 'A';
  std::vector<CandidateId> candidates;
  bool at_c_prime = false;            // pi^s(r0) == C'
  bool at_one_minus_c_prime = false;  // pi^s(r0) == 1 - C'
};

/// Candidate list for a case label A..I.
std::vector<CandidateId> table_candidates(char label);

SolveResult solve_separating(const EpistemicGame& game);
SolveResult solve_pooling(const EpistemicGame& game, Message pooled);
SolveResult solve_belief_independent(const EpistemicGame& game);
SolveResult solve_candidate(const EpistemicGame& game, CandidateId id);

/// Throws std::domain_error when C' >= 1 (no partially-separating regime).
RegionCase classify_region(const EpistemicGame& game);

struct AbsentFamily {
  FamilyKind kind;
  std::string reason;
};

struct EquilibriumReport {
  DerivedConstants constants;
  std::optional<RegionCase> region;
  std::vector<EquilibriumFamily> families;
  std::vector<VerificationResult> verification;  // parallel to families
  std::vector<AbsentFamily> absent;

  const EquilibriumFamily* find(FamilyKind k) const;
  bool all_verified() const;
};

/// Every family from the separating/pooling and partially-separating
/// characterizations. Throws std::logic_error when the feasible candidates
/// disagree with the region classification.
EquilibriumReport enumerate_pbe(const EpistemicGame& game);

/// gamma^r(sigma^s, m, theta^r) as an affine form over (s00, s10).
SenderConstraint gamma_r_form(const EpistemicGame& game, Message m, ReceiverType r,
                              Relation rel);

}  // namespace episig
