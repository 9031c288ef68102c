#include "episig/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace episig {

const char* name(FamilyKind k) {
  switch (k) {
    case FamilyKind::kSeparating: return "Separating";
    case FamilyKind::kPoolingM0: return "PoolingM0";
    case FamilyKind::kPoolingM1: return "PoolingM1";
    case FamilyKind::kBeliefIndependent: return "BeliefIndependent";
    case FamilyKind::kCandidateI: return "CandidateI";
    case FamilyKind::kCandidateII: return "CandidateII";
    case FamilyKind::kCandidateIII: return "CandidateIII";
    case FamilyKind::kCandidateIV: return "CandidateIV";
    case FamilyKind::kCandidateV: return "CandidateV";
    case FamilyKind::kCandidateVI: return "CandidateVI";
  }
  return "?";
}

const char* name(CandidateId id) {
  switch (id) {
    case CandidateId::kI: return "i";
    case CandidateId::kII: return "ii";
    case CandidateId::kIII: return "iii";
    case CandidateId::kIV: return "iv";
    case CandidateId::kV: return "v";
    case CandidateId::kVI: return "vi";
  }
  return "?";
}

FamilyKind kind_of(CandidateId id) {
  return static_cast<FamilyKind>(static_cast<int>(FamilyKind::kCandidateI) +
                                 static_cast<int>(id) - 1);
}

std::optional<FamilyKind> parse_family_kind(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(FamilyKind::kCandidateVI); ++i) {
    auto k = static_cast<FamilyKind>(i);
    if (s == name(k)) return k;
  }
  return std::nullopt;
}

std::optional<CandidateId> parse_candidate(const std::string& s) {
  for (CandidateId id : kCandidates)
    if (s == name(id)) return id;
  return std::nullopt;
}

std::vector<CandidateId> table_candidates(char label) {
  using enum CandidateId;
  switch (label) {
    case 'A': return {kI, kVI};
    case 'B': return {kI, kII, kIII, kVI};
    case 'C': return {kIII, kVI};
    case 'D': return {kI, kIV, kV, kVI};
    case 'E': return {kI, kII, kIII, kIV, kV, kVI};
    case 'F': return {kIII, kIV, kV, kVI};
    case 'G': return {kI, kIV};
    case 'H': return {kI, kII, kIII, kIV};
    case 'I': return {kIII, kIV};
    default: throw std::invalid_argument(std::string("unknown region label ") + label);
  }
}

const EquilibriumFamily* EquilibriumReport::find(FamilyKind k) const {
  for (const auto& f : families)
    if (f.kind == k) return &f;
  return nullptr;
}

bool EquilibriumReport::all_verified() const {
  return std::all_of(verification.begin(), verification.end(),
                     [](const VerificationResult& v) { return v.passed(); });
}

SenderConstraint gamma_r_form(const EpistemicGame& game, Message m, ReceiverType r,
                              Relation rel) {
  const auto k = derive_constants(game);
  double p = game.receiver_belief(SenderType::kS0, r);
  Eigen::Vector2d slope(p * k.delta_ur_s0, (1.0 - p) * k.delta_ur_s1);
  SenderConstraint c;
  if (m == Message::kM0) {
    c.coeffs = slope;
    c.constant = 0.0;
  } else {
    c.coeffs = -slope;
    c.constant = slope.sum();
  }
  c.relation = rel;
  c.label = std::string("gamma_r(") + name(m) + "," + name(r) + ") " + symbol(rel) + " 0";
  return c;
}

namespace {

constexpr double kTol = kIndifferenceTol;

bool partial_regime(const DerivedConstants& k) { return k.c_prime < 1.0 - kTol; }

int flat_index(Message m, ReceiverType r) { return 2 * idx(m) + idx(r); }

std::string sigma_label(Message m, ReceiverType r) {
  return std::string("sigma_r(a0|") + name(m) + "," + name(r) + ")";
}

ReceiverConstraint fix_receiver(Message m, ReceiverType r, double a0_prob) {
  ReceiverConstraint c;
  c.coeffs(flat_index(m, r)) = 1.0;
  c.constant = -a0_prob;
  c.relation = Relation::kEq;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", a0_prob);
  c.label = sigma_label(m, r) + " == " + buf;
  return c;
}

void add_receiver_box(std::vector<ReceiverConstraint>& out, Message m, ReceiverType r) {
  ReceiverConstraint lo;
  lo.coeffs(flat_index(m, r)) = 1.0;
  lo.relation = Relation::kGe;
  lo.label = sigma_label(m, r) + " >= 0";
  ReceiverConstraint hi;
  hi.coeffs(flat_index(m, r)) = -1.0;
  hi.constant = 1.0;
  hi.relation = Relation::kGe;
  hi.label = sigma_label(m, r) + " <= 1";
  out.push_back(lo);
  out.push_back(hi);
}

// gamma^s = sum_r pi^s(r) [sigma(a0|m0,r) - sigma(a0|m1,r)] == C'
ReceiverConstraint gamma_s_row(const EpistemicGame& game, double c_prime) {
  double q0 = game.sender_belief(ReceiverType::kR0);
  double q1 = game.sender_belief(ReceiverType::kR1);
  ReceiverConstraint c;
  c.coeffs << q0, q1, -q0, -q1;
  c.constant = -c_prime;
  c.relation = Relation::kEq;
  c.label = "gamma_s == C'";
  return c;
}

SenderConstraint fix_sender(int coord, double value) {
  SenderConstraint c;
  c.coeffs(coord) = 1.0;
  c.constant = -value;
  c.relation = Relation::kEq;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  c.label = std::string(coord == 0 ? "s00" : "s10") + " == " + buf;
  return c;
}

void finish(const EpistemicGame& game, EquilibriumFamily& f) {
  if (f.sender_region.empty()) {
    ConvexRegion point;
    point.vertices = {f.representative.sender.m0};
    f.sender_region = point;
  }
  f.posterior = supporting_posterior(game, f.representative);
}

bool near(double a, double b) { return std::abs(a - b) <= kTol; }

}  // namespace

SolveResult solve_separating(const EpistemicGame& game) {
  require_valid(game);
  const auto k = derive_constants(game);
  if (partial_regime(k)) return SolveResult::absent("C' < 1: deception is profitable");

  EquilibriumFamily f;
  f.kind = FamilyKind::kSeparating;
  f.sender_constraints = {fix_sender(0, 1.0), fix_sender(1, 0.0)};
  f.representative.sender = SenderStrategy(1.0, 0.0);
  using enum Message;
  using enum ReceiverType;
  for (ReceiverType r : kReceiverTypes) {
    f.representative.receiver.set_a0(kM0, r, 1.0);
    f.representative.receiver.set_a0(kM1, r, 0.0);
    f.receiver_constraints.push_back(fix_receiver(kM0, r, 1.0));
    f.receiver_constraints.push_back(fix_receiver(kM1, r, 0.0));
  }
  f.constants = {{"C'", k.c_prime}};
  f.boundary = near(k.c_prime, 1.0);
  finish(game, f);
  return {std::move(f), {}};
}

SolveResult solve_pooling(const EpistemicGame& game, Message pooled) {
  require_valid(game);
  const auto k = derive_constants(game);
  if (!partial_regime(k)) return SolveResult::absent("C' >= 1: only separating PBE");

  using enum Message;
  using enum ReceiverType;
  const Message off = pooled == kM0 ? kM1 : kM0;
  // The receiver type whose off-path mix carries the gamma^s = C' condition.
  const ReceiverType mixer = pooled == kM0 ? kR0 : kR1;
  const double q = game.sender_belief(mixer);
  if (q < k.c_prime - kTol)
    return SolveResult::absent(std::string("pi^s(") + name(mixer) + ") < C'");

  EquilibriumFamily f;
  f.kind = pooled == kM0 ? FamilyKind::kPoolingM0 : FamilyKind::kPoolingM1;
  double x = pooled == kM0 ? 1.0 : 0.0;
  f.sender_constraints = {fix_sender(0, x), fix_sender(1, x)};
  f.representative.sender = SenderStrategy(x, x);

  auto& rec = f.representative.receiver;
  // On-path: prior preferences (a0 for r0, a1 for r1).
  rec.set_a0(pooled, kR0, 1.0);
  rec.set_a0(pooled, kR1, 0.0);
  f.receiver_constraints.push_back(fix_receiver(pooled, kR0, 1.0));
  f.receiver_constraints.push_back(fix_receiver(pooled, kR1, 0.0));
  f.receiver_constraints.push_back(gamma_s_row(game, k.c_prime));
  add_receiver_box(f.receiver_constraints, off, kR0);
  add_receiver_box(f.receiver_constraints, off, kR1);

  // Canonical off-path point: the other type keeps its prior-preferred action,
  // the mixer carries the gamma^s = C' balance.
  double mix = std::clamp(k.c_prime / q, 0.0, 1.0);
  if (pooled == kM0) {
    rec.set_a1(off, kR0, mix);
    rec.set_a0(off, kR1, 0.0);
  } else {
    rec.set_a0(off, kR0, 1.0);
    rec.set_a1(off, kR1, 1.0 - mix);
  }
  f.constants = {{"C'", k.c_prime}};
  f.boundary = near(q, k.c_prime);
  finish(game, f);
  return {std::move(f), {}};
}

SolveResult solve_belief_independent(const EpistemicGame& game) {
  require_valid(game);
  const auto k = derive_constants(game);
  if (!partial_regime(k)) return SolveResult::absent("requires C' < 1");

  using enum Message;
  using enum ReceiverType;
  auto g00 = gamma_r_form(game, kM0, kR0, Relation::kLt);
  auto g10 = gamma_r_form(game, kM1, kR0, Relation::kEq);
  auto g01 = gamma_r_form(game, kM0, kR1, Relation::kEq);
  auto g11 = gamma_r_form(game, kM1, kR1, Relation::kGt);

  Eigen::Matrix2d a;
  a.row(0) = g10.coeffs.transpose();
  a.row(1) = g01.coeffs.transpose();
  Eigen::Vector2d rhs(-g10.constant, -g01.constant);
  Eigen::FullPivLU<Eigen::Matrix2d> lu(a);
  if (!lu.isInvertible())
    return SolveResult::absent("singular system: receiver priors do not separate");
  Eigen::Vector2d s = lu.solve(rhs);

  if ((s.array() <= kTol).any() || (s.array() >= 1.0 - kTol).any())
    return SolveResult::absent("solution not interior to (0,1)^2");
  if (!g00.satisfied(s, kTol) || !g11.satisfied(s, kTol))
    return SolveResult::absent("gamma_r sign conditions fail at the solution");

  EquilibriumFamily f;
  f.kind = FamilyKind::kBeliefIndependent;
  f.sender_constraints = {g00, g10, g01, g11};
  f.representative.sender = SenderStrategy(s(0), s(1));

  auto& rec = f.representative.receiver;
  rec.set_a0(kM0, kR0, 1.0);
  rec.set_a1(kM1, kR1, 1.0);
  f.receiver_constraints.push_back(fix_receiver(kM0, kR0, 1.0));
  f.receiver_constraints.push_back(fix_receiver(kM1, kR1, 0.0));
  f.receiver_constraints.push_back(gamma_s_row(game, k.c_prime));
  add_receiver_box(f.receiver_constraints, kM1, kR0);
  add_receiver_box(f.receiver_constraints, kM0, kR1);

  // Free pair (alpha, beta) = (sigma(a0|m1,r0), sigma(a1|m0,r1)) on
  // pi^s(r0) alpha + pi^s(r1) beta = 1 - C'.
  auto line = clip_line_to_unit_square(game.sender_belief(kR0), game.sender_belief(kR1),
                                       1.0 - k.c_prime);
  if (line.empty()) return SolveResult::absent("receiver line misses the unit square");
  Eigen::Vector2d mid = line.center();
  rec.set_a0(kM1, kR0, mid(0));
  rec.set_a1(kM0, kR1, mid(1));

  f.constants = {{"C'", k.c_prime}};
  finish(game, f);
  return {std::move(f), {}};
}

SolveResult solve_candidate(const EpistemicGame& game, CandidateId id) {
  require_valid(game);
  const auto k = derive_constants(game);
  if (!partial_regime(k)) return SolveResult::absent("requires C' < 1");

  using enum Message;
  using enum ReceiverType;
  using enum CandidateId;
  const double c = k.c_prime;
  const double q0 = game.sender_belief(kR0);
  const double q1 = game.sender_belief(kR1);

  // Receiver probabilities sigma(a0|m1,r0) and sigma(a0|m0,r1); the two others
  // are fixed at sigma(a0|m0,r0) = 1 and sigma(a0|m1,r1) = 0 in every row.
  double a0_m1_r0 = 0.0;
  double a0_m0_r1 = 0.0;
  Relation rel_m1_r0 = Relation::kEq;
  Relation rel_m0_r1 = Relation::kEq;
  std::optional<NamedConstant> constant;
  bool boundary = false;

  // Constant tolerance is scaled by its denominator so that feasibility agrees
  // exactly with comparing pi^s(r0) against C' and 1 - C'.
  auto admit = [&](const char* label, double value, double den) -> bool {
    double slackness = kTol / den;
    if (!(value >= -slackness && value <= 1.0 + slackness)) return false;
    boundary = value <= slackness || value >= 1.0 - slackness;
    constant = NamedConstant{label, std::clamp(value, 0.0, 1.0)};
    return true;
  };

  switch (id) {
    case kI: {
      double c1 = (1.0 - c) / q1;
      if (!admit("C'1", c1, q1)) return SolveResult::absent("C'1 outside [0,1]");
      rel_m1_r0 = Relation::kGt;
      a0_m1_r0 = 0.0;
      rel_m0_r1 = Relation::kEq;
      a0_m0_r1 = 1.0 - constant->value;
      break;
    }
    case kII:
      if (!near(q0, c)) return SolveResult::absent("requires pi^s(r0) == C'");
      boundary = true;
      rel_m1_r0 = Relation::kGt;
      rel_m0_r1 = Relation::kGt;
      a0_m1_r0 = 0.0;
      a0_m0_r1 = 0.0;
      break;
    case kIII: {
      double c3 = 1.0 - c / q0;
      if (!admit("C'3", c3, q0)) return SolveResult::absent("C'3 outside [0,1]");
      rel_m1_r0 = Relation::kEq;
      a0_m1_r0 = constant->value;
      rel_m0_r1 = Relation::kGt;
      a0_m0_r1 = 0.0;
      break;
    }
    case kIV: {
      double c4 = (1.0 - c) / q0;
      if (!admit("C'4", c4, q0)) return SolveResult::absent("C'4 outside [0,1]");
      rel_m1_r0 = Relation::kEq;
      a0_m1_r0 = constant->value;
      rel_m0_r1 = Relation::kLt;
      a0_m0_r1 = 1.0;
      break;
    }
    case kV:
      if (!near(q0, 1.0 - c)) return SolveResult::absent("requires pi^s(r0) == 1 - C'");
      boundary = true;
      rel_m1_r0 = Relation::kLt;
      rel_m0_r1 = Relation::kLt;
      a0_m1_r0 = 1.0;
      a0_m0_r1 = 1.0;
      break;
    case kVI: {
      double c6 = 1.0 - c / q1;
      if (!admit("C'6", c6, q1)) return SolveResult::absent("C'6 outside [0,1]");
      rel_m1_r0 = Relation::kLt;
      a0_m1_r0 = 1.0;
      rel_m0_r1 = Relation::kEq;
      a0_m0_r1 = 1.0 - constant->value;
      break;
    }
  }

  EquilibriumFamily f;
  f.kind = kind_of(id);
  f.sender_constraints = {gamma_r_form(game, kM0, kR0, Relation::kLt),
                          gamma_r_form(game, kM1, kR0, rel_m1_r0),
                          gamma_r_form(game, kM0, kR1, rel_m0_r1),
                          gamma_r_form(game, kM1, kR1, Relation::kGt)};
  f.sender_region = feasible_region(f.sender_constraints);
  if (f.sender_region.empty()) return SolveResult::absent("sender system infeasible");

  Eigen::Vector2d s = f.sender_region.center();
  bool meets_all = std::all_of(f.sender_constraints.begin(), f.sender_constraints.end(),
                               [&](const SenderConstraint& sc) { return sc.satisfied(s, kTol); });
  if (!meets_all) return SolveResult::absent("sender set has empty relative interior");
  f.degenerate = f.sender_region.dimension() == 0;
  f.representative.sender = SenderStrategy(s(0), s(1));

  auto& rec = f.representative.receiver;
  rec.set_a0(kM0, kR0, 1.0);
  rec.set_a0(kM1, kR1, 0.0);
  rec.set_a0(kM1, kR0, a0_m1_r0);
  rec.set_a0(kM0, kR1, a0_m0_r1);
  for (Message m : kMessages)
    for (ReceiverType r : kReceiverTypes)
      f.receiver_constraints.push_back(fix_receiver(m, r, rec.prob(Action::kA0, m, r)));
  f.receiver_constraints.push_back(gamma_s_row(game, c));

  f.constants = {{"C'", c}};
  if (constant) f.constants.push_back(*constant);
  f.boundary = boundary;
  finish(game, f);
  return {std::move(f), {}};
}

RegionCase classify_region(const EpistemicGame& game) {
  require_valid(game);
  const auto k = derive_constants(game);
  if (!partial_regime(k)) throw std::domain_error("no partially-separating regime (C' >= 1)");
  const double q0 = game.sender_belief(ReceiverType::kR0);
  auto order = [](double a, double b) {
    if (a < b - kTol) return 0;
    if (a > b + kTol) return 2;
    return 1;
  };
  int col = order(q0, k.c_prime);
  int row = order(q0, 1.0 - k.c_prime);
  RegionCase rc;
  rc.label = static_cast<char>('A' + 3 * row + col);
  rc.candidates = table_candidates(rc.label);
  rc.at_c_prime = col == 1;
  rc.at_one_minus_c_prime = row == 1;
  return rc;
}

EquilibriumReport enumerate_pbe(const EpistemicGame& game) {
  require_valid(game);
  EquilibriumReport report;
  report.constants = derive_constants(game);

  auto take = [&](FamilyKind kind, SolveResult r) {
    if (r.family)
      report.families.push_back(std::move(*r.family));
    else
      report.absent.push_back({kind, r.absent_reason});
  };

  take(FamilyKind::kSeparating, solve_separating(game));
  take(FamilyKind::kPoolingM0, solve_pooling(game, Message::kM0));
  take(FamilyKind::kPoolingM1, solve_pooling(game, Message::kM1));
  take(FamilyKind::kBeliefIndependent, solve_belief_independent(game));

  if (partial_regime(report.constants)) {
    report.region = classify_region(game);
    std::vector<CandidateId> feasible;
    for (CandidateId id : kCandidates) {
      auto r = solve_candidate(game, id);
      if (r) feasible.push_back(id);
      take(kind_of(id), std::move(r));
    }
    if (feasible != report.region->candidates) {
      std::string msg = "candidate feasibility disagrees with region ";
      msg += report.region->label;
      msg += ": feasible {";
      for (auto id : feasible) msg += std::string(" ") + name(id);
      msg += " }";
      throw std::logic_error(msg);
    }
  } else {
    for (CandidateId id : kCandidates) report.absent.push_back({kind_of(id), "requires C' < 1"});
  }

  for (const auto& f : report.families)
    report.verification.push_back(verify_pbe(game, f.representative, f.posterior));
  return report;
}

}  // namespace episig
