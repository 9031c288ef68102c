#include "episig/sweep.hpp"

#include "episig/parallel.hpp"
#include "episig/serialize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace episig {

const char* name(SweepParam p) {
  return p == SweepParam::kCost ? "cost" : "belief_sender.r0";
}

std::optional<SweepParam> parse_sweep_param(const std::string& s) {
  if (s == "belief_sender.r0") return SweepParam::kBeliefSenderR0;
  if (s == "cost") return SweepParam::kCost;
  return std::nullopt;
}

void SweepSpec::check() const {
  if (steps < 2) throw std::invalid_argument("steps must be at least 2");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw std::invalid_argument("sweep range must satisfy lo <= hi");
  if (param == SweepParam::kBeliefSenderR0 && (lo < 0.0 || hi > 1.0))
    throw std::invalid_argument("belief_sender.r0 must stay within [0, 1]");
  if (param == SweepParam::kCost && lo <= 0.0)
    throw std::invalid_argument("cost must stay positive");
}

double SweepSpec::value(int step) const {
  if (step == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(step) / static_cast<double>(steps - 1);
}

EpistemicGame with_parameter(const EpistemicGame& base, SweepParam p, double v) {
  EpistemicGame g = base;
  if (p == SweepParam::kCost) {
    g.cost = v;
  } else {
    g.belief_sender = Eigen::Vector2d(v, 1.0 - v);
  }
  return g;
}

std::vector<SweepRow> run_sweep(const EpistemicGame& base, const SweepSpec& spec) {
  spec.check();
  require_valid(base);
  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.steps));
  parallel_for(rows.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = spec.value(static_cast<int>(i));
    EpistemicGame g = with_parameter(base, spec.param, row.value);
    EquilibriumReport report = enumerate_pbe(g);
    row.c_prime = report.constants.c_prime;
    if (report.region) row.region = report.region->label;
    for (CandidateId id : kCandidates) {
      if (const auto* f = report.find(kind_of(id))) {
        row.candidates.push_back(id);
        row.segments[static_cast<std::size_t>(idx(id) - 1)] = f->sender_region;
      }
    }
    if (const auto* bi = report.find(FamilyKind::kBeliefIndependent))
      row.belief_independent = bi->representative.sender.m0;
  });
  return rows;
}

namespace {

// Leftmost and rightmost vertices; for a segment these are its endpoints.
std::pair<Eigen::Vector2d, Eigen::Vector2d> extent(const ConvexRegion& r) {
  Eigen::Vector2d a = r.vertices.front(), b = r.vertices.front();
  for (const auto& v : r.vertices) {
    if (v(0) < a(0) || (v(0) == a(0) && v(1) < a(1))) a = v;
    if (v(0) > b(0) || (v(0) == b(0) && v(1) > b(1))) b = v;
  }
  return {a, b};
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# value = " << name(spec.param)
      << "; regime = partially-separating | separating-only; candidates = ';'-joined feasible "
         "ids; cand_<id>_* = sender set endpoints (s00,s10) from the lowest to the highest s00, "
         "empty when infeasible; bi_* = belief-independent point; polygons = vertices of "
         "two-dimensional candidate sets as <id>:s00 s10|s00 s10|...\n";
  out << "value,c_prime,regime,region,candidates";
  for (CandidateId id : kCandidates) {
    std::string p = std::string("cand_") + name(id) + "_";
    out << ',' << p << "s00_start," << p << "s10_start," << p << "s00_end," << p << "s10_end";
  }
  out << ",bi_s00,bi_s10,polygons\n";

  for (const auto& row : rows) {
    out << fmt12(row.value) << ',' << fmt12(row.c_prime) << ','
        << (row.region ? "partially-separating" : "separating-only") << ','
        << (row.region ? std::string(1, *row.region) : std::string()) << ',';
    for (std::size_t i = 0; i < row.candidates.size(); ++i)
      out << (i ? ";" : "") << name(row.candidates[i]);
    std::string polygons;
    for (std::size_t k = 0; k < kCandidates.size(); ++k) {
      const auto& seg = row.segments[k];
      if (!seg || seg->empty()) {
        out << ",,,,";
        continue;
      }
      auto [a, b] = extent(*seg);
      out << ',' << fmt12(a(0)) << ',' << fmt12(a(1)) << ',' << fmt12(b(0)) << ','
          << fmt12(b(1));
      if (seg->dimension() == 2) {
        if (!polygons.empty()) polygons += ';';
        polygons += std::string(name(kCandidates[k])) + ':';
        for (std::size_t v = 0; v < seg->vertices.size(); ++v)
          polygons += (v ? "|" : "") + fmt12(seg->vertices[v](0)) + ' ' +
                      fmt12(seg->vertices[v](1));
      }
    }
    if (row.belief_independent)
      out << ',' << fmt12((*row.belief_independent)(0)) << ','
          << fmt12((*row.belief_independent)(1));
    else
      out << ",,";
    out << ',' << polygons << '\n';
  }
  return out.str();
}

}  // namespace episig
