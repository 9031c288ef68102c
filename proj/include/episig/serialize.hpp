#pragma once

#include "episig/equilibrium.hpp"
#include "episig/game.hpp"
#include "episig/monte_carlo.hpp"
#include "episig/oracle.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace episig {

using Json = nlohmann::ordered_json;

/// Malformed input document. `where()` is a dotted field path or "line L, column C".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Rounds to 12 significant digits so that serialized files are stable.
double round12(double v);
/// "%.12g" formatting.
std::string fmt12(double v);

/// Parses JSON text; syntax errors become ParseError with a line/column address.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Game file: u_s_honest, cost, u_r, belief_sender, belief_receiver, optional label/comment.
// Shape errors throw ParseError; the game is not validated here.
EpistemicGame game_from_json(const Json& j);
Json game_to_json(const EpistemicGame& game);

// Profile file: sender {s0:{m0,m1}, s1:{m0,m1}}, receiver {m0:{r0:{a0,a1}, r1:..}, m1:..}.
StrategyProfile profile_from_json(const Json& j);
Json profile_to_json(const StrategyProfile& profile);

// Posterior: {m0:{r0:{s0,s1[,off_path]}|null, r1:..}, m1:..}; null marks a bare off-path cell.
BeliefSystem beliefs_from_json(const Json& j);
Json beliefs_to_json(const BeliefSystem& beliefs);

Json constants_to_json(const DerivedConstants& c);
Json verification_to_json(const VerificationResult& v);
Json family_to_json(const EquilibriumFamily& f, const VerificationResult& v);
Json report_to_json(const EquilibriumReport& report);
Json approx_to_json(const ApproxEquilibrium& e);
Json cross_check_to_json(const CrossCheck& cc);
Json estimate_to_json(const Estimate& e);

}  // namespace episig
