#include "episig/cli.hpp"

#include "episig/equilibrium.hpp"
#include "episig/monte_carlo.hpp"
#include "episig/oracle.hpp"
#include "episig/serialize.hpp"
#include "episig/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace episig {

namespace {

// Domain-level failure carrying its exit code.
struct CommandError {
  int code;
  std::string message;
};

EpistemicGame load_game(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw CommandError{kExitInvalid, e.what()};
  }
  return game_from_json(parse_json_text(text));
}

EpistemicGame load_valid_game(const std::string& path, std::ostream& err) {
  EpistemicGame g = load_game(path);
  ValidationReport report = validate_game(g);
  if (!report.ok()) {
    for (const auto& v : report.violations) err << "invalid: " << v.name << ": " << v.detail << '\n';
    throw CommandError{kExitInvalid, "game violates modelling assumptions"};
  }
  return g;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

std::string point_str(const Eigen::Vector2d& p) {
  return "(" + fmt12(p(0)) + ", " + fmt12(p(1)) + ")";
}

int cmd_validate(const std::string& path, std::ostream& out) {
  EpistemicGame g = load_game(path);
  ValidationReport report = validate_game(g);
  for (const auto& v : report.violations) out << v.name << ": " << v.detail << '\n';
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_solve(const std::string& path, const std::string& json_out, std::ostream& out,
              std::ostream& err) {
  EpistemicGame g = load_valid_game(path, err);
  EquilibriumReport report = enumerate_pbe(g);
  std::ostringstream summary;
  summary << "C' = " << fmt12(report.constants.c_prime) << '\n';
  if (report.region) {
    summary << "region " << report.region->label << " (candidates";
    for (CandidateId id : report.region->candidates) summary << ' ' << name(id);
    summary << ")\n";
  } else {
    summary << "regime separating-only\n";
  }
  for (std::size_t i = 0; i < report.families.size(); ++i) {
    const auto& f = report.families[i];
    summary << name(f.kind) << ": sender " << point_str(f.representative.sender.m0);
    for (const auto& c : f.constants) summary << ' ' << c.name << '=' << fmt12(c.value);
    if (f.boundary) summary << " [boundary]";
    if (f.degenerate) summary << " [degenerate]";
    summary << (report.verification[i].passed() ? " verified" : " NOT VERIFIED") << '\n';
  }
  std::string json = report_to_json(report).dump(2) + "\n";
  if (json_out == "-") {
    out << json;
  } else {
    out << summary.str();
    if (!json_out.empty()) write_text_file(json_out, json);
  }
  return report.all_verified() ? kExitOk : kExitMismatch;
}

int cmd_verify(const std::string& path, const std::string& profile_path, int grid,
               std::optional<double> eps_opt, const std::string& json_out, std::ostream& out,
               std::ostream& err) {
  EpistemicGame g = load_valid_game(path, err);
  if (grid < 11) throw CommandError{kExitInvalid, "--grid must be at least 11"};
  const double resolution = 2.0 / (grid - 1);
  const double eps = eps_opt.value_or(1.0 / (grid - 1));
  if (!(eps > 0.0)) throw CommandError{kExitInvalid, "--eps must be positive"};
  if (grid < kCoarseGrid)
    err << "warning: grid " << grid << " is coarse; oracle resolution is " << fmt12(resolution)
        << '\n';

  Json doc = Json::object();
  int code = kExitOk;

  if (!profile_path.empty()) {
    Json pj = read_json_file(profile_path);
    StrategyProfile profile = profile_from_json(pj);
    BeliefSystem posterior = pj.contains("posterior") ? beliefs_from_json(pj.at("posterior"))
                                                      : supporting_posterior(g, profile);
    VerificationResult v = verify_pbe(g, profile, posterior);
    doc["profile"] = verification_to_json(v);
    if (v.passed()) {
      out << "profile: PBE verified\n";
    } else {
      code = kExitMismatch;
      for (const auto& x : v.violations)
        out << "profile: " << x.condition << " violated (value " << fmt12(x.lhs)
            << ", threshold " << fmt12(x.threshold) << ", margin " << fmt12(x.margin) << ")\n";
    }
  }

  EquilibriumReport report = enumerate_pbe(g);
  auto emitted = brute_force_equilibria(g, grid, eps);
  CrossCheck cc = cross_check(report, emitted, resolution);
  doc["grid"] = grid;
  doc["eps"] = round12(eps);
  doc["emitted"] = emitted.size();
  doc["cross_check"] = cross_check_to_json(cc);

  out << "oracle: grid " << grid << ", eps " << fmt12(eps) << ", " << emitted.size()
      << " points emitted, max stray distance " << fmt12(cc.max_stray_distance)
      << ", max family gap " << fmt12(cc.max_family_gap) << '\n';
  for (const auto& s : cc.stray)
    out << "stray oracle point " << point_str(s.sender) << " is not near any analytic family\n";
  for (const auto& u : cc.unconfirmed)
    out << name(u.kind) << " point " << point_str(u.point) << " not confirmed (nearest oracle point "
        << fmt12(u.distance) << " away)\n";
  if (!cc.passed()) code = kExitMismatch;
  if (!report.all_verified()) {
    out << "analytic family failed verification\n";
    code = kExitMismatch;
  }
  if (code == kExitOk) out << "oracle: all analytic families confirmed\n";
  if (!json_out.empty()) emit(json_out, doc.dump(2) + "\n", out);
  return code;
}

int cmd_sweep(const std::string& path, const std::string& param, double lo, double hi, int steps,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  EpistemicGame g = load_valid_game(path, err);
  auto p = parse_sweep_param(param);
  if (!p) throw CommandError{kExitInvalid, "unknown sweep parameter '" + param + "'"};
  SweepSpec spec{*p, lo, hi, steps};
  try {
    spec.check();
  } catch (const std::invalid_argument& e) {
    throw CommandError{kExitInvalid, e.what()};
  }
  emit(out_path, sweep_csv(spec, run_sweep(g, spec)), out);
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& family, std::uint64_t samples,
                 std::uint64_t seed, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  EpistemicGame g = load_valid_game(path, err);
  if (samples < 1) throw CommandError{kExitInvalid, "--samples must be at least 1"};
  EquilibriumReport report = enumerate_pbe(g);
  std::vector<const EquilibriumFamily*> chosen;
  if (family == "all") {
    for (const auto& f : report.families) chosen.push_back(&f);
  } else {
    auto kind = parse_family_kind(family);
    if (!kind) throw CommandError{kExitInvalid, "unknown family '" + family + "'"};
    const auto* f = report.find(*kind);
    if (!f) throw CommandError{kExitInvalid, family + " does not exist for this game"};
    chosen.push_back(f);
  }

  std::ostringstream csv;
  csv << "# rng = " << kMonteCarloRng << "; seed = " << seed
      << "; flag = 1 when |estimate - analytic| > 4 * se\n";
  csv << "family,quantity,analytic,estimate,se,n,seed,diff,flag\n";
  int flags = 0;
  auto row = [&](const EquilibriumFamily& f, const std::string& q, double analytic,
                 const Estimate& e) {
    double diff = e.mean - analytic;
    bool flag = std::abs(diff) > 4.0 * e.se + 1e-12;
    flags += flag;
    csv << name(f.kind) << ',' << q << ',' << fmt12(analytic) << ',' << fmt12(e.mean) << ','
        << fmt12(e.se) << ',' << e.n << ',' << seed << ',' << fmt12(diff) << ',' << flag << '\n';
  };
  for (const auto* f : chosen) {
    PayoffEstimates est =
        monte_carlo_payoff(g, f->representative, TypeDraw::from_game(g, f->posterior), samples, seed);
    for (SenderType t : kSenderTypes)
      row(*f, std::string("sender(") + name(t) + ")",
          sender_expected_utility(g, f->representative, t), est.sender_at(t));
    for (Message m : kMessages)
      for (ReceiverType r : kReceiverTypes)
        row(*f, std::string("receiver(") + name(m) + "," + name(r) + ")",
            receiver_expected_utility(g, f->representative, f->posterior, m, r),
            est.receiver_at(m, r));
  }
  emit(out_path, csv.str(), out);
  if (flags > 0) err << "note: " << flags << " estimate(s) outside 4 standard errors\n";
  return kExitOk;
}

int cmd_preset(const std::string& preset, const std::string& out_path, std::ostream& out) {
  if (preset != "honeypot") throw CommandError{kExitInvalid, "unknown preset '" + preset + "'"};
  emit(out_path, game_to_json(honeypot_preset()).dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium analysis for epistemic signaling games of cyber deception", "episig"};
  app.require_subcommand(1);

  std::string game_path, json_out, profile_path, param = "belief_sender.r0", out_path,
                                                 family = "all", preset;
  int grid = 201, steps = 19;
  double eps = 0.0, lo = 0.05, hi = 0.95;
  std::uint64_t samples = 100000, seed = 42;

  auto* validate = app.add_subcommand("validate", "Check a game file against the model assumptions");
  validate->add_option("game", game_path, "Game JSON file")->required();

  auto* solve = app.add_subcommand("solve", "Enumerate the equilibrium families of a game");
  solve->add_option("game", game_path, "Game JSON file")->required();
  solve->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Cross-check the solver against the brute-force oracle");
  verify->add_option("game", game_path, "Game JSON file")->required();
  verify->add_option("--profile", profile_path, "Strategy profile JSON to check as a PBE");
  verify->add_option("--grid", grid, "Oracle grid points per axis")->capture_default_str();
  auto* eps_opt = verify->add_option("--eps", eps, "Oracle tolerance (default 1/(grid-1))");
  verify->add_option("--json", json_out, "Write the oracle report here ('-' for stdout)");

  auto* sweep = app.add_subcommand("sweep", "Sweep a belief or cost parameter");
  sweep->add_option("game", game_path, "Game JSON file")->required();
  sweep->add_option("--param", param, "belief_sender.r0 or cost")->capture_default_str();
  sweep->add_option("--lo", lo, "Lower end")->capture_default_str();
  sweep->add_option("--hi", hi, "Upper end")->capture_default_str();
  sweep->add_option("--steps", steps, "Number of rows")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of expected utilities");
  simulate->add_option("game", game_path, "Game JSON file")->required();
  simulate->add_option("--family", family, "Family kind or 'all'")->capture_default_str();
  simulate->add_option("--samples", samples, "Samples per quantity")->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* preset_cmd = app.add_subcommand("preset", "Write a built-in game file");
  preset_cmd->add_option("name", preset, "Preset name (honeypot)")->required();
  preset_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<const char*> argv{"episig"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*validate) return cmd_validate(game_path, out);
    if (*solve) return cmd_solve(game_path, json_out, out, err);
    if (*verify)
      return cmd_verify(game_path, profile_path, grid,
                        eps_opt->count() ? std::optional<double>(eps) : std::nullopt, json_out,
                        out, err);
    if (*sweep) return cmd_sweep(game_path, param, lo, hi, steps, out_path, out, err);
    if (*simulate) return cmd_simulate(game_path, family, samples, seed, out_path, out, err);
    if (*preset_cmd) return cmd_preset(preset, out_path, out);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const StructuralError& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace episig
