#include "episig/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace episig {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  double r = std::stod(fmt12(v));
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col),
                     pos == std::string::npos ? msg : msg.substr(pos));
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const Json& expect_object(const Json& j, const std::string& path,
                          std::initializer_list<const char*> required,
                          std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) throw ParseError(join_path(path, k), "missing field");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw ParseError(join_path(path, item.key()), "unknown field");
  return j;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

double field(const Json& obj, const std::string& path, const char* key) {
  return number(obj.at(key), join_path(path, key));
}

// {a: x, b: y} with exactly the two given keys.
Eigen::Vector2d pair(const Json& j, const std::string& path, const char* a, const char* b) {
  expect_object(j, path, {a, b});
  return {field(j, path, a), field(j, path, b)};
}

Json pair_json(const char* a, double x, const char* b, double y) {
  Json j = Json::object();
  j[a] = round12(x);
  j[b] = round12(y);
  return j;
}

Json point_json(const Eigen::Vector2d& p) { return Json::array({round12(p(0)), round12(p(1))}); }

template <int N>
Json constraint_json(const LinearConstraint<N>& c) {
  Json coeffs = Json::array();
  for (int i = 0; i < N; ++i) coeffs.push_back(round12(c.coeffs(i)));
  return Json{{"coeffs", coeffs},
              {"constant", round12(c.constant)},
              {"relation", symbol(c.relation)},
              {"label", c.label}};
}

}  // namespace

EpistemicGame game_from_json(const Json& j) {
  expect_object(j, "", {"u_s_honest", "cost", "u_r", "belief_sender", "belief_receiver"},
                {"label", "comment"});
  EpistemicGame g;
  for (const char* key : {"u_s_honest", "u_r"}) {
    const Json& block = j.at(key);
    expect_object(block, key, {"s0", "s1"});
    Eigen::Matrix2d& m = std::string(key) == "u_r" ? g.receiver : g.sender_honest;
    for (SenderType t : kSenderTypes) {
      std::string path = std::string(key) + "." + name(t);
      m.row(idx(t)) = pair(block.at(name(t)), path, "a0", "a1").transpose();
    }
  }
  g.cost = number(j.at("cost"), "cost");
  g.belief_sender = pair(j.at("belief_sender"), "belief_sender", "r0", "r1");
  const Json& br = j.at("belief_receiver");
  expect_object(br, "belief_receiver", {"r0", "r1"});
  for (ReceiverType r : kReceiverTypes)
    g.belief_receiver.row(idx(r)) =
        pair(br.at(name(r)), std::string("belief_receiver.") + name(r), "s0", "s1").transpose();
  for (const char* key : {"label", "comment"}) {
    if (!j.contains(key)) continue;
    if (!j.at(key).is_string()) throw ParseError(key, "expected a string");
    (std::string(key) == "label" ? g.label : g.comment) = j.at(key).get<std::string>();
  }
  return g;
}

Json game_to_json(const EpistemicGame& g) {
  Json j = Json::object();
  if (!g.label.empty()) j["label"] = g.label;
  if (!g.comment.empty()) j["comment"] = g.comment;
  j["u_s_honest"] = Json::object();
  j["u_r"] = Json::object();
  for (SenderType t : kSenderTypes) {
    j["u_s_honest"][name(t)] =
        pair_json("a0", g.sender_honest(idx(t), 0), "a1", g.sender_honest(idx(t), 1));
    j["u_r"][name(t)] = pair_json("a0", g.receiver(idx(t), 0), "a1", g.receiver(idx(t), 1));
  }
  // Reorder so cost sits next to the sender utilities.
  Json out = Json::object();
  for (const char* k : {"label", "comment"})
    if (j.contains(k)) out[k] = j[k];
  out["u_s_honest"] = j["u_s_honest"];
  out["cost"] = round12(g.cost);
  out["u_r"] = j["u_r"];
  out["belief_sender"] = pair_json("r0", g.belief_sender(0), "r1", g.belief_sender(1));
  out["belief_receiver"] = Json::object();
  for (ReceiverType r : kReceiverTypes)
    out["belief_receiver"][name(r)] =
        pair_json("s0", g.belief_receiver(idx(r), 0), "s1", g.belief_receiver(idx(r), 1));
  return out;
}

StrategyProfile profile_from_json(const Json& j) {
  expect_object(j, "", {"sender", "receiver"}, {"posterior"});
  StrategyProfile p;
  const Json& s = j.at("sender");
  expect_object(s, "sender", {"s0", "s1"});
  for (SenderType t : kSenderTypes) {
    std::string path = std::string("sender.") + name(t);
    Eigen::Vector2d d = pair(s.at(name(t)), path, "m0", "m1");
    if (d.minCoeff() < 0.0 || std::abs(d.sum() - 1.0) > kDistributionTol)
      throw ParseError(path, "not a probability distribution");
    p.sender.m0(idx(t)) = d(0);
  }
  const Json& r = j.at("receiver");
  expect_object(r, "receiver", {"m0", "m1"});
  for (Message m : kMessages) {
    std::string mpath = std::string("receiver.") + name(m);
    expect_object(r.at(name(m)), mpath, {"r0", "r1"});
    for (ReceiverType rt : kReceiverTypes) {
      std::string path = mpath + "." + name(rt);
      Eigen::Vector2d d = pair(r.at(name(m)).at(name(rt)), path, "a0", "a1");
      if (d.minCoeff() < 0.0 || std::abs(d.sum() - 1.0) > kDistributionTol)
        throw ParseError(path, "not a probability distribution");
      p.receiver.set_a0(m, rt, d(0));
    }
  }
  return p;
}

Json profile_to_json(const StrategyProfile& p) {
  Json j = Json::object();
  j["sender"] = Json::object();
  for (SenderType t : kSenderTypes)
    j["sender"][name(t)] = pair_json("m0", p.sender.prob(Message::kM0, t), "m1",
                                     p.sender.prob(Message::kM1, t));
  j["receiver"] = Json::object();
  for (Message m : kMessages) {
    j["receiver"][name(m)] = Json::object();
    for (ReceiverType r : kReceiverTypes)
      j["receiver"][name(m)][name(r)] = pair_json("a0", p.receiver.prob(Action::kA0, m, r), "a1",
                                                  p.receiver.prob(Action::kA1, m, r));
  }
  return j;
}

BeliefSystem beliefs_from_json(const Json& j) {
  expect_object(j, "posterior", {"m0", "m1"});
  BeliefSystem b;
  for (Message m : kMessages) {
    std::string mpath = std::string("posterior.") + name(m);
    expect_object(j.at(name(m)), mpath, {"r0", "r1"});
    for (ReceiverType r : kReceiverTypes) {
      std::string path = mpath + "." + name(r);
      const Json& cell = j.at(name(m)).at(name(r));
      if (cell.is_null()) {
        b.at(m, r) = PosteriorEntry::off_path_marker();
        continue;
      }
      expect_object(cell, path, {"s0", "s1"}, {"off_path"});
      Eigen::Vector2d d(field(cell, path, "s0"), field(cell, path, "s1"));
      if (d.minCoeff() < 0.0 || std::abs(d.sum() - 1.0) > kDistributionTol)
        throw ParseError(path, "not a probability distribution");
      bool off = false;
      if (cell.contains("off_path")) {
        if (!cell.at("off_path").is_boolean())
          throw ParseError(path + ".off_path", "expected a boolean");
        off = cell.at("off_path").get<bool>();
      }
      b.at(m, r) = off ? PosteriorEntry::constructed(d(0)) : PosteriorEntry::bayes(d(0));
    }
  }
  return b;
}

Json beliefs_to_json(const BeliefSystem& b) {
  Json j = Json::object();
  for (Message m : kMessages) {
    j[name(m)] = Json::object();
    for (ReceiverType r : kReceiverTypes) {
      const auto& cell = b.at(m, r);
      if (!cell.s0) {
        j[name(m)][name(r)] = nullptr;
        continue;
      }
      Json c = pair_json("s0", *cell.s0, "s1", 1.0 - *cell.s0);
      if (cell.off_path) c["off_path"] = true;
      j[name(m)][name(r)] = c;
    }
  }
  return j;
}

Json constants_to_json(const DerivedConstants& c) {
  return Json{{"delta_us_s0", round12(c.delta_us_s0)},
              {"delta_us_s1", round12(c.delta_us_s1)},
              {"delta_ur_s0", round12(c.delta_ur_s0)},
              {"delta_ur_s1", round12(c.delta_ur_s1)},
              {"c_prime", round12(c.c_prime)}};
}

Json verification_to_json(const VerificationResult& v) {
  Json vs = Json::array();
  for (const auto& x : v.violations)
    vs.push_back(Json{{"condition", x.condition},
                      {"lhs", round12(x.lhs)},
                      {"threshold", round12(x.threshold)},
                      {"margin", round12(x.margin)}});
  return Json{{"passed", v.passed()}, {"violations", vs}};
}

Json family_to_json(const EquilibriumFamily& f, const VerificationResult& v) {
  Json j = Json::object();
  j["kind"] = name(f.kind);
  j["boundary"] = f.boundary;
  j["degenerate"] = f.degenerate;
  Json consts = Json::object();
  for (const auto& c : f.constants) consts[c.name] = round12(c.value);
  j["constants"] = consts;
  Json sc = Json::array();
  for (const auto& c : f.sender_constraints) sc.push_back(constraint_json(c));
  j["sender_constraints"] = sc;
  Json rc = Json::array();
  for (const auto& c : f.receiver_constraints) rc.push_back(constraint_json(c));
  j["receiver_constraints"] = rc;
  Json verts = Json::array();
  for (const auto& p : f.sender_region.vertices) verts.push_back(point_json(p));
  j["sender_region"] = verts;
  j["representative"] = profile_to_json(f.representative);
  j["posterior"] = beliefs_to_json(f.posterior);
  j["verification"] = verification_to_json(v);
  return j;
}

Json report_to_json(const EquilibriumReport& report) {
  Json j = Json::object();
  j["c_prime"] = round12(report.constants.c_prime);
  j["constants"] = constants_to_json(report.constants);
  if (report.region) {
    Json cands = Json::array();
    for (CandidateId id : report.region->candidates) cands.push_back(name(id));
    j["regime"] = "partially-separating";
    j["region"] = Json{{"label", std::string(1, report.region->label)},
                       {"candidates", cands},
                       {"at_c_prime", report.region->at_c_prime},
                       {"at_one_minus_c_prime", report.region->at_one_minus_c_prime}};
  } else {
    j["regime"] = "separating-only";
    j["region"] = nullptr;
  }
  j["all_verified"] = report.all_verified();
  Json fams = Json::array();
  for (std::size_t i = 0; i < report.families.size(); ++i)
    fams.push_back(family_to_json(report.families[i], report.verification[i]));
  j["families"] = fams;
  Json absent = Json::array();
  for (const auto& a : report.absent)
    absent.push_back(Json{{"kind", name(a.kind)}, {"reason", a.reason}});
  j["absent"] = absent;
  return j;
}

Json approx_to_json(const ApproxEquilibrium& e) {
  auto bound = [](double v) -> Json {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    return round12(v);
  };
  return Json{{"sender", point_json(e.sender)},
              {"attainable_gamma_s", Json::array({bound(e.attainable.lo), bound(e.attainable.hi)})},
              {"required_gamma_s", Json::array({bound(e.required.lo), bound(e.required.hi)})},
              {"eps", round12(e.eps)}};
}

Json cross_check_to_json(const CrossCheck& cc) {
  Json stray = Json::array();
  for (const auto& e : cc.stray) stray.push_back(approx_to_json(e));
  Json miss = Json::array();
  for (const auto& g : cc.unconfirmed)
    miss.push_back(Json{{"kind", name(g.kind)},
                        {"sender", point_json(g.point)},
                        {"distance", round12(g.distance)}});
  return Json{{"passed", cc.passed()},
              {"tolerance", round12(cc.tolerance)},
              {"max_stray_distance", round12(cc.max_stray_distance)},
              {"max_family_gap", round12(cc.max_family_gap)},
              {"stray", stray},
              {"unconfirmed", miss}};
}

Json estimate_to_json(const Estimate& e) {
  return Json{{"estimate", round12(e.mean)}, {"se", round12(e.se)}, {"n", e.n}};
}

}  // namespace episig
