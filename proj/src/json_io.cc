// Copyright 2026 The Vetoshield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vetoshield/json_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace vetoshield {
namespace {

double ParseNumberText(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    Fail(ErrorKind::kParse, "not a number: '" + s + "'");
  }
  if (used != s.size()) Fail(ErrorKind::kParse, "not a number: '" + s + "'");
  return v;
}

std::vector<double> ParseDist(const json& j, const std::vector<std::string>& labels,
                              const std::string& what) {
  std::vector<double> out(labels.size(), 0.0);
  if (j.is_array()) {
    if (j.size() != labels.size()) {
      Fail(ErrorKind::kParse, what + ": distribution has wrong length");
    }
    for (size_t k = 0; k < labels.size(); ++k) out[k] = ParseProbability(j[k]);
    return out;
  }
  if (!j.is_object()) Fail(ErrorKind::kParse, what + ": bad distribution");
  for (const auto& [key, val] : j.items()) {
    auto it = std::find(labels.begin(), labels.end(), key);
    if (it == labels.end()) {
      Fail(ErrorKind::kParse, what + ": unknown label '" + key + "'");
    }
    out[it - labels.begin()] = ParseProbability(val);
  }
  return out;
}

int ParseTypeRef(const json& j, const TypeSpace& space, Player p) {
  if (j.is_number_integer()) {
    const int t = j.get<int>();
    if (t < 0 || t >= space.num_types(p)) {
      Fail(ErrorKind::kParse, "type index out of range");
    }
    return t;
  }
  const int t = space.FindType(p, j.get<std::string>());
  if (t < 0) {
    Fail(ErrorKind::kParse, "unknown type '" + j.get<std::string>() +
                                "' of player " + std::to_string(p));
  }
  return t;
}

int ParsePlayer(const json& j, const TypeSpace& space) {
  const int p = j.get<int>();
  if (p < 0 || p >= space.num_players()) {
    Fail(ErrorKind::kParse, "player index out of range");
  }
  return p;
}

int ParseOutcomeRef(const json& j, const OutcomeSpace& outcomes) {
  if (j.is_number_integer()) {
    const int z = j.get<int>();
    if (z < 0 || z >= outcomes.size()) {
      Fail(ErrorKind::kParse, "outcome index out of range");
    }
    return z;
  }
  const int z = outcomes.Find(j.get<std::string>());
  if (z < 0) {
    Fail(ErrorKind::kParse, "unknown outcome '" + j.get<std::string>() + "'");
  }
  return z;
}

}  // namespace

double ParseProbability(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) Fail(ErrorKind::kParse, "probability must be a number");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return ParseNumberText(s);
  const double num = ParseNumberText(s.substr(0, slash));
  const double den = ParseNumberText(s.substr(slash + 1));
  if (den == 0.0) Fail(ErrorKind::kParse, "zero denominator in '" + s + "'");
  return num / den;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kParse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, path + ": " + e.what());
  }
}

std::shared_ptr<const TypeSpace> ParseTypeSpace(const json& j) {
  return Parsing("type_space", [&] {
    std::vector<std::vector<TypeLabel>> types;
    for (const auto& player : j) {
      std::vector<TypeLabel> labels;
      for (const auto& t : player) {
        if (t.is_string()) {
          labels.push_back({t.get<std::string>(),
                            static_cast<double>(labels.size())});
        } else {
          labels.push_back({t.at("name").get<std::string>(),
                            t.value("index", static_cast<double>(labels.size()))});
        }
      }
      types.push_back(std::move(labels));
    }
    return std::make_shared<const TypeSpace>(std::move(types));
  });
}

OutcomeSpace ParseOutcomes(const json& j) {
  return Parsing("outcomes", [&] {
    if (j.is_number_integer()) return OutcomeSpace::FromCount(j.get<int>());
    return OutcomeSpace(j.get<std::vector<std::string>>());
  });
}

int ParseProfile(const json& j, const TypeSpace& space) {
  return Parsing("profile", [&] {
    if (j.is_number_integer()) {
      const int p = j.get<int>();
      if (p < 0 || p >= space.num_profiles()) {
        Fail(ErrorKind::kParse, "profile index out of range");
      }
      return p;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != space.num_players()) {
      Fail(ErrorKind::kParse, "profile needs one type per player");
    }
    std::vector<int> types;
    for (int p = 0; p < space.num_players(); ++p) {
      types.push_back(ParseTypeRef(j[p], space, p));
    }
    return space.Encode(types);
  });
}

int ParseSubProfile(const json& j, const TypeSpace& space,
                    std::span<const Player> players) {
  return Parsing("sub-profile", [&] {
    if (j.is_number_integer()) {
      const int s = j.get<int>();
      if (s < 0 || s >= space.num_subprofiles(players)) {
        Fail(ErrorKind::kParse, "sub-profile index out of range");
      }
      return s;
    }
    if (!j.is_array() || j.size() != players.size()) {
      Fail(ErrorKind::kParse, "sub-profile needs one type per domain player");
    }
    int sub = 0;
    for (size_t k = 0; k < players.size(); ++k) {
      sub = sub * space.num_types(players[k]) +
            ParseTypeRef(j[k], space, players[k]);
    }
    return sub;
  });
}

json ProfileToJson(int profile, const TypeSpace& space) {
  json out = json::array();
  for (Player p = 0; p < space.num_players(); ++p) {
    out.push_back(space.label(p, space.TypeOf(profile, p)).name);
  }
  return out;
}

InformationStructure ParseStructure(const json& j,
                                    std::shared_ptr<const TypeSpace> space) {
  return Parsing("information structure", [&] {
    std::vector<double> mass(space->num_profiles(), 0.0);
    if (j.is_object()) {
      const auto& t = j.at("table");
      if (static_cast<int>(t.size()) != space->num_profiles()) {
        Fail(ErrorKind::kDimension, "table needs one entry per profile");
      }
      for (size_t k = 0; k < t.size(); ++k) mass[k] = ParseProbability(t[k]);
    } else {
      for (const auto& cell : j) {
        mass[ParseProfile(cell.at("profile"), *space)] +=
            ParseProbability(cell.at("prob"));
      }
    }
    return InformationStructure(std::move(space), std::move(mass));
  });
}

json StructureToJson(const InformationStructure& info) {
  json out = json::array();
  for (int p = 0; p < info.space().num_profiles(); ++p) {
    out.push_back(
        {{"profile", ProfileToJson(p, info.space())}, {"prob", info.mass(p)}});
  }
  return out;
}

UtilityTable ParseUtilities(const json& j, const TypeSpace& space,
                            const OutcomeSpace& outcomes) {
  return Parsing("utilities", [&] {
    UtilityTable u(space.num_players(), outcomes.size(), space.num_profiles());
    for (const auto& e : j) {
      const Player i = ParsePlayer(e.at("player"), space);
      const int z = ParseOutcomeRef(e.at("outcome"), outcomes);
      const double v = ParseProbability(e.at("value"));
      if (e.contains("profile")) {
        u.at(i, z, ParseProfile(e.at("profile"), space)) = v;
      } else {
        // No profile: the value applies at every profile.
        for (int p = 0; p < space.num_profiles(); ++p) u.at(i, z, p) = v;
      }
    }
    return u;
  });
}

json UtilitiesToJson(const UtilityTable& u, const TypeSpace& space,
                     const OutcomeSpace& outcomes) {
  json out = json::array();
  for (Player i = 0; i < u.num_players(); ++i) {
    for (int z = 0; z < u.num_outcomes(); ++z) {
      for (int p = 0; p < u.num_profiles(); ++p) {
        out.push_back({{"player", i},
                       {"outcome", outcomes.labels[z]},
                       {"profile", ProfileToJson(p, space)},
                       {"value", u(i, z, p)}});
      }
    }
  }
  return out;
}

DecisionRule ParseRule(const json& j, const TypeSpace& space,
                       const OutcomeSpace& outcomes) {
  return Parsing("decision rule", [&] {
    const int nz = outcomes.size();
    DecisionRule rule(space.num_profiles(), nz);
    std::vector<bool> seen(space.num_profiles(), false);
    for (const auto& row : j) {
      const int p = ParseProfile(row.at("profile"), space);
      const auto dist = ParseDist(row.at("dist"), outcomes.labels, "rule");
      for (int z = 0; z < nz; ++z) rule.at(p, z) = dist[z];
      seen[p] = true;
    }
    for (int p = 0; p < space.num_profiles(); ++p) {
      if (!seen[p]) {
        Fail(ErrorKind::kParse, "rule has no row for " + space.ProfileName(p));
      }
    }
    return rule;
  });
}

json RuleToJson(const DecisionRule& rule, const TypeSpace& space) {
  json out = json::array();
  for (int p = 0; p < rule.num_profiles(); ++p) {
    auto row = rule.Row(p);
    out.push_back({{"profile", ProfileToJson(p, space)},
                   {"dist", std::vector<double>(row.begin(), row.end())}});
  }
  return out;
}

SignalingDevice ParseDevice(const json& j,
                            std::shared_ptr<const TypeSpace> space) {
  return Parsing("signaling device", [&] {
    if (j.contains("channels")) {
      std::vector<SignalChannel> channels;
      for (const auto& c : j.at("channels")) {
        SignalChannel ch;
        ch.player = ParsePlayer(c.at("player"), *space);
        ch.alphabet = c.at("alphabet").get<std::vector<std::string>>();
        ch.rows.assign(space->num_types(ch.player), {});
        for (const auto& row : c.at("rows")) {
          const int t = ParseTypeRef(row.at("type"), *space, ch.player);
          ch.rows[t] = ParseDist(row.at("dist"), ch.alphabet, "channel");
        }
        channels.push_back(std::move(ch));
      }
      if (channels.empty()) return SignalingDevice::Babbling(space);
      return SignalingDevice::Product(space, channels);
    }
    std::vector<Player> domain;
    for (const auto& p : j.at("domain")) {
      domain.push_back(ParsePlayer(p, *space));
    }
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<std::vector<double>> rows(space->num_subprofiles(domain));
    for (const auto& row : j.at("rows")) {
      rows[ParseSubProfile(row.at("profile"), *space, domain)] =
          ParseDist(row.at("dist"), alphabet, "device");
    }
    for (const auto& r : rows) {
      if (r.empty()) Fail(ErrorKind::kParse, "device is missing a row");
    }
    return SignalingDevice(space, std::move(domain), std::move(alphabet),
                           std::move(rows));
  });
}

json DeviceToJson(const SignalingDevice& device) {
  const TypeSpace& space = device.space();
  json rows = json::array();
  const auto& domain = device.domain();
  for (int s = 0; s < static_cast<int>(device.rows().size()); ++s) {
    json prof = json::array();
    int rest = s;
    std::vector<std::string> names(domain.size());
    for (int k = static_cast<int>(domain.size()) - 1; k >= 0; --k) {
      const int nt = space.num_types(domain[k]);
      names[k] = space.label(domain[k], rest % nt).name;
      rest /= nt;
    }
    for (auto& n : names) prof.push_back(n);
    rows.push_back({{"profile", prof}, {"dist", device.rows()[s]}});
  }
  return {{"domain", domain}, {"alphabet", device.alphabet()}, {"rows", rows}};
}

PosteriorLottery ParseLottery(const json& j,
                              std::shared_ptr<const TypeSpace> space) {
  return Parsing("lottery", [&] {
    PosteriorLottery out;
    out.base_ref = j.value("base_ref", "");
    for (const auto& a : j.at("atoms")) {
      out.atoms.push_back({ParseProbability(a.at("weight")),
                           ParseStructure(a.at("table"), space),
                           {}});
    }
    return out;
  });
}

json LotteryToJson(const PosteriorLottery& lottery) {
  json atoms = json::array();
  for (const auto& a : lottery.atoms) {
    atoms.push_back({{"weight", a.weight},
                     {"table", StructureToJson(a.posterior)},
                     {"signals", a.signals}});
  }
  return {{"base_ref", lottery.base_ref}, {"atoms", atoms}};
}

StrategicBayesianGame ParseStrategicGame(
    const json& j, std::shared_ptr<const TypeSpace> space,
    const OutcomeSpace& outcomes, const std::optional<UtilityTable>& fallback) {
  return Parsing("strategic_game", [&] {
    StrategicBayesianGame g;
    g.space = space;
    g.outcomes = outcomes;
    g.actions = j.at("actions").get<std::vector<std::vector<std::string>>>();
    if (static_cast<int>(g.actions.size()) != space->num_players()) {
      Fail(ErrorKind::kParse, "need one action list per player");
    }
    g.outcome_map.assign(g.num_action_profiles(), {});
    for (const auto& e : j.at("outcome_map")) {
      const auto& acts = e.at("actions");
      std::vector<int> idx;
      for (size_t p = 0; p < acts.size() && p < g.actions.size(); ++p) {
        if (acts[p].is_number_integer()) {
          idx.push_back(acts[p].get<int>());
          continue;
        }
        const auto& names = g.actions[p];
        auto it = std::find(names.begin(), names.end(),
                            acts[p].get<std::string>());
        if (it == names.end()) Fail(ErrorKind::kParse, "unknown action");
        idx.push_back(static_cast<int>(it - names.begin()));
      }
      if (idx.size() != g.actions.size()) {
        Fail(ErrorKind::kParse, "outcome_map entry needs one action per player");
      }
      g.outcome_map[g.EncodeActions(idx)] =
          ParseDist(e.at("dist"), outcomes.labels, "outcome_map");
    }
    for (const auto& row : g.outcome_map) {
      if (row.empty()) Fail(ErrorKind::kParse, "outcome_map is incomplete");
    }
    if (j.contains("utilities")) {
      g.utilities = ParseUtilities(j.at("utilities"), *space, outcomes);
    } else if (fallback) {
      g.utilities = *fallback;
    } else {
      Fail(ErrorKind::kParse, "strategic_game needs utilities");
    }
    g.Validate();
    return g;
  });
}

ReducedFormGame ParseReducedForm(const json& j,
                                 std::shared_ptr<const TypeSpace> space) {
  return Parsing("reduced_form", [&] {
    ReducedFormGame rf;
    rf.space = space;
    rf.subject = ParsePlayer(j.at("subject"), *space);
    rf.subject_type = ParseTypeRef(j.at("subject_type"), *space, rf.subject);
    for (const auto& v : j.at("values")) {
      const Player p = ParsePlayer(v.at("player"), *space);
      const int t = ParseTypeRef(v.at("type"), *space, p);
      std::vector<std::pair<double, double>> pts;
      for (const auto& bp : v.at("breakpoints")) {
        pts.emplace_back(ParseProbability(bp.at(0)), ParseProbability(bp.at(1)));
      }
      rf.values.push_back({p, t, PiecewiseLinear(std::move(pts))});
    }
    for (Player p = 0; p < space->num_players(); ++p) {
      for (int t = 0; t < space->num_types(p); ++t) rf.ValueFunction(p, t);
    }
    return rf;
  });
}

json BneToJson(const BNEProfile& profile, const StrategicBayesianGame& game) {
  json players = json::array();
  for (Player p = 0; p < game.num_players(); ++p) {
    json types = json::object();
    for (int t = 0; t < game.space->num_types(p); ++t) {
      json dist = json::object();
      for (int a = 0; a < game.num_actions(p); ++a) {
        dist[game.actions[p][a]] = profile.strategy[p][t][a];
      }
      types[game.space->label(p, t).name] = dist;
    }
    players.push_back(types);
  }
  return {{"strategy", players}, {"epsilon", profile.epsilon}};
}

Model ParseModel(const json& doc) {
  return Parsing("model", [&] {
    Model m;
    if (!doc.contains("type_space")) {
      Fail(ErrorKind::kParse, "document has no type_space");
    }
    m.space = ParseTypeSpace(doc.at("type_space"));
    if (doc.contains("outcomes")) m.outcomes = ParseOutcomes(doc.at("outcomes"));
    if (doc.contains("prior")) m.prior = ParseStructure(doc.at("prior"), m.space);
    if (doc.contains("utilities")) {
      m.utilities = ParseUtilities(doc.at("utilities"), *m.space, m.outcomes);
    }
    if (doc.contains("rules")) {
      for (const auto& [name, r] : doc.at("rules").items()) {
        m.rules.emplace(name, ParseRule(r, *m.space, m.outcomes));
      }
    }
    if (doc.contains("strategic_game") && doc.contains("reduced_form")) {
      Fail(ErrorKind::kParse, "give either strategic_game or reduced_form");
    }
    if (doc.contains("strategic_game")) {
      m.game = ParseStrategicGame(doc.at("strategic_game"), m.space, m.outcomes,
                                  m.utilities);
    } else if (doc.contains("reduced_form")) {
      m.game = ParseReducedForm(doc.at("reduced_form"), m.space);
    }
    return m;
  });
}

const InformationStructure& RequirePrior(const Model& m) {
  if (!m.prior) Fail(ErrorKind::kParse, "document has no prior");
  return *m.prior;
}

const UtilityTable& RequireUtilities(const Model& m) {
  if (!m.utilities) Fail(ErrorKind::kParse, "document has no utilities");
  return *m.utilities;
}

const DefaultGame& RequireGame(const Model& m) {
  if (!m.game) {
    Fail(ErrorKind::kParse, "document has no strategic_game or reduced_form");
  }
  return *m.game;
}

const DecisionRule& RequireRule(const Model& m, const std::string& name) {
  auto it = m.rules.find(name);
  if (it == m.rules.end()) Fail(ErrorKind::kParse, "no rule named " + name);
  return it->second;
}

VetoEquilibrium ParseVetoEquilibrium(const json& j,
                                     const InformationStructure& prior,
                                     const OutcomeSpace& outcomes) {
  return Parsing("veto equilibrium", [&] {
    const TypeSpace& space = prior.space();
    VetoEquilibrium veq{.prior = prior,
                        .xi = ParseMatrix(j.at("xi")),
                        .veto_sets = {},
                        .acceptance = std::nullopt,
                        .acceptance_rule =
                            ParseRule(j.at("acceptance_rule"), space, outcomes),
                        .offpath = ParseMatrix(j.at("offpath")),
                        .slack = j.value("slack", 0.0),
                        .marginal = j.value("marginal", false)};
    if (j.contains("veto_sets")) {
      for (const auto& s : j.at("veto_sets")) {
        VetoMask mask = 0;
        for (const auto& p : s.at("players")) {
          mask |= VetoMask{1} << ParsePlayer(p, space);
        }
        veq.veto_sets.push_back(
            {mask, ParseProbability(s.at("prob")),
             ParseStructure(s.at("posterior"), prior.space_ptr()),
             ParseRule(s.at("rule"), space, outcomes)});
      }
    } else {
      // Only xi and the rules per veto set are given: derive the Bayes parts.
      VetoDistribution d =
          ComputeVetoDistribution(prior, veq.xi, outcomes.size());
      const auto& rules = j.at("veto_rules");
      for (VetoSet& s : d.sets) {
        s.rule = ParseRule(rules.at(std::to_string(s.mask)), space, outcomes);
      }
      veq.veto_sets = std::move(d.sets);
    }
    if (j.contains("acceptance") && !j.at("acceptance").is_null()) {
      veq.acceptance = ParseStructure(j.at("acceptance"), prior.space_ptr());
    } else if (!j.contains("acceptance")) {
      veq.acceptance =
          ComputeVetoDistribution(prior, veq.xi, outcomes.size()).acceptance;
    }
    return veq;
  });
}

json VetoEquilibriumToJson(const VetoEquilibrium& veq) {
  const TypeSpace& space = veq.prior.space();
  json sets = json::array();
  for (const VetoSet& s : veq.veto_sets) {
    json players = json::array();
    for (Player p = 0; p < space.num_players(); ++p) {
      if ((s.mask >> p) & 1u) players.push_back(p);
    }
    sets.push_back({{"players", players},
                    {"prob", s.prob},
                    {"posterior", StructureToJson(s.posterior)},
                    {"rule", RuleToJson(s.rule, space)}});
  }
  return {{"xi", MatrixToJson(veq.xi)},
          {"offpath", MatrixToJson(veq.offpath)},
          {"veto_sets", sets},
          {"acceptance", veq.acceptance ? StructureToJson(*veq.acceptance)
                                        : json(nullptr)},
          {"acceptance_rule", RuleToJson(veq.acceptance_rule, space)},
          {"slack", NumberOrNull(veq.slack)},
          {"marginal", veq.marginal}};
}

json NumberOrNull(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json VectorToJson(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(NumberOrNull(x));
  return out;
}

json MatrixToJson(const std::vector<std::vector<double>>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(VectorToJson(row));
  return out;
}

std::vector<double> ParseVector(const json& j) {
  return Parsing("vector", [&] {
    std::vector<double> out;
    for (const auto& x : j) out.push_back(ParseProbability(x));
    return out;
  });
}

std::vector<std::vector<double>> ParseMatrix(const json& j) {
  return Parsing("matrix", [&] {
    std::vector<std::vector<double>> out;
    for (const auto& row : j) out.push_back(ParseVector(row));
    return out;
  });
}

}  // namespace vetoshield
