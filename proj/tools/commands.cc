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

#include "commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "vetoshield/json_io.h"
#include "vetoshield/mechanism.h"
#include "vetoshield/opportunism.h"
#include "vetoshield/plot.h"
#include "vetoshield/punishment.h"
#include "vetoshield/simharness.h"

namespace vetoshield::cli {
namespace {

// Named pass/fail results collected while a command runs.
class Checks {
 public:
  void Add(const std::string& name, bool passed) { items_[name] = passed; }
  bool all() const {
    for (const auto& [name, ok] : items_) {
      if (!ok) return false;
    }
    return true;
  }
  json ToJson() const { return json(items_); }

 private:
  std::map<std::string, bool> items_;
};

json Audit(const Context& ctx, const std::string& command,
           const Checks& checks) {
  return {{"command", command},
          {"config", ConfigToJson(ctx.config)},
          {"config_source", ctx.config_source},
          {"seed", ctx.config.seed},
          {"grid_override", ctx.grid ? json(*ctx.grid) : json(nullptr)},
          {"checks", checks.ToJson()},
          {"all_checks_passed", checks.all()}};
}

void WriteText(const Context& ctx, const std::string& name,
               const std::string& text) {
  std::filesystem::create_directories(ctx.out_dir);
  const auto path = std::filesystem::path(ctx.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kInternal, "cannot write " + path.string());
  out << text;
}

// Prints the report and stores a copy as <command>.json in the output dir.
void Emit(const Context& ctx, const std::string& command, json body,
          const Checks& checks) {
  body["audit"] = Audit(ctx, command, checks);
  const std::string text = body.dump(2) + "\n";
  std::cout << text;
  WriteText(ctx, command + ".json", text);
}

int PosteriorGrid(const Context& ctx) {
  return ctx.grid.value_or(ctx.config.posterior_grid);
}
int StrategyGrid(const Context& ctx) {
  return ctx.grid.value_or(ctx.config.strategy_grid);
}

Player RequirePlayer(const json& doc, const char* key, const TypeSpace& space) {
  if (!doc.contains(key)) {
    Fail(ErrorKind::kParse, std::string("document has no ") + key);
  }
  const int p = Parsing(key, [&] { return doc.at(key).get<int>(); });
  if (p < 0 || p >= space.num_players()) {
    Fail(ErrorKind::kParse, std::string(key) + " is not a player");
  }
  return p;
}

std::vector<double> OptionalVector(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return {};
  return ParseVector(doc.at(key));
}

const StrategicBayesianGame& RequireStrategic(const Model& m) {
  const auto* g = std::get_if<StrategicBayesianGame>(&RequireGame(m));
  if (g == nullptr) Fail(ErrorKind::kParse, "command needs a strategic_game");
  return *g;
}

json StringList(const std::vector<std::string>& v) { return json(v); }

json IcToJson(const IcReport& r) {
  return {{"ok", r.ok},
          {"worst_violation", r.worst_violation},
          {"player", r.player},
          {"type", r.type},
          {"report", r.report}};
}

json NoVetoToJson(const NoVetoReport& r) {
  return {{"ok", r.ok},
          {"worst", NumberOrNull(r.worst)},
          {"slack", MatrixToJson(r.slack)},
          {"veto_value", MatrixToJson(r.veto_value)},
          {"accept_value", MatrixToJson(r.accept_value)}};
}

json PlausibilityToJson(const PlausibilityReport& r) {
  return {{"ok", r.ok},
          {"max_deviation", r.max_deviation},
          {"opacity_deviation", r.opacity_deviation}};
}

PunishmentProblem BuildPunishment(const Context& ctx, const Model& m,
                                  const json& doc) {
  const InformationStructure base =
      doc.contains("base") ? ParseStructure(doc.at("base"), m.space)
                           : RequirePrior(m);
  return PunishmentProblem{.game = RequireGame(m),
                           .deviator = RequirePlayer(doc, "deviator", *m.space),
                           .base = base,
                           .offpath_belief = OptionalVector(doc, "offpath"),
                           .weights = OptionalVector(doc, "weights"),
                           .grid_resolution = PosteriorGrid(ctx)};
}

json PunishmentToJson(const PunishmentSolution& s) {
  return {{"value", s.value},
          {"per_type_values", VectorToJson(s.per_type_values)},
          {"unsplit_value", s.unsplit_value},
          {"unsplit_per_type", VectorToJson(s.unsplit_per_type)},
          {"num_atoms", s.lottery.atoms.size()},
          {"lottery", LotteryToJson(s.lottery)},
          {"device", DeviceToJson(s.device)},
          {"offpath_belief", VectorToJson(s.q)},
          {"weights", VectorToJson(s.weights)},
          {"lp_pivots", s.lp_pivots}};
}

// ---------------------------------------------------------------------------

int Validate(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  Checks checks;
  json body;
  if (m.prior) {
    json cells = json::array();
    for (int p = 0; p < m.space->num_profiles(); ++p) {
      cells.push_back({{"profile", ProfileToJson(p, *m.space)},
                       {"prob", m.prior->mass(p)}});
    }
    const auto violations = m.prior->Validate(ctx.config.tol.normalization);
    body["prior"] = {{"cells", cells},
                     {"total", m.prior->total()},
                     {"violations", StringList(violations)}};
    checks.Add("prior", violations.empty());
  }
  for (const auto& [name, rule] : m.rules) {
    const auto violations = rule.Validate(ctx.config.tol.normalization);
    body["rules"][name] = {{"violations", StringList(violations)}};
    checks.Add("rule:" + name, violations.empty());
  }
  if (m.game) {
    if (const auto* g = std::get_if<StrategicBayesianGame>(&*m.game)) {
      g->Validate();
      body["game"] = {{"kind", "strategic"},
                      {"action_profiles", g->num_action_profiles()}};
    } else {
      body["game"] = {{"kind", "reduced_form"}};
    }
    checks.Add("game", true);
  }
  if (doc.contains("device")) {
    const SignalingDevice device = ParseDevice(doc.at("device"), m.space);
    body["device"] = {{"signals", device.num_signals()},
                      {"capacity", device.SatisfiesCapacity()}};
    checks.Add("device", true);
  }
  if (doc.contains("veq") && m.prior && m.prior->Validate().empty()) {
    const VetoEquilibrium veq =
        ParseVetoEquilibrium(doc.at("veq"), *m.prior, m.outcomes);
    const auto violations = CheckVetoEquilibrium(veq);
    body["veq"] = {{"violations", StringList(violations)}};
    checks.Add("veq", violations.empty());
  }
  Emit(ctx, "validate", body, checks);
  return checks.all() ? kExitOk : kExitParse;
}

int SolveGame(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const StrategicBayesianGame& game = RequireStrategic(m);
  const InformationStructure& prior = RequirePrior(m);
  const SelectionPolicy policy =
      PolicyFromConfig(ctx.config, SelectionPolicy::Lexicographic());
  Checks checks;
  json all = json::array();
  double worst_gap = 0.0;
  for (const BNEProfile& b : EnumerateBne(game, prior)) {
    const double gap = BestResponseGap(game, prior, b);
    worst_gap = std::max(worst_gap, gap);
    json e = BneToJson(b, game);
    e["best_response_gap"] = gap;
    all.push_back(e);
  }
  const DefaultSolution sol = SolveDefault(game, prior, policy);
  checks.Add("best_response_sweep", worst_gap <= ctx.config.tol.equilibrium);
  json body = {{"equilibria", all},
               {"selected", BneToJson(sol.profile, game)},
               {"policy", SelectionPolicyName(policy.kind)},
               {"rule", RuleToJson(sol.rule, *m.space)},
               {"values", MatrixToJson(sol.values)}};
  Emit(ctx, "solve-game", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

int Punish(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  PunishmentProblem problem = BuildPunishment(ctx, m, doc);
  Checks checks;
  json body;
  PunishmentSolution sol = [&] {
    if (doc.value("optimize_offpath", false)) {
      OffPathOptimum opt = OptimizeOffPathBelief(problem, ctx.config.q_step);
      json scan = json::array();
      for (const auto& [q, v] : opt.scan) {
        scan.push_back({{"q", VectorToJson(q)}, {"value", v}});
      }
      body["offpath_search"] = {{"q", VectorToJson(opt.q)},
                                {"q_irrelevant", opt.q_irrelevant},
                                {"scan", scan}};
      return std::move(opt.solution);
    }
    return Convexify(problem);
  }();
  body["solution"] = PunishmentToJson(sol);

  const InformationStructure split_base =
      PostVetoStructure(problem.base, {problem.deviator, sol.q});
  const PlausibilityReport plaus =
      CheckBayesPlausible(sol.lottery, split_base, problem.deviator,
                          ctx.config.tol.equality);
  body["plausibility"] = PlausibilityToJson(plaus);
  checks.Add("bayes_plausible", plaus.ok);
  checks.Add("value_not_above_unsplit",
             sol.value <= sol.unsplit_value + ctx.config.tol.equality);

  const PlotOutput plot =
      EmitEnvelopePlot(sol, problem.base.CoMarginal(problem.deviator));
  WriteText(ctx, "punish_envelope.csv", plot.csv);
  body["envelope_csv"] = "punish_envelope.csv";
  Emit(ctx, "punish", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

int Envelope(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const PunishmentProblem problem = BuildPunishment(ctx, m, doc);
  const PunishmentSolution sol = Convexify(problem);
  const PlotOutput plot =
      EmitEnvelopePlot(sol, problem.base.CoMarginal(problem.deviator));
  Checks checks;
  json body = {{"value", sol.value},
               {"samples", sol.samples.size()},
               {"csv", "envelope.csv"},
               {"svg", plot.svg ? json("envelope.svg") : json(nullptr)}};
  WriteText(ctx, "envelope.csv", plot.csv);
  if (plot.svg) {
    WriteText(ctx, "envelope.svg", *plot.svg);
    std::vector<std::pair<double, double>> pts;
    for (const EnvelopeSample& s : sol.samples) {
      pts.emplace_back(s.coblock[1], s.value);
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const EnvelopePoint& p : ConvexEnvelope1D(pts)) {
      worst = std::max(worst, p.envelope - p.value);
    }
    body["max_envelope_excess"] = worst;
    checks.Add("envelope_below_value", worst <= ctx.config.tol.equality);
  } else {
    body["note"] = "belief domain is not one-dimensional; CSV only";
  }
  Emit(ctx, "envelope", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

std::vector<std::vector<double>> ParseObjective(const json& j, const Model& m) {
  const int np = m.space->num_profiles();
  const int nz = m.outcomes.size();
  std::vector<std::vector<double>> obj(np, std::vector<double>(nz, 0.0));
  if (j.is_string() && j.get<std::string>() == "utilitarian") {
    const UtilityTable& u = RequireUtilities(m);
    for (int p = 0; p < np; ++p) {
      for (int z = 0; z < nz; ++z) {
        for (Player i = 0; i < m.space->num_players(); ++i) {
          obj[p][z] += u(i, z, p);
        }
      }
    }
    return obj;
  }
  if (j.is_object()) {
    const Player i = RequirePlayer(j, "player", *m.space);
    const UtilityTable& u = RequireUtilities(m);
    for (int p = 0; p < np; ++p) {
      for (int z = 0; z < nz; ++z) obj[p][z] = u(i, z, p);
    }
    return obj;
  }
  Parsing("objective", [&] {
    for (const auto& row : j) {
      const auto v = ParseVector(row.at("values"));
      if (static_cast<int>(v.size()) != nz) {
        Fail(ErrorKind::kParse, "objective row needs one value per outcome");
      }
      obj[ParseProfile(row.at("profile"), *m.space)] = v;
    }
    return 0;
  });
  return obj;
}

int SolveMech(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const InformationStructure& prior = RequirePrior(m);
  const UtilityTable& u = RequireUtilities(m);
  if (!doc.contains("mechanism")) {
    Fail(ErrorKind::kParse, "document has no mechanism block");
  }
  const json& mj = doc.at("mechanism");
  MechanismLpSpec spec{
      .space = m.space,
      .outcomes = m.outcomes,
      .objective = ParseObjective(mj.value("objective", json("utilitarian")), m),
      .impose_ic = mj.value("impose_ic", true),
      .participation = {}};
  for (Player i = 0; i < m.space->num_players(); ++i) {
    spec.participation.emplace_back(m.space->num_types(i), kNoBound);
  }
  const SelectionPolicy policy =
      PolicyFromConfig(ctx.config, SelectionPolicy::Lexicographic());
  if (mj.contains("participation")) {
    const json& pj = mj.at("participation");
    if (pj.is_string() && pj.get<std::string>() == "outside_options") {
      for (Player i = 0; i < m.space->num_players(); ++i) {
        spec.participation[i] =
            OutsideOptionValues(RequireGame(m), prior, i, policy);
      }
    } else {
      Parsing("participation", [&] {
        for (const auto& b : pj) {
          const Player i = RequirePlayer(b, "player", *m.space);
          const json& t = b.at("type");
          const int type = t.is_number_integer()
                               ? t.get<int>()
                               : m.space->FindType(i, t.get<std::string>());
          if (type < 0 || type >= m.space->num_types(i)) {
            Fail(ErrorKind::kParse, "participation bound has a bad type");
          }
          spec.participation[i][type] = ParseProbability(b.at("bound"));
        }
        return 0;
      });
    }
  }

  Checks checks;
  json body;
  MechanismSolution sol;
  if (mj.contains("punish")) {
    const Player dev = RequirePlayer(mj.at("punish"), "deviator", *m.space);
    PunishedMechanism pm = SolveWithPunishment(spec, prior, u, RequireGame(m),
                                               dev, PosteriorGrid(ctx));
    body["punishment"] = {{"deviator", dev},
                          {"alpha", VectorToJson(pm.alpha)},
                          {"bounds", VectorToJson(pm.bounds)},
                          {"iterations", pm.iterations},
                          {"converged", pm.converged}};
    sol = std::move(pm.solution);
  } else {
    sol = SolveOptimalMechanism(spec, prior, u);
  }
  body["feasible"] = sol.feasible;
  body["value"] = sol.value;
  body["rule"] = RuleToJson(sol.rule, *m.space);
  body["multipliers"] = MatrixToJson(sol.multipliers);
  body["participation_slack"] = MatrixToJson(sol.participation_slack);
  body["relaxation"] = sol.relaxation;
  body["ic_violation"] = sol.ic_violation;
  body["complementary_slackness"] = sol.complementary_slackness;
  body["pivots"] = sol.pivots;
  if (spec.impose_ic) {
    checks.Add("ic", sol.ic_violation <= ctx.config.tol.equilibrium);
  }
  checks.Add("complementary_slackness",
             sol.complementary_slackness <= ctx.config.tol.equilibrium);
  checks.Add("feasible", sol.feasible);
  if (!sol.feasible) {
    body["diagnosis"] =
        "participation bounds are jointly infeasible; lowering every bound by "
        "the reported relaxation restores feasibility";
  }
  Emit(ctx, "solve-mech", body, checks);
  if (!sol.feasible) return kExitInfeasible;
  return checks.all() ? kExitOk : kExitInternal;
}

int Construct(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const InformationStructure& prior = RequirePrior(m);
  if (!doc.contains("veq")) Fail(ErrorKind::kParse, "document has no veq");
  const VetoEquilibrium veq =
      ParseVetoEquilibrium(doc.at("veq"), prior, m.outcomes);
  const auto violations = CheckVetoEquilibrium(veq);
  if (!violations.empty()) {
    std::string msg = "inconsistent veto equilibrium:";
    for (const auto& v : violations) msg += " " + v + ";";
    Fail(ErrorKind::kParse, msg);
  }
  const SelectionPolicy policy =
      PolicyFromConfig(ctx.config, SelectionPolicy::Lexicographic());
  const Construction c = ConstructFullParticipation(veq, RequireGame(m),
                                                    RequireUtilities(m), policy);
  const IntuitiveReport intuitive = CheckIntuitiveCriterion(
      c, prior, RequireGame(m), RequireUtilities(m), policy);
  Checks checks;
  checks.Add("ic", c.ic.ok);
  checks.Add("no_veto", c.no_veto.ok);
  checks.Add("outcome_match", c.outcome_deviation <= ctx.config.tol.equality);
  json body = {{"rule", RuleToJson(c.rule, *m.space)},
               {"device", DeviceToJson(c.device)},
               {"offpath", MatrixToJson(c.offpath)},
               {"ic", IcToJson(c.ic)},
               {"no_veto", NoVetoToJson(c.no_veto)},
               {"outcome_deviation", c.outcome_deviation},
               {"intuitive_criterion",
                {{"ok", intuitive.ok},
                 {"failures", StringList(intuitive.failures)}}}};
  Emit(ctx, "construct", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

int Pool(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const InformationStructure& prior = RequirePrior(m);
  if (!doc.contains("proposal_probs") || !doc.contains("proposals")) {
    Fail(ErrorKind::kParse, "pool needs proposal_probs and proposals");
  }
  const auto probs = ParseMatrix(doc.at("proposal_probs"));
  const json& pj = doc.at("proposals");
  if (static_cast<int>(probs.size()) != m.space->num_types(0)) {
    Fail(ErrorKind::kParse, "proposal_probs needs one row per principal type");
  }
  std::vector<Proposal> proposals;
  for (size_t k = 0; k < pj.size(); ++k) {
    // Prior of the continuation: I^0 updated on proposal k.
    std::vector<double> w(m.space->num_profiles());
    for (int p = 0; p < m.space->num_profiles(); ++p) {
      const auto& row = probs[m.space->TypeOf(p, 0)];
      if (row.size() != pj.size()) {
        Fail(ErrorKind::kParse, "proposal_probs row has the wrong length");
      }
      w[p] = prior.mass(p) * row[k];
    }
    double total = 0.0;
    for (double x : w) total += x;
    // A proposal nobody makes keeps the prior as a placeholder.
    const auto cond = total > 0.0 ? InformationStructure::Normalized(m.space, w)
                                  : prior;
    proposals.push_back(
        {Parsing("proposal", [&] { return pj[k].at("label").get<std::string>(); }),
         ParseVetoEquilibrium(pj[k].at("veq"), cond, m.outcomes)});
  }
  const SelectionPolicy policy =
      PolicyFromConfig(ctx.config, SelectionPolicy::Lexicographic());
  const Pooling pool = PoolInformedPrincipal(prior, probs, proposals,
                                             RequireGame(m), RequireUtilities(m),
                                             policy);
  Checks checks;
  checks.Add("no_veto", pool.no_veto.ok);
  checks.Add("outcome_match",
             pool.outcome_deviation <= ctx.config.tol.equality);
  json body = {{"rule", RuleToJson(pool.rule, *m.space)},
               {"device", DeviceToJson(pool.device)},
               {"collapsed", pool.collapsed},
               {"no_veto", NoVetoToJson(pool.no_veto)},
               {"outcome_deviation", pool.outcome_deviation},
               {"separating_rule",
                RuleToJson(SeparatingOutcomeRule(prior, probs, proposals),
                           *m.space)}};
  Emit(ctx, "pool", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

json AlignmentToJson(const AlignmentReport& r, const DesignerSpace& ds) {
  json out = {{"player", r.player},
              {"aligned", r.aligned},
              {"pairs_checked", r.pairs_checked}};
  if (r.witness) {
    const AlignmentWitness& w = *r.witness;
    auto name = [&](int t) {
      return t < 0 ? json(nullptr) : json(DesignerTypeName(ds, t));
    };
    out["witness"] = {{"prefers_f", name(w.prefers_f)},
                      {"prefers_f_prime", name(w.prefers_f_prime)},
                      {"f", VectorToJson(w.f)},
                      {"f_prime", VectorToJson(w.f_prime)},
                      {"gap", w.gap}};
  }
  return out;
}

int Opportunism(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const Player dev = RequirePlayer(doc, "deviator", *m.space);
  const DesignerSpace ds{
      .game = RequireGame(m),
      .base = RequirePrior(m),
      .deviator = dev,
      .policy = PolicyFromConfig(ctx.config, SelectionPolicy::DeviatorWorst(dev)),
      .fosd_resolution = ctx.config.fosd_resolution};
  std::string source = "input";
  const SignalingDevice device = [&] {
    if (doc.contains("device")) return ParseDevice(doc.at("device"), m.space);
    source = "punishment";
    return Convexify(BuildPunishment(ctx, m, doc)).device;
  }();
  const ImmunityReport imm = CheckImmunity(device, ds);
  const WeakImmunityReport weak = CheckWeakImmunity(device, ds);
  json alignment = json::array();
  for (const auto& r : imm.alignment) alignment.push_back(AlignmentToJson(r, ds));
  json body = {{"device_source", source},
               {"device", DeviceToJson(device)},
               {"full_support", imm.full_support},
               {"alignment", alignment},
               {"immunity",
                {{"verdict", VerdictName(imm.verdict)}, {"reason", imm.reason}}},
               {"weak_immunity",
                {{"verdict", VerdictName(weak.verdict)},
                 {"worst_signal", weak.worst_signal ? json(*weak.worst_signal)
                                                    : json(nullptr)},
                 {"values", MatrixToJson(weak.values)},
                 {"reason", weak.reason}}}};
  if (imm.pressure) {
    std::vector<bool> p = imm.pressure->pressured;
    body["pressure"] = {{"pressured", p},
                        {"verify_value", VectorToJson(imm.pressure->verify_value)},
                        {"lottery_value",
                         VectorToJson(imm.pressure->lottery_value)}};
  }
  Checks checks;
  if (doc.value("designer_devices", false)) {
    const DesignerDeviceReport rep = EnumerateDesignerDevices(
        ds, StrategyGrid(ctx), ctx.config.posterior_grid, ctx.config.tol.pbe);
    body["designer_devices"] = {{"survivors", MatrixToJson(rep.survivors)},
                                {"only_babbling", rep.only_babbling},
                                {"devices_checked", rep.devices_checked}};
    checks.Add("designer_devices_enumerated", true);
  }
  Emit(ctx, "opportunism", body, checks);
  switch (imm.verdict) {
    case Verdict::kImmune: return kExitOk;
    case Verdict::kNotImmune: return kExitNotImmune;
    case Verdict::kIndeterminate: return kExitIndeterminate;
  }
  return kExitInternal;
}

GrandGameInstance BuildInstance(const Context& ctx, const Model& m,
                                const json& doc) {
  const std::string rule_name = doc.value("rule", "proposed");
  const DefaultGame& game = RequireGame(m);
  const auto* sg = std::get_if<StrategicBayesianGame>(&game);
  GrandGameInstance inst{
      .game = game,
      .outcomes = sg ? sg->outcomes : m.outcomes,
      .utilities = sg ? sg->utilities : RequireUtilities(m),
      .prior = RequirePrior(m),
      .rule = RequireRule(m, rule_name),
      .device = doc.contains("device") ? ParseDevice(doc.at("device"), m.space)
                                       : SignalingDevice::Babbling(m.space),
      .grid = StrategyGrid(ctx),
      .belief_resolution = ctx.config.posterior_grid,
      .epsilon = ctx.config.tol.pbe,
      .cap = ctx.config.profile_cap,
      .policy = PolicyFromConfig(ctx.config, SelectionPolicy::Lexicographic()),
      .max_results = doc.value("max_results", -1L)};
  return inst;
}

int Simulate(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const GrandGameInstance inst = BuildInstance(ctx, m, doc);
  const auto found = EnumerateVetoEquilibria(inst);
  json list = json::array();
  Checks checks;
  bool consistent = true;
  for (const VetoEquilibrium& veq : found) {
    consistent = consistent && CheckVetoEquilibrium(veq).empty();
    list.push_back(VetoEquilibriumToJson(veq));
  }
  checks.Add("bayes_consistent", consistent);
  json body = {{"grid", inst.grid},
               {"epsilon", inst.epsilon},
               {"count", found.size()},
               {"equilibria", list}};
  Emit(ctx, "simulate", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

int Replicate(const Context& ctx, const json& doc) {
  const Model m = ParseModel(doc);
  const GrandGameInstance inst = BuildInstance(ctx, m, doc);
  if (!doc.contains("veq")) Fail(ErrorKind::kParse, "document has no veq");
  const VetoEquilibrium veq =
      ParseVetoEquilibrium(doc.at("veq"), inst.prior, inst.outcomes);
  const ReplicationReport rep = ReplicateCheck(veq, inst);
  const double bound = 1.0 / inst.grid + ctx.config.tol.pbe;
  Checks checks;
  checks.Add("replicated", rep.replicated);
  checks.Add("deviation_within_grid", rep.max_deviation <= bound);
  json body = {{"replicated", rep.replicated},
               {"max_deviation", rep.max_deviation},
               {"deviation_bound", bound},
               {"slack", NumberOrNull(rep.slack)},
               {"offpath", MatrixToJson(rep.offpath)},
               {"beliefs_tried", rep.beliefs_tried}};
  if (rep.construction) {
    body["construction"] = {{"rule", RuleToJson(rep.construction->rule, *m.space)},
                            {"device", DeviceToJson(rep.construction->device)},
                            {"ok", rep.construction->ok()}};
  }
  Emit(ctx, "replicate", body, checks);
  return checks.all() ? kExitOk : kExitInternal;
}

struct CommandEntry {
  const char* help;
  int (*run)(const Context&, const json&);
};

const std::map<std::string, CommandEntry>& Registry() {
  static const std::map<std::string, CommandEntry> kRegistry = {
      {"validate", {"Check a model document and report every bad cell", Validate}},
      {"solve-game", {"Enumerate and select Bayes-Nash equilibria", SolveGame}},
      {"punish", {"Payoff-minimizing off-path signal for one vetoer", Punish}},
      {"solve-mech", {"Optimal mechanism under IC and participation", SolveMech}},
      {"construct", {"Full-participation mechanism from a veto equilibrium", Construct}},
      {"pool", {"Pooling mechanism for an informed principal", Pool}},
      {"opportunism", {"Alignment and immunity of a signaling device", Opportunism}},
      {"simulate", {"Enumerate grid veto equilibria of the grand game", Simulate}},
      {"replicate", {"Confirm a constructed mechanism replicates a veq", Replicate}},
      {"envelope", {"Value samples and convex envelope as CSV and SVG", Envelope}},
  };
  return kRegistry;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> kNames = {
      "validate", "solve-game",  "punish",   "solve-mech", "construct",
      "pool",     "opportunism", "simulate", "replicate",  "envelope"};
  return kNames;
}

std::string CommandHelp(const std::string& name) {
  return Registry().at(name).help;
}

int RunCommand(const std::string& name, const Context& ctx) {
  auto it = Registry().find(name);
  if (it == Registry().end()) Fail(ErrorKind::kParse, "unknown command " + name);
  ValidateConfig(ctx.config);
  if (ctx.grid && *ctx.grid < 2) Fail(ErrorKind::kParse, "--grid must be >= 2");
  const json doc = ReadJsonFile(ctx.input);
  return it->second.run(ctx, doc);
}

}  // namespace vetoshield::cli
