#include "avgov/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "avgov/analysis.hpp"
#include "avgov/core.hpp"
#include "avgov/params.hpp"
#include "avgov/repeated.hpp"
#include "avgov/scenario.hpp"

namespace avgov::cli {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

json canonical(json doc) {
  if (doc.is_object() || doc.is_array()) {
    for (auto& child : doc) child = canonical(std::move(child));
    return doc;
  }
  if (doc.is_number_float()) {
    const double v = doc.get<double>();
    if (!std::isfinite(v)) return format_number(v);
    const double rounded = std::strtod(format_number(v).c_str(), nullptr);
    return rounded == 0.0 ? 0.0 : rounded;
  }
  return doc;
}

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table{
      {"derive-params", "derive a reward schedule from (T, epsilon, a')",
       {"derive_schedule", "max_discount"}},
      {"validate", "check schedule identities and the external-reward bound",
       {"validate_schedule", "external_bound_delta"}},
      {"winner", "winner, approval masses, utilities and payouts of a profile",
       {"winner", "reward", "utility"}},
      {"qual", "estimated quality of every proposal", {"qual"}},
      {"honest", "honest profile, admissibility and honest expected rewards",
       {"honest_profile", "is_admissible", "expected_reward"}},
      {"enumerate", "all (1+eps)-equilibria by exhaustive search",
       {"enumerate_equilibria", "is_approx_pne"}},
      {"poa", "optimal quality with price of anarchy and stability", {"opt_quality"}},
      {"construct-pne", "single-approval equilibrium for strategic experts",
       {"constructive_pne"}},
      {"dynamics", "best-response dynamics with cycle detection",
       {"best_response_dynamics", "best_response"}},
      {"safety", "deviation safety thresholds and eligibility certificate",
       {"deviation_safety_threshold", "safety_certificate"}},
      {"reward-curve", "expected reward of both votes over p in [0,1]", {"reward_curve"}},
      {"repeat", "repeated game with delayed weight updates",
       {"run", "sample_round", "correct_fraction", "delayed_update"}},
      {"deviation-gap", "exhaustive single-deviator search over a short horizon",
       {"deviation_gap"}},
      {"reproduce", "built-in instances: prop3, prop4, thm6", {}},
  };
  return table;
}

namespace {

struct Flags {
  std::string scenario_path;
  std::string builtin;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> epsilon;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> expert;
  std::optional<double> zeta;
  std::optional<double> threshold;
  std::optional<double> a_prime;
  std::optional<std::size_t> n;
  std::optional<double> eps_weight;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  const Flags& flags;
  std::ostream& out;
  bool claim_failed = false;

  Scenario scenario() const {
    if (flags.scenario_path.empty()) throw UsageError("this command needs a scenario file");
    Scenario s = load_scenario(flags.scenario_path);
    if (flags.mode) s.query.mode = parse_mode(*flags.mode);
    if (flags.epsilon) s.query.epsilon = *flags.epsilon;
    if (s.world) {
      if (flags.seed) s.world->seed = *flags.seed;
      if (flags.horizon) s.world->horizon = *flags.horizon;
      validate_world(*s.world);
    }
    return s;
  }
};

json schedule_json(const RewardSchedule& s) {
  return {{"a", s.a}, {"a_prime", s.a_prime}, {"s", s.s},
          {"T", s.T}, {"epsilon", s.epsilon},  {"delta", s.delta}};
}

json diagnostics_json(const ScheduleDiagnostics& d) {
  return {{"threshold_identity_residual", d.threshold_identity_residual},
          {"inflection_residual", d.inflection_residual},
          {"a_dominates", d.a_dominates},
          {"epsilon_condition", d.epsilon_condition},
          {"all_ok", d.all_ok}};
}

json ratio_json(const std::optional<double>& r) { return r ? json(*r) : json(nullptr); }

json mask_json(VoteMask m, std::size_t k) {
  json row = json::array();
  for (std::size_t j = 0; j < k; ++j) row.push_back((m >> j) & 1U ? 1 : 0);
  return row;
}

json equilibria_json(const EquilibriumReport& report) {
  json list = json::array();
  for (const auto& e : report.equilibria) {
    list.push_back({{"profile", e.profile.to_rows()},
                    {"winner", proposal_number(e.winner)},
                    {"quality", e.quality}});
  }
  return list;
}

json report_json(const EquilibriumReport& report) {
  return {{"equilibria", equilibria_json(report)},
          {"count", report.equilibria.size()},
          {"opt", {{"proposal", report.opt.proposal + 1}, {"quality", report.opt.quality}}},
          {"poa", ratio_json(report.poa)},
          {"pos", ratio_json(report.pos)}};
}

json dynamics_json(const DynamicsTrace& trace, std::size_t k) {
  json path = json::array();
  for (const auto& step : trace.path) {
    path.push_back({{"expert", step.expert + 1},
                    {"old_votes", mask_json(step.old_votes, k)},
                    {"new_votes", mask_json(step.new_votes, k)},
                    {"winner", proposal_number(step.winner)}});
  }
  return {{"start", trace.start.to_rows()},
          {"path", path},
          {"terminal", std::string(to_string(trace.terminal))},
          {"cycle_length", trace.cycle_length}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

VotingProfile chosen_profile(const Scenario& s) {
  return s.profile ? *s.profile : honest_profile(s.instance, s.schedule.T);
}

RewardSchedule schedule_from_flags_or_scenario(const Context& ctx) {
  if (!ctx.flags.scenario_path.empty()) return ctx.scenario().schedule;
  const DerivableSchedule d = default_schedule_input();
  return derive_schedule(ctx.flags.threshold.value_or(d.T), ctx.flags.epsilon.value_or(d.epsilon),
                         ctx.flags.a_prime.value_or(d.a_prime));
}

// ---- commands ---------------------------------------------------------------

json cmd_derive_params(Context& ctx) {
  RewardSchedule schedule = schedule_from_flags_or_scenario(ctx);
  json doc = {{"schedule", schedule_json(schedule)},
              {"diagnostics", diagnostics_json(validate_schedule(schedule))}};
  std::optional<double> zeta = ctx.flags.zeta;
  if (!zeta && !ctx.flags.scenario_path.empty()) {
    if (const auto world = ctx.scenario().world) zeta = world->zeta;
  }
  if (zeta) {
    doc["zeta"] = *zeta;
    doc["max_discount"] = max_discount(schedule.epsilon, *zeta);
  }
  return doc;
}

json cmd_validate(Context& ctx) {
  const Scenario s = ctx.scenario();
  return {{"valid", s.diagnostics.all_ok},
          {"diagnostics", diagnostics_json(s.diagnostics)},
          {"schedule", schedule_json(s.schedule)},
          {"delta_required", external_bound_delta(s.instance, s.schedule)},
          {"experts", s.instance.experts()},
          {"proposals", s.instance.proposals()}};
}

json cmd_winner(Context& ctx) {
  const Scenario s = ctx.scenario();
  const VotingProfile profile = chosen_profile(s);
  const Outcome out = winner(s.instance, profile);
  json utilities = json::array(), if_good = json::array(), if_bad = json::array();
  for (std::size_t i = 0; i < s.instance.experts(); ++i) {
    utilities.push_back(utility(s.instance, s.schedule, profile, i));
    const bool vote = out.winner && profile.vote(i, *out.winner);
    const double w = s.instance.weight(i);
    if_good.push_back(out.winner ? reward(vote, true, s.schedule, w) : 0.0);
    if_bad.push_back(out.winner ? reward(vote, false, s.schedule, w) : 0.0);
  }
  return {{"profile", profile.to_rows()},
          {"winner", proposal_number(out.winner)},
          {"approval_mass", out.approval_mass},
          {"utilities", utilities},
          {"payout_if_good", if_good},
          {"payout_if_bad", if_bad}};
}

json cmd_qual(Context& ctx) {
  const Scenario s = ctx.scenario();
  json qualities = json::array();
  for (std::size_t j = 0; j < s.instance.proposals(); ++j) {
    qualities.push_back(qual(s.instance, s.schedule.T, j));
  }
  return {{"threshold", s.schedule.T}, {"qualities", qualities}};
}

json cmd_honest(Context& ctx) {
  const Scenario s = ctx.scenario();
  const VotingProfile honest = honest_profile(s.instance, s.schedule.T);
  json rewards = json::array();
  for (std::size_t i = 0; i < s.instance.experts(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.instance.proposals(); ++j) {
      row.push_back(expected_reward(honest.vote(i, j), s.instance.belief(i, j), s.schedule));
    }
    rewards.push_back(row);
  }
  json doc = {{"profile", honest.to_rows()},
              {"admissible", is_admissible(s.instance, s.schedule, honest)},
              {"expected_rewards", rewards}};
  if (s.profile) doc["scenario_profile_admissible"] = is_admissible(s.instance, s.schedule, *s.profile);
  return doc;
}

json cmd_enumerate(Context& ctx) {
  const Scenario s = ctx.scenario();
  json doc = report_json(enumerate_equilibria(s.instance, s.schedule, s.query));
  doc["mode"] = std::string(to_string(s.query.mode));
  doc["epsilon"] = s.query.epsilon;
  if (s.profile) {
    doc["profile_is_equilibrium"] = is_approx_pne(s.instance, s.schedule, *s.profile, s.query);
  }
  return doc;
}

json cmd_poa(Context& ctx) {
  const Scenario s = ctx.scenario();
  const EquilibriumReport report = enumerate_equilibria(s.instance, s.schedule, s.query);
  const OptQuality opt = opt_quality(s.instance, s.schedule.T);
  return {{"opt", {{"proposal", opt.proposal + 1}, {"quality", opt.quality}}},
          {"poa", ratio_json(report.poa)},
          {"pos", ratio_json(report.pos)},
          {"equilibrium_count", report.equilibria.size()},
          {"mode", std::string(to_string(s.query.mode))},
          {"epsilon", s.query.epsilon}};
}

json cmd_construct_pne(Context& ctx) {
  const Scenario s = ctx.scenario();
  const VotingProfile profile = constructive_pne(s.instance, s.schedule);
  const Outcome out = winner(s.instance, profile);
  return {{"profile", profile.to_rows()},
          {"winner", proposal_number(out.winner)},
          {"quality", qual(s.instance, s.schedule.T, out.winner)},
          {"is_equilibrium", is_approx_pne(s.instance, s.schedule, profile,
                                           {Mode::strategic, 0.0})}};
}

json cmd_dynamics(Context& ctx) {
  const Scenario s = ctx.scenario();
  const VotingProfile start = chosen_profile(s);
  const auto trace = best_response_dynamics(s.instance, s.schedule, start, s.query.mode,
                                            ctx.flags.max_steps.value_or(64));
  json responses = json::array();
  for (std::size_t i = 0; i < s.instance.experts(); ++i) {
    json set = json::array();
    for (VoteMask m : best_response(s.instance, s.schedule, start, i, s.query.mode)) {
      set.push_back(mask_json(m, s.instance.proposals()));
    }
    responses.push_back(set);
  }
  json doc = dynamics_json(trace, s.instance.proposals());
  doc["initial_best_responses"] = responses;
  doc["mode"] = std::string(to_string(s.query.mode));
  return doc;
}

json cmd_safety(Context& ctx) {
  const Scenario s = ctx.scenario();
  const Certificate cert = safety_certificate(s.instance, s.schedule);
  json cells = json::array();
  for (std::size_t i = 0; i < s.instance.experts(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.instance.proposals(); ++j) {
      const auto env =
          deviation_safety_threshold(s.schedule, s.instance.normalized_external(i, j));
      row.push_back({{"statement_branch", env.statement_branch},
                     {"proof_branch", env.proof_branch},
                     {"effective_threshold", env.effective_threshold},
                     {"belief", s.instance.belief(i, j)},
                     {"safe", cert.safe(i, j) != 0}});
    }
    cells.push_back(row);
  }
  return {{"cells", cells}, {"eligible", cert.eligible}};
}

json cmd_reward_curve(Context& ctx) {
  const RewardSchedule schedule = schedule_from_flags_or_scenario(ctx);
  const auto curve = reward_curve(schedule, ctx.flags.samples.value_or(101));
  std::ostringstream csv;
  csv << "p,approve,disapprove\n";
  json rows = json::array();
  std::size_t crossing = 0;
  for (std::size_t n = 0; n < curve.size(); ++n) {
    const auto& c = curve[n];
    csv << format_number(c.p) << ',' << format_number(c.approve) << ','
        << format_number(c.disapprove) << '\n';
    rows.push_back({c.p, c.approve, c.disapprove});
    const auto gap = [&](std::size_t m) { return std::abs(curve[m].approve - curve[m].disapprove); };
    if (gap(n) < gap(crossing)) crossing = n;
  }
  if (ctx.flags.out) write_text(*ctx.flags.out, csv.str());
  return {{"schedule", schedule_json(schedule)},
          {"samples", curve.size()},
          {"crossing_p", curve[crossing].p},
          {"rows", rows}};
}

json cmd_repeat(Context& ctx) {
  const Scenario s = ctx.scenario();
  if (!s.world) throw UsageError("repeat needs a scenario with a world section");
  const RepeatedTrace trace = run(*s.world, s.schedule, Policy::honest());
  const std::size_t n = s.world->expertise.size();

  std::ostringstream csv;
  csv << "round,expert,weight,vote_on_winner,winner,revealed_quality,realized_reward,"
         "subjective_reward\n";
  std::size_t bracket_violations = 0;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const RoundRecord& r = trace.rounds[t];
    const auto& next = t + 1 < trace.rounds.size() ? trace.rounds[t + 1].weights
                                                   : trace.final_weights;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = r.weights[i];
      if (next[i] > (1.0 + s.world->zeta) * w || next[i] < (1.0 - s.world->zeta) * w) {
        ++bracket_violations;
      }
      const int vote = r.winner ? (r.profile.vote(i, *r.winner) ? 1 : 0) : -1;
      csv << t << ',' << i + 1 << ',' << format_number(w) << ',' << vote << ','
          << proposal_number(r.winner) << ','
          << (r.revealed_quality ? (*r.revealed_quality ? "1" : "0") : "") << ','
          << format_number(r.realized[i]) << ',' << format_number(r.subjective[i]) << '\n';
    }
  }
  if (ctx.flags.out) write_text(*ctx.flags.out, csv.str());

  json omega = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    omega.push_back(correct_fraction(trace.correct[i], trace.revealed));
  }
  return {{"rounds", trace.rounds.size()},
          {"seed", s.world->seed},
          {"final_weights", trace.final_weights},
          {"expertise", s.world->expertise},
          {"correct_fraction", omega},
          {"correct", trace.correct},
          {"revealed", trace.revealed},
          {"discounted_realized", trace.discounted_realized},
          {"discounted_subjective", trace.discounted_subjective},
          {"discount_precondition_ok", trace.discount_precondition_ok},
          {"weight_bracket_violations", bracket_violations}};
}

json cmd_deviation_gap(Context& ctx) {
  const Scenario s = ctx.scenario();
  if (!s.world) throw UsageError("deviation-gap needs a scenario with a world section");
  const std::size_t expert = ctx.flags.expert.value_or(1);
  if (expert < 1) throw UsageError("--expert is 1-based");
  // --horizon here sets the search depth, not the world horizon.
  const std::size_t depth = ctx.flags.horizon.value_or(3);
  const DeviationGap gap = deviation_gap(*s.world, s.schedule, expert - 1, depth);
  json plan = json::array();
  for (VoteMask m : gap.best_plan) plan.push_back(mask_json(m, s.world->proposals_per_round));
  return {{"expert", expert},
          {"horizon", depth},
          {"gamma", s.world->gamma},
          {"max_discount", max_discount(s.schedule.epsilon, s.world->zeta)},
          {"honest_total", gap.honest_total},
          {"best_deviation_total", gap.best_deviation_total},
          {"truncated_ratio", gap.truncated_ratio},
          {"honest_tail_lower", gap.honest_tail_lower},
          {"deviation_tail_upper", gap.deviation_tail_upper},
          {"bounded_ratio", gap.bounded_ratio},
          {"bound", gap.bound},
          {"within_bound", gap.bounded_ratio <= gap.bound + kTolerance},
          {"best_plan", plan},
          {"plans_searched", gap.plans_searched},
          {"discount_precondition_ok", gap.discount_precondition_ok}};
}

json reproduce_prop3(Context& ctx) {
  const std::size_t n = ctx.flags.n.value_or(4);
  const double slack = ctx.flags.eps_weight.value_or(0.01);
  const Scenario s = builtin_prop3(n, slack);
  const VotingProfile profile = constructive_pne(s.instance, s.schedule);
  const bool is_pne = is_approx_pne(s.instance, s.schedule, profile, {Mode::strategic, 0.0});
  const Outcome out = winner(s.instance, profile);
  const double quality = qual(s.instance, s.schedule.T, out.winner);
  const OptQuality opt = opt_quality(s.instance, s.schedule.T);
  const double ratio = quality_ratio(opt.quality, quality);
  const double expected = 1.0 / (1.0 / static_cast<double>(n) + slack);

  VotingProfile single(s.instance.experts(), s.instance.proposals());
  single.set_vote(0, 0, true);
  const bool pass = is_pne && profile == single && std::abs(ratio - expected) <= kTolerance;
  ctx.claim_failed = !pass;
  return {{"instance", "prop3"},
          {"n", n},
          {"slack", slack},
          {"profile", profile.to_rows()},
          {"is_equilibrium", is_pne},
          {"winner", proposal_number(out.winner)},
          {"quality", quality},
          {"opt", opt.quality},
          {"ratio", ratio},
          {"expected_ratio", expected},
          {"claim", "strategic equilibrium quality ratio grows linearly in n"},
          {"pass", pass}};
}

json reproduce_prop4(Context& ctx) {
  Scenario s = builtin_prop4();
  if (ctx.flags.mode) s.query.mode = parse_mode(*ctx.flags.mode);
  if (ctx.flags.epsilon) s.query.epsilon = *ctx.flags.epsilon;
  const EquilibriumReport report = enumerate_equilibria(s.instance, s.schedule, s.query);
  const auto trace =
      best_response_dynamics(s.instance, s.schedule, honest_profile(s.instance, s.schedule.T),
                             s.query.mode, ctx.flags.max_steps.value_or(64));
  const bool pass = report.equilibria.empty() && trace.terminal == Terminal::cycle;
  ctx.claim_failed = !pass;
  return {{"instance", "prop4"},
          {"mode", std::string(to_string(s.query.mode))},
          {"epsilon", s.query.epsilon},
          {"equilibria", equilibria_json(report)},
          {"cycle_length", trace.cycle_length},
          {"dynamics", dynamics_json(trace, s.instance.proposals())},
          {"claim", "no pure equilibrium; best responses cycle"},
          {"pass", pass}};
}

json reproduce_thm6(Context& ctx) {
  const double slack = ctx.flags.eps_weight.value_or(0.1);
  const Scenario s = builtin_thm6(slack);
  const VotingProfile witness = VotingProfile::from_rows({{0, 1}, {1, 0}});
  const bool is_pne = is_approx_pne(s.instance, s.schedule, witness, s.query);
  const Outcome out = winner(s.instance, witness);
  const double quality = qual(s.instance, s.schedule.T, out.winner);
  const EquilibriumReport report = enumerate_equilibria(s.instance, s.schedule, s.query);
  const double expected = 2.0 / (1.0 + slack);
  const bool pass = is_pne && report.poa && std::abs(*report.poa - expected) <= kTolerance;
  ctx.claim_failed = !pass;
  return {{"instance", "thm6"},
          {"slack", slack},
          {"profile", witness.to_rows()},
          {"profile_is_equilibrium", is_pne},
          {"pne_quality", quality},
          {"opt", report.opt.quality},
          {"poa", ratio_json(report.poa)},
          {"pos", ratio_json(report.pos)},
          {"expected_poa", expected},
          {"claim", "semi-strategic price of anarchy reaches 2/(1+slack)"},
          {"pass", pass}};
}

json cmd_reproduce(Context& ctx) {
  const std::string& name = ctx.flags.builtin;
  if (name == "prop3") return reproduce_prop3(ctx);
  if (name == "prop4") return reproduce_prop4(ctx);
  if (name == "thm6") return reproduce_thm6(ctx);
  throw UsageError("unknown built-in instance '" + name + "' (expected prop3|prop4|thm6)");
}

using Handler = std::function<json(Context&)>;

const std::map<std::string_view, Handler>& handlers() {
  static const std::map<std::string_view, Handler> table{
      {"derive-params", cmd_derive_params}, {"validate", cmd_validate},
      {"winner", cmd_winner},               {"qual", cmd_qual},
      {"honest", cmd_honest},               {"enumerate", cmd_enumerate},
      {"poa", cmd_poa},                     {"construct-pne", cmd_construct_pne},
      {"dynamics", cmd_dynamics},           {"safety", cmd_safety},
      {"reward-curve", cmd_reward_curve},   {"repeat", cmd_repeat},
      {"deviation-gap", cmd_deviation_gap}, {"reproduce", cmd_reproduce},
  };
  return table;
}

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--out", f.out, "write CSV output to this path");
  sub.add_option("--seed", f.seed, "RNG seed for repeated runs");
  sub.add_option("--mode", f.mode, "strategic | semi");
  sub.add_option("--epsilon", f.epsilon, "approximation slack");
  sub.add_option("--samples", f.samples, "reward-curve grid size");
  sub.add_option("--horizon", f.horizon, "rounds (repeat) or search depth (deviation-gap)");
  sub.add_option("--max-steps", f.max_steps, "best-response dynamics step limit");
  sub.add_option("--expert", f.expert, "1-based expert index");
  sub.add_option("--zeta", f.zeta, "weight step bound");
  sub.add_option("--threshold", f.threshold, "honesty threshold T");
  sub.add_option("--a-prime", f.a_prime, "reward for a correct disapproval");
  sub.add_option("--n", f.n, "prop3 size");
  sub.add_option("--eps-weight", f.eps_weight, "weight slack of built-in instances");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approval-voting update selection: equilibria, rewards and reputation dynamics",
               "avgov"};
  app.require_subcommand(1, 1);
  Flags flags;
  for (const auto& info : command_table()) {
    CLI::App* sub = app.add_subcommand(std::string(info.name), std::string(info.summary));
    if (info.name == "reproduce") {
      sub->add_option("name", flags.builtin, "prop3 | prop4 | thm6")->required();
    }
    sub->add_option("scenario", flags.scenario_path, "scenario JSON file");
    add_flags(*sub, flags);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Context ctx{flags, out};
  try {
    const json doc = handlers().at(command)(ctx);
    out << canonical(doc).dump(2) << '\n';
    return ctx.claim_failed ? kClaimFailed : kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GuardError& e) {
    err << "refused: " << e.what() << '\n';
    return kGuard;
  } catch (const ScenarioError& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {  // ContractError, ScheduleError
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {  // NormalizationError
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace avgov::cli
