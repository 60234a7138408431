// Copyright 2026 The zdlab Authors
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

#include "zdlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zdlab/errors.hpp"
#include "zdlab/evolution.hpp"
#include "zdlab/http.hpp"
#include "zdlab/io.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/response.hpp"
#include "zdlab/service.hpp"

namespace zdlab {
namespace {

constexpr const char* kDefaultZd = "extortion:delta=1,chi=10,phi=0.02";

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string vec_text(const Vec4& v) {
  return "(" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + ", " + num(v[3]) +
         ")";
}

json range_json(double lo, double hi) {
  auto f = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return json::array({f(lo), f(hi)});
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s.push_back(sep);
    s += p;
  }
  return s;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("ZDLAB_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("ZDLAB_SEED is not an integer: ") + env);
  }
}

// Options shared by every subcommand.
struct Common {
  std::string game = "pd";
  std::string config;
  std::uint64_t seed = 1;
  std::string format;
  std::string output;
};

// --extortion / --mischief / --linear, each taking key=value tokens.
struct SpecFlags {
  std::vector<std::string> extortion, mischief, linear;

  void add(CLI::App* sub) {
    sub->add_option("--extortion", extortion, "extortion spec: delta=.. chi=.. [phi=..]")
        ->expected(1, -1);
    sub->add_option("--mischief", mischief, "mischief spec: target=.. [beta=..]")
        ->expected(1, -1);
    sub->add_option("--linear", linear, "raw linear spec: alpha=.. beta=.. gamma=..")
        ->expected(1, -1);
  }

  std::optional<ZdSpec> get() const {
    std::optional<ZdSpec> out;
    int n = 0;
    if (!extortion.empty()) {
      ++n;
      out = zd_spec_from_params("extortion", parse_params(join(extortion, ',')));
    }
    if (!mischief.empty()) {
      ++n;
      out = zd_spec_from_params("mischief", parse_params(join(mischief, ',')));
    }
    if (!linear.empty()) {
      ++n;
      out = zd_spec_from_params("linear", parse_params(join(linear, ',')));
    }
    if (n > 1) throw InvalidArgument("give only one of --extortion, --mischief, --linear");
    return out;
  }
};

class Output {
 public:
  Output(const Common& c, std::string fallback, std::ostream& out)
      : format_(c.format.empty() ? std::move(fallback) : c.format), out_(&out) {
    if (format_ != "text" && format_ != "json" && format_ != "csv") {
      throw InvalidArgument("--format must be text, json or csv");
    }
    if (!c.output.empty()) {
      file_.open(c.output);
      if (!file_) throw InvalidArgument("cannot write '" + c.output + "'");
      out_ = &file_;
    }
  }
  const std::string& format() const { return format_; }
  std::ostream& stream() { return *out_; }
  void json_doc(const json& j) { *out_ << j.dump(2) << '\n'; }

 private:
  std::string format_;
  std::ofstream file_;
  std::ostream* out_;
};

void no_csv(const Output& o, const char* cmd) {
  if (o.format() == "csv") {
    throw InvalidArgument(std::string(cmd) + " has no CSV output");
  }
}

StrategyVector memory_one_or_throw(const StrategySpec& s, const StageGame& g,
                                   Player side) {
  auto p = resolve_memory_one(s, g, side);
  if (!p) {
    throw InvalidArgument("'" + s.name + "' is not a memory-one strategy here");
  }
  return *p;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  Common c;
  SpecFlags spec;
  std::string side = "x";
};

json spec_ranges(const StageGame& g, const ZdSpec& spec, Player side) {
  json r = json::object();
  if (auto* e = std::get_if<ExtortionSpec>(&spec)) {
    auto chi = extortion_ranges(g, e->delta, side);
    r["chi"] = chi.feasible ? range_json(chi.lower, chi.upper) : json(nullptr);
    auto phi = feasible_phi(g, e->delta, e->chi, side);
    r["phi"] = phi.feasible ? range_json(phi.lower, phi.upper) : json(nullptr);
  } else if (auto* m = std::get_if<MischiefSpec>(&spec)) {
    auto t = mischief_range(g, side);
    r["target"] = t.feasible ? range_json(t.lower, t.upper) : json(nullptr);
    auto b = mischief_beta_range(g, m->target, side);
    r["beta"] = b.feasible ? range_json(b.lower, b.upper) : json(nullptr);
  }
  return r;
}

std::string range_text(const json& r) {
  auto end = [](const json& v) { return v.is_null() ? std::string("inf") : num(v.get<double>()); };
  return "[" + end(r[0]) + ", " + end(r[1]) + "]";
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  Output o(a.c, "text", out);
  no_csv(o, "synth");
  const StageGame g = parse_game(a.c.game);
  const auto spec = a.spec.get();
  if (!spec) throw InvalidArgument("synth needs --extortion, --mischief or --linear");
  if (a.side != "x" && a.side != "y") throw InvalidArgument("--side must be x or y");
  const Player side = a.side == "x" ? Player::kX : Player::kY;

  json j;
  j["schema"] = kSynthSchema;
  j["game"] = game_to_json(g);
  j["side"] = a.side;
  j["spec"] = zd_spec_to_json(*spec);
  j["ranges"] = spec_ranges(g, *spec, side);
  int code = kExitOk;
  try {
    const StrategyVector p = synthesize(g, *spec, side);
    const ZDLinear z = enforced_linear(g, *spec, side);
    j["feasible"] = true;
    j["p"] = to_json(p.p());
    j["linear"] = {{"alpha", z.alpha}, {"beta", z.beta}, {"gamma", z.gamma}};
  } catch (const InfeasibleError& e) {
    j["feasible"] = false;
    j["error"] = e.what();
    j["violations"] = e.violations();
    code = kExitInfeasible;
  }

  if (o.format() == "json") {
    o.json_doc(j);
    return code;
  }
  auto& s = o.stream();
  s << "game: " << a.c.game << "\nspec: " << zd_spec_to_json(*spec).dump()
    << "\nside: " << a.side << '\n';
  for (auto it = j["ranges"].begin(); it != j["ranges"].end(); ++it) {
    s << it.key() << " range: "
      << (it.value().is_null() ? std::string("none") : range_text(it.value())) << '\n';
  }
  if (code == kExitOk) {
    s << "p = " << vec_text(vec4_from_json(j["p"], "p")) << '\n'
      << "enforces: " << num(j["linear"]["alpha"]) << "*pi_X + "
      << num(j["linear"]["beta"]) << "*pi_Y + " << num(j["linear"]["gamma"])
      << " = 0\nfeasible: yes\n";
  } else {
    s << "feasible: no\n" << j["error"].get<std::string>() << '\n';
    for (const auto& v : j["violations"]) s << "  - " << v.get<std::string>() << '\n';
  }
  return code;
}

// ---- payoffs --------------------------------------------------------------

struct PairArgs {
  Common c;
  SpecFlags spec;
  std::string x, y;
};

StrategySpec x_spec(const PairArgs& a) {
  auto zd = a.spec.get();
  if (zd && !a.x.empty()) throw InvalidArgument("give either --x or a ZD flag, not both");
  if (zd) {
    StrategySpec s;
    s.kind = StrategySpec::Kind::kZd;
    s.zd = *zd;
    s.name = zd_spec_type(*zd);
    return s;
  }
  if (a.x.empty()) throw InvalidArgument("--x (or a ZD flag) is required");
  return parse_strategy(a.x);
}

int cmd_payoffs(const PairArgs& a, std::ostream& out) {
  Output o(a.c, "text", out);
  no_csv(o, "payoffs");
  const StageGame g = parse_game(a.c.game);
  const StrategySpec sx = x_spec(a);
  const StrategySpec sy = parse_strategy(a.y);
  const StrategyVector p = memory_one_or_throw(sx, g, Player::kX);
  const StrategyVector q = memory_one_or_throw(sy, g, Player::kY);
  const auto r = expected_payoffs(p, q, g);

  json j;
  j["schema"] = kPayoffsSchema;
  j["game"] = game_to_json(g);
  j["p"] = to_json(p.p());
  j["q"] = to_json(q.p());
  j["pi_x"] = r.pi_x;
  j["pi_y"] = r.pi_y;
  j["method"] = r.method == PayoffMethod::kDeterminant ? "determinant" : "cesaro";
  j["start_dependent"] = r.start_dependent;
  j["stationary"] = to_json(r.stationary);
  json res = json::object();
  auto residual = [&](const StrategySpec& s, Player side, const char* key) {
    if (!s.zd) return;
    const ZDLinear z = enforced_linear(g, *s.zd, side);
    res[key] = std::abs(z.alpha * r.pi_x + z.beta * r.pi_y + z.gamma);
  };
  residual(sx, Player::kX, "x");
  residual(sy, Player::kY, "y");
  j["constraint_residuals"] = res;

  if (o.format() == "json") {
    o.json_doc(j);
    return kExitOk;
  }
  auto& s = o.stream();
  s << "p = " << vec_text(p.p()) << "\nq = " << vec_text(q.p()) << '\n'
    << "pi_X = " << num(r.pi_x) << "\npi_Y = " << num(r.pi_y) << '\n'
    << "method: " << j["method"].get<std::string>()
    << (r.start_dependent ? " (start dependent)" : "") << '\n';
  for (auto it = res.begin(); it != res.end(); ++it) {
    s << "constraint residual " << it.key() << ": " << num(it.value()) << '\n';
  }
  return kExitOk;
}

// ---- simulate / batch -----------------------------------------------------

struct SimArgs {
  PairArgs pair;
  long iterations = 1000;
  long games = 10000;
  unsigned threads = 0;
  bool every = false;
};

int cmd_simulate(const SimArgs& a, std::ostream& out) {
  Output o(a.pair.c, "csv", out);
  const StageGame g = parse_game(a.pair.c.game);
  auto x = make_agent(x_spec(a.pair), g, Player::kX);
  auto y = make_agent(parse_strategy(a.pair.y), g, Player::kY);
  TraceOptions opts;
  opts.thin = !a.every;
  const auto tr = play_iterated(*x, *y, g, a.iterations, a.pair.c.seed, opts);
  if (o.format() == "json") {
    o.json_doc(trace_to_json(tr));
  } else if (o.format() == "csv") {
    write_trace_csv(o.stream(), tr);
  } else {
    o.stream() << "seed " << tr.seed << ", " << tr.iterations
               << " iterations\naverage payoffs: (" << num(tr.final_x) << ", "
               << num(tr.final_y) << ")\n";
  }
  return kExitOk;
}

int cmd_batch(const SimArgs& a, std::ostream& out) {
  Output o(a.pair.c, "csv", out);
  const StageGame g = parse_game(a.pair.c.game);
  auto x = make_agent(x_spec(a.pair), g, Player::kX);
  auto y = make_agent(parse_strategy(a.pair.y), g, Player::kY);
  BatchOptions opts;
  opts.threads = a.threads;
  const auto b = batch_average(*x, *y, g, a.iterations, a.games, a.pair.c.seed, opts);
  if (o.format() == "json") {
    o.json_doc(batch_to_json(b));
  } else if (o.format() == "csv") {
    write_batch_csv(o.stream(), b);
  } else {
    o.stream() << b.n_games << " games x " << b.iterations << " iterations, seed "
               << b.master_seed << "\nmean final payoffs: (" << num(b.final_mean_x)
               << ", " << num(b.final_mean_y) << ")\nstandard errors: ("
               << num(b.final_se_x) << ", " << num(b.final_se_y) << ")\n";
  }
  return kExitOk;
}

// ---- region ---------------------------------------------------------------

struct RegionArgs {
  Common c;
  SpecFlags spec;
  std::vector<std::string> specs;
  std::string nash;
};

int cmd_region(const RegionArgs& a, std::ostream& out) {
  Output o(a.c, "json", out);
  const StageGame g = parse_game(a.c.game);
  std::optional<Point2> anchor;
  if (!a.nash.empty()) {
    const auto comma = a.nash.find(',');
    if (comma == std::string::npos) throw InvalidArgument("--nash needs x,y");
    const auto p = parse_params("x=" + a.nash.substr(0, comma) +
                                ",y=" + a.nash.substr(comma + 1));
    anchor = Point2{p.at("x"), p.at("y")};
  }
  const auto region = payoff_region(g, anchor);
  std::vector<ConstraintLine> lines;
  if (auto z = a.spec.get()) lines.push_back(constraint_line(g, *z, "flag"));
  for (const auto& tok : a.specs) {
    const auto s = parse_strategy(tok);
    if (!s.zd) throw InvalidArgument("--spec takes ZD specs, got '" + tok + "'");
    lines.push_back(constraint_line(g, *s.zd, tok));
  }
  if (o.format() == "json") {
    o.json_doc(region_to_json(g, region, lines));
    return kExitOk;
  }
  auto& s = o.stream();
  if (o.format() == "csv") {
    s << "kind,label,x,y\n" << std::setprecision(17);
    for (const auto& p : region.hull) s << "hull,," << p.x << ',' << p.y << '\n';
    for (const auto& p : region.nash_points) s << "nash,," << p.x << ',' << p.y << '\n';
    for (const auto& p : region.folk_region) s << "folk,," << p.x << ',' << p.y << '\n';
    for (const auto& l : lines) {
      if (!l.segment) continue;
      const std::string label = '"' + l.label + '"';
      s << "line," << label << ',' << l.segment->first.x << ',' << l.segment->first.y
        << "\nline," << label << ',' << l.segment->second.x << ','
        << l.segment->second.y << '\n';
    }
    return kExitOk;
  }
  s << "hull:";
  for (const auto& p : region.hull) s << " (" << num(p.x) << ", " << num(p.y) << ")";
  s << '\n';
  for (const auto& l : lines) {
    s << l.label << ": " << num(l.linear.alpha) << "*pi_X + " << num(l.linear.beta)
      << "*pi_Y + " << num(l.linear.gamma) << " = 0, "
      << (l.feasible ? "feasible" : "infeasible") << '\n';
  }
  return kExitOk;
}

// ---- respond --------------------------------------------------------------

struct RespondArgs {
  PairArgs pair;
  std::string method = "grid";
  int grid_points = 11;
  int restarts = 20;
  std::optional<double> discount;
  bool threshold = false;
};

int cmd_respond(const RespondArgs& a, std::ostream& out) {
  Output o(a.pair.c, "text", out);
  no_csv(o, "respond");
  const StageGame g = parse_game(a.pair.c.game);
  const StrategyVector p = memory_one_or_throw(x_spec(a.pair), g, Player::kX);
  json j;
  j["schema"] = kRespondSchema;
  j["game"] = game_to_json(g);
  j["p"] = to_json(p.p());
  if (a.discount) {
    const auto [q, v] = discounted_best_corner(p, g, *a.discount);
    j["discount"] = *a.discount;
    j["q_star"] = to_json(q.p());
    j["first_move"] = q.first_move();
    j["pi_y"] = v;
  } else {
    BestResponseOptions opts;
    if (a.method == "grid") {
      opts.method = BRMethod::kGrid;
    } else if (a.method == "ascent") {
      opts.method = BRMethod::kAscent;
    } else {
      throw InvalidArgument("--method must be grid or ascent");
    }
    opts.grid_points = a.grid_points;
    opts.restarts = a.restarts;
    opts.seed = a.pair.c.seed;
    const auto r = best_response(p, g, opts);
    j["method"] = a.method;
    j["q_star"] = to_json(r.q_star.p());
    j["pi_y"] = r.pi_y;
    j["indifferent"] = r.indifferent;
    j["spread"] = r.spread;
    j["evaluations"] = r.evaluations;
  }
  if (a.threshold) {
    const auto t = discount_threshold(p, g);
    j["discount_threshold"] = t ? json(*t) : json(nullptr);
  }
  if (o.format() == "json") {
    o.json_doc(j);
    return kExitOk;
  }
  auto& s = o.stream();
  s << "q* = " << vec_text(vec4_from_json(j["q_star"], "q")) << "\npi_Y = "
    << num(j["pi_y"]) << '\n';
  if (j.contains("indifferent") && j["indifferent"].get<bool>()) {
    s << "pi_Y is flat over q: every response is a best response\n";
  }
  if (j.contains("discount_threshold")) {
    s << "discount threshold: "
      << (j["discount_threshold"].is_null() ? std::string("none")
                                            : num(j["discount_threshold"]))
      << '\n';
  }
  return kExitOk;
}

// ---- evolve ---------------------------------------------------------------

struct EvolveArgs {
  Common c;
  std::string pop = "zd:0.01,allu:0.99";
  std::string zd = kDefaultZd;
  double dt = 0.01;
  long steps = 200000;
  long record_every = 100;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out) {
  Output o(a.c, "csv", out);
  const StageGame g = parse_game(a.c.game);
  std::vector<NamedStrategy> strategies;
  std::vector<double> shares;
  const auto items = parse_params([&] {
    std::string s = a.pop;
    for (auto& ch : s) ch = ch == ':' ? '=' : ch;
    return s;
  }());
  // parse_params sorts by name, so walk the original order instead.
  std::istringstream in(a.pop);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string name = item.substr(0, item.find(':'));
    const std::string token = name == "zd" ? a.zd : name;
    strategies.push_back(
        {name, memory_one_or_throw(parse_strategy(token), g, Player::kX)});
    shares.push_back(items.at(name));
  }
  Population{strategies, shares}.validate();
  const auto table = payoff_table(strategies, g);
  const auto rows = replicator_trajectory(shares, table, a.dt, a.steps, a.record_every);
  std::optional<double> omega;
  if (strategies.size() == 2) omega = stable_share_omega(table);

  if (o.format() == "csv") {
    write_trajectory_csv(o.stream(), rows, a.record_every);
    return kExitOk;
  }
  if (o.format() == "json") {
    json j;
    j["schema"] = kEvolveSchema;
    j["game"] = game_to_json(g);
    j["names"] = table.names;
    j["table"] = table.u;
    j["dt"] = a.dt;
    j["record_every"] = a.record_every;
    j["trajectory"] = rows;
    j["omega"] = omega ? json(*omega) : json(nullptr);
    o.json_doc(j);
    return kExitOk;
  }
  auto& s = o.stream();
  s << "final shares:";
  for (std::size_t i = 0; i < rows.back().size(); ++i) {
    s << ' ' << table.names[i] << '=' << num(rows.back()[i]);
  }
  s << '\n';
  if (strategies.size() == 2) {
    s << "omega: " << (omega ? num(*omega) : std::string("none")) << '\n';
  }
  return kExitOk;
}

// ---- play -----------------------------------------------------------------

struct PlayArgs {
  Common c;
  std::string opponent = "tft";
  long rounds = 0;
};

int cmd_play(const PlayArgs& a, std::ostream& out, std::istream& in) {
  const StageGame g = parse_game(a.c.game);
  Session session("local", g, parse_strategy(a.opponent), a.c.seed);
  out << "you are X, the machine (" << a.opponent << ") is Y; enter u, d or q\n";
  std::string line;
  while (a.rounds <= 0 || session.round() < a.rounds) {
    out << "round " << session.round() + 1 << "> " << std::flush;
    if (!std::getline(in, line)) break;
    if (line == "q" || line == "quit") break;
    const auto act = parse_action(line);
    if (!act) {
      out << "expected u or d\n";
      continue;
    }
    const json r = session.play(*act);
    out << "you " << r["human_action"].get<std::string>() << ", machine "
        << r["machine_action"].get<std::string>() << " | payoffs "
        << num(r["stage_payoffs"]["human"]) << ' ' << num(r["stage_payoffs"]["machine"])
        << " | averages " << num(r["running_averages"]["human"]) << ' '
        << num(r["running_averages"]["machine"]) << '\n';
  }
  out << session.round() << " rounds played\n";
  return kExitOk;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  Common c;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors = "*";
  std::string snapshot_dir;
};

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<std::filesystem::path> dir;
  if (!a.snapshot_dir.empty()) dir = a.snapshot_dir;
  SessionStore store(dir);
  out << "listening on http://" << a.host << ':' << a.port << std::endl;
  if (!serve_forever(store, a.host, a.port, a.cors)) {
    err << "error: cannot bind " << a.host << ':' << a.port << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

// ---- config merging -------------------------------------------------------

std::vector<std::string> config_tokens(const json& v) {
  if (v.is_string()) return {v.get<std::string>()};
  if (v.is_number()) return {v.dump()};
  if (v.is_array()) {
    std::vector<std::string> out;
    for (const auto& e : v) {
      auto t = config_tokens(e);
      out.insert(out.end(), t.begin(), t.end());
    }
    return out;
  }
  if (v.is_object()) {
    std::vector<std::string> out;
    for (auto it = v.begin(); it != v.end(); ++it) {
      out.push_back(it.key() + "=" + (it.value().is_string()
                                          ? it.value().get<std::string>()
                                          : it.value().dump()));
    }
    return out;
  }
  throw InvalidArgument("unsupported config value " + v.dump());
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Appends config entries for flags absent from the command line, so flags
// always win over the file.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const json cfg = load_json_file(path);
  if (!cfg.is_object()) throw InvalidArgument("config file must hold a JSON object");
  const std::vector<std::string> given = args;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (it.key() == "config" || flag_given(given, flag)) continue;
    if (it.value().is_boolean()) {
      if (it.value().get<bool>()) args.push_back(flag);
      continue;
    }
    if (it.value().is_null()) continue;
    args.push_back(flag);
    for (auto& t : config_tokens(it.value())) args.push_back(std::move(t));
  }
  return args;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--game", c.game,
                  "pd, sh, gc, bs, sym:R,S,T,P, bos:F,C,L,D, raw:x..;y.. or JSON")
      ->capture_default_str();
  sub->add_option("--config", c.config, "JSON file with default flag values");
  sub->add_option("--seed", c.seed, "master seed (default: $ZDLAB_SEED or 1)");
  sub->add_option("--format", c.format, "text, json or csv");
  sub->add_option("--output,-o", c.output, "write to this file instead of stdout");
}

void add_pair(CLI::App* sub, PairArgs& p, bool y_required) {
  add_common(sub, p.c);
  p.spec.add(sub);
  sub->add_option("--x", p.x, "strategy of player X");
  auto* y = sub->add_option("--y", p.y, "strategy of player Y");
  if (y_required) y->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            std::istream& in) {
  CLI::App app{"Zero-determinant strategy lab", "zdlab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed = 1;
  SynthArgs synth;
  PairArgs pay;
  SimArgs sim, batch;
  RegionArgs region;
  RespondArgs respond;
  EvolveArgs evolve;
  PlayArgs play;
  ServeArgs serve;
  try {
    seed = default_seed();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (Common* c : {&synth.c, &pay.c, &sim.pair.c, &batch.pair.c, &region.c,
                    &respond.pair.c, &evolve.c, &play.c, &serve.c}) {
    c->seed = seed;
  }

  auto* s_synth = app.add_subcommand("synth", "build a ZD strategy from its parameters");
  add_common(s_synth, synth.c);
  synth.spec.add(s_synth);
  s_synth->add_option("--side", synth.side, "x or y")->capture_default_str();

  auto* s_pay = app.add_subcommand("payoffs", "expected payoffs of two memory-one strategies");
  add_pair(s_pay, pay, true);

  auto* s_sim = app.add_subcommand("simulate", "play one seeded iterated game");
  add_pair(s_sim, sim.pair, true);
  s_sim->add_option("--iterations", sim.iterations)->capture_default_str();
  s_sim->add_flag("--every-iteration", sim.every, "store every running average");

  auto* s_batch = app.add_subcommand("batch", "average many seeded games");
  add_pair(s_batch, batch.pair, true);
  batch.iterations = 7000;
  s_batch->add_option("--iterations", batch.iterations)->capture_default_str();
  s_batch->add_option("--games", batch.games)->capture_default_str();
  s_batch->add_option("--threads", batch.threads, "0 uses every core")
      ->capture_default_str();

  auto* s_region = app.add_subcommand("region", "payoff region and ZD constraint lines");
  add_common(s_region, region.c);
  region.spec.add(s_region);
  s_region->add_option("--spec", region.specs, "ZD spec token, repeatable")
      ->expected(1, -1);
  s_region->add_option("--nash", region.nash, "anchor point x,y for the folk region");

  auto* s_resp = app.add_subcommand("respond", "best response of Y to a fixed X");
  add_pair(s_resp, respond.pair, false);
  s_resp->add_option("--method", respond.method, "grid or ascent")->capture_default_str();
  s_resp->add_option("--grid-points", respond.grid_points)->capture_default_str();
  s_resp->add_option("--restarts", respond.restarts)->capture_default_str();
  s_resp->add_option("--discount", respond.discount, "continuation probability in [0,1)");
  s_resp->add_flag("--threshold", respond.threshold, "also report the discount threshold");

  auto* s_evo = app.add_subcommand("evolve", "replicator dynamics over memory-one strategies");
  add_common(s_evo, evolve.c);
  s_evo->add_option("--pop", evolve.pop, "name:share,... with names zd, tft, allu, alld, random")
      ->capture_default_str();
  s_evo->add_option("--zd", evolve.zd, "strategy used for the name zd")->capture_default_str();
  s_evo->add_option("--dt", evolve.dt)->capture_default_str();
  s_evo->add_option("--steps", evolve.steps)->capture_default_str();
  s_evo->add_option("--record-every", evolve.record_every)->capture_default_str();

  auto* s_play = app.add_subcommand("play", "play against a strategy on the terminal");
  add_common(s_play, play.c);
  s_play->add_option("--opponent", play.opponent)->capture_default_str();
  s_play->add_option("--rounds", play.rounds, "stop after this many rounds (0: no limit)");

  auto* s_serve = app.add_subcommand("serve", "run the HTTP play service");
  add_common(s_serve, serve.c);
  s_serve->add_option("--host", serve.host)->capture_default_str();
  s_serve->add_option("--port", serve.port)->capture_default_str();
  s_serve->add_option("--cors-origin", serve.cors)->capture_default_str();
  s_serve->add_option("--snapshot-dir", serve.snapshot_dir, "persist sessions here");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(std::move(args));
    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*s_synth) return cmd_synth(synth, out);
    if (*s_pay) return cmd_payoffs(pay, out);
    if (*s_sim) return cmd_simulate(sim, out);
    if (*s_batch) return cmd_batch(batch, out);
    if (*s_region) return cmd_region(region, out);
    if (*s_resp) return cmd_respond(respond, out);
    if (*s_evo) return cmd_evolve(evolve, out);
    if (*s_play) return cmd_play(play, out, in);
    if (*s_serve) return cmd_serve(serve, out, err);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    for (const auto& v : e.violations()) err << "  - " << v << '\n';
    return kExitInfeasible;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace zdlab
