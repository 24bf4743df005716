#include "zsg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

namespace zsg {

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw config_error("config field '" + path + "': " + why);
}

double require_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) bad_field(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) bad_field(path, "must be finite");
  return v;
}

int require_int(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) bad_field(path, "expected an integer");
  return j.get<int>();
}

bool require_bool(const nlohmann::json& j, const std::string& path) {
  if (!j.is_boolean()) bad_field(path, "expected a boolean");
  return j.get<bool>();
}

std::string require_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) bad_field(path, "expected a string");
  return j.get<std::string>();
}

Interval require_interval(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    bad_field(path, "expected [lo, hi]");
  }
  Interval box{require_number(j[0], path + "[0]"),
               require_number(j[1], path + "[1]")};
  if (!(box.lo < box.hi)) bad_field(path, "requires lo < hi");
  return box;
}

SymmetricPoint require_point(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    bad_field(path, "expected [s1, s2]");
  }
  return {require_number(j[0], path + "[0]"),
          require_number(j[1], path + "[1]")};
}

void reject_unknown_keys(const nlohmann::json& obj, const std::string& path,
                         std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) bad_field(path + "." + it.key(), "unknown key");
  }
}

OligopolyParams parse_oligopoly(const nlohmann::json& j, GroupSpec groups) {
  reject_unknown_keys(j, "params", {"a", "b", "cA", "cC", "cap"});
  OligopolyParams p;
  p.groups = groups;
  if (j.contains("a")) p.a = require_number(j["a"], "params.a");
  if (j.contains("b")) p.b = require_number(j["b"], "params.b");
  if (j.contains("cA")) p.c1 = require_number(j["cA"], "params.cA");
  if (j.contains("cC")) p.c2 = require_number(j["cC"], "params.cC");
  try {
    p.validate();
  } catch (const construction_error& err) {
    bad_field("params", err.what());
  }
  return p;
}

QuadraticSaddleParams parse_quadratic(const nlohmann::json& j,
                                      GroupSpec groups,
                                      std::optional<Interval> s1,
                                      std::optional<Interval> s2) {
  reject_unknown_keys(
      j, "params", {"alpha", "beta", "gamma", "delta", "x0", "y0"});
  QuadraticSaddleParams p;
  p.groups = groups;
  if (s1) p.space1 = *s1;
  if (s2) p.space2 = *s2;
  if (j.contains("alpha")) p.alpha = require_number(j["alpha"], "params.alpha");
  if (j.contains("beta")) p.beta = require_number(j["beta"], "params.beta");
  if (j.contains("gamma")) p.gamma = require_number(j["gamma"], "params.gamma");
  if (j.contains("delta")) p.delta = require_number(j["delta"], "params.delta");
  if (j.contains("x0")) p.x0 = require_number(j["x0"], "params.x0");
  if (j.contains("y0")) p.y0 = require_number(j["y0"], "params.y0");
  try {
    p.validate();
  } catch (const construction_error& err) {
    bad_field("params", err.what());
  }
  return p;
}

CustomExprParams parse_custom(const nlohmann::json& j, GroupSpec groups) {
  reject_unknown_keys(j, "params", {"payoff1", "payoff2", "constants"});
  CustomExprParams p;
  if (!j.contains("payoff1") || !j.contains("payoff2")) {
    bad_field("params", "custom_expr needs payoff1 and payoff2");
  }
  p.payoff1_source = require_string(j["payoff1"], "params.payoff1");
  p.payoff2_source = require_string(j["payoff2"], "params.payoff2");
  if (j.contains("constants")) {
    if (!j["constants"].is_object()) {
      bad_field("params.constants", "expected an object");
    }
    for (auto it = j["constants"].begin(); it != j["constants"].end(); ++it) {
      p.constants[it.key()] =
          require_number(it.value(), "params.constants." + it.key());
    }
  }
  // Parse both templates now so syntax errors surface at load time.
  Expr::parse(p.payoff1_source, groups, p.constants);
  Expr::parse(p.payoff2_source, groups, p.constants);
  return p;
}

}  // namespace

GroupedGame build_custom_game(const CustomExprParams& params,
                              const GroupSpec& groups, Interval space1,
                              Interval space2) {
  if (groups.m < 2 || groups.n < 2) {
    throw construction_error("group sizes must satisfy m >= 2 and n >= 2");
  }
  Expr payoff1 = Expr::parse(params.payoff1_source, groups, params.constants);
  Expr payoff2 = Expr::parse(params.payoff2_source, groups, params.constants);

  const int m = groups.m;
  const int n = groups.n;

  // Template slot lookup for a given player: slot 1 of the own group is
  // the player's strategy, later slots walk the rivals in ascending
  // player order; the other group's slots map straight through.
  auto absolute = [m, n](const Expr& tpl, int own_group, int player,
                         const StrategyProfile& prof) {
    return tpl.evaluate_with([&](int group, int index) {
      if (group == own_group) {
        if (index == 0) {
          return own_group == 1 ? prof.g1[static_cast<std::size_t>(player)]
                                : prof.g2[static_cast<std::size_t>(player)];
        }
        int rival = index - 1 < player ? index - 1 : index;
        return own_group == 1 ? prof.g1[static_cast<std::size_t>(rival)]
                              : prof.g2[static_cast<std::size_t>(rival)];
      }
      return group == 1 ? prof.g1[static_cast<std::size_t>(index)]
                        : prof.g2[static_cast<std::size_t>(index)];
    });
  };

  PayoffFn payoff = [payoff1, payoff2, absolute, m,
                     n](int player, const StrategyProfile& prof) {
    if (player < m) {
      double own = absolute(payoff1, 1, player, prof);
      double rivals = 0.0;
      for (int j = 0; j < m; ++j) {
        if (j != player) rivals += absolute(payoff1, 1, j, prof);
      }
      return own - rivals / (m - 1);
    }
    const int k = player - m;
    double own = absolute(payoff2, 2, k, prof);
    double rivals = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != k) rivals += absolute(payoff2, 2, j, prof);
    }
    return own - rivals / (n - 1);
  };

  GroupedGame game(groups, space1, space2, std::move(payoff));

  // Sampled swap-symmetry check: rival variables that enter the template
  // asymmetrically would silently break the within-group symmetry the
  // solvers rely on, so reject such templates here.
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> u1(space1.lo, space1.hi);
  std::uniform_real_distribution<double> u2(space2.lo, space2.hi);
  for (int sample = 0; sample < 16; ++sample) {
    StrategyProfile prof;
    prof.g1.resize(static_cast<std::size_t>(m));
    prof.g2.resize(static_cast<std::size_t>(n));
    for (double& x : prof.g1) x = u1(rng);
    for (double& y : prof.g2) y = u2(rng);
    double scale = 1.0;
    for (int i = 0; i < groups.total(); ++i) {
      scale = std::max(scale, std::abs(game.payoff(i, prof)));
    }
    for (int g = 1; g <= 2; ++g) {
      int base = g == 1 ? 0 : m;
      int size = g == 1 ? m : n;
      for (int a = 0; a < size; ++a) {
        for (int b = a + 1; b < size; ++b) {
          if (!check_group_symmetry(game, prof, base + a, base + b,
                                    1e-9 * scale)) {
            throw construction_error(
                "payoff template is not symmetric in its rival variables "
                "(players " +
                std::to_string(base + a) + " and " + std::to_string(base + b) +
                ")");
          }
        }
      }
    }
  }
  return game;
}

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw config_error("config root must be a JSON object");
  }
  reject_unknown_keys(doc, "(root)",
                      {"schema_version", "family", "params", "groups",
                       "intervals", "solver", "verify", "report", "seed"});

  if (doc.contains("schema_version") &&
      require_int(doc["schema_version"], "schema_version") !=
          kConfigSchemaVersion) {
    bad_field("schema_version", "unsupported version");
  }

  RunConfig config;
  if (!doc.contains("family")) bad_field("family", "required");
  config.family = require_string(doc["family"], "family");

  if (doc.contains("groups")) {
    const auto& g = doc["groups"];
    reject_unknown_keys(g, "groups", {"m", "n"});
    if (g.contains("m")) config.groups.m = require_int(g["m"], "groups.m");
    if (g.contains("n")) config.groups.n = require_int(g["n"], "groups.n");
    if (config.groups.m < 2 || config.groups.n < 2) {
      bad_field("groups", "m and n must both be at least 2");
    }
  }

  if (doc.contains("intervals")) {
    const auto& iv = doc["intervals"];
    reject_unknown_keys(iv, "intervals", {"group1", "group2"});
    if (iv.contains("group1")) {
      config.space1 = require_interval(iv["group1"], "intervals.group1");
    }
    if (iv.contains("group2")) {
      config.space2 = require_interval(iv["group2"], "intervals.group2");
    }
  }

  nlohmann::json params =
      doc.contains("params") ? doc["params"] : nlohmann::json::object();
  if (!params.is_object()) bad_field("params", "expected an object");

  if (config.family == "oligopoly") {
    config.params = parse_oligopoly(params, config.groups);
  } else if (config.family == "quadratic_saddle") {
    config.params =
        parse_quadratic(params, config.groups, config.space1, config.space2);
  } else if (config.family == "custom_expr") {
    if (!config.space1 || !config.space2) {
      bad_field("intervals", "custom_expr requires explicit intervals");
    }
    config.params = parse_custom(params, config.groups);
  } else {
    bad_field("family",
              "unknown family '" + config.family +
                  "' (expected oligopoly, quadratic_saddle or custom_expr)");
  }

  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    reject_unknown_keys(
        s, "solver",
        {"method", "damping", "fp_tol", "opt_tol", "max_iter", "start"});
    if (s.contains("method")) {
      std::string method = require_string(s["method"], "solver.method");
      if (method == "maximin-fp") {
        config.solver.method = SolveMethod::maximin_fp;
      } else if (method == "best-response") {
        config.solver.method = SolveMethod::best_response;
      } else if (method == "both") {
        config.solver.method = SolveMethod::both;
      } else {
        bad_field("solver.method",
                  "expected maximin-fp, best-response or both");
      }
    }
    if (s.contains("damping")) {
      config.solver.damping = require_number(s["damping"], "solver.damping");
      if (!(config.solver.damping > 0.0 && config.solver.damping <= 1.0)) {
        bad_field("solver.damping", "must lie in (0, 1]");
      }
    }
    if (s.contains("fp_tol")) {
      config.solver.fp_tol = require_number(s["fp_tol"], "solver.fp_tol");
      if (!(config.solver.fp_tol > 0.0)) bad_field("solver.fp_tol", "must be > 0");
    }
    if (s.contains("opt_tol")) {
      config.solver.opt_tol = require_number(s["opt_tol"], "solver.opt_tol");
      if (!(config.solver.opt_tol > 0.0)) {
        bad_field("solver.opt_tol", "must be > 0");
      }
    }
    if (s.contains("max_iter")) {
      config.solver.max_iter = require_int(s["max_iter"], "solver.max_iter");
      if (config.solver.max_iter < 1) bad_field("solver.max_iter", "must be >= 1");
    }
    if (s.contains("start")) {
      config.solver.start = require_point(s["start"], "solver.start");
    }
  }

  if (doc.contains("verify")) {
    const auto& v = doc["verify"];
    reject_unknown_keys(v, "verify",
                        {"nash_to_saddle", "saddle_to_nash", "diagnostics",
                         "dev_tol", "arg_tol", "check_all_players",
                         "diagnostic_samples", "point"});
    if (v.contains("nash_to_saddle")) {
      config.verify.nash_to_saddle =
          require_bool(v["nash_to_saddle"], "verify.nash_to_saddle");
    }
    if (v.contains("saddle_to_nash")) {
      config.verify.saddle_to_nash =
          require_bool(v["saddle_to_nash"], "verify.saddle_to_nash");
    }
    if (v.contains("diagnostics")) {
      config.verify.diagnostics =
          require_bool(v["diagnostics"], "verify.diagnostics");
    }
    if (v.contains("dev_tol")) {
      config.verify.dev_tol = require_number(v["dev_tol"], "verify.dev_tol");
      if (!(config.verify.dev_tol > 0.0)) bad_field("verify.dev_tol", "must be > 0");
    }
    if (v.contains("arg_tol")) {
      config.verify.arg_tol = require_number(v["arg_tol"], "verify.arg_tol");
      if (!(config.verify.arg_tol > 0.0)) bad_field("verify.arg_tol", "must be > 0");
    }
    if (v.contains("check_all_players")) {
      config.verify.check_all_players =
          require_bool(v["check_all_players"], "verify.check_all_players");
    }
    if (v.contains("diagnostic_samples")) {
      config.verify.diagnostic_samples =
          require_int(v["diagnostic_samples"], "verify.diagnostic_samples");
      if (config.verify.diagnostic_samples < 1) {
        bad_field("verify.diagnostic_samples", "must be >= 1");
      }
    }
    if (v.contains("point")) {
      config.verify.point = require_point(v["point"], "verify.point");
    }
  }

  if (doc.contains("report")) {
    const auto& r = doc["report"];
    reject_unknown_keys(r, "report", {"path", "format", "include_timings"});
    if (r.contains("path")) {
      config.report.path = require_string(r["path"], "report.path");
    }
    if (r.contains("format")) {
      std::string format = require_string(r["format"], "report.format");
      if (format == "json") {
        config.report.format = ReportFormat::json;
      } else if (format == "csv") {
        config.report.format = ReportFormat::csv;
      } else {
        bad_field("report.format", "expected json or csv");
      }
    }
    if (r.contains("include_timings")) {
      config.report.include_timings =
          require_bool(r["include_timings"], "report.include_timings");
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() ||
        (doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned() &&
         doc["seed"].get<long long>() < 0)) {
      bad_field("seed", "expected a nonnegative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }

  config.echo = nlohmann::ordered_json(doc);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file: " + path.string());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw config_error(std::string("malformed JSON: ") + err.what());
  }
  return parse_config(doc);
}

Interval effective_space1(const RunConfig& config) {
  if (config.space1) return *config.space1;
  if (const auto* p = std::get_if<OligopolyParams>(&config.params)) {
    return {0.0, p->a};
  }
  if (const auto* p = std::get_if<QuadraticSaddleParams>(&config.params)) {
    return p->space1;
  }
  throw config_error("custom_expr requires explicit intervals");
}

Interval effective_space2(const RunConfig& config) {
  if (config.space2) return *config.space2;
  if (const auto* p = std::get_if<OligopolyParams>(&config.params)) {
    return {0.0, p->a};
  }
  if (const auto* p = std::get_if<QuadraticSaddleParams>(&config.params)) {
    return p->space2;
  }
  throw config_error("custom_expr requires explicit intervals");
}

GroupedGame build_game(const RunConfig& config) {
  if (const auto* p = std::get_if<OligopolyParams>(&config.params)) {
    if (config.space1 || config.space2) {
      Interval box = effective_space1(config);
      if (config.space2 && !(*config.space2 == box)) {
        throw config_error(
            "oligopoly uses one shared [0, cap] interval for both groups");
      }
      if (box.lo != 0.0) {
        throw config_error("oligopoly intervals must start at 0");
      }
      return build_oligopoly_game(*p, box.hi);
    }
    return build_oligopoly_game(*p);
  }
  if (const auto* p = std::get_if<QuadraticSaddleParams>(&config.params)) {
    return build_quadratic_game(*p);
  }
  const auto& p = std::get<CustomExprParams>(config.params);
  return build_custom_game(p, config.groups, effective_space1(config),
                           effective_space2(config));
}

}  // namespace zsg
