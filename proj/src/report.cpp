#include "zsg/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace zsg {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json point_json(const SymmetricPoint& p) {
  return nlohmann::ordered_json::array({p.s1, p.s2});
}

nlohmann::ordered_json saddle_json(const SaddleResult& s) {
  nlohmann::ordered_json j;
  j["maximin_value"] = s.maximin_value;
  j["minimax_value"] = s.minimax_value;
  j["maximin_arg"] = s.maximin_arg;
  j["minimax_arg"] = s.minimax_arg;
  j["inner_min_at_maximin"] = s.inner_min_at_maximin;
  j["gap"] = s.gap;
  j["coincident"] = s.coincident;
  j["evaluations"] = s.evaluations;
  return j;
}

nlohmann::ordered_json solve_json(const SolveSummary& s) {
  nlohmann::ordered_json j;
  j["method"] = s.method;
  j["converged"] = s.converged;
  j["iterations"] = s.iterations;
  j["residual"] = s.residual;
  j["point"] = point_json(s.point);
  return j;
}

void write_json_value(std::ostream& out, const nlohmann::ordered_json& v,
                      int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << nlohmann::ordered_json(it.key()).dump() << ": ";
        write_json_value(out, it.value(), indent, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write_json_value(out, item, indent, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out << format_double(v.get<double>());
      return;
    default:
      out << v.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::ordered_json& doc,
                int indent) {
  write_json_value(out, doc, indent, 0);
  out << "\n";
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["toolkit_version"] = toolkit_version;
  j["exit_code"] = exit_code;
  j["status"] = status;
  j["config"] = config_echo;

  nlohmann::ordered_json solve = nlohmann::ordered_json::object();
  if (fixed_point) solve["fixed_point"] = solve_json(*fixed_point);
  if (best_response) solve["best_response"] = solve_json(*best_response);
  if (solver_agreement) solve["agreement"] = *solver_agreement;
  if (!solve.empty()) j["solve"] = solve;

  if (equilibrium) {
    nlohmann::ordered_json eq;
    eq["point"] = point_json(equilibrium->point);
    eq["payoffs"] = equilibrium->payoffs;
    eq["deviation_gaps"] = equilibrium->deviation_gaps;
    eq["max_deviation_gap"] = equilibrium->max_deviation_gap();
    eq["is_nash"] = equilibrium->is_nash;
    if (equilibrium->saddle_g1) {
      eq["saddle_group1"] = saddle_json(*equilibrium->saddle_g1);
      eq["saddle_group2"] = saddle_json(*equilibrium->saddle_g2);
      eq["coincidence_g1"] = equilibrium->coincidence_g1;
      eq["coincidence_g2"] = equilibrium->coincidence_g2;
    }
    if (equilibrium->info_g1) {
      eq["info_group1"] = saddle_json(*equilibrium->info_g1);
      eq["info_group2"] = saddle_json(*equilibrium->info_g2);
    }
    j["equilibrium"] = eq;
  }

  if (verification_error) j["verification_error"] = *verification_error;

  if (closed_form) {
    nlohmann::ordered_json cf;
    cf["point"] = point_json(closed_form->point);
    cf["price1"] = closed_form->price1;
    cf["price2"] = closed_form->price2;
    if (closed_form_delta) cf["delta"] = *closed_form_delta;
    j["closed_form"] = cf;
  }

  if (diagnostics) {
    nlohmann::ordered_json d;
    d["samples"] = diagnostics->samples;
    d["x_violations"] = diagnostics->x_violations;
    d["y_violations"] = diagnostics->y_violations;
    nlohmann::ordered_json ws = nlohmann::ordered_json::array();
    for (const auto& w : diagnostics->witnesses) {
      nlohmann::ordered_json wj;
      wj["in_x"] = w.in_x;
      wj["fixed"] = w.fixed;
      wj["grid"] = nlohmann::ordered_json::array({w.a, w.b, w.c});
      wj["values"] = nlohmann::ordered_json::array({w.fa, w.fb, w.fc});
      ws.push_back(wj);
    }
    d["witnesses"] = ws;
    j["diagnostics"] = d;
  }

  if (!timings_ms.empty()) {
    nlohmann::ordered_json t;
    for (const auto& [name, ms] : timings_ms) t[name] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

std::string RunReport::csv_header() {
  return "schema_version,toolkit_version,exit_code,status,family,"
         "fp_converged,fp_iterations,fp_residual,br_converged,br_iterations,"
         "br_residual,s1,s2,is_nash,max_deviation_gap,saddle_gap_g1,"
         "saddle_gap_g2,coincident_g1,coincident_g2,cf_s1,cf_s2,cf_price1,"
         "cf_price2,cf_delta,elapsed_ms";
}

std::string RunReport::csv_row() const {
  std::ostringstream row;
  auto cell_bool = [](bool b) { return b ? "true" : "false"; };

  row << schema_version << ',' << toolkit_version << ',' << exit_code << ','
      << status << ',';
  row << (config_echo.contains("family")
              ? config_echo["family"].get<std::string>()
              : "");
  row << ',';
  if (fixed_point) {
    row << cell_bool(fixed_point->converged) << ','
        << fixed_point->iterations << ',' << format_double(fixed_point->residual);
  } else {
    row << ",,";
  }
  row << ',';
  if (best_response) {
    row << cell_bool(best_response->converged) << ','
        << best_response->iterations << ','
        << format_double(best_response->residual);
  } else {
    row << ",,";
  }
  row << ',';

  const SymmetricPoint* point = nullptr;
  if (equilibrium) {
    point = &equilibrium->point;
  } else if (fixed_point) {
    point = &fixed_point->point;
  } else if (best_response) {
    point = &best_response->point;
  }
  if (point) {
    row << format_double(point->s1) << ',' << format_double(point->s2);
  } else {
    row << ',';
  }
  row << ',';

  if (equilibrium) {
    row << cell_bool(equilibrium->is_nash) << ','
        << format_double(equilibrium->max_deviation_gap()) << ',';
    if (equilibrium->saddle_g1) {
      row << format_double(equilibrium->saddle_g1->gap) << ','
          << format_double(equilibrium->saddle_g2->gap) << ','
          << cell_bool(equilibrium->coincidence_g1) << ','
          << cell_bool(equilibrium->coincidence_g2);
    } else {
      row << ",,,";
    }
  } else {
    row << ",,,,,";
  }
  row << ',';

  if (closed_form) {
    row << format_double(closed_form->point.s1) << ','
        << format_double(closed_form->point.s2) << ','
        << format_double(closed_form->price1) << ','
        << format_double(closed_form->price2) << ',';
    if (closed_form_delta) row << format_double(*closed_form_delta);
  } else {
    row << ",,,,";
  }
  row << ',';

  for (const auto& [name, ms] : timings_ms) {
    if (name == "total") row << format_double(ms);
  }
  return row.str();
}

void emit_report(const RunReport& report, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::json) {
    write_json(out, report.to_json());
  } else {
    out << RunReport::csv_header() << "\n" << report.csv_row() << "\n";
  }
  if (!out) {
    throw config_error("failed to write report");
  }
}

void write_report(const RunReport& report, const ReportSettings& settings) {
  if (settings.path == "-") {
    emit_report(report, settings.format, std::cout);
    return;
  }
  std::ofstream out(settings.path);
  if (!out) {
    throw config_error("cannot open report destination: " + settings.path);
  }
  emit_report(report, settings.format, out);
}

}  // namespace zsg
