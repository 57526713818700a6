#include "tubepot/reports.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "tubepot/errors.hpp"

namespace tubepot {

namespace {

std::string num(double x) { return format_double(x); }

std::string num_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += num(xs[i]);
  }
  return out + "]";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string solution_to_json(const PotentialSolution& sol) {
  std::string out = "{\n";
  out += "  \"space\": \"" + family_name(sol.space.family) + "\",\n";
  out += "  \"n\": " + std::to_string(sol.space.n) + ",\n";
  out += "  \"k\": " + std::to_string(sol.space.k) + ",\n";
  out += "  \"lambda\": " + num(sol.lambda) + ",\n";
  out += "  \"r\": " + num(sol.r) + ",\n";
  out += "  \"a\": " + num(sol.a) + ",\n";
  out += "  \"achieved_radius\": " + num(sol.achieved_radius) + ",\n";
  out += "  \"grid\": " + to_json(sol.grid) + "\n";
  out += "}\n";
  return out;
}

PotentialSolution solution_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const auto fam = parse_family(j.at("space").get<std::string>());
  if (!fam) throw InconsistentInputError("unknown space name in solution");
  PotentialSolution sol;
  sol.space = SpaceSpec::make(*fam, j.at("n").get<int>(), j.at("k").get<int>());
  sol.lambda = j.at("lambda").get<double>();
  sol.r = j.at("r").get<double>();
  sol.a = j.at("a").get<double>();
  sol.achieved_radius = j.at("achieved_radius").get<double>();
  sol.grid = grid_from_json(j.at("grid").dump());
  return sol;
}

std::string convergence_report_to_json(const ConvergenceReport& rep) {
  std::string out = "{\n";
  out += "  \"radii\": " + num_array(rep.radii) + ",\n";
  out += "  \"sup_gap\": " + num_array(rep.sup_gap) + ",\n";
  out += "  \"monotone_ok\": " + std::string(rep.monotone_ok ? "true" : "false") + ",\n";
  out += "  \"derivative_gaps\": [";
  for (std::size_t i = 0; i < rep.gap_d1.size(); ++i) {
    if (i) out += ", ";
    out += "{\"d1\": " + num(rep.gap_d1[i]) + ", \"d2\": " + num(rep.gap_d2[i]) + "}";
  }
  out += "]\n}\n";
  return out;
}

std::string convergence_report_to_csv(const ConvergenceReport& rep) {
  std::string out = "r,sup_gap,gap_d1,gap_d2\n";
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    out += num(rep.radii[i]) + "," + num(rep.sup_gap[i]) + "," +
           num(rep.gap_d1[i]) + "," + num(rep.gap_d2[i]) + "\n";
  }
  return out;
}

std::string completeness_report_to_json(const CompletenessReport& rep) {
  std::string out = "{\n";
  out += "  \"cutoffs\": " + num_array(rep.cutoffs) + ",\n";
  out += "  \"lengths\": " + num_array(rep.lengths) + ",\n";
  out += "  \"log_slope\": ";
  out += rep.log_slope_defined ? num(rep.log_slope) : std::string("null");
  out += "\n}\n";
  return out;
}

std::string completeness_report_to_csv(const CompletenessReport& rep) {
  std::string out = "cutoff,length\n";
  for (std::size_t i = 0; i < rep.cutoffs.size(); ++i)
    out += num(rep.cutoffs[i]) + "," + num(rep.lengths[i]) + "\n";
  return out;
}

std::string curvature_sweep_to_json(const CurvatureSweep& sweep) {
  std::string out = "{\n  \"reports\": [";
  for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
    const CurvatureReport& c = sweep.reports[i];
    if (i) out += ",";
    out += "\n    {\"r\": " + num(c.r) + ", \"a\": " + num(c.a) +
           ", \"b\": " + num(c.b) + ", \"threshold\": " + num(c.threshold) +
           ", \"negative_at_center\": " +
           (c.negative_at_center ? "true" : "false") + "}";
  }
  out += "\n  ],\n";
  out += "  \"epsilon_estimate\": ";
  out += std::isnan(sweep.epsilon_estimate) ? std::string("null")
                                            : num(sweep.epsilon_estimate);
  out += ",\n  \"resolution\": " + num(sweep.resolution) + "\n}\n";
  return out;
}

std::string curvature_sweep_to_csv(const CurvatureSweep& sweep) {
  std::string out = "r,a,b,threshold,negative_at_center\n";
  for (const CurvatureReport& c : sweep.reports) {
    out += num(c.r) + "," + num(c.a) + "," + num(c.b) + "," +
           num(c.threshold) + "," + (c.negative_at_center ? "1" : "0") + "\n";
  }
  return out;
}

std::string center_bound_report_to_json(const CenterBoundReport& rep) {
  std::string out = "{\n";
  out += "  \"bound\": " + num(rep.bound) + ",\n";
  out += "  \"all_above\": " + std::string(rep.all_above ? "true" : "false") + ",\n";
  out += "  \"worst_margin\": " + num(rep.worst_margin) + ",\n";
  out += "  \"entries\": [";
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    if (i) out += ",";
    out += "\n    {\"r\": " + num(rep.entries[i].r) +
           ", \"a\": " + num(rep.entries[i].a) +
           ", \"margin\": " + num(rep.entries[i].margin) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string sweep_summary_to_json(const std::vector<SweepEntry>& entries) {
  std::string out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SweepEntry& e = entries[i];
    if (i) out += ",";
    out += "\n  {\"r\": " + num(e.r);
    if (e.solution) {
      out += ", \"a\": " + num(e.solution->a) +
             ", \"achieved_radius\": " + num(e.solution->achieved_radius);
    } else {
      out += ", \"error\": \"" + escape(e.error) + "\"";
    }
    out += "}";
  }
  out += entries.empty() ? "]" : "\n]";
  return out + "\n";
}

std::string sweep_summary_to_csv(const std::vector<SweepEntry>& entries) {
  std::string out = "r,a,achieved_radius,error\n";
  for (const SweepEntry& e : entries) {
    out += num(e.r) + ",";
    if (e.solution) {
      out += num(e.solution->a) + "," + num(e.solution->achieved_radius) + ",";
    } else {
      out += ",,\"" + e.error + "\"";
    }
    out += "\n";
  }
  return out;
}

std::string ricci_flat_to_json(const RicciFlatPotential& K) {
  std::string out = "{\n";
  out += "  \"space\": \"" + family_name(K.space.family) + "\",\n";
  out += "  \"n\": " + std::to_string(K.space.n) + ",\n";
  out += "  \"k\": " + std::to_string(K.space.k) + ",\n";
  out += "  \"grid\": " + to_json(K.grid) + "\n";
  out += "}\n";
  return out;
}

}  // namespace tubepot
