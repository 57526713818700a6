#pragma once

#include <string>
#include <vector>

#include "tubepot/analysis.hpp"
#include "tubepot/rescaling.hpp"
#include "tubepot/shooting.hpp"

namespace tubepot {

// JSON/CSV renderings of the report and solution types. All numbers go
// through format_double (17 significant digits, bit-exact round-trip).

std::string solution_to_json(const PotentialSolution& sol);
PotentialSolution solution_from_json(const std::string& text);

std::string convergence_report_to_json(const ConvergenceReport& rep);
std::string convergence_report_to_csv(const ConvergenceReport& rep);

std::string completeness_report_to_json(const CompletenessReport& rep);
std::string completeness_report_to_csv(const CompletenessReport& rep);

std::string curvature_sweep_to_json(const CurvatureSweep& sweep);
std::string curvature_sweep_to_csv(const CurvatureSweep& sweep);

std::string center_bound_report_to_json(const CenterBoundReport& rep);

std::string sweep_summary_to_json(const std::vector<SweepEntry>& entries);
std::string sweep_summary_to_csv(const std::vector<SweepEntry>& entries);

std::string ricci_flat_to_json(const RicciFlatPotential& K);

}  // namespace tubepot
