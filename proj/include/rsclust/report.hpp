#ifndef RSCLUST_REPORT_HPP
#define RSCLUST_REPORT_HPP

#include <string>

#include "rsclust/bench.hpp"

namespace rsclust {

// shortest round-trip decimal form; identical bytes for identical doubles
std::string format_double(double value);

// columns: sweep_value,round,algorithm,objective,is_hit
std::string results_csv(const ExperimentReport& report);
// columns: sweep_value,algorithm,hits,rounds
std::string summary_csv(const ExperimentReport& report);
// grouped bar chart of hit counts per sweep value, one bar per algorithm
std::string chart_svg(const ExperimentReport& report);
// columns: check,measured,bound,pass
std::string lemmas_csv(const LemmaReport& report);

// Writes results.csv, summary.csv and chart.svg into out_dir (created if
// missing). Throws IoError on any filesystem failure.
void emit_report(const ExperimentReport& report, const std::string& out_dir);

}  // namespace rsclust

#endif  // RSCLUST_REPORT_HPP
