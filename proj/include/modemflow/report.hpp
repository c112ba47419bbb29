#pragma once

#include <iosfwd>
#include <string>

#include "modemflow/queuesim.hpp"
#include "modemflow/scenario.hpp"

// Stable text surfaces for run and sweep results. Column order never
// changes; numbers use canonical shortest round-trip formatting so equal
// runs produce byte-identical files.

namespace modemflow::report {

// scenario_id,seed,lambda_pps,buffer_pkts,link_rate_bps,mean_delay_s,
// pli_pct,offered,delivered,dropped
std::string run_csv_header();
// one row per replication; mean_delay_s is empty when nothing was delivered
std::string run_csv_rows(const Scenario& scenario, const MetricsReport& report);

// dimension,value,scenario_id,reps,mean_delay_s,delay_hw95_s,mean_pli_pct,
// pli_hw95_pct,offered,delivered,dropped,status
std::string sweep_csv_header();
std::string sweep_csv_row(const std::string& dimension, double value,
                          const Scenario& scenario, const MetricsReport* report,
                          const std::string& error = "");

std::string report_json(const Scenario& scenario, const MetricsReport& report);

// human-readable run summary (mean delay and PLI with confidence intervals)
void print_summary(std::ostream& out, const Scenario& scenario,
                   const MetricsReport& report);

}  // namespace modemflow::report
