#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modemflow/queuesim.hpp"
#include "modemflow/report.hpp"
#include "modemflow/scenario.hpp"

using namespace modemflow;

namespace {

int count_fields(const std::string& line) {
    int commas = 0;
    for (char c : line) {
        commas += c == ',';
    }
    return commas + 1;
}

MetricsReport tiny_report(double lambda) {
    Scenario s;
    s.mode = Mode::baseline;
    s.baseline_multiplier = 1;
    s.commodity_count = 1;
    s.lambda_pps = lambda;
    s.mu_pps = 100000;
    s.buffer_pkts = 100;
    s.horizon_s = 0.01;
    return run_replications(s, build_graph(s), {}, 3, 5);
}

Scenario tiny_scenario(double lambda) {
    Scenario s;
    s.mode = Mode::baseline;
    s.baseline_multiplier = 1;
    s.commodity_count = 1;
    s.lambda_pps = lambda;
    s.mu_pps = 100000;
    s.buffer_pkts = 100;
    s.horizon_s = 0.01;
    return s;
}

}  // namespace

TEST_CASE("run CSV has the documented columns, one row per replication") {
    const std::string header = report::run_csv_header();
    CHECK(header ==
          "scenario_id,seed,lambda_pps,buffer_pkts,link_rate_bps,mean_delay_s,"
          "pli_pct,offered,delivered,dropped\n");
    const Scenario s = tiny_scenario(20000);
    const MetricsReport m = tiny_report(20000);
    const std::string rows = report::run_csv_rows(s, m);
    std::istringstream lines{rows};
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        CHECK(count_fields(line) == count_fields(header));
        CHECK(line.find("baseline1x") == 0);
        ++n;
    }
    CHECK(n == 3);

    // identical runs serialize identically
    CHECK(report::run_csv_rows(s, m) == rows);
}

TEST_CASE("empty delay field when nothing is delivered") {
    const Scenario s = tiny_scenario(0);
    const MetricsReport m = tiny_report(0);
    const std::string rows = report::run_csv_rows(s, m);
    // ...link_rate_bps,<empty>,pli...
    CHECK(rows.find(",0,,0,") != std::string::npos);
}

TEST_CASE("sweep CSV rows: ok and error markers") {
    CHECK(report::sweep_csv_header() ==
          "dimension,value,scenario_id,reps,mean_delay_s,delay_hw95_s,mean_pli_pct,"
          "pli_hw95_pct,offered,delivered,dropped,status\n");
    const Scenario s = tiny_scenario(20000);
    const MetricsReport m = tiny_report(20000);
    const std::string ok_row = report::sweep_csv_row("lambda", 20000, s, &m);
    CHECK(count_fields(ok_row) == count_fields(report::sweep_csv_header()));
    CHECK(ok_row.find(",ok\n") != std::string::npos);

    const std::string err_row =
        report::sweep_csv_row("lambda", 0, s, nullptr, "bad, very bad\nindeed");
    CHECK(count_fields(err_row) == count_fields(report::sweep_csv_header()));
    // commas and newlines in the message cannot break the CSV shape
    CHECK(err_row.find("error: bad; very bad indeed") != std::string::npos);
}

TEST_CASE("JSON report carries stats and per-run rows") {
    const Scenario s = tiny_scenario(20000);
    const MetricsReport m = tiny_report(20000);
    const auto j = nlohmann::json::parse(report::report_json(s, m));
    CHECK(j["scenario_id"] == scenario_id(s));
    CHECK(j["reps"] == 3);
    CHECK(j["runs"].size() == 3);
    CHECK(j["pooled"]["offered"].get<long long>() == m.offered);
    CHECK(j.contains("delay_s"));
    CHECK(j["delay_s"]["n"].get<int>() >= 2);
}

TEST_CASE("summary prints delay and PLI with intervals") {
    const Scenario s = tiny_scenario(20000);
    const MetricsReport m = tiny_report(20000);
    std::ostringstream out;
    report::print_summary(out, s, m);
    const std::string text = out.str();
    CHECK(text.find("mean end-to-end delay") != std::string::npos);
    CHECK(text.find("95% CI") != std::string::npos);
    CHECK(text.find("PLI") != std::string::npos);
}
