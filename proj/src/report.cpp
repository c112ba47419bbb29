#include "modemflow/report.hpp"

#include <algorithm>
#include <ostream>

#include <nlohmann/json.hpp>

#include "modemflow/textio.hpp"

namespace modemflow::report {

using textio::format_double;
using textio::format_int;
using textio::format_uint;

namespace {

double csv_link_rate(const Scenario& s) {
    return s.mode == Mode::baseline ? 0.0 : s.link_rate_bps;
}

}  // namespace

std::string run_csv_header() {
    return "scenario_id,seed,lambda_pps,buffer_pkts,link_rate_bps,mean_delay_s,"
           "pli_pct,offered,delivered,dropped\n";
}

std::string run_csv_rows(const Scenario& scenario, const MetricsReport& report) {
    std::string out;
    const std::string id = scenario_id(scenario);
    for (const RunMetrics& run : report.runs) {
        out += id;
        out += ',';
        out += format_uint(run.seed);
        out += ',';
        out += format_double(scenario.lambda_pps);
        out += ',';
        out += format_int(scenario.buffer_pkts);
        out += ',';
        out += format_double(csv_link_rate(scenario));
        out += ',';
        if (const auto d = run.mean_delay_s()) {
            out += format_double(*d);
        }
        out += ',';
        out += format_double(run.pli_pct());
        out += ',';
        out += format_int(run.total.offered);
        out += ',';
        out += format_int(run.total.delivered);
        out += ',';
        out += format_int(run.total.dropped);
        out += '\n';
    }
    return out;
}

std::string sweep_csv_header() {
    return "dimension,value,scenario_id,reps,mean_delay_s,delay_hw95_s,mean_pli_pct,"
           "pli_hw95_pct,offered,delivered,dropped,status\n";
}

std::string sweep_csv_row(const std::string& dimension, double value,
                          const Scenario& scenario, const MetricsReport* report,
                          const std::string& error) {
    std::string out = dimension;
    out += ',';
    out += format_double(value);
    out += ',';
    out += scenario_id(scenario);
    out += ',';
    if (report != nullptr) {
        out += format_int(report->reps);
        out += ',';
        if (report->delay) {
            out += format_double(report->delay->mean);
            out += ',';
            out += format_double(report->delay->half_width95);
        } else {
            out += ',';
        }
        out += ',';
        if (report->pli) {
            out += format_double(report->pli->mean);
            out += ',';
            out += format_double(report->pli->half_width95);
        } else {
            out += format_double(report->pooled_pli_pct());
            out += ',';
        }
        out += ',';
        out += format_int(report->offered);
        out += ',';
        out += format_int(report->delivered);
        out += ',';
        out += format_int(report->dropped);
        out += ",ok\n";
    } else {
        std::string sanitized = error;
        std::replace(sanitized.begin(), sanitized.end(), ',', ';');
        std::replace(sanitized.begin(), sanitized.end(), '\n', ' ');
        out += ",,,,,,,,error: " + sanitized + "\n";
    }
    return out;
}

std::string report_json(const Scenario& scenario, const MetricsReport& report) {
    nlohmann::json j;
    j["scenario_id"] = scenario_id(scenario);
    j["mode"] = to_string(scenario.mode);
    j["lambda_pps"] = scenario.lambda_pps;
    j["buffer_pkts"] = scenario.buffer_pkts;
    j["link_rate_bps"] = csv_link_rate(scenario);
    j["reps"] = report.reps;
    if (report.delay) {
        j["delay_s"] = {{"mean", report.delay->mean},
                        {"hw95", report.delay->half_width95},
                        {"n", report.delay->n}};
    }
    if (report.pli) {
        j["pli_pct"] = {{"mean", report.pli->mean},
                        {"hw95", report.pli->half_width95},
                        {"n", report.pli->n}};
    }
    j["pooled"] = {{"offered", report.offered},
                   {"delivered", report.delivered},
                   {"dropped", report.dropped},
                   {"in_flight", report.in_flight},
                   {"pli_pct", report.pooled_pli_pct()}};
    auto runs = nlohmann::json::array();
    for (const RunMetrics& run : report.runs) {
        nlohmann::json r;
        r["seed"] = run.seed;
        if (const auto d = run.mean_delay_s()) {
            r["mean_delay_s"] = *d;
        }
        r["pli_pct"] = run.pli_pct();
        r["offered"] = run.total.offered;
        r["delivered"] = run.total.delivered;
        r["dropped"] = run.total.dropped;
        r["in_flight"] = run.total.in_flight;
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    return j.dump(2);
}

void print_summary(std::ostream& out, const Scenario& scenario,
                   const MetricsReport& report) {
    out << "scenario " << scenario_id(scenario) << " (" << report.reps
        << " replications)\n";
    if (report.delay) {
        out << "  mean end-to-end delay: " << format_double(report.delay->mean) << " s +- "
            << format_double(report.delay->half_width95) << " (95% CI)\n";
    } else if (report.delivered > 0 && !report.runs.empty()) {
        out << "  mean end-to-end delay: single-sample, no CI\n";
    } else {
        out << "  mean end-to-end delay: n/a (no packets delivered)\n";
    }
    if (report.pli) {
        out << "  PLI: " << format_double(report.pli->mean) << " % +- "
            << format_double(report.pli->half_width95) << " (95% CI)\n";
    } else {
        out << "  PLI: " << format_double(report.pooled_pli_pct()) << " %\n";
    }
    out << "  offered " << report.offered << ", delivered " << report.delivered
        << ", dropped " << report.dropped << ", in flight " << report.in_flight << "\n";
}

}  // namespace modemflow::report
