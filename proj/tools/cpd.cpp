// cpd — change-point estimation via the likelihood-weighted walk on the
// horn-torus parameter space, with CUSUM / self-normalized substitutions,
// a seeded Monte Carlo harness, and the OHLC-to-W ingestion pipeline.
//
// Subcommands: detect, simulate, table, ingest, scatter. Every run is a
// deterministic function of its flags; data goes to files/stdout and
// diagnostics to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpd/alt_stats.hpp"
#include "cpd/detect.hpp"
#include "cpd/ingest.hpp"
#include "cpd/rng.hpp"
#include "cpd/simulate.hpp"

namespace {

std::string num(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

// A series file is either the ingest output (date,w header) or one value
// per line (optional "w"/"value" header).
cpd::Series load_series(const std::string& path, std::optional<double> sigma) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open input file: " + path);
  std::string head;
  std::getline(file, head);
  file.seekg(0);
  std::vector<double> values;
  if (head.find(',') != std::string::npos) {
    for (const cpd::DailyW& day : cpd::read_w_csv(file)) values.push_back(day.w);
  } else {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
      ++line_no;
      std::stringstream ss(line);
      std::string token;
      ss >> token;
      if (token.empty()) continue;
      if (line_no == 1 && (token == "w" || token == "value")) continue;
      try {
        values.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": bad numeric value '" + token + "'");
      }
    }
  }
  return cpd::Series(std::move(values), sigma);
}

std::string scenario_header(const cpd::ScenarioConfig& config) {
  std::ostringstream out;
  out << "# cpd n=" << config.n << " r=" << config.r
      << " delta=" << num(config.delta) << " sigma=" << num(config.sigma)
      << " replicates=" << config.replicates << " seed=" << config.seed
      << " score=" << cpd::to_string(config.estimator)
      << " workers=" << config.workers;
  return out.str();
}

void write_report_csv(std::ostream& out, const cpd::ScenarioConfig& config,
                      const cpd::RiskReport& report) {
  out << scenario_header(config) << '\n';
  out << "n,r,delta,sigma,replicates,seed,score,mean_loss_mle,"
         "mean_loss_proposed,relative_efficiency,zero_rate,se_loss_mle,"
         "se_loss_proposed,rejected_replicates\n";
  out << report.n << ',' << report.r << ',' << num(report.delta) << ','
      << num(report.sigma) << ',' << report.replicates << ',' << report.seed
      << ',' << cpd::to_string(report.estimator) << ','
      << num(report.mean_loss_mle) << ',' << num(report.mean_loss_proposed)
      << ',' << num(report.relative_efficiency) << ',' << num(report.zero_rate)
      << ',' << num(report.se_loss_mle) << ',' << num(report.se_loss_proposed)
      << ',' << report.rejected_replicates << '\n';
}

void write_report_json(std::ostream& out, const cpd::ScenarioConfig& config,
                       const cpd::RiskReport& report) {
  out << "{\n"
      << "  \"config\": {\"n\": " << config.n << ", \"r\": " << config.r
      << ", \"delta\": " << num(report.delta) << ", \"sigma\": "
      << num(report.sigma) << ", \"replicates\": " << report.replicates
      << ", \"seed\": " << report.seed << ", \"score\": \""
      << cpd::to_string(report.estimator) << "\", \"workers\": "
      << config.workers << "},\n"
      << "  \"mean_loss_mle\": " << num(report.mean_loss_mle) << ",\n"
      << "  \"mean_loss_proposed\": " << num(report.mean_loss_proposed) << ",\n"
      << "  \"relative_efficiency\": " << num(report.relative_efficiency) << ",\n"
      << "  \"zero_rate\": " << num(report.zero_rate) << ",\n"
      << "  \"se_loss_mle\": " << num(report.se_loss_mle) << ",\n"
      << "  \"se_loss_proposed\": " << num(report.se_loss_proposed) << ",\n"
      << "  \"rejected_replicates\": " << report.rejected_replicates << "\n"
      << "}\n";
}

int run_detect(const std::string& input, std::optional<double> sigma,
               const std::string& score, const std::string& output) {
  const cpd::Series series = load_series(input, sigma);
  cpd::DetectOptions options;
  options.kind = cpd::score_kind_from_string(score);
  const cpd::Detection detection = cpd::detect(series, options);
  const cpd::ChangePointEstimate& e = detection.estimate;

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "{\n"
      << "  \"r_mle\": " << e.r_mle() << ",\n"
      << "  \"r_hat\": " << e.r_hat() << ",\n"
      << "  \"delta_hat\": " << num(e.delta_hat()) << ",\n"
      << "  \"t_hat\": " << num(e.t_hat()) << ",\n"
      << "  \"theta_hat\": " << num(e.theta_hat()) << ",\n"
      << "  \"u_hat\": [" << num(e.u_hat().u1) << ", " << num(e.u_hat().u2)
      << ", " << num(e.u_hat().u3) << "],\n"
      << "  \"pi0\": " << num(e.pi0()) << ",\n"
      << "  \"sigma_used\": " << num(detection.sigma_used) << ",\n"
      << "  \"score_kind\": \"" << cpd::to_string(detection.kind) << "\"\n"
      << "}\n";
  return 0;
}

int run_simulate(const cpd::ScenarioConfig& config, const std::string& format,
                 const std::string& output) {
  if (format != "csv" && format != "json") {
    throw std::runtime_error("unknown format: " + format);
  }
  const cpd::RiskReport report = cpd::monte_carlo_risk(config);
  std::ofstream file;
  std::ostream& out = open_output(file, output);
  if (format == "json") {
    write_report_json(out, config, report);
  } else {
    write_report_csv(out, config, report);
  }
  return 0;
}

int run_table(const std::string& which, std::vector<double> deltas,
              cpd::ScenarioConfig base, const std::string& output) {
  base.estimator = cpd::score_kind_from_string(which);
  if (deltas.empty()) {
    deltas = base.estimator == cpd::ScoreKind::cusum
                 ? std::vector<double>{0.5}
                 : std::vector<double>{0.25, 0.35};
  }
  const std::vector<std::size_t> change_points = {50, 100, 150, 200, 250};

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << scenario_header(base) << '\n';
  out << "delta,change_point,baseline_error,proposed_error,ratio\n";
  for (double delta : deltas) {
    for (std::size_t cp : change_points) {
      cpd::ScenarioConfig config = base;
      config.r = cp;
      config.delta = delta;
      config.seed = cpd::derive_seed(base.seed, (cp << 8) ^ std::size_t(delta * 1e6));
      const cpd::RiskReport report = cpd::monte_carlo_risk(config);
      out << num(delta) << ',' << cp << ',' << num(report.mean_loss_mle) << ','
          << num(report.mean_loss_proposed) << ','
          << num(report.mean_loss_proposed / report.mean_loss_mle) << '\n';
    }
  }
  return 0;
}

int run_ingest(const std::string& input, std::optional<int> year,
               const std::string& output) {
  std::ifstream file(input);
  if (!file) throw std::runtime_error("cannot open input file: " + input);
  const auto bars = cpd::read_ohlc_csv(file);
  cpd::WSeries daily = cpd::daily_w_series(bars);
  if (year) {
    std::erase_if(daily.days, [&](const cpd::DailyW& day) {
      return static_cast<int>(day.date.year()) != *year;
    });
    if (daily.days.empty()) throw std::runtime_error("empty slice");
  }
  std::ofstream out_file;
  std::ostream& out = open_output(out_file, output);
  cpd::write_w_csv(out, daily);
  std::cerr << "ingest: " << daily.days.size() << " days retained, "
            << daily.dropped_flat_days << " flat days dropped, "
            << daily.flagged.size() << " days with open/close fallback\n";
  return 0;
}

int run_scatter(const cpd::ScenarioConfig& config, const std::string& output) {
  const auto cloud = cpd::scatter_cloud(config);
  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << scenario_header(config) << '\n';
  out << "estimator,u1,u2,u3\n";
  for (const cpd::ScatterPair& pair : cloud) {
    out << "mle," << num(pair.mle.u1) << ',' << num(pair.mle.u2) << ','
        << num(pair.mle.u3) << '\n';
    out << "proposed," << num(pair.proposed.u1) << ',' << num(pair.proposed.u2)
        << ',' << num(pair.proposed.u3) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"change-point estimation on the horn-torus parameter space"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string score = "likelihood";
  std::string format = "csv";
  std::string which = "sn";
  std::optional<double> sigma;
  std::optional<int> year;
  std::vector<double> deltas;
  cpd::ScenarioConfig config;
  config.n = 300;
  config.replicates = 10000;
  config.seed = 20240914;
  config.workers = 1;

  auto* detect_cmd = app.add_subcommand("detect", "estimate the change point of a series file");
  detect_cmd->add_option("--input", input, "series file (date,w csv or one value per line)")->required();
  detect_cmd->add_option("--output", output, "output path (default stdout)");
  detect_cmd->add_option("--sigma", sigma, "known noise scale (default: plug-in)");
  detect_cmd->add_option("--score", score, "score kind: likelihood|cusum|sn");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo risk comparison for one scenario");
  simulate_cmd->add_option("--n", config.n, "sample size")->required();
  simulate_cmd->add_option("--r", config.r, "true change index (0 = none)");
  simulate_cmd->add_option("--delta", config.delta, "true shift in sigma units");
  simulate_cmd->add_option("--sigma", config.sigma, "noise scale");
  simulate_cmd->add_option("--replicates", config.replicates, "Monte Carlo replicates");
  simulate_cmd->add_option("--seed", config.seed, "random seed");
  simulate_cmd->add_option("--score", score, "score kind: likelihood|cusum|sn");
  simulate_cmd->add_option("--workers", config.workers, "worker threads (0 = all)");
  simulate_cmd->add_option("--format", format, "csv|json");
  simulate_cmd->add_option("--output", output, "output path (default stdout)");

  auto* table_cmd = app.add_subcommand("table", "average-error table over change points 50..250");
  table_cmd->add_option("--which", which, "baseline statistic: cusum|sn")->required();
  table_cmd->add_option("--delta", deltas, "shift column(s) in sigma units");
  table_cmd->add_option("--n", config.n, "sample size");
  table_cmd->add_option("--replicates", config.replicates, "replicates per cell");
  table_cmd->add_option("--seed", config.seed, "random seed");
  table_cmd->add_option("--workers", config.workers, "worker threads (0 = all)");
  table_cmd->add_option("--output", output, "output path (default stdout)");

  auto* ingest_cmd = app.add_subcommand("ingest", "per-minute OHLC csv to daily W series");
  ingest_cmd->add_option("--input", input, "OHLC csv (unix,date,symbol,open,high,low,close,...)")->required();
  ingest_cmd->add_option("--output", output, "output path (default stdout)");
  ingest_cmd->add_option("--year", year, "keep one calendar year only");

  auto* scatter_cmd = app.add_subcommand("scatter", "per-replicate estimate cloud on the manifold");
  scatter_cmd->add_option("--n", config.n, "sample size")->required();
  scatter_cmd->add_option("--r", config.r, "true change index (0 = none)");
  scatter_cmd->add_option("--delta", config.delta, "true shift in sigma units");
  scatter_cmd->add_option("--sigma", config.sigma, "noise scale");
  scatter_cmd->add_option("--replicates", config.replicates, "Monte Carlo replicates");
  scatter_cmd->add_option("--seed", config.seed, "random seed");
  scatter_cmd->add_option("--score", score, "score kind: likelihood|cusum|sn");
  scatter_cmd->add_option("--workers", config.workers, "worker threads (0 = all)");
  scatter_cmd->add_option("--output", output, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    config.estimator = cpd::score_kind_from_string(score);
    if (detect_cmd->parsed()) return run_detect(input, sigma, score, output);
    if (simulate_cmd->parsed()) return run_simulate(config, format, output);
    if (table_cmd->parsed()) return run_table(which, deltas, config, output);
    if (ingest_cmd->parsed()) return run_ingest(input, year, output);
    if (scatter_cmd->parsed()) return run_scatter(config, output);
  } catch (const std::exception& e) {
    std::cerr << "cpd: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
