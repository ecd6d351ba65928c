#include "contraplan/bench.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

#include "contraplan/errors.hpp"
#include "contraplan/random.hpp"

namespace contraplan {

const char* const kReportColumns[9] = {"scene_id",         "method",           "seed",
                                       "success",          "planning_time_s",  "execution_time_s",
                                       "percent_open_loop", "e_real_expected", "e_nominal_expected"};

std::vector<BenchScene> bench_scenes(const RunConfig& config) {
  std::vector<BenchScene> out;
  if (!config.scene_paths.empty()) {
    for (const std::string& p : config.scene_paths)
      out.push_back({std::filesystem::path(p).stem().string(), load_scene(p)});
    return out;
  }
  for (std::size_t k = 0; k < config.scene_count; ++k) {
    Rng rng = make_rng(config.seed, {stream::kScene, k});
    char id[32];
    std::snprintf(id, sizeof id, "scene_%03zu", k);
    out.push_back({id, generate_random_scene(config.generator, rng)});
  }
  return out;
}

BenchMatrix bench_matrix(const RunConfig& config) {
  BenchMatrix m;
  m.scenes = bench_scenes(config);
  m.methods = config.methods;
  m.seeds = config.bench_seeds();
  m.executor = config.executor;
  m.observation = config.observation;
  m.parallelism.jobs = resolve_jobs(config.jobs);
  return m;
}

ExecutionLog run_cell(const BenchMatrix& matrix, std::size_t scene_index, Method method, std::uint64_t seed) {
  const SceneDescription& scene = matrix.scenes.at(scene_index).scene;
  RealWorldHarness harness =
      RealWorldHarness::sample(scene, matrix.executor.metrics.bounds, matrix.observation, matrix.executor.physics,
                               derive_seed(seed, {stream::kHarness, scene_index}));
  return run_baseline(method, scene, matrix.executor, harness, derive_seed(seed, {stream::kPlanner, scene_index}));
}

BenchReport run_benchmark(const BenchMatrix& matrix, std::vector<ExecutionLog>* logs) {
  const std::size_t n_m = matrix.methods.size();
  const std::size_t n_s = matrix.seeds.size();
  const std::size_t cells = matrix.scenes.size() * n_m * n_s;
  BenchReport report;
  report.rows.resize(cells);
  report.timing.resize(cells);
  std::vector<ExecutionLog> cell_logs(logs ? cells : 0);

  BenchMatrix inner = matrix;
  inner.executor.optimizer.parallelism.jobs = 1;
  for_each_index(cells, matrix.parallelism, [&](std::size_t c) {
    const std::size_t scene = c / (n_m * n_s);
    const Method method = matrix.methods[(c / n_s) % n_m];
    const std::uint64_t seed = matrix.seeds[c % n_s];
    BenchRow& row = report.rows[c];
    BenchTiming& timing = report.timing[c];
    row.scene_id = matrix.scenes[scene].id;
    row.method = method;
    row.seed = seed;
    row.e_real_expected = row.e_nominal_expected = std::numeric_limits<double>::quiet_NaN();
    ExecutionLog log;
    try {
      log = run_cell(inner, scene, method, seed);
    } catch (const std::exception& e) {
      log.method = method;
      log.seed = seed;
      log.failure = e.what();
    }
    row.success = log.success;
    row.planning_time_s = log.virtual_planning_time_s;
    row.execution_time_s = log.virtual_execution_time_s;
    row.percent_open_loop = log.percent_open_loop;
    if (log.profile) {
      row.e_real_expected = log.profile->path_expected_real;
      row.e_nominal_expected = log.profile->path_expected_nominal;
    }
    timing.wall_planning_time_s = log.planning_time_s;
    timing.wall_execution_time_s = log.execution_time_s;
    timing.optimizer_invocations = log.optimizer_invocations;
    timing.failure = log.failure;
    if (logs) cell_logs[c] = std::move(log);
  });
  if (logs) *logs = std::move(cell_logs);
  return report;
}

Statistic summarize(const std::vector<double>& values) {
  Statistic s;
  double sum = 0.0;
  for (double v : values)
    if (std::isfinite(v)) {
      sum += v;
      ++s.n;
    }
  if (s.n == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double v : values)
    if (std::isfinite(v)) ss += (v - s.mean) * (v - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  const boost::math::students_t dist(static_cast<double>(s.n - 1));
  s.ci_half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(double(s.n));
  return s;
}

std::vector<MethodAggregate> BenchReport::aggregates() const {
  std::vector<MethodAggregate> out;
  std::vector<Method> order;
  for (const BenchRow& r : rows)
    if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
  for (Method m : order) {
    std::vector<double> success, plan, exec, pol, er, en;
    for (const BenchRow& r : rows) {
      if (r.method != m) continue;
      success.push_back(r.success ? 1.0 : 0.0);
      plan.push_back(r.planning_time_s);
      exec.push_back(r.execution_time_s);
      pol.push_back(r.percent_open_loop);
      er.push_back(r.e_real_expected);
      en.push_back(r.e_nominal_expected);
    }
    MethodAggregate a;
    a.method = m;
    a.runs = success.size();
    a.success = summarize(success);
    a.planning_time_s = summarize(plan);
    a.execution_time_s = summarize(exec);
    a.percent_open_loop = summarize(pol);
    a.e_real_expected = summarize(er);
    a.e_nominal_expected = summarize(en);
    out.push_back(a);
  }
  return out;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ConfigError("bad number '" + s + "' in report");
  return v;
}

Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json statistic_json(const Statistic& s) {
  return Json{{"n", s.n},
              {"mean", number_json(s.mean)},
              {"ci95_half_width", s.ci_half_width ? number_json(*s.ci_half_width) : Json(nullptr)}};
}

}  // namespace

void write_csv(const BenchReport& report, std::ostream& out) {
  for (int c = 0; c < 9; ++c) out << (c ? "," : "") << kReportColumns[c];
  out << '\n';
  for (const BenchRow& r : report.rows) {
    out << r.scene_id << ',' << to_string(r.method) << ',' << r.seed << ',' << (r.success ? 1 : 0) << ','
        << number(r.planning_time_s) << ',' << number(r.execution_time_s) << ',' << number(r.percent_open_loop)
        << ',' << number(r.e_real_expected) << ',' << number(r.e_nominal_expected) << '\n';
  }
}

std::vector<BenchRow> parse_csv(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  std::string header;
  for (int c = 0; c < 9; ++c) header += std::string(c ? "," : "") + kReportColumns[c];
  if (line != header) throw ConfigError("unexpected report header '" + line + "'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw ConfigError("report row has " + std::to_string(f.size()) + " fields");
    BenchRow r;
    r.scene_id = f[0];
    r.method = parse_method(f[1]);
    r.seed = std::stoull(f[2]);
    r.success = f[3] == "1";
    r.planning_time_s = parse_number(f[4]);
    r.execution_time_s = parse_number(f[5]);
    r.percent_open_loop = parse_number(f[6]);
    r.e_real_expected = parse_number(f[7]);
    r.e_nominal_expected = parse_number(f[8]);
    rows.push_back(r);
  }
  return rows;
}

Json report_json(const BenchReport& report) {
  Json rows = Json::array();
  for (const BenchRow& r : report.rows)
    rows.push_back({{"scene_id", r.scene_id},
                    {"method", std::string(to_string(r.method))},
                    {"seed", r.seed},
                    {"success", r.success},
                    {"planning_time_s", number_json(r.planning_time_s)},
                    {"execution_time_s", number_json(r.execution_time_s)},
                    {"percent_open_loop", number_json(r.percent_open_loop)},
                    {"e_real_expected", number_json(r.e_real_expected)},
                    {"e_nominal_expected", number_json(r.e_nominal_expected)}});
  Json aggregates = Json::array();
  for (const MethodAggregate& a : report.aggregates())
    aggregates.push_back({{"method", std::string(to_string(a.method))},
                          {"runs", a.runs},
                          {"success", statistic_json(a.success)},
                          {"planning_time_s", statistic_json(a.planning_time_s)},
                          {"execution_time_s", statistic_json(a.execution_time_s)},
                          {"percent_open_loop", statistic_json(a.percent_open_loop)},
                          {"e_real_expected", statistic_json(a.e_real_expected)},
                          {"e_nominal_expected", statistic_json(a.e_nominal_expected)}});
  return Json{{"rows", rows}, {"aggregates", aggregates}};
}

std::filesystem::path emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& dir) {
  std::ostringstream out;
  std::filesystem::path path;
  if (format == ReportFormat::csv) {
    write_csv(report, out);
    path = dir / "report.csv";
  } else {
    out << report_json(report).dump(2) << '\n';
    path = dir / "report.json";
  }
  write_text_file(path, out.str());
  return path;
}

void write_timing_csv(const BenchReport& report, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "scene_id,method,seed,wall_planning_time_s,wall_execution_time_s,optimizer_invocations,failure\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const BenchRow& r = report.rows[i];
    const BenchTiming& t = report.timing[i];
    std::string failure = t.failure;
    for (char& ch : failure)
      if (ch == ',' || ch == '\n') ch = ' ';
    out << r.scene_id << ',' << to_string(r.method) << ',' << r.seed << ',' << number(t.wall_planning_time_s) << ','
        << number(t.wall_execution_time_s) << ',' << t.optimizer_invocations << ',' << failure << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace contraplan
