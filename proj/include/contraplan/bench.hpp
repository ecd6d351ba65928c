#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "contraplan/config.hpp"

namespace contraplan {

struct BenchScene {
  std::string id;
  SceneDescription scene;
};

struct BenchMatrix {
  std::vector<BenchScene> scenes;
  std::vector<Method> methods;
  std::vector<std::uint64_t> seeds;
  ExecutorConfig executor;
  ObservationNoise observation;
  /// Cells run concurrently on this many lanes.
  Parallelism parallelism;
};

/// Scenes from config.scene_paths, or config.scene_count generated ones
/// (scene k uses generator seed derive(seed, {scene, k})).
std::vector<BenchScene> bench_scenes(const RunConfig& config);
BenchMatrix bench_matrix(const RunConfig& config);

/// One benchmark cell. Times are the virtual clocks.
struct BenchRow {
  std::string scene_id;
  Method method = Method::ocl;
  std::uint64_t seed = 0;
  bool success = false;
  double planning_time_s = 0.0;
  double execution_time_s = 0.0;
  double percent_open_loop = 0.0;
  /// NaN for methods that compute no divergence profile.
  double e_real_expected = 0.0;
  double e_nominal_expected = 0.0;

  bool operator==(const BenchRow&) const = default;
};

/// Wall-clock side data for a row; kept out of the report so reports are
/// reproducible byte for byte.
struct BenchTiming {
  double wall_planning_time_s = 0.0;
  double wall_execution_time_s = 0.0;
  std::size_t optimizer_invocations = 0;
  std::string failure;
};

struct Statistic {
  std::size_t n = 0;
  double mean = 0.0;
  /// 95% t-interval half width; absent when n < 2.
  std::optional<double> ci_half_width;
};

/// Mean and t-interval over the finite values.
Statistic summarize(const std::vector<double>& values);

struct MethodAggregate {
  Method method = Method::ocl;
  std::size_t runs = 0;
  Statistic success;
  Statistic planning_time_s;
  Statistic execution_time_s;
  Statistic percent_open_loop;
  Statistic e_real_expected;
  Statistic e_nominal_expected;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchTiming> timing;

  /// One entry per method, in order of first appearance.
  std::vector<MethodAggregate> aggregates() const;
};

/// Logs are filled per cell when requested, in row order.
BenchReport run_benchmark(const BenchMatrix& matrix, std::vector<ExecutionLog>* logs = nullptr);

/// Runs one cell: harness seeded from (seed, scene index), planner from seed.
ExecutionLog run_cell(const BenchMatrix& matrix, std::size_t scene_index, Method method, std::uint64_t seed);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

extern const char* const kReportColumns[9];

void write_csv(const BenchReport& report, std::ostream& out);
std::vector<BenchRow> parse_csv(std::istream& in);
Json report_json(const BenchReport& report);
/// Writes report.csv or report.json under dir and returns its path.
std::filesystem::path emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& dir);
void write_timing_csv(const BenchReport& report, const std::filesystem::path& path);

}  // namespace contraplan
