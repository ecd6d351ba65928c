#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "contraplan/executor.hpp"
#include "contraplan/harness.hpp"
#include "contraplan/io.hpp"
#include "contraplan/scene_gen.hpp"

namespace contraplan {

/// Everything one run or one benchmark sweep needs. Defaults reproduce the
/// experimental parameter table; a JSON file only lists overrides.
struct RunConfig {
  /// Single-scene commands read this file; otherwise a scene is generated.
  std::optional<std::string> scene_path;
  /// Benchmark scenes. When empty, scene_count scenes are generated.
  std::vector<std::string> scene_paths;
  std::size_t scene_count = 20;
  GeneratorParams generator;

  Method method = Method::ocl;
  std::vector<Method> methods{Method::ol, Method::rol, Method::cp, Method::cc, Method::ocl};
  std::uint64_t seed = 1;
  /// Benchmark seeds; empty means {seed}.
  std::vector<std::uint64_t> seeds;

  ExecutorConfig executor;
  ObservationNoise observation;
  int jobs = 1;
  std::string out_dir = "contraplan_out";

  std::vector<std::uint64_t> bench_seeds() const { return seeds.empty() ? std::vector<std::uint64_t>{seed} : seeds; }
  /// Throws ConfigError on any out-of-range parameter.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

Json to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys are a ConfigError.
RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace contraplan
