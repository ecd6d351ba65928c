#include "contraplan/config.hpp"

#include <set>

#include "contraplan/errors.hpp"

namespace contraplan {

namespace {

Json interval_json(const Interval& i) { return Json::array({i.lower, i.upper}); }

void read_interval(const Json& j, Interval& i) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("expected [lower, upper], got " + j.dump());
  i = {j[0].get<double>(), j[1].get<double>()};
}

// Reads known keys from an object and rejects anything else.
class Section {
 public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("'" + name_ + "' must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw ConfigError(name_ + "." + key + ": " + e.what());
    }
  }
  void interval(const char* key, Interval& out) {
    seen_.insert(key);
    if (j_.contains(key)) read_interval(j_.at(key), out);
  }
  const Json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("unknown key '" + name_ + "." + it.key() + "'");
  }

 private:
  const Json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

Json generator_json(const GeneratorParams& g) {
  return Json{{"object_count", g.object_count},
              {"max_objects", g.max_objects},
              {"min_blockers", g.min_blockers},
              {"max_attempts", g.max_attempts},
              {"boundary", g.boundary},
              {"robot_start", g.robot_start},
              {"target_x", interval_json(g.target_x)},
              {"target_y", interval_json(g.target_y)},
              {"target_radius", interval_json(g.target_radius)},
              {"target_half", interval_json(g.target_half)},
              {"blocker_radius", interval_json(g.blocker_radius)},
              {"blocker_half", interval_json(g.blocker_half)},
              {"blocker_fraction", interval_json(g.blocker_fraction)},
              {"blocker_lateral", g.blocker_lateral},
              {"clutter_region", g.clutter_region},
              {"clearance", g.clearance},
              {"box_probability", g.box_probability},
              {"mass", g.mass},
              {"friction", g.friction}};
}

void read_generator(const Json& j, GeneratorParams& g) {
  Section s(j, "generator");
  s.get("object_count", g.object_count);
  s.get("max_objects", g.max_objects);
  s.get("min_blockers", g.min_blockers);
  s.get("max_attempts", g.max_attempts);
  s.get("boundary", g.boundary);
  s.get("robot_start", g.robot_start);
  s.interval("target_x", g.target_x);
  s.interval("target_y", g.target_y);
  s.interval("target_radius", g.target_radius);
  s.interval("target_half", g.target_half);
  s.interval("blocker_radius", g.blocker_radius);
  s.interval("blocker_half", g.blocker_half);
  s.interval("blocker_fraction", g.blocker_fraction);
  s.get("blocker_lateral", g.blocker_lateral);
  s.get("clutter_region", g.clutter_region);
  s.get("clearance", g.clearance);
  s.get("box_probability", g.box_probability);
  s.get("mass", g.mass);
  s.get("friction", g.friction);
  s.finish();
}

Json distance_json(const DistanceWeights& d) {
  return Json{{"robot_position", d.robot_position},   {"robot_angle", d.robot_angle},
              {"object_position", d.object_position}, {"object_angle", d.object_angle},
              {"linear_velocity", d.linear_velocity}, {"angular_velocity", d.angular_velocity}};
}

void read_distance(const Json& j, DistanceWeights& d, const char* name) {
  Section s(j, name);
  s.get("robot_position", d.robot_position);
  s.get("robot_angle", d.robot_angle);
  s.get("object_position", d.object_position);
  s.get("object_angle", d.object_angle);
  s.get("linear_velocity", d.linear_velocity);
  s.get("angular_velocity", d.angular_velocity);
  s.finish();
}

std::vector<Method> read_methods(const Json& j) {
  std::vector<Method> out;
  for (const auto& m : j) out.push_back(parse_method(m.get<std::string>()));
  return out;
}

}  // namespace

void RunConfig::validate() const {
  generator.validate();
  if (methods.empty()) throw ConfigError("methods must not be empty");
  if (scene_paths.empty() && scene_count == 0) throw ConfigError("scene_count must be positive");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  executor.weights.validate();
  executor.optimizer.validate();
  executor.metrics.bounds.validate();
  executor.metrics.distance.validate();
  executor.edge_costs.validate();
  executor.initial_guess.validate();
  if (executor.metrics.n_samples < 2) throw ConfigError("metrics.n_samples must be at least 2");
  if (executor.metrics.n_worlds < 1) throw ConfigError("metrics.n_worlds must be at least 1");
  if (!(executor.metrics.noise.sigma_position >= 0.0 && executor.metrics.noise.sigma_theta >= 0.0))
    throw ConfigError("initial-state noise must be non-negative");
  if (!(observation.sigma_position >= 0.0 && observation.sigma_theta >= 0.0))
    throw ConfigError("observation noise must be non-negative");
  const PhysicsSettings& p = executor.physics;
  if (!(p.control_dt > 0.0)) throw ConfigError("dt must be positive");
  if (p.substeps < 1 || p.solver_iterations < 1) throw ConfigError("substeps and solver_iterations must be positive");
  if (!(executor.clock.per_control_step_s >= 0.0)) throw ConfigError("per_control_step_s must be non-negative");
}

Json to_json(const RunConfig& c) {
  const ExecutorConfig& e = c.executor;
  Json methods = Json::array();
  for (Method m : c.methods) methods.push_back(std::string(to_string(m)));
  Json j{{"seed", c.seed},
         {"seeds", c.seeds},
         {"method", std::string(to_string(c.method))},
         {"methods", methods},
         {"jobs", c.jobs},
         {"out", c.out_dir},
         {"scene", c.scene_path ? Json(*c.scene_path) : Json(nullptr)},
         {"scenes", c.scene_paths},
         {"scene_count", c.scene_count},
         {"generator", generator_json(c.generator)}};
  j["robustness_graph"] = {{"c_ro", e.edge_costs.robust}, {"c_nr", e.edge_costs.non_robust}};
  j["metrics"] = {{"n_samples", e.metrics.n_samples},
                  {"n_worlds", e.metrics.n_worlds},
                  {"mass", interval_json(e.metrics.bounds.mass)},
                  {"friction", interval_json(e.metrics.bounds.friction)},
                  {"size_scale", interval_json(e.metrics.bounds.size_scale)},
                  {"sigma_position", e.metrics.noise.sigma_position},
                  {"sigma_theta", e.metrics.noise.sigma_theta}};
  j["distance_weights"] = distance_json(e.metrics.distance);
  j["tracking_weights"] = distance_json(e.weights.distance);
  j["optimizer"] = {{"samples", e.optimizer.samples},
                    {"sampling_variance", e.optimizer.sampling_variance},
                    {"max_iterations", e.optimizer.max_iterations},
                    {"horizon", e.optimizer.horizon},
                    {"dt", e.physics.control_dt},
                    {"control_lower", e.optimizer.bounds.lower},
                    {"control_upper", e.optimizer.bounds.upper}};
  j["cost"] = {{"v_a", e.weights.acceleration}, {"v_c", e.weights.collision},   {"v_d", e.weights.disturbance},
               {"v_y", e.weights.topple},       {"v_phi", e.weights.angular_goal}, {"v_f", e.weights.terminal},
               {"v_e", e.weights.robust_expected}, {"v_m", e.weights.robust_maximal},
               {"v_j", e.weights.robust_task},  {"alpha", e.weights.alpha},     {"beta", e.weights.beta}};
  j["executor"] = {{"task_steps", e.task_steps}, {"per_control_step_s", e.clock.per_control_step_s}};
  j["initial_guess"] = {{"enabled", e.initial_guess.enabled},
                        {"candidates", e.initial_guess.candidates},
                        {"max_lateral", e.initial_guess.max_lateral},
                        {"max_turn", e.initial_guess.max_turn}};
  j["physics"] = {{"substeps", e.physics.substeps},
                  {"solver_iterations", e.physics.solver_iterations},
                  {"gravity", e.physics.gravity},
                  {"baumgarte", e.physics.baumgarte},
                  {"linear_slop", e.physics.linear_slop},
                  {"speculative_distance", e.physics.speculative_distance},
                  {"wall_half_thickness", e.physics.wall_half_thickness}};
  j["observation_noise"] = {{"sigma_position", c.observation.sigma_position},
                            {"sigma_theta", c.observation.sigma_theta}};
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig c;
  ExecutorConfig& e = c.executor;
  Section top(j, "config");
  top.get("seed", c.seed);
  top.get("seeds", c.seeds);
  if (const Json* m = top.child("method")) c.method = parse_method(m->get<std::string>());
  if (const Json* m = top.child("methods")) c.methods = read_methods(*m);
  top.get("jobs", c.jobs);
  top.get("out", c.out_dir);
  if (const Json* s = top.child("scene"); s && !s->is_null()) c.scene_path = s->get<std::string>();
  top.get("scenes", c.scene_paths);
  top.get("scene_count", c.scene_count);
  if (const Json* g = top.child("generator")) read_generator(*g, c.generator);

  if (const Json* g = top.child("robustness_graph")) {
    Section s(*g, "robustness_graph");
    s.get("c_ro", e.edge_costs.robust);
    s.get("c_nr", e.edge_costs.non_robust);
    s.finish();
  }
  if (const Json* m = top.child("metrics")) {
    Section s(*m, "metrics");
    s.get("n_samples", e.metrics.n_samples);
    s.get("n_worlds", e.metrics.n_worlds);
    s.interval("mass", e.metrics.bounds.mass);
    s.interval("friction", e.metrics.bounds.friction);
    s.interval("size_scale", e.metrics.bounds.size_scale);
    s.get("sigma_position", e.metrics.noise.sigma_position);
    s.get("sigma_theta", e.metrics.noise.sigma_theta);
    s.finish();
  }
  if (const Json* d = top.child("distance_weights")) read_distance(*d, e.metrics.distance, "distance_weights");
  if (const Json* d = top.child("tracking_weights")) read_distance(*d, e.weights.distance, "tracking_weights");
  if (const Json* o = top.child("optimizer")) {
    Section s(*o, "optimizer");
    s.get("samples", e.optimizer.samples);
    s.get("sampling_variance", e.optimizer.sampling_variance);
    s.get("max_iterations", e.optimizer.max_iterations);
    s.get("horizon", e.optimizer.horizon);
    s.get("dt", e.physics.control_dt);
    s.get("control_lower", e.optimizer.bounds.lower);
    s.get("control_upper", e.optimizer.bounds.upper);
    s.finish();
  }
  if (const Json* w = top.child("cost")) {
    Section s(*w, "cost");
    s.get("v_a", e.weights.acceleration);
    s.get("v_c", e.weights.collision);
    s.get("v_d", e.weights.disturbance);
    s.get("v_y", e.weights.topple);
    s.get("v_phi", e.weights.angular_goal);
    s.get("v_f", e.weights.terminal);
    s.get("v_e", e.weights.robust_expected);
    s.get("v_m", e.weights.robust_maximal);
    s.get("v_j", e.weights.robust_task);
    s.get("alpha", e.weights.alpha);
    s.get("beta", e.weights.beta);
    s.finish();
  }
  if (const Json* x = top.child("executor")) {
    Section s(*x, "executor");
    s.get("task_steps", e.task_steps);
    s.get("per_control_step_s", e.clock.per_control_step_s);
    s.finish();
  }
  if (const Json* g = top.child("initial_guess")) {
    Section s(*g, "initial_guess");
    s.get("enabled", e.initial_guess.enabled);
    s.get("candidates", e.initial_guess.candidates);
    s.get("max_lateral", e.initial_guess.max_lateral);
    s.get("max_turn", e.initial_guess.max_turn);
    s.finish();
  }
  if (const Json* p = top.child("physics")) {
    Section s(*p, "physics");
    s.get("substeps", e.physics.substeps);
    s.get("solver_iterations", e.physics.solver_iterations);
    s.get("gravity", e.physics.gravity);
    s.get("baumgarte", e.physics.baumgarte);
    s.get("linear_slop", e.physics.linear_slop);
    s.get("speculative_distance", e.physics.speculative_distance);
    s.get("wall_half_thickness", e.physics.wall_half_thickness);
    s.finish();
  }
  if (const Json* n = top.child("observation_noise")) {
    Section s(*n, "observation_noise");
    s.get("sigma_position", c.observation.sigma_position);
    s.get("sigma_theta", c.observation.sigma_theta);
    s.finish();
  }
  top.finish();
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  try {
    return run_config_from_json(read_json_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace contraplan
