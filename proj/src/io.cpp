#include "contraplan/io.hpp"

#include <fstream>
#include <sstream>

#include "contraplan/errors.hpp"

namespace contraplan {

void to_json(Json& j, const Vec2& v) { j = Json::array({v.x, v.y}); }
void from_json(const Json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("expected [x, y], got " + j.dump());
  v = {j[0].get<double>(), j[1].get<double>()};
}
void to_json(Json& j, const Pose2& p) { j = Json::array({p.x, p.y, p.theta}); }
void from_json(const Json& j, Pose2& p) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected [x, y, theta], got " + j.dump());
  p = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
void to_json(Json& j, const Twist2& t) { j = Json::array({t.vx, t.vy, t.omega}); }
void from_json(const Json& j, Twist2& t) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected [vx, vy, omega], got " + j.dump());
  t = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
void to_json(Json& j, const Control& u) { j = Json::array({u.vx, u.vy, u.omega}); }
void from_json(const Json& j, Control& u) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected [vx, vy, omega], got " + j.dump());
  u = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
void to_json(Json& j, const Rect& r) { j = Json{{"min", r.min}, {"max", r.max}}; }
void from_json(const Json& j, Rect& r) {
  r.min = j.at("min").get<Vec2>();
  r.max = j.at("max").get<Vec2>();
}

void to_json(Json& j, const ObjectSpec& o) {
  if (const auto* d = std::get_if<Disc>(&o.shape)) {
    j = Json{{"shape", "disc"}, {"dims", Json::array({d->radius})}};
  } else {
    const auto& b = std::get<Box>(o.shape);
    j = Json{{"shape", "box"}, {"dims", Json::array({b.half_x, b.half_y})}};
  }
  j["mass"] = o.nominal_mass;
  j["friction"] = o.nominal_friction;
  j["pose"] = o.nominal_pose;
}

void from_json(const Json& j, ObjectSpec& o) {
  const std::string shape = j.at("shape").get<std::string>();
  const auto dims = j.at("dims").get<std::vector<double>>();
  if (shape == "disc") {
    if (dims.size() != 1) throw ConfigError("disc dims must be [radius]");
    o.shape = Disc{dims[0]};
  } else if (shape == "box") {
    if (dims.size() != 2) throw ConfigError("box dims must be [half_x, half_y]");
    o.shape = Box{dims[0], dims[1]};
  } else {
    throw ConfigError("unknown shape '" + shape + "'");
  }
  o.nominal_mass = j.at("mass").get<double>();
  o.nominal_friction = j.at("friction").get<double>();
  o.nominal_pose = j.at("pose").get<Pose2>();
}

void to_json(Json& j, const Wall& w) { j = Json{{"from", w.from}, {"to", w.to}}; }
void from_json(const Json& j, Wall& w) {
  w.from = j.at("from").get<Vec2>();
  w.to = j.at("to").get<Vec2>();
}

void to_json(Json& j, const GripperGeometry& g) {
  Json parts = Json::array();
  for (const auto& p : g.parts) parts.push_back({{"center", p.center}, {"half_extents", p.half_extents}});
  j = Json{{"parts", parts}, {"capture", g.capture}};
}
void from_json(const Json& j, GripperGeometry& g) {
  g.parts.clear();
  for (const auto& p : j.at("parts")) g.parts.push_back({p.at("center").get<Vec2>(), p.at("half_extents").get<Vec2>()});
  g.capture = j.at("capture").get<Rect>();
}

void to_json(Json& j, const SceneDescription& s) {
  j = Json{{"boundary", s.boundary},   {"walls", s.walls},
           {"objects", s.objects},     {"robot_start", s.robot_start},
           {"target_index", s.target_object}, {"grasp_offset", s.grasp_offset},
           {"gripper", s.gripper}};
}

void from_json(const Json& j, SceneDescription& s) {
  s = SceneDescription{};
  s.boundary = j.at("boundary").get<Rect>();
  s.walls = j.value("walls", std::vector<Wall>{});
  s.objects = j.at("objects").get<std::vector<ObjectSpec>>();
  s.robot_start = j.at("robot_start").get<Pose2>();
  s.target_object = j.at("target_index").get<std::size_t>();
  if (j.contains("grasp_offset")) s.grasp_offset = j["grasp_offset"].get<Vec2>();
  if (j.contains("gripper")) s.gripper = j["gripper"].get<GripperGeometry>();
}

void to_json(Json& j, const ObjectState& o) {
  j = Json{{"pose", o.pose}, {"velocity", o.velocity}, {"toppled", o.toppled}};
}
void from_json(const Json& j, ObjectState& o) {
  o.pose = j.at("pose").get<Pose2>();
  o.velocity = j.at("velocity").get<Twist2>();
  o.toppled = j.at("toppled").get<bool>();
}
void to_json(Json& j, const SystemState& s) {
  j = Json{{"robot", s.robot}, {"robot_velocity", s.robot_velocity}, {"objects", s.objects}};
}
void from_json(const Json& j, SystemState& s) {
  s.robot = j.at("robot").get<Pose2>();
  s.robot_velocity = j.at("robot_velocity").get<Twist2>();
  s.objects = j.at("objects").get<std::vector<ObjectState>>();
}

void to_json(Json& j, const DivergenceProfile& p) {
  j = Json{{"per_step_expected", p.per_step_expected},
           {"path_expected_nominal", p.path_expected_nominal},
           {"path_maximal_nominal", p.path_maximal_nominal},
           {"path_expected_real", p.path_expected_real},
           {"path_maximal_real", p.path_maximal_real},
           {"n_samples", p.n_samples},
           {"n_worlds", p.n_worlds},
           {"world_expected", p.world_expected},
           {"world_maximal", p.world_maximal},
           {"worst_world", p.worst_world}};
}
void from_json(const Json& j, DivergenceProfile& p) {
  p.per_step_expected = j.at("per_step_expected").get<std::vector<double>>();
  p.path_expected_nominal = j.at("path_expected_nominal").get<double>();
  p.path_maximal_nominal = j.at("path_maximal_nominal").get<double>();
  p.path_expected_real = j.at("path_expected_real").get<double>();
  p.path_maximal_real = j.at("path_maximal_real").get<double>();
  p.n_samples = j.at("n_samples").get<std::size_t>();
  p.n_worlds = j.at("n_worlds").get<std::size_t>();
  p.world_expected = j.value("world_expected", std::vector<double>{});
  p.world_maximal = j.value("world_maximal", std::vector<double>{});
  p.worst_world = j.value("worst_world", std::size_t{0});
}

void to_json(Json& j, const Segment& s) {
  j = Json{{"start", s.start}, {"end", s.end}, {"kind", std::string(to_string(s.kind))}, {"metric", s.metric}};
}
void from_json(const Json& j, Segment& s) {
  s.start = j.at("start").get<std::size_t>();
  s.end = j.at("end").get<std::size_t>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "robust" && kind != "non_robust") throw ConfigError("unknown segment kind '" + kind + "'");
  s.kind = kind == "robust" ? SegmentKind::robust : SegmentKind::non_robust;
  s.metric = j.at("metric").get<double>();
}
void to_json(Json& j, const SegmentPlan& p) { j = Json{{"segments", p.segments}, {"total_cost", p.total_cost}}; }
void from_json(const Json& j, SegmentPlan& p) {
  p.segments = j.at("segments").get<std::vector<Segment>>();
  p.total_cost = j.at("total_cost").get<double>();
}

Json segment_plan_json(const SegmentPlan& plan, const RobustnessGraph& graph) {
  Json j = plan;
  Json edges = Json::array();
  for (const GraphEdge& e : graph.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"metric", e.metric}, {"robust", e.robust}, {"cost", e.cost}});
  j["edges"] = std::move(edges);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SceneDescription load_scene(const std::filesystem::path& path) {
  const Json doc = read_json_file(path);
  SceneDescription s;
  try {
    s = doc.at("scene").get<SceneDescription>();
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  s.validate();
  return s;
}

void save_scene(const SceneDescription& scene, const std::filesystem::path& path) {
  write_text_file(path, Json{{"scene", scene}}.dump(2) + "\n");
}

namespace {

Json optional_state(const std::optional<SystemState>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

void write_log(const ExecutionLog& log, std::ostream& out) {
  Json header{{"type", "header"},
              {"method", std::string(to_string(log.method))},
              {"seed", log.seed},
              {"initial_true", log.initial_true},
              {"initial_observed", log.initial_observed},
              {"planned_controls", log.planned_controls},
              {"planned_states", log.planned_states},
              {"profile", log.profile ? Json(*log.profile) : Json(nullptr)},
              {"segments", log.segments ? Json(*log.segments) : Json(nullptr)}};
  out << header.dump() << '\n';
  for (const StepRecord& r : log.steps) {
    Json rec{{"type", "step"},
             {"index", r.index},
             {"mode", std::string(to_string(r.mode))},
             {"control", r.control},
             {"true_state", r.true_state},
             {"observed", optional_state(r.observed)},
             {"planning_time_s", r.planning_time_s}};
    out << rec.dump() << '\n';
  }
  Json calls = Json::array();
  for (const PlannerCall& c : log.planner_calls) calls.push_back({{"step", c.step}, {"kind", c.kind}, {"input", c.input}});
  Json summary{{"type", "summary"},
               {"planning_time_s", log.planning_time_s},
               {"execution_time_s", log.execution_time_s},
               {"virtual_planning_time_s", log.virtual_planning_time_s},
               {"virtual_execution_time_s", log.virtual_execution_time_s},
               {"optimizer_invocations", log.optimizer_invocations},
               {"open_loop_steps", log.open_loop_steps},
               {"mpc_steps", log.mpc_steps},
               {"percent_open_loop", log.percent_open_loop},
               {"success", log.success},
               {"failure", log.failure},
               {"planner_calls", calls}};
  out << summary.dump() << '\n';
}

ExecutionLog read_log(std::istream& in) {
  ExecutionLog log;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json rec = Json::parse(line);
    const std::string type = rec.at("type").get<std::string>();
    if (type == "header") {
      header = true;
      log.method = parse_method(rec.at("method").get<std::string>());
      log.seed = rec.at("seed").get<std::uint64_t>();
      log.initial_true = rec.at("initial_true").get<SystemState>();
      log.initial_observed = rec.at("initial_observed").get<SystemState>();
      log.planned_controls = rec.at("planned_controls").get<ControlSequence>();
      log.planned_states = rec.at("planned_states").get<Trajectory>();
      if (!rec.at("profile").is_null()) log.profile = rec["profile"].get<DivergenceProfile>();
      if (!rec.at("segments").is_null()) log.segments = rec["segments"].get<SegmentPlan>();
    } else if (type == "step") {
      StepRecord r;
      r.index = rec.at("index").get<std::size_t>();
      r.mode = rec.at("mode").get<std::string>() == "mpc" ? StepMode::mpc : StepMode::open_loop;
      r.control = rec.at("control").get<Control>();
      r.true_state = rec.at("true_state").get<SystemState>();
      if (!rec.at("observed").is_null()) r.observed = rec["observed"].get<SystemState>();
      r.planning_time_s = rec.at("planning_time_s").get<double>();
      log.steps.push_back(std::move(r));
    } else if (type == "summary") {
      log.planning_time_s = rec.at("planning_time_s").get<double>();
      log.execution_time_s = rec.at("execution_time_s").get<double>();
      log.virtual_planning_time_s = rec.at("virtual_planning_time_s").get<double>();
      log.virtual_execution_time_s = rec.at("virtual_execution_time_s").get<double>();
      log.optimizer_invocations = rec.at("optimizer_invocations").get<std::size_t>();
      log.open_loop_steps = rec.at("open_loop_steps").get<std::size_t>();
      log.mpc_steps = rec.at("mpc_steps").get<std::size_t>();
      log.percent_open_loop = rec.at("percent_open_loop").get<double>();
      log.success = rec.at("success").get<bool>();
      log.failure = rec.at("failure").get<std::string>();
      for (const auto& c : rec.at("planner_calls"))
        log.planner_calls.push_back(
            {c.at("step").get<std::size_t>(), c.at("kind").get<std::string>(), c.at("input").get<SystemState>()});
    } else {
      throw ConfigError("unknown log record type '" + type + "'");
    }
  }
  if (!header) throw ConfigError("log has no header record");
  return log;
}

void save_log(const ExecutionLog& log, const std::filesystem::path& path) {
  std::ostringstream out;
  write_log(log, out);
  write_text_file(path, out.str());
}

ExecutionLog load_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return read_log(in);
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace contraplan
