#include "contraplan/render.hpp"

#include <cstdio>
#include <sstream>

#include "contraplan/io.hpp"
#include "contraplan/physics.hpp"

namespace contraplan {

namespace {

constexpr const char* kOpenLoopColor = "#d62728";
constexpr const char* kMpcColor = "#1f77b4";
constexpr const char* kPlannedColor = "#7f7f7f";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string points(const std::vector<Vec2>& world, const SvgTransform& t) {
  std::string out;
  for (const Vec2& p : world) {
    const Vec2 px = t.to_pixel(p);
    if (!out.empty()) out += ' ';
    out += fmt(px.x) + "," + fmt(px.y);
  }
  return out;
}

std::vector<Vec2> outline(const ObjectSpec& spec, const Pose2& pose) {
  std::vector<Vec2> out;
  if (const auto* b = std::get_if<Box>(&spec.shape)) {
    const auto poly = collision::make_box(pose, {b->half_x, b->half_y});
    out.assign(poly.vertices.begin(), poly.vertices.end());
  }
  return out;
}

void header(std::ostringstream& s, const SvgTransform& t) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(t.width()) << "\" height=\"" << fmt(t.height())
    << "\" viewBox=\"0 0 " << fmt(t.width()) << ' ' << fmt(t.height()) << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << fmt(t.width()) << "\" height=\"" << fmt(t.height())
    << "\" fill=\"white\"/>\n";
}

void scene_static(std::ostringstream& s, const SceneDescription& scene, const SvgTransform& t) {
  const Rect& b = scene.boundary;
  s << "<polygon class=\"boundary\" points=\""
    << points({b.min, {b.max.x, b.min.y}, b.max, {b.min.x, b.max.y}}, t)
    << "\" fill=\"#f4f1e8\" stroke=\"#bbbbbb\"/>\n";
  for (const Wall& w : scene.walls) {
    const Vec2 a = t.to_pixel(w.from), c = t.to_pixel(w.to);
    s << "<line class=\"wall\" x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(c.x) << "\" y2=\""
      << fmt(c.y) << "\" stroke=\"#444444\" stroke-width=\"6\"/>\n";
  }
}

void objects(std::ostringstream& s, const SceneDescription& scene, const SystemState& state, const SvgTransform& t,
             const char* cls, const char* style) {
  for (std::size_t i = 0; i < state.objects.size(); ++i) {
    const ObjectSpec& spec = scene.objects[i];
    const Pose2& pose = state.objects[i].pose;
    const bool target = i == scene.target_object;
    const char* fill = target ? "#2ca02c" : "#c9a66b";
    if (const auto* d = std::get_if<Disc>(&spec.shape)) {
      const Vec2 c = t.to_pixel(pose.position());
      s << "<circle class=\"" << cls << "-shape\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\""
        << fmt(d->radius * t.scale) << "\" fill=\"" << fill << "\" " << style << "/>\n";
    } else {
      s << "<polygon class=\"" << cls << "-shape\" points=\"" << points(outline(spec, pose), t) << "\" fill=\""
        << fill << "\" " << style << "/>\n";
    }
    const Vec2 c = t.to_pixel(pose.position());
    s << "<circle class=\"" << cls << "\" data-object=\"" << i << "\" data-toppled=\""
      << (state.objects[i].toppled ? 1 : 0) << "\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
      << "\" r=\"2\" fill=\"black\"/>\n";
  }
}

void gripper(std::ostringstream& s, const SceneDescription& scene, const Pose2& pose, const SvgTransform& t,
             const char* cls, const char* color, const char* extra) {
  for (const auto& poly : gripper_polygons(scene.gripper, pose))
    s << "<polygon class=\"" << cls << "\" points=\""
      << points({poly.vertices.begin(), poly.vertices.end()}, t) << "\" fill=\"" << color << "\" " << extra
      << "/>\n";
  const Vec2 c = t.to_pixel(pose.position());
  s << "<circle class=\"" << cls << "-origin\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"2\" fill=\""
    << color << "\"/>\n";
}

const SystemState& state_at(const ExecutionLog& log, std::size_t k) {
  return k == 0 ? log.initial_true : log.steps[k - 1].true_state;
}

}  // namespace

Vec2 SvgTransform::to_pixel(Vec2 p) const {
  return {(p.x - world.min.x) * scale + margin, (world.max.y - p.y) * scale + margin};
}
Vec2 SvgTransform::to_world(Vec2 px) const {
  return {(px.x - margin) / scale + world.min.x, world.max.y - (px.y - margin) / scale};
}
double SvgTransform::width() const { return (world.max.x - world.min.x) * scale + 2.0 * margin; }
double SvgTransform::height() const { return (world.max.y - world.min.y) * scale + 2.0 * margin; }

std::string render_frame(const ExecutionLog& log, const SceneDescription& scene, std::size_t frame,
                         const SvgTransform& t) {
  std::ostringstream s;
  header(s, t);
  // Frame k > 0 shows the result of step k-1; frame 0 the start.
  const char* color = "#000000";
  const char* mode = "initial";
  if (frame > 0) {
    const bool mpc = log.steps[frame - 1].mode == StepMode::mpc;
    color = mpc ? kMpcColor : kOpenLoopColor;
    mode = mpc ? "mpc" : "open_loop";
  }
  s << "<rect class=\"mode\" data-mode=\"" << mode << "\" x=\"2\" y=\"2\" width=\"" << fmt(t.width() - 4)
    << "\" height=\"" << fmt(t.height() - 4) << "\" fill=\"none\" stroke=\"" << color
    << "\" stroke-width=\"4\"/>\n";
  scene_static(s, scene, t);
  if (frame < log.planned_states.size()) {
    const SystemState& planned = log.planned_states[frame];
    objects(s, scene, planned, t, "planned", "fill-opacity=\"0.25\" stroke=\"#7f7f7f\" stroke-dasharray=\"3,2\"");
    gripper(s, scene, planned.robot, t, "planned-gripper", kPlannedColor, "fill-opacity=\"0.25\"");
  }
  const SystemState& state = state_at(log, frame);
  objects(s, scene, state, t, "object", "stroke=\"black\"");
  gripper(s, scene, state.robot, t, "gripper", color, "fill-opacity=\"0.8\"");
  s << "<text x=\"" << fmt(t.margin) << "\" y=\"" << fmt(t.margin - 6) << "\" font-size=\"12\">"
    << to_string(log.method) << " step " << frame << " / " << log.steps.size() << " (" << mode << ")</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string render_summary(const ExecutionLog& log, const SceneDescription& scene, const SvgTransform& t) {
  std::ostringstream s;
  header(s, t);
  scene_static(s, scene, t);
  objects(s, scene, log.initial_true, t, "initial", "fill-opacity=\"0.3\" stroke=\"#999999\"");
  if (!log.planned_states.empty()) {
    std::vector<Vec2> planned;
    for (const SystemState& p : log.planned_states) planned.push_back(p.robot.position());
    s << "<polyline class=\"planned-path\" points=\"" << points(planned, t)
      << "\" fill=\"none\" stroke=\"" << kPlannedColor << "\" stroke-dasharray=\"5,3\" stroke-width=\"2\"/>\n";
  }
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    const Vec2 a = state_at(log, k).robot.position();
    const Vec2 b = log.steps[k].true_state.robot.position();
    const bool mpc = log.steps[k].mode == StepMode::mpc;
    const Vec2 pa = t.to_pixel(a), pb = t.to_pixel(b);
    s << "<line class=\"realized-path\" data-mode=\"" << (mpc ? "mpc" : "open_loop") << "\" x1=\"" << fmt(pa.x)
      << "\" y1=\"" << fmt(pa.y) << "\" x2=\"" << fmt(pb.x) << "\" y2=\"" << fmt(pb.y) << "\" stroke=\""
      << (mpc ? kMpcColor : kOpenLoopColor) << "\" stroke-width=\"3\"/>\n";
  }
  const SystemState& final_state = state_at(log, log.steps.size());
  objects(s, scene, final_state, t, "object", "stroke=\"black\"");
  gripper(s, scene, final_state.robot, t, "gripper", "#333333", "fill-opacity=\"0.8\"");
  s << "<text x=\"" << fmt(t.margin) << "\" y=\"" << fmt(t.margin - 6) << "\" font-size=\"12\">"
    << to_string(log.method) << ": " << (log.success ? "success" : "failure") << ", " << log.open_loop_steps
    << " open-loop (red) / " << log.mpc_steps << " MPC (blue) steps</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> render_trace(const ExecutionLog& log, const SceneDescription& scene,
                                                const std::filesystem::path& dir) {
  SvgTransform t;
  t.world = scene.boundary;
  std::vector<std::filesystem::path> out;
  for (std::size_t k = 0; k <= log.steps.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.svg", k);
    out.push_back(dir / name);
    write_text_file(out.back(), render_frame(log, scene, k, t));
  }
  out.push_back(dir / "summary.svg");
  write_text_file(out.back(), render_summary(log, scene, t));
  return out;
}

}  // namespace contraplan
