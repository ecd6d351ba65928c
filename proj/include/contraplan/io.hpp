#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "contraplan/executor.hpp"
#include "contraplan/graph.hpp"
#include "contraplan/metrics.hpp"
#include "contraplan/scene.hpp"
#include "contraplan/state.hpp"

// JSON encodings. Poses are [x, y, theta], vectors [x, y], twists
// [vx, vy, omega], controls [vx, vy, omega]. Units are meters, kilograms,
// radians and seconds.
namespace contraplan {

using Json = nlohmann::json;

void to_json(Json& j, const Vec2& v);
void from_json(const Json& j, Vec2& v);
void to_json(Json& j, const Pose2& p);
void from_json(const Json& j, Pose2& p);
void to_json(Json& j, const Twist2& t);
void from_json(const Json& j, Twist2& t);
void to_json(Json& j, const Control& u);
void from_json(const Json& j, Control& u);
void to_json(Json& j, const Rect& r);
void from_json(const Json& j, Rect& r);
void to_json(Json& j, const ObjectSpec& o);
void from_json(const Json& j, ObjectSpec& o);
void to_json(Json& j, const Wall& w);
void from_json(const Json& j, Wall& w);
void to_json(Json& j, const GripperGeometry& g);
void from_json(const Json& j, GripperGeometry& g);
/// The inner "scene" object of a scene file.
void to_json(Json& j, const SceneDescription& s);
void from_json(const Json& j, SceneDescription& s);
void to_json(Json& j, const ObjectState& o);
void from_json(const Json& j, ObjectState& o);
void to_json(Json& j, const SystemState& s);
void from_json(const Json& j, SystemState& s);
void to_json(Json& j, const DivergenceProfile& p);
void from_json(const Json& j, DivergenceProfile& p);
void to_json(Json& j, const Segment& s);
void from_json(const Json& j, Segment& s);
void to_json(Json& j, const SegmentPlan& p);
void from_json(const Json& j, SegmentPlan& p);

/// Writes the plan's segments together with every graph edge for audit.
Json segment_plan_json(const SegmentPlan& plan, const RobustnessGraph& graph);

/// Reads {"scene": {...}} and validates it.
SceneDescription load_scene(const std::filesystem::path& path);
void save_scene(const SceneDescription& scene, const std::filesystem::path& path);

/// JSON lines: a header record, one record per step, then a summary record.
void write_log(const ExecutionLog& log, std::ostream& out);
ExecutionLog read_log(std::istream& in);
void save_log(const ExecutionLog& log, const std::filesystem::path& path);
ExecutionLog load_log(const std::filesystem::path& path);

/// Reads a whole JSON document; errors carry the path.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace contraplan
