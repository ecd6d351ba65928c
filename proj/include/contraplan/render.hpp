#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "contraplan/executor.hpp"

namespace contraplan {

/// World metres to SVG pixels: x grows right, y grows up in the world and
/// down on the page.
struct SvgTransform {
  Rect world;
  double scale = 1000.0;
  double margin = 20.0;

  Vec2 to_pixel(Vec2 p) const;
  Vec2 to_world(Vec2 pixel) const;
  double width() const;
  double height() const;
};

/// Frame k shows the true state after k steps, the planned state when one
/// exists, and a border colored by how step k was executed.
std::string render_frame(const ExecutionLog& log, const SceneDescription& scene, std::size_t frame,
                         const SvgTransform& transform);
/// Realized and planned paths of the gripper and target over the whole run.
std::string render_summary(const ExecutionLog& log, const SceneDescription& scene, const SvgTransform& transform);

/// Writes frame_000.svg .. frame_<steps>.svg and summary.svg into dir.
std::vector<std::filesystem::path> render_trace(const ExecutionLog& log, const SceneDescription& scene,
                                                const std::filesystem::path& dir);

}  // namespace contraplan
