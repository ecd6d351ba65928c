#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "contraplan/errors.hpp"
#include "contraplan/physics.hpp"
#include "support.hpp"

namespace contraplan {
namespace {

using test::Gen;

TEST(Step, FreeSpaceKinematicMove) {
  const SceneDescription scene = test::open_scene();
  const PlanarWorld world(scene, nominal_realization(scene));
  const SystemState x0 = scene.initial_state();
  const SystemState x1 = world.step(x0, {0.1, 0.0, 0.0}, 0.2);
  EXPECT_NEAR(x1.robot.x, 0.02, 1e-12);
  EXPECT_EQ(x1.robot.y, 0.0);
  EXPECT_EQ(x1.robot.theta, 0.0);
  EXPECT_EQ(x1.objects, x0.objects);
}

TEST(Step, RestIsAFixedPoint) {
  Gen gen(11);
  for (int k = 0; k < 10; ++k) {
    const SceneDescription scene = gen.scene();
    const PlanarWorld world(scene, nominal_realization(scene));
    const SystemState x0 = scene.initial_state();
    EXPECT_EQ(world.step(x0, {}, 0.2), x0);
  }
}

TEST(Step, PalmPushMatchesFinerSubsteps) {
  const SceneDescription scene = test::palm_push_scene();
  PhysicsSettings coarse;
  PhysicsSettings fine = coarse;
  fine.substeps = coarse.substeps * 10;
  const PlanarWorld a(scene, nominal_realization(scene), coarse);
  const PlanarWorld b(scene, nominal_realization(scene), fine);
  const ControlSequence u(5, Control{0.05, 0.0, 0.0});
  const Trajectory xa = rollout(a, scene.initial_state(), u, 0.2);
  const Trajectory xb = rollout(b, scene.initial_state(), u, 0.2);
  const Vec2 start = scene.objects[0].nominal_pose.position();
  const Vec2 da = xa.back().objects[0].pose.position() - start;
  const Vec2 db = xb.back().objects[0].pose.position() - start;
  EXPECT_GT(da.x, 0.04);  // displaced along the push
  EXPECT_NEAR(da.x, db.x, 1e-3);
  EXPECT_NEAR(da.y, db.y, 1e-3);
}

TEST(Step, RejectsNonFiniteInput) {
  const SceneDescription scene = test::open_scene();
  const PlanarWorld world(scene, nominal_realization(scene));
  SystemState x = scene.initial_state();
  EXPECT_THROW(world.step(x, {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}, 0.2), NumericDomainError);
  x.objects[0].pose.x = std::numeric_limits<double>::infinity();
  EXPECT_THROW(world.step(x, {}, 0.2), NumericDomainError);
}

TEST(Rollout, ZeroControlsFromRest) {
  Gen gen(12);
  const SceneDescription scene = gen.scene();
  const PlanarWorld world(scene, nominal_realization(scene));
  const Trajectory x = rollout(world, scene.initial_state(), ControlSequence(5), 0.2);
  ASSERT_EQ(x.size(), 6u);
  for (const SystemState& s : x) EXPECT_EQ(s, x.front());
}

TEST(Rollout, Deterministic) {
  Gen gen(13);
  for (int k = 0; k < 20; ++k) {
    const SceneDescription scene = gen.scene();
    const WorldRealization w = sample_world_realization(scene, {}, gen.rng());
    const PlanarWorld world(scene, w);
    const ControlSequence u = gen.controls(5, 0.6);
    EXPECT_EQ(rollout(world, scene.initial_state(), u, 0.2), rollout(world, scene.initial_state(), u, 0.2));
  }
}

TEST(Rollout, FreeSpaceConstantVelocity) {
  const SceneDescription scene = test::open_scene();
  const PlanarWorld world(scene, nominal_realization(scene));
  const Trajectory x = rollout(world, scene.initial_state(), ControlSequence(5, Control{0.1, 0.0, 0.0}), 0.2);
  EXPECT_NEAR(x.back().robot.x, 0.1, 1e-12);
}

TEST(Realization, SamplesInsideTableBounds) {
  Gen gen(14);
  const SceneDescription scene = gen.scene(6, 10);
  ParameterBounds b;
  b.mass = {0.5, 0.8};
  b.friction = {0.2, 0.4};
  for (int k = 0; k < 100; ++k) {
    const WorldRealization w = sample_world_realization(scene, b, gen.rng());
    ASSERT_EQ(w.objects.size(), scene.objects.size());
    for (const ObjectParams& p : w.objects) {
      EXPECT_GE(p.mass, 0.5);
      EXPECT_LE(p.mass, 0.8);
      EXPECT_GE(p.friction, 0.2);
      EXPECT_LE(p.friction, 0.4);
      EXPECT_GE(p.size_scale, b.size_scale.lower);
      EXPECT_LE(p.size_scale, b.size_scale.upper);
    }
  }
}

TEST(Realization, DegenerateMassBounds) {
  Gen gen(15);
  const SceneDescription scene = gen.scene();
  ParameterBounds b;
  b.mass = {0.6, 0.6};
  const WorldRealization w = sample_world_realization(scene, b, gen.rng());
  for (const ObjectParams& p : w.objects) EXPECT_EQ(p.mass, 0.6);
}

TEST(Realization, SameSeedSameRealization) {
  Gen gen(16);
  const SceneDescription scene = gen.scene();
  Rng a(99);
  Rng b(99);
  EXPECT_EQ(sample_world_realization(scene, {}, a), sample_world_realization(scene, {}, b));
}

TEST(Realization, DegenerateBoundsAtNominalEqualNominal) {
  Gen gen(17);
  SceneDescription scene = gen.scene();
  for (ObjectSpec& o : scene.objects) {
    o.nominal_mass = 0.7;
    o.nominal_friction = 0.25;
  }
  ParameterBounds b;
  b.mass = {0.7, 0.7};
  b.friction = {0.25, 0.25};
  b.size_scale = {1.0, 1.0};
  EXPECT_EQ(sample_world_realization(scene, b, gen.rng()).objects, nominal_realization(scene).objects);
}

TEST(InitialStates, ZeroNoiseCopies) {
  Gen gen(18);
  const SceneDescription scene = gen.scene();
  const SystemState x0 = scene.initial_state();
  const auto samples = sample_initial_states(x0, {0.0, 0.0}, 7, gen.rng());
  ASSERT_EQ(samples.size(), 7u);
  for (const SystemState& s : samples) EXPECT_EQ(s, x0);
}

TEST(InitialStates, DefaultNoiseDistinctRobotFixed) {
  Gen gen(19);
  const SceneDescription scene = gen.scene();
  const SystemState x0 = scene.initial_state();
  const auto samples = sample_initial_states(x0, NoiseSpec{}, 4, gen.rng());
  std::set<double> xs;
  for (const SystemState& s : samples) {
    EXPECT_EQ(s.robot, x0.robot);
    EXPECT_EQ(s.robot_velocity, x0.robot_velocity);
    xs.insert(s.objects[0].pose.x);
    for (std::size_t i = 0; i < s.objects.size(); ++i) EXPECT_EQ(s.objects[i].velocity, x0.objects[i].velocity);
  }
  EXPECT_EQ(xs.size(), 4u);
}

TEST(InitialStates, SampleMeanConverges) {
  const SceneDescription scene = test::open_scene({0.3, 0.1});
  const SystemState x0 = scene.initial_state();
  Rng rng(20);
  const NoiseSpec noise;
  const auto samples = sample_initial_states(x0, noise, 10000, rng);
  double sum = 0.0;
  for (const SystemState& s : samples) sum += s.objects[0].pose.x;
  EXPECT_NEAR(sum / 10000.0, 0.3, 3.0 * noise.sigma_position / 100.0);
}

TEST(StaticCollision, CentredInEmptyShelf) {
  const SceneDescription scene = test::open_scene();
  EXPECT_FALSE(check_static_collision(scene, scene.initial_state()));
}

SceneDescription walled_scene() {
  SceneDescription scene = test::open_scene();
  scene.walls.push_back({{0.5, -0.5}, {0.5, 0.5}});
  return scene;
}

TEST(StaticCollision, OverlappingWall) {
  const SceneDescription scene = walled_scene();
  SystemState s = scene.initial_state();
  s.robot.x = 0.45;
  EXPECT_TRUE(check_static_collision(scene, s));
}

TEST(StaticCollision, TangentWallIsFree) {
  const SceneDescription scene = walled_scene();
  SystemState s = scene.initial_state();
  // Finger tips reach 0.07 m ahead of the gripper origin.
  s.robot.x = 0.5 - 0.07;
  ASSERT_EQ(s.robot.x + 0.07, 0.5);
  EXPECT_FALSE(check_static_collision(scene, s));
  s.robot.x = std::nextafter(s.robot.x, 1.0);
  s.robot.x += 1e-9;
  EXPECT_TRUE(check_static_collision(scene, s));
}

TEST(StaticCollision, OutsideBoundary) {
  const SceneDescription scene = test::open_scene();
  SystemState s = scene.initial_state();
  s.robot.y = 0.99;
  EXPECT_TRUE(check_static_collision(scene, s));
}

TEST(Topple, CentreLeavingBoundaryFreezes) {
  SceneDescription scene = test::palm_push_scene();
  scene.boundary = {{-0.1, -0.1}, {0.1, 0.1}};
  const PlanarWorld world(scene, nominal_realization(scene));
  const Trajectory x = rollout(world, scene.initial_state(), ControlSequence(6, Control{0.3, 0.0, 0.0}), 0.2);
  bool seen = false;
  Pose2 frozen;
  for (const SystemState& s : x) {
    if (seen) {
      EXPECT_TRUE(s.objects[0].toppled);
      EXPECT_EQ(s.objects[0].pose, frozen);
    } else if (s.objects[0].toppled) {
      seen = true;
      frozen = s.objects[0].pose;
    }
  }
  EXPECT_TRUE(seen);
}

// Properties over generated inputs.

TEST(PhysicsProperty, ToppledFlagsAreMonotone) {
  Gen gen(21);
  for (int k = 0; k < 40; ++k) {
    SceneDescription scene = gen.scene();
    scene.boundary.max.x = 0.45;  // shallow shelf so pushes topple things
    const PlanarWorld world(scene, sample_world_realization(scene, {}, gen.rng()));
    const Trajectory x = rollout(world, scene.initial_state(), gen.controls(5, 1.2), 0.2);
    for (std::size_t t = 1; t < x.size(); ++t)
      for (std::size_t i = 0; i < x[t].objects.size(); ++i)
        if (x[t - 1].objects[i].toppled) EXPECT_TRUE(x[t].objects[i].toppled);
  }
}

TEST(PhysicsProperty, AnglesStayWrapped) {
  Gen gen(22);
  for (int k = 0; k < 40; ++k) {
    const SceneDescription scene = gen.scene();
    const PlanarWorld world(scene, nominal_realization(scene));
    for (const SystemState& s : rollout(world, scene.initial_state(), gen.controls(5, 3.0), 0.2)) {
      EXPECT_GT(s.robot.theta, -std::numbers::pi);
      EXPECT_LE(s.robot.theta, std::numbers::pi);
      for (const ObjectState& o : s.objects) {
        EXPECT_GT(o.pose.theta, -std::numbers::pi);
        EXPECT_LE(o.pose.theta, std::numbers::pi);
      }
    }
  }
}

TEST(PhysicsProperty, FreeSpaceTranslationEquivariance) {
  Gen gen(23);
  for (int k = 0; k < 30; ++k) {
    const SceneDescription a = test::open_scene({0.9, 0.9});
    const Vec2 shift{gen.uniform(-0.3, 0.3), gen.uniform(-0.3, 0.3)};
    SceneDescription b = a;
    b.boundary.min += shift;
    b.boundary.max += shift;
    b.objects[0].nominal_pose.x += shift.x;
    b.objects[0].nominal_pose.y += shift.y;
    b.robot_start.x += shift.x;
    b.robot_start.y += shift.y;
    const ControlSequence u = gen.controls(5, 0.3);
    const Trajectory xa = rollout(PlanarWorld(a, nominal_realization(a)), a.initial_state(), u, 0.2);
    const Trajectory xb = rollout(PlanarWorld(b, nominal_realization(b)), b.initial_state(), u, 0.2);
    for (std::size_t t = 0; t < xa.size(); ++t) {
      EXPECT_NEAR(xb[t].robot.x - xa[t].robot.x, shift.x, 1e-12);
      EXPECT_NEAR(xb[t].robot.y - xa[t].robot.y, shift.y, 1e-12);
      EXPECT_NEAR(xb[t].robot.theta, xa[t].robot.theta, 1e-12);
    }
  }
}

TEST(PhysicsProperty, PushedDiscMovesAlongContactNormal) {
  Gen gen(24);
  for (int k = 0; k < 50; ++k) {
    // Disc in front of the palm, gripper approaching at a random heading
    // within the finger opening.
    const SceneDescription scene = test::palm_push_scene(0.0005, gen.uniform(0.012, 0.03));
    const PlanarWorld world(scene, nominal_realization(scene));
    const double speed = gen.uniform(0.05, 0.5);
    const double heading = gen.uniform(-0.3, 0.3);
    const Control u{speed * std::cos(heading), speed * std::sin(heading), 0.0};
    PhysicsSettings one;
    const double h = one.control_dt / one.substeps;
    const SystemState x1 = world.step(scene.initial_state(), u, h);
    const ObjectState& o = x1.objects[0];
    // Palm contact normal is +x in the gripper frame.
    EXPECT_GT(o.velocity.vx, 0.0);
    EXPECT_GE(o.pose.x - scene.objects[0].nominal_pose.x, -1e-12);
  }
}

}  // namespace
}  // namespace contraplan
