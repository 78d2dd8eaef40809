#include <gtest/gtest.h>

#include <cmath>

#include "ocraug/config.hpp"
#include "ocraug/lighting.hpp"
#include "ocraug/pipeline.hpp"
#include "ocraug/random.hpp"
#include "ocraug/render.hpp"
#include "synth.hpp"

using namespace ocraug;

namespace {

const Vec3 kToCamera(0, 0, -1);  // facing normal of a frontal plane

Lighting sun_only(Vec3 direction, double irradiance, double ambient) {
  Lighting l;
  l.lights.push_back(SunLight{direction.normalized(), irradiance});
  l.ambient = ambient;
  return l;
}

struct FrontalSetup {
  Intrinsics k;
  PlanePose plane;
  Homography h;
};

FrontalSetup frontal(SourceDims dims, double depth = 2.0, double scale = 0.001) {
  FrontalSetup s;
  s.k.fx = s.k.fy = 1000.0;
  s.k.width = 400;
  s.k.height = 200;
  s.k.cx = 200.0;
  s.k.cy = 100.0;
  s.plane = billboard_pose(Vec3::Zero(), Vec3(0, 0, depth), dims, scale);
  s.h = plane_homography(s.k, RigidPose{}, s.plane, dims);
  return s;
}

}  // namespace

TEST(Shading, HeadOnSunIsFullyLit) {
  const Lighting l = sun_only(Vec3(0, 0, 1), 1.0, 0.0);
  EXPECT_DOUBLE_EQ(shading_factor(l, Vec3(0.3, -0.1, 2), kToCamera), 1.0);
  EXPECT_DOUBLE_EQ(shading_factor(l, Vec3(-5, 4, 9), kToCamera), 1.0);
}

TEST(Shading, GrazingSunLeavesOnlyAmbient) {
  const Lighting l = sun_only(Vec3(1, 0, 0), 1.0, 0.1);
  EXPECT_DOUBLE_EQ(shading_factor(l, Vec3(0, 0, 2), kToCamera), 0.1);
}

TEST(Shading, SunBehindThePlaneContributesNothing) {
  const Lighting l = sun_only(Vec3(0, 0, -1), 1.0, 0.2);
  EXPECT_DOUBLE_EQ(shading_factor(l, Vec3(0, 0, 2), kToCamera), 0.2);
}

TEST(Shading, PointLightInverseSquare) {
  const Vec3 p(0, 0, 2);
  for (double r : {0.5, 1.0, 1.7, 3.0}) {
    Lighting l;
    l.ambient = 0.0;
    l.lights.push_back(PointLight{p + r * kToCamera, 0.2});
    const ShadingModel near_model(l);
    EXPECT_NEAR(near_model.factor(p, kToCamera), std::min(1.0, 0.2 / (r * r)), 1e-15);

    Lighting far = l;
    std::get<PointLight>(far.lights[0]).position = p + 2 * r * kToCamera;
    const double ratio = near_model.unclamped(p, kToCamera) / ShadingModel(far).unclamped(p, kToCamera);
    EXPECT_NEAR(ratio, 4.0, 1e-12);
  }
}

TEST(Shading, SpotConeGatesAPointLight) {
  const Vec3 p(0, 0, 2);
  Lighting spot;
  spot.ambient = 0.0;
  spot.lights.push_back(SpotLight{p + kToCamera, -kToCamera, 30.0, 0.2, 0.5});
  Lighting point;
  point.ambient = 0.0;
  point.lights.push_back(PointLight{p + kToCamera, 0.5});
  // On the axis of the cone the spot equals the point light.
  EXPECT_NEAR(shading_factor(spot, p, kToCamera), shading_factor(point, p, kToCamera), 1e-15);
  // 40 degrees off-axis lies outside the 30 degree cone.
  const Vec3 off = p + Vec3(std::tan(40.0 * M_PI / 180.0), 0, 0);
  EXPECT_EQ(shading_factor(spot, off, kToCamera), 0.0);
  // Inside the blend band the spot is strictly dimmer than the point.
  const Vec3 edge = p + Vec3(std::tan(28.0 * M_PI / 180.0), 0, 0);
  const double s = shading_factor(spot, edge, kToCamera);
  EXPECT_GT(s, 0.0);
  EXPECT_LT(s, shading_factor(point, edge, kToCamera));
}

TEST(Shading, SmallAreaLightApproachesAPointLight) {
  const Vec3 p(0, 0, 2);
  Lighting area;
  area.ambient = 0.0;
  area.lights.push_back(AreaLight{p + 2.0 * kToCamera, -kToCamera, 0.01, 0.01, 0.3, 16});
  Lighting point;
  point.ambient = 0.0;
  point.lights.push_back(PointLight{p + 2.0 * kToCamera, 0.3});
  EXPECT_NEAR(shading_factor(area, p, kToCamera), shading_factor(point, p, kToCamera), 1e-5);
}

TEST(Shading, JitteredAreaSamplesAreReproducible) {
  Lighting l;
  l.ambient = 0.05;
  l.lights.push_back(AreaLight{Vec3(0.2, -0.3, 1), Vec3(0, 0.3, 1).normalized(), 0.5, 0.3, 1.0, 9});
  const ShadingModel a(l, RandomStream(4));
  const ShadingModel b(l, RandomStream(4));
  const ShadingModel c(l, RandomStream(5));
  const Vec3 q(0.01, 0.02, 2);
  EXPECT_EQ(a.factor(q, kToCamera), b.factor(q, kToCamera));
  EXPECT_NE(a.unclamped(q, kToCamera), c.unclamped(q, kToCamera));
}

TEST(Render, WhiteSourceUnderAmbientQuarterIs64) {
  const Raster white(100, 20, 1, 255);
  const FrontalSetup s = frontal({100, 20}, 2.0, 0.001);
  const ShadingModel shading(sun_only(Vec3(1, 0, 0), 1.0, 0.25));
  const Raster out = warp_and_shade(white, s.h, s.plane, shading, s.k.width, s.k.height);
  // Quad spans [175, 225) x [95, 105); its interior pixels are fully covered.
  for (int y = 96; y < 104; ++y) {
    for (int x = 176; x < 224; ++x) ASSERT_EQ(out.at(x, y), 64) << x << "," << y;
  }
}

TEST(Render, BackgroundOutsideQuadIsBlack) {
  const AugmentConfig config = default_config();
  const Raster src = synth::render_text("outside pixels", 32, 3);
  for (int i = 0; i < 6; ++i) {
    RandomStream rng = derive_rng(1, "bg", static_cast<std::uint64_t>(i));
    const SceneInstance scene = sample_scene(config, rng);
    const SceneFrame f = scene_frame(scene, {src.width, src.height}, i);
    const AugmentedFrame frame = render_frame(src, scene, f);
    ASSERT_EQ(frame.image.width, config.render_width);
    ASSERT_EQ(frame.image.height, config.render_height);
    ASSERT_EQ(frame.image.channels, 3);
    for (int y = 0; y < frame.image.height; y += 3) {
      for (int x = 0; x < frame.image.width; x += 3) {
        // Signed distance to each edge; positive on the inner side.
        const Vec2 p(x + 0.5, y + 0.5);
        double inside_dist = 1e9;
        bool inside = true;
        for (int e = 0; e < 4; ++e) {
          const Vec2 a = frame.quad.corners[static_cast<std::size_t>(e)];
          const Vec2 b = frame.quad.corners[static_cast<std::size_t>((e + 1) % 4)];
          const Vec2 d = b - a;
          const double cross = d.x() * (p.y() - a.y()) - d.y() * (p.x() - a.x());
          const double signed_dist = cross / d.norm();
          if (signed_dist < 0) inside = false;
          inside_dist = std::min(inside_dist, signed_dist);
        }
        if (!inside && inside_dist < -1.0) {
          for (int c = 0; c < 3; ++c) ASSERT_EQ(frame.image.at(x, y, c), 0) << x << "," << y;
        }
      }
    }
  }
}

TEST(Render, MoreAmbientNeverDarkens) {
  const Raster src = synth::render_text("monotone", 24);
  const FrontalSetup s = frontal({src.width, src.height}, 1.0, 0.0005);
  Raster prev;
  for (double ambient : {0.0, 0.1, 0.3, 0.6, 1.0}) {
    const ShadingModel shading(sun_only(Vec3(0.3, 0.2, 1), 0.5, ambient));
    const Raster out = warp_and_shade(src, s.h, s.plane, shading, s.k.width, s.k.height);
    if (!prev.empty()) {
      for (std::size_t i = 0; i < out.data.size(); ++i) ASSERT_GE(out.data[i], prev.data[i]);
    }
    prev = out;
  }
}

TEST(Render, SingleSunShadingIsSpatiallyConstant) {
  const Raster white(120, 30, 1, 255);
  const FrontalSetup s = frontal({120, 30}, 1.5, 0.001);
  const ShadingModel shading(sun_only(Vec3(0.2, 0.1, 1), 0.7, 0.1));
  const Raster out = warp_and_shade(white, s.h, s.plane, shading, s.k.width, s.k.height);
  const Quad2D q = project_quad(s.h, {120, 30});
  int lo = 255, hi = 0;
  for (int y = static_cast<int>(q.corners[0].y()) + 1; y < static_cast<int>(q.corners[2].y()) - 1; ++y) {
    for (int x = static_cast<int>(q.corners[0].x()) + 1; x < static_cast<int>(q.corners[2].x()) - 1; ++x) {
      lo = std::min<int>(lo, out.at(x, y));
      hi = std::max<int>(hi, out.at(x, y));
    }
  }
  EXPECT_LE(hi - lo, 1);
  EXPECT_GT(lo, 0);
}

TEST(Render, NeverBrighterThanTheSampledSource) {
  const Raster src = synth::render_text("energy bound", 28);
  const FrontalSetup s = frontal({src.width, src.height}, 1.2, 0.0007);
  Lighting bright = sun_only(Vec3(0, 0, 1), 5.0, 0.9);
  bright.lights.push_back(PointLight{Vec3(0, 0, 0.5), 10.0});
  const Raster out = warp_and_shade(src, s.h, s.plane, ShadingModel(bright), s.k.width, s.k.height);
  const Raster unlit = warp_and_shade(src, s.h, s.plane, ShadingModel(sun_only(Vec3(0, 0, 1), 1.0, 0.0)),
                                      s.k.width, s.k.height);
  EXPECT_EQ(out, unlit);  // factor clamps to 1 in both
}

TEST(Render, IsDeterministic) {
  const AugmentConfig config = default_config();
  const Raster src = synth::render_text("same bytes", 32);
  RandomStream r1 = derive_rng(3, "det", 0);
  RandomStream r2 = derive_rng(3, "det", 0);
  const SceneInstance a = sample_scene(config, r1);
  const SceneInstance b = sample_scene(config, r2);
  const auto fa = render_frame(src, a, scene_frame(a, {src.width, src.height}, 4));
  const auto fb = render_frame(src, b, scene_frame(b, {src.width, src.height}, 4));
  EXPECT_EQ(fa.image, fb.image);
}
