#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "random_states.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/kinematics.hpp"

namespace vl = vortexlab;
using vl::testing::Sampler;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TEST(SingleVortex, NodeAndPhase) {
  const vl::Point2 node{0.3, -0.2};
  EXPECT_EQ(std::abs(vl::single_vortex(1.0, node, 1, node)), 0.0);
  const double d = 1e-4;
  const double near = std::norm(vl::single_vortex(1.0, node, 1, {node.x + d, node.y}));
  EXPECT_NEAR(near / (d * d), std::exp(-(0.3 + d) * (0.3 + d) - 0.04), 1e-3);
  for (int eps : {1, -1}) {
    for (double theta : {0.3, 1.1, 2.5}) {
      const vl::Point2 r{node.x + 0.5 * std::cos(theta), node.y + 0.5 * std::sin(theta)};
      EXPECT_NEAR(std::arg(vl::single_vortex(2.0, node, eps, r)), eps * theta, 1e-14);
    }
  }
}

TEST(PhaseVelocity, EastOfNodePointsNorth) {
  const vl::Point2 node{0.0, 0.0};
  const auto psi = vl::single_vortex_field(1.0, node, 1);
  for (double dist : {0.05, 0.1, 0.3}) {
    const auto pv = vl::phase_and_velocity(psi, {dist, 0.0});
    EXPECT_NEAR(pv.u.x, 0.0, 1e-8);
    EXPECT_NEAR(pv.u.y, 1.0 / dist, 1e-6 / dist);
  }
  EXPECT_THROW(vl::phase_and_velocity(psi, node), vl::Error);
  try {
    vl::phase_and_velocity(psi, node);
  } catch (const vl::Error& e) {
    EXPECT_EQ(e.kind(), vl::ErrorKind::NodalPointSingular);
  }
}

TEST(PhaseVelocity, CurlFreeAwayFromNodes) {
  Sampler s(151);
  const auto psi = vl::single_vortex_field(1.0, {0.2, 0.1}, -1);
  for (int i = 0; i < 50; ++i) {
    const vl::Point2 r{s.uniform(-2, 2), s.uniform(-2, 2)};
    if (std::hypot(r.x - 0.2, r.y - 0.1) < 0.2) continue;
    EXPECT_LT(std::abs(vl::velocity_curl(psi, r)), 1e-6);
  }
}

TEST(Circulation, Quantized) {
  for (int eps : {1, -1}) {
    const vl::Point2 node{0.1, -0.3};
    const auto psi = vl::single_vortex_field(1.0, node, eps);
    EXPECT_NEAR(vl::circulation(psi, vl::circle_loop(node, 1.0)), kTwoPi * eps, 1e-9);
    EXPECT_NEAR(vl::circulation(psi, vl::circle_loop(node, 1.0, 64, true)), -kTwoPi * eps,
                1e-9);
    EXPECT_NEAR(vl::circulation(psi, vl::circle_loop({2.0, 2.0}, 0.5)), 0.0, 1e-9);
    // Coarse loops force edge subdivision.
    EXPECT_NEAR(vl::circulation(psi, vl::circle_loop(node, 0.01, 3)), kTwoPi * eps, 1e-9);
  }
}

TEST(Circulation, LoopThroughNode) {
  const auto psi = vl::single_vortex_field(1.0, {0.0, 0.0}, 1);
  const std::vector<vl::Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  try {
    vl::circulation(psi, square);
    FAIL();
  } catch (const vl::Error& e) {
    EXPECT_EQ(e.kind(), vl::ErrorKind::LoopThroughNode);
  }
}

TEST(Winding, PlaquettesTelescope) {
  const auto psi = vl::single_vortex_field(1.0, {0.31, -0.17}, -1);
  const auto map = vl::plaquette_windings(psi, {-1, 1, -1, 1}, 64);
  EXPECT_EQ(map.total(), -1);
  EXPECT_EQ(map.boundary, map.total());
  const auto outside = vl::plaquette_windings(psi, {1, 2, 1, 2}, 16);
  EXPECT_EQ(outside.total(), 0);
  EXPECT_EQ(outside.boundary, 0);
}

TEST(FindNodes, SingleVortex) {
  const vl::Point2 node{0.3, -0.2};
  const auto psi = vl::single_vortex_field(1.0, node, -1);
  const auto nodes = vl::find_nodes(psi, {-1, 1, -1, 1});
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_EQ(nodes[0].charge, -1);
  EXPECT_NEAR(nodes[0].position.x, node.x, 1e-6);
  EXPECT_NEAR(nodes[0].position.y, node.y, 1e-6);
  EXPECT_LT(std::norm(psi(nodes[0].position)), 1e-20 * std::norm(psi({0.5, 0.5})));
  EXPECT_NEAR(vl::circulation(psi, vl::circle_loop(nodes[0].position, 0.1)), -kTwoPi, 1e-9);
  EXPECT_TRUE(vl::find_nodes(psi, {1, 2, 1, 2}, 32).empty());
}

TEST(FindNodes, AnsatzSliceNodesCarryUnitCirculation) {
  for (double lambda : {0.0, 0.2}) {
    const auto p = vl::ModelParams::create(lambda, 1.0);
    const vl::VortexState q{0.4, 0.1, -0.3, 0.5};
    const auto psi = vl::ansatz_slice(p, q, {0.2, -0.7});
    const auto nodes = vl::find_nodes(psi, {-2, 2, -2, 2}, 128);
    ASSERT_FALSE(nodes.empty());
    if (lambda == 0.0) {
      ASSERT_EQ(nodes.size(), 1u);
      EXPECT_NEAR(nodes[0].position.x, q.X1, 1e-6);
      EXPECT_NEAR(nodes[0].position.y, q.Y1, 1e-6);
    }
    for (const auto& n : nodes) {
      EXPECT_NEAR(vl::circulation(psi, vl::circle_loop(n.position, 1e-3)), kTwoPi * n.charge,
                  1e-9);
    }
  }
}
