#pragma once

// Hydrodynamic fields of single-particle wavefunctions: phase, velocity
// u = grad S, circulation by phase unwrapping, and nodal-point detection
// from plaquette winding numbers.

#include <functional>
#include <vector>

#include "vortexlab/model.hpp"

namespace vortexlab {

using WaveFunction = std::function<Complex(Point2)>;

struct VortexCharge {
  Point2 position;
  int charge = 0;  ///< winding number
};

/// ((x - X) + i eps (y - Y)) exp(-alpha (x^2 + y^2) / 2). The real envelope
/// makes the function normalizable without moving its phase.
Complex single_vortex(double alpha, Point2 node, int eps, Point2 r);

WaveFunction single_vortex_field(double alpha, Point2 node, int eps);

/// r1 -> Phi(r1, r2) with the second particle held at r2.
WaveFunction ansatz_slice(const ModelParams& params, const VortexState& q, Point2 r2);

struct PhaseVelocity {
  double phase = 0.0;  ///< principal value in (-pi, pi]
  Point2 u;            ///< grad S = Im(grad Psi / Psi)
};

/// Phase and velocity with fourth-order central differences for grad Psi.
/// Throws NodalPointSingular if |Psi(r)| < 1e-300.
PhaseVelocity phase_and_velocity(const WaveFunction& psi, Point2 r, double step = 1e-4);

/// d u_y / dx - d u_x / dy by fourth-order differences of the velocity.
double velocity_curl(const WaveFunction& psi, Point2 r, double step = 1e-3);

/// Sum of principal-value phase increments around a closed polyline (the
/// last vertex connects back to the first). Edges are subdivided until
/// every increment is resolved. Throws LoopThroughNode when the loop
/// passes within roundoff of a zero.
double circulation(const WaveFunction& psi, const std::vector<Point2>& loop);

/// Counter-clockwise circle, or clockwise when requested.
std::vector<Point2> circle_loop(Point2 center, double radius, int segments = 64,
                                bool clockwise = false);

struct SearchBox {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
};

/// Integer windings of every grid plaquette, plus the winding of the box
/// boundary built from the same vertex phases.
struct WindingMap {
  int cells = 0;                 ///< plaquettes per side
  std::vector<int> plaquettes;   ///< row-major, index iy * cells + ix
  int boundary = 0;
  int total() const noexcept;
};

WindingMap plaquette_windings(const WaveFunction& psi, const SearchBox& box, int cells);

/// Locates every plaquette with nonzero winding, narrows it by quadrant
/// bisection on the winding and polishes with Newton steps on Psi = 0.
std::vector<VortexCharge> find_nodes(const WaveFunction& psi, const SearchBox& box,
                                     int cells = 256, double tolerance = 1e-10);

}  // namespace vortexlab
