#include "vortexlab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTiny = 1e-300;

double wrap(double d) { return std::remainder(d, kTwoPi); }

double phase_at(const WaveFunction& psi, Point2 p) {
  const Complex v = psi(p);
  if (std::abs(v) < kTiny) {
    std::ostringstream msg;
    msg << "loop passes through a node near (" << p.x << ", " << p.y << ")";
    throw Error(ErrorKind::LoopThroughNode, msg.str());
  }
  return std::arg(v);
}

// Phase increment along the straight segment p -> q, subdividing until the
// increment of each piece agrees with the sum over its two halves.
double segment_increment(const WaveFunction& psi, Point2 p, Point2 q, double phase_p,
                         double phase_q, int depth) {
  const double whole = wrap(phase_q - phase_p);
  const Point2 m{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
  const double phase_m = phase_at(psi, m);
  const double first = wrap(phase_m - phase_p);
  const double second = wrap(phase_q - phase_m);
  if (std::abs(whole) < 0.25 * std::numbers::pi &&
      std::abs(first + second - whole) < 1e-12) {
    return whole;
  }
  if (depth > 60) {
    throw Error(ErrorKind::LoopThroughNode,
                "phase along loop cannot be resolved; loop touches a node");
  }
  return segment_increment(psi, p, m, phase_p, phase_m, depth + 1) +
         segment_increment(psi, m, q, phase_m, phase_q, depth + 1);
}

int corner_winding(double p00, double p10, double p11, double p01) {
  const double sum = wrap(p10 - p00) + wrap(p11 - p10) + wrap(p01 - p11) + wrap(p00 - p01);
  return static_cast<int>(std::lround(sum / kTwoPi));
}

int cell_winding(const WaveFunction& psi, double x0, double x1, double y0, double y1) {
  return corner_winding(std::arg(psi({x0, y0})), std::arg(psi({x1, y0})),
                        std::arg(psi({x1, y1})), std::arg(psi({x0, y1})));
}

// Complex 4th-order central difference of psi along a unit direction.
Complex derivative(const WaveFunction& psi, Point2 r, Point2 dir, double h) {
  auto at = [&](double s) { return psi({r.x + s * dir.x, r.y + s * dir.y}); };
  return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
}

Point2 newton_polish(const WaveFunction& psi, Point2 start, double scale, double tolerance) {
  Point2 r = start;
  const double h = 1e-7 * std::max(scale, 1e-3);
  for (int it = 0; it < 50; ++it) {
    const Complex f = psi(r);
    const Complex fx = (psi({r.x + h, r.y}) - psi({r.x - h, r.y})) / (2.0 * h);
    const Complex fy = (psi({r.x, r.y + h}) - psi({r.x, r.y - h})) / (2.0 * h);
    const double det = fx.real() * fy.imag() - fy.real() * fx.imag();
    if (det == 0.0) break;
    const double dx = (fy.imag() * f.real() - fy.real() * f.imag()) / det;
    const double dy = (-fx.imag() * f.real() + fx.real() * f.imag()) / det;
    r.x -= dx;
    r.y -= dy;
    if (std::hypot(dx, dy) < 1e-3 * tolerance) break;
  }
  return r;
}

}  // namespace

Complex single_vortex(double alpha, Point2 node, int eps, Point2 r) {
  const double envelope = std::exp(-0.5 * alpha * (r.x * r.x + r.y * r.y));
  return Complex(r.x - node.x, eps * (r.y - node.y)) * envelope;
}

WaveFunction single_vortex_field(double alpha, Point2 node, int eps) {
  return [=](Point2 r) { return single_vortex(alpha, node, eps, r); };
}

WaveFunction ansatz_slice(const ModelParams& params, const VortexState& q, Point2 r2) {
  return [params, q, r2](Point2 r1) { return ansatz_value(params, q, r1, r2); };
}

PhaseVelocity phase_and_velocity(const WaveFunction& psi, Point2 r, double step) {
  const Complex v = psi(r);
  if (std::abs(v) < kTiny) {
    std::ostringstream msg;
    msg << "phase undefined at nodal point (" << r.x << ", " << r.y << ")";
    throw Error(ErrorKind::NodalPointSingular, msg.str());
  }
  const Complex dx = derivative(psi, r, {1.0, 0.0}, step);
  const Complex dy = derivative(psi, r, {0.0, 1.0}, step);
  return {std::arg(v), {(dx / v).imag(), (dy / v).imag()}};
}

double velocity_curl(const WaveFunction& psi, Point2 r, double step) {
  auto u = [&](double dx, double dy) {
    return phase_and_velocity(psi, {r.x + dx, r.y + dy}).u;
  };
  const double h = step;
  const double duy_dx =
      (-u(2 * h, 0).y + 8 * u(h, 0).y - 8 * u(-h, 0).y + u(-2 * h, 0).y) / (12 * h);
  const double dux_dy =
      (-u(0, 2 * h).x + 8 * u(0, h).x - 8 * u(0, -h).x + u(0, -2 * h).x) / (12 * h);
  return duy_dx - dux_dy;
}

double circulation(const WaveFunction& psi, const std::vector<Point2>& loop) {
  if (loop.size() < 3) {
    throw Error(ErrorKind::InvalidParams, "a closed loop needs at least three vertices");
  }
  std::vector<double> phases(loop.size());
  for (std::size_t i = 0; i < loop.size(); ++i) phases[i] = phase_at(psi, loop[i]);
  double total = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const std::size_t j = (i + 1) % loop.size();
    total += segment_increment(psi, loop[i], loop[j], phases[i], phases[j], 0);
  }
  return total;
}

std::vector<Point2> circle_loop(Point2 center, double radius, int segments, bool clockwise) {
  std::vector<Point2> pts(segments);
  const double dir = clockwise ? -1.0 : 1.0;
  for (int i = 0; i < segments; ++i) {
    const double t = dir * kTwoPi * i / segments;
    pts[i] = {center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
  }
  return pts;
}

int WindingMap::total() const noexcept {
  int s = 0;
  for (int w : plaquettes) s += w;
  return s;
}

WindingMap plaquette_windings(const WaveFunction& psi, const SearchBox& box, int cells) {
  if (cells < 1 || !(box.x_max > box.x_min) || !(box.y_max > box.y_min)) {
    throw Error(ErrorKind::InvalidParams, "search box and grid must be non-empty");
  }
  const int nv = cells + 1;
  const double hx = (box.x_max - box.x_min) / cells;
  const double hy = (box.y_max - box.y_min) / cells;
  std::vector<double> phase(static_cast<std::size_t>(nv) * nv);
  for (int iy = 0; iy < nv; ++iy) {
    for (int ix = 0; ix < nv; ++ix) {
      phase[iy * nv + ix] = std::arg(psi({box.x_min + ix * hx, box.y_min + iy * hy}));
    }
  }
  auto at = [&](int ix, int iy) { return phase[iy * nv + ix]; };

  WindingMap map;
  map.cells = cells;
  map.plaquettes.resize(static_cast<std::size_t>(cells) * cells);
  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      map.plaquettes[iy * cells + ix] =
          corner_winding(at(ix, iy), at(ix + 1, iy), at(ix + 1, iy + 1), at(ix, iy + 1));
    }
  }

  double sum = 0.0;
  for (int ix = 0; ix < cells; ++ix) sum += wrap(at(ix + 1, 0) - at(ix, 0));
  for (int iy = 0; iy < cells; ++iy) sum += wrap(at(cells, iy + 1) - at(cells, iy));
  for (int ix = cells; ix > 0; --ix) sum += wrap(at(ix - 1, cells) - at(ix, cells));
  for (int iy = cells; iy > 0; --iy) sum += wrap(at(0, iy - 1) - at(0, iy));
  map.boundary = static_cast<int>(std::lround(sum / kTwoPi));
  return map;
}

std::vector<VortexCharge> find_nodes(const WaveFunction& psi, const SearchBox& box,
                                     int cells, double tolerance) {
  const auto map = plaquette_windings(psi, box, cells);
  const double hx = (box.x_max - box.x_min) / cells;
  const double hy = (box.y_max - box.y_min) / cells;
  const double scale = std::max(box.x_max - box.x_min, box.y_max - box.y_min);

  std::vector<VortexCharge> nodes;
  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      const int w = map.plaquettes[iy * cells + ix];
      if (w == 0) continue;
      double x0 = box.x_min + ix * hx, x1 = x0 + hx;
      double y0 = box.y_min + iy * hy, y1 = y0 + hy;

      // Quadrant bisection on the winding down to ~1e-6 of the box.
      while (std::max(x1 - x0, y1 - y0) > 1e-6 * scale) {
        const double xm = 0.5 * (x0 + x1);
        const double ym = 0.5 * (y0 + y1);
        const double quads[4][4] = {
            {x0, xm, y0, ym}, {xm, x1, y0, ym}, {x0, xm, ym, y1}, {xm, x1, ym, y1}};
        bool found = false;
        for (const auto& qd : quads) {
          if (cell_winding(psi, qd[0], qd[1], qd[2], qd[3]) != 0) {
            x0 = qd[0];
            x1 = qd[1];
            y0 = qd[2];
            y1 = qd[3];
            found = true;
            break;
          }
        }
        if (!found) break;  // node on a subdivision line; Newton takes over
      }

      const Point2 centre{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
      Point2 r = newton_polish(psi, centre, scale, tolerance);
      const double reach = 2.0 * std::max(hx, hy);
      if (!(std::abs(r.x - centre.x) <= reach && std::abs(r.y - centre.y) <= reach)) {
        r = centre;
      }

      const bool duplicate = std::any_of(nodes.begin(), nodes.end(), [&](const VortexCharge& n) {
        return std::hypot(n.position.x - r.x, n.position.y - r.y) < 1e-3 * std::min(hx, hy);
      });
      if (!duplicate) nodes.push_back({r, w});
    }
  }
  return nodes;
}

}  // namespace vortexlab
