// Dual-curve length on the genus-one surface with one cone point, as a
// function of twist, before and after grafting along the pants curve.
//
//   torus_demo [cone_angle] [curve_length] [graft_width]

#include <cstdio>
#include <cstdlib>

#include "conesurf/conesurf.hpp"

using namespace conesurf;

int main(int argc, char** argv) {
  const double theta = argc > 1 ? std::atof(argv[1]) : kPi / 2.0;
  const double l = argc > 2 ? std::atof(argv[2]) : 2.0 * std::acosh(2.0);
  const double w = argc > 3 ? std::atof(argv[3]) : 0.5;
  try {
    const MarkedSurface s{1, {theta}};
    std::printf("area %.6f\n", admissible_area(s));
    std::printf("%8s %12s %12s %12s\n", "twist", "length", "grafted", "earthquake");
    const RationalLamination lam{{{0, w}}};
    for (int i = -8; i <= 8; ++i) {
      const double d = 0.5 * i;
      const SurfaceGeometry g = build_surface(torus_decomposition(), s, {{l}, {d}});
      const double len = geodesic_length(g, torus_dual_word());
      const double gr = graft_length(g, lam, torus_dual_word()).length;
      const double eq = geodesic_length(earthquake(g, lam), torus_dual_word());
      std::printf("%8.3f %12.8f %12.8f %12.8f\n", d, len, gr, eq);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  return 0;
}
