#pragma once

#include <cmath>

namespace wprs {

// E * t reduced into (-pi, pi] in extended precision.
inline double reduced_phase(double energy, double t) {
  constexpr long double two_pi = 6.283185307179586476925286766559005768L;
  long double theta =
      std::fmod(static_cast<long double>(energy) * static_cast<long double>(t), two_pi);
  if (theta > two_pi / 2) theta -= two_pi;
  if (theta <= -two_pi / 2) theta += two_pi;
  return static_cast<double>(theta);
}

}  // namespace wprs
