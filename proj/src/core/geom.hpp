#pragma once

#include <cmath>

namespace slicer {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline bool operator==(const Vec3& a, const Vec3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct CuboidDims {
  double x = 0.0;  // length, m
  double y = 0.0;  // width, m
  double z = 0.0;  // height, m
};

}  // namespace slicer
