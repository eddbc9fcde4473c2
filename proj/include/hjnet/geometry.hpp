#pragma once

#include <algorithm>
#include <cmath>

namespace hjnet {

struct AmbientPoint {
  double x = 0.0;
  double y = 0.0;
};

inline double euclidean(const AmbientPoint& a, const AmbientPoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

// So-called Manhattan distance |x2-x1| + |y2-y1|.
inline double manhattan(const AmbientPoint& a, const AmbientPoint& b) {
  return std::abs(b.x - a.x) + std::abs(b.y - a.y);
}

enum class AmbientMetric { Euclidean, Manhattan };

inline double ambient_distance(AmbientMetric m, const AmbientPoint& a,
                               const AmbientPoint& b) {
  return m == AmbientMetric::Euclidean ? euclidean(a, b) : manhattan(a, b);
}

inline AmbientPoint lerp(const AmbientPoint& a, const AmbientPoint& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
  bool contains(const AmbientPoint& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

}  // namespace hjnet
