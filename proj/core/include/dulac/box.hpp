#pragma once

#include <string>
#include <string_view>

#include "dulac/poly.hpp"

namespace dulac {

/// Axis-aligned rectangle with exact rational corners.
struct Box2 {
  Rat x_min;
  Rat x_max;
  Rat y_min;
  Rat y_max;

  /// Throws InvalidArgument unless x_min < x_max and y_min < y_max.
  static Box2 make(Rat x0, Rat x1, Rat y0, Rat y1);
  /// [cx - h, cx + h] x [cy - h, cy + h].
  static Box2 centered(const Rat& cx, const Rat& cy, const Rat& half_width);

  Rat width() const { return x_max - x_min; }
  Rat height() const { return y_max - y_min; }
  Rat area() const { return width() * height(); }

  bool contains(Point z) const;
  /// Strict interior.
  bool contains_open(Point z) const;
  bool contains(const Box2& other) const;
  /// Positive-area overlap.
  bool overlaps(const Box2& other) const;

  friend bool operator==(const Box2& a, const Box2& b) {
    return a.x_min == b.x_min && a.x_max == b.x_max && a.y_min == b.y_min && a.y_max == b.y_max;
  }
};

/// "xmin:xmax,ymin:ymax" with rational or decimal endpoints.
Box2 parse_region(std::string_view text);

std::string to_string(const Box2& box);

}  // namespace dulac
