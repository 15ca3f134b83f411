#include "dulac/box.hpp"

#include "dulac/error.hpp"

namespace dulac {

Box2 Box2::make(Rat x0, Rat x1, Rat y0, Rat y1) {
  if (!(x0 < x1) || !(y0 < y1))
    throw Error(ErrorKind::InvalidArgument, "box needs x_min < x_max and y_min < y_max");
  return Box2{std::move(x0), std::move(x1), std::move(y0), std::move(y1)};
}

Box2 Box2::centered(const Rat& cx, const Rat& cy, const Rat& half_width) {
  return make(cx - half_width, cx + half_width, cy - half_width, cy + half_width);
}

bool Box2::contains(Point z) const {
  return z.x >= x_min.get_d() && z.x <= x_max.get_d() && z.y >= y_min.get_d() && z.y <= y_max.get_d();
}

bool Box2::contains_open(Point z) const {
  return z.x > x_min.get_d() && z.x < x_max.get_d() && z.y > y_min.get_d() && z.y < y_max.get_d();
}

bool Box2::contains(const Box2& o) const {
  return x_min <= o.x_min && o.x_max <= x_max && y_min <= o.y_min && o.y_max <= y_max;
}

bool Box2::overlaps(const Box2& o) const {
  return x_min < o.x_max && o.x_min < x_max && y_min < o.y_max && o.y_min < y_max;
}

namespace {

std::pair<Rat, Rat> parse_interval(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::Syntax, "interval needs the form lo:hi, got '" + std::string(s) + "'");
  auto strip = [](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    return t;
  };
  return {parse_rat(strip(s.substr(0, colon))), parse_rat(strip(s.substr(colon + 1)))};
}

}  // namespace

Box2 parse_region(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos)
    throw Error(ErrorKind::Syntax, "region needs the form xmin:xmax,ymin:ymax");
  auto [x0, x1] = parse_interval(text.substr(0, comma));
  auto [y0, y1] = parse_interval(text.substr(comma + 1));
  return Box2::make(x0, x1, y0, y1);
}

std::string to_string(const Box2& b) {
  return to_string(b.x_min) + ":" + to_string(b.x_max) + "," + to_string(b.y_min) + ":" + to_string(b.y_max);
}

}  // namespace dulac
