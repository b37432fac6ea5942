#include "hiertriple/svg.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace hiertriple {

namespace {

void check_color(const std::string& c, const char* what) {
  bool ok = c.size() == 7 && c[0] == '#';
  for (size_t i = 1; ok && i < c.size(); ++i)
    ok = std::isxdigit(static_cast<unsigned char>(c[i])) != 0;
  if (!ok)
    throw std::invalid_argument(std::string(what) + ": color must be #rrggbb, got " + c);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string render_scene_svg(const Layout& layout, const TripletSet* triplets,
                             const RenderStyle& style) {
  check_color(style.o2r_color, "o2r");
  check_color(style.o2o_color, "o2o");
  check_color(style.c2c_color, "c2c");
  check_color(style.footprint_color, "footprint");
  check_color(style.region_color, "region");

  const Aabb& b = layout.bounds;
  const double span = std::max({b.width(), b.height(), 1e-9});
  const double pad = 0.03 * span;
  const double scale = style.canvas / (span + 2 * pad);
  // SVG y grows downward; flip so the scene keeps its orientation.
  auto map = [&](const Vec2& p) {
    return Vec2{(p.x - b.min.x + pad) * scale,
                style.canvas - (p.y - b.min.y + pad) * scale};
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(style.canvas) + "\" height=\"" + std::to_string(style.canvas) +
         "\" viewBox=\"0 0 " + std::to_string(style.canvas) + " " +
         std::to_string(style.canvas) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  if (layout.floorplan) {
    svg += "  <polygon class=\"floorplan\" points=\"";
    for (size_t i = 0; i < layout.floorplan->size(); ++i) {
      const Vec2 p = map((*layout.floorplan)[i]);
      if (i) svg += " ";
      svg += fmt(p.x) + "," + fmt(p.y);
    }
    svg += "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"2\"/>\n";
  }

  if (triplets) {
    for (const auto& r : triplets->regions) {
      const Vec2 lo = map({r.rect.min.x, r.rect.max.y});
      svg += "  <rect class=\"region\" x=\"" + fmt(lo.x) + "\" y=\"" + fmt(lo.y) +
             "\" width=\"" + fmt(r.rect.width() * scale) + "\" height=\"" +
             fmt(r.rect.height() * scale) + "\" fill=\"" + style.region_color +
             "\" fill-opacity=\"" + fmt(style.region_opacity) + "\" stroke=\"" +
             style.region_color + "\"/>\n";
    }
  }

  std::vector<const SceneObject*> ordered;
  for (const auto& o : layout.objects) ordered.push_back(&o);
  std::sort(ordered.begin(), ordered.end(),
            [](const SceneObject* a, const SceneObject* z) { return a->id < z->id; });
  for (const SceneObject* o : ordered) {
    const auto cs = footprint(*o).corners();
    svg += "  <polygon class=\"footprint\" points=\"";
    for (int i = 0; i < 4; ++i) {
      const Vec2 p = map(cs[i]);
      if (i) svg += " ";
      svg += fmt(p.x) + "," + fmt(p.y);
    }
    svg += "\" fill=\"#eeeeee\" stroke=\"" + style.footprint_color +
           "\" stroke-width=\"1.5\"/>\n";
  }

  if (triplets) {
    auto draw = [&](const std::vector<Triplet>& list, const char* cls,
                    const std::string& color) {
      for (const auto& t : list) {
        for (const auto& a : t.anchors)
          if ((a.kind == AnchorKind::ObjectCentroid ||
               a.kind == AnchorKind::ObjectCorner) &&
              !layout.find(a.object_id))
            throw std::invalid_argument("render: dangling anchor object id " +
                                        std::to_string(a.object_id));
        svg += std::string("  <polygon class=\"triplet ") + cls + "\" points=\"";
        for (int i = 0; i < 3; ++i) {
          const Vec2 p = map(triplets->transform.invert(t.gt[i]));
          if (i) svg += " ";
          svg += fmt(p.x) + "," + fmt(p.y);
        }
        svg += "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
      }
    };
    draw(triplets->o2r, "o2r", style.o2r_color);
    draw(triplets->o2o, "o2o", style.o2o_color);
    draw(triplets->c2c, "c2c", style.c2c_color);
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace hiertriple
