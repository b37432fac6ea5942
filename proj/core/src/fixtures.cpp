#include "hiertriple/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hiertriple/rng.hpp"

namespace hiertriple {

namespace {

SceneObject make_object(int id, std::string category, double sx, double sy, double sz,
                        double x, double y, double theta) {
  SceneObject o;
  o.id = id;
  o.category = std::move(category);
  o.size = {sx, sy, sz};
  o.position = {x, y, sz / 2.0};
  o.orientation = {std::cos(theta), std::sin(theta)};
  return o;
}

double jitter(Rng& rng, double s) { return rng.normal() * s; }

Layout bedroom(Rng& rng) {
  Layout layout;
  const double w = rng.uniform(3.7, 4.6);
  const double h = rng.uniform(3.3, 4.3);
  layout.floorplan = std::vector<Vec2>{{0, 0}, {w, 0}, {w, h}, {0, h}};

  int id = 0;
  const double bed_w = rng.uniform(1.55, 1.85);
  const double bed_d = rng.uniform(2.0, 2.2);
  const double bx = w / 2.0 + jitter(rng, 0.08);
  const double by = bed_d / 2.0 + 0.18 + jitter(rng, 0.04);
  layout.objects.push_back(
      make_object(id++, "double_bed", bed_w, bed_d, 0.55, bx, by, jitter(rng, 0.02)));

  const double ns = rng.uniform(0.42, 0.5);
  const double ny = by + bed_d / 2.0 - 0.28 + jitter(rng, 0.05);
  const double gap = bed_w / 2.0 + ns / 2.0 + rng.uniform(0.08, 0.2);
  layout.objects.push_back(make_object(id++, "nightstand", ns, ns, 0.55, bx - gap,
                                       ny + jitter(rng, 0.04), jitter(rng, 0.05)));
  layout.objects.push_back(make_object(id++, "nightstand", ns, ns, 0.55, bx + gap,
                                       ny + jitter(rng, 0.04), jitter(rng, 0.05)));

  layout.objects.push_back(make_object(
      id++, "wardrobe", rng.uniform(1.4, 1.8), rng.uniform(0.55, 0.65), 2.0,
      w / 2.0 + jitter(rng, 0.25), h - 0.42 + jitter(rng, 0.04),
      std::numbers::pi + jitter(rng, 0.02)));

  if (rng.uniform() < 0.45) {
    const double dx = w - 0.55 + jitter(rng, 0.04);
    const double dy = h * rng.uniform(0.35, 0.55);
    layout.objects.push_back(make_object(id++, "desk", rng.uniform(1.0, 1.3), 0.6, 0.75,
                                         dx, dy,
                                         std::numbers::pi / 2 + jitter(rng, 0.03)));
    layout.objects.push_back(make_object(id++, "chair", 0.45, 0.45, 0.9, dx - 0.65,
                                         dy + jitter(rng, 0.08),
                                         -std::numbers::pi / 2 + jitter(rng, 0.2)));
  }

  layout.bounds = default_bounds(layout.objects, layout.floorplan);
  return layout;
}

Layout living(Rng& rng) {
  Layout layout;
  const double w = rng.uniform(4.8, 5.8);
  const double h = rng.uniform(4.0, 5.0);
  layout.floorplan = std::vector<Vec2>{{0, 0}, {w, 0}, {w, h}, {0, h}};

  int id = 0;
  const double cx = w * rng.uniform(0.3, 0.36);
  const double cy = h * rng.uniform(0.46, 0.54);

  const double sofa_w = rng.uniform(2.05, 2.4);
  layout.objects.push_back(make_object(id++, "multi_seat_sofa", sofa_w,
                                       rng.uniform(0.9, 1.0), 0.8,
                                       cx + jitter(rng, 0.06),
                                       cy - 0.98 + jitter(rng, 0.05),
                                       jitter(rng, 0.03)));
  // A small table surrounded by heavy seating: prime hidden-point material
  // for the weighted triangulation.
  const double ct = rng.uniform(0.5, 0.68);
  layout.objects.push_back(make_object(id++, "coffee_table", ct, ct * 0.82, 0.4,
                                       cx + jitter(rng, 0.07),
                                       cy - 0.02 + jitter(rng, 0.06),
                                       jitter(rng, 0.1)));
  layout.objects.push_back(make_object(id++, "tv_stand", rng.uniform(1.5, 1.8),
                                       rng.uniform(0.4, 0.46), 0.5,
                                       cx + jitter(rng, 0.08),
                                       cy + 1.12 + jitter(rng, 0.05),
                                       std::numbers::pi + jitter(rng, 0.03)));
  const double ay = cy - 0.12;
  layout.objects.push_back(make_object(id++, "armchair", rng.uniform(0.78, 0.88),
                                       rng.uniform(0.8, 0.9), 0.75,
                                       cx - 1.22 + jitter(rng, 0.06),
                                       ay + jitter(rng, 0.07),
                                       -std::numbers::pi / 2 + jitter(rng, 0.15)));
  layout.objects.push_back(make_object(id++, "armchair", rng.uniform(0.78, 0.88),
                                       rng.uniform(0.8, 0.9), 0.75,
                                       cx + 1.22 + jitter(rng, 0.06),
                                       ay + jitter(rng, 0.07),
                                       std::numbers::pi / 2 + jitter(rng, 0.15)));
  if (rng.uniform() < 0.7) {
    layout.objects.push_back(make_object(id++, "corner_side_table", 0.42, 0.42, 0.5,
                                         cx - (sofa_w / 2.0 + 0.35) + jitter(rng, 0.05),
                                         cy - 0.98 + jitter(rng, 0.07),
                                         jitter(rng, 0.1)));
  }

  if (rng.uniform() < 0.6) {
    const double dx = w * rng.uniform(0.76, 0.82);
    const double dy = h * rng.uniform(0.4, 0.5);
    const double tw = rng.uniform(1.2, 1.4);
    layout.objects.push_back(make_object(id++, "dining_table", tw, rng.uniform(0.75, 0.85),
                                         0.75, dx, dy, jitter(rng, 0.03)));
    const int chairs = rng.uniform_int(2, 4);
    for (int c = 0; c < chairs; ++c) {
      const double side = c % 2 == 0 ? 1.0 : -1.0;
      const double along = (c / 2 == 0 ? -0.3 : 0.3) + jitter(rng, 0.05);
      layout.objects.push_back(make_object(
          id++, "dining_chair", 0.45, 0.45, 0.9, dx + along,
          dy + side * (0.62 + jitter(rng, 0.04)),
          (side > 0 ? -1.0 : 1.0) * std::numbers::pi / 2 + jitter(rng, 0.15)));
    }
  }

  layout.bounds = default_bounds(layout.objects, layout.floorplan);
  return layout;
}

}  // namespace

std::vector<Layout> generate_fixtures(std::uint64_t seed, int count) {
  if (count < 0) throw std::invalid_argument("generate_fixtures: negative count");
  std::vector<Layout> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1)));
    out.push_back(i % 2 == 0 ? living(rng) : bedroom(rng));
  }
  return out;
}

}  // namespace hiertriple
