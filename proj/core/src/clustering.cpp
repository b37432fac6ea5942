#include "hiertriple/clustering.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace hiertriple {

double giou(const Aabb& a, const Aabb& b) {
  if (!(a.area() > 0.0) || !(b.area() > 0.0))
    throw std::invalid_argument("giou: zero-area box");

  const double iw = std::max(0.0, std::min(a.max.x, b.max.x) - std::max(a.min.x, b.min.x));
  const double ih = std::max(0.0, std::min(a.max.y, b.max.y) - std::max(a.min.y, b.min.y));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;

  Aabb enclosing = a;
  enclosing.expand(b.min);
  enclosing.expand(b.max);
  const double c = enclosing.area();
  return inter / uni - (c - uni) / c;
}

double pair_metric(const SceneObject& a, const SceneObject& b, const ClusterConfig& cfg) {
  const Vec2 d = a.centroid_xy() - b.centroid_xy();
  const double d2 = norm2(d);
  if (cfg.lambda_giou == 0.0) return d2;
  return d2 + cfg.lambda_giou * (1.0 - giou(footprint(a).aabb(), footprint(b).aabb()));
}

std::vector<FunctionalRegion> cluster(const Layout& layout, const ClusterConfig& cfg) {
  // Work on objects in ascending-id order so the result does not depend on
  // the input ordering.
  std::vector<const SceneObject*> objs;
  objs.reserve(layout.objects.size());
  for (const auto& o : layout.objects) objs.push_back(&o);
  std::sort(objs.begin(), objs.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  const int n = static_cast<int>(objs.size());
  if (n == 0) return {};

  std::vector<double> metric(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = pair_metric(*objs[i], *objs[j], cfg);
      metric[static_cast<size_t>(i) * n + j] = m;
      metric[static_cast<size_t>(j) * n + i] = m;
    }

  auto neighbors = [&](int i) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
      if (metric[static_cast<size_t>(i) * n + j] <= cfg.eps) out.push_back(j);
    return out;  // ascending by construction; includes i itself
  };

  constexpr int kUnvisited = -2, kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  int next_cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    auto seeds = neighbors(i);
    if (static_cast<int>(seeds.size()) < cfg.min_samples) {
      label[i] = kNoise;
      continue;
    }
    const int c = next_cluster++;
    label[i] = c;
    std::deque<int> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      if (label[q] == kNoise) label[q] = c;  // border point adoption
      if (label[q] != kUnvisited) continue;
      label[q] = c;
      auto nbrs = neighbors(q);
      if (static_cast<int>(nbrs.size()) >= cfg.min_samples)
        queue.insert(queue.end(), nbrs.begin(), nbrs.end());
    }
  }

  // Noise points become singleton clusters.
  for (int i = 0; i < n; ++i)
    if (label[i] == kNoise) label[i] = next_cluster++;

  std::vector<FunctionalRegion> regions(next_cluster);
  std::vector<bool> started(next_cluster, false);
  int region_id = 0;
  // Region ids follow ascending smallest-member-id order, which is exactly
  // the first-visited order above.
  std::vector<int> cluster_to_region(next_cluster, -1);
  for (int i = 0; i < n; ++i) {
    const int c = label[i];
    if (cluster_to_region[c] < 0) cluster_to_region[c] = region_id++;
  }

  for (int i = 0; i < n; ++i) {
    const int r = cluster_to_region[label[i]];
    auto& region = regions[r];
    region.id = r;
    region.member_ids.push_back(objs[i]->id);
    const Vec2 c = objs[i]->centroid_xy();
    if (!started[r]) {
      region.rect = {c, c};
      started[r] = true;
    } else {
      region.rect.expand(c);
    }
  }
  for (auto& region : regions) {
    if (region.member_ids.size() == 1)
      region.rect = footprint(*layout.find(region.member_ids[0])).aabb();
  }
  return regions;
}

}  // namespace hiertriple
