#include "hiertriple/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hiertriple {

namespace {

int worker_threads() {
  static const int n = [] {
    const char* env = std::getenv("HIERTRIPLE_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    return v >= 1 ? v : 1;
  }();
  return n;
}

/// Index-chunked parallel map with a deterministic slot-per-item merge.
template <typename Fn>
void parallel_for(size_t count, Fn&& fn) {
  const int threads = std::min<int>(worker_threads(), static_cast<int>(count));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futures;
  const size_t chunk = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const size_t lo = w * chunk;
    const size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& f : futures) f.get();
}

struct CollisionCounts {
  int colliding_objects = 0;
  int total_objects = 0;
  bool any_collision = false;
};

CollisionCounts layout_collisions(const Layout& layout) {
  CollisionCounts out;
  const int n = static_cast<int>(layout.objects.size());
  out.total_objects = n;
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (collides(layout.objects[i], layout.objects[j])) {
        hit[i] = hit[j] = true;
        out.any_collision = true;
      }
  for (bool h : hit) out.colliding_objects += h ? 1 : 0;
  return out;
}

std::vector<CollisionCounts> all_collisions(std::span<const Layout> layouts) {
  if (layouts.empty()) throw std::invalid_argument("collision metrics: empty input");
  std::vector<CollisionCounts> counts(layouts.size());
  parallel_for(layouts.size(), [&](size_t i) { counts[i] = layout_collisions(layouts[i]); });
  return counts;
}

/// Normalized ground-plane centroid distances for every co-occurring
/// instance pair of (a, b) within one layout.
void pair_distances(const Layout& layout, const CategoryPair& pair,
                    std::vector<double>& out) {
  const auto [normalized, t] = normalize_layout(layout);
  std::vector<const SceneObject*> as, bs;
  for (const auto& o : normalized.objects) {
    if (o.category == pair.first) as.push_back(&o);
    if (o.category == pair.second) bs.push_back(&o);
  }
  if (pair.first == pair.second) {
    for (size_t i = 0; i < as.size(); ++i)
      for (size_t j = i + 1; j < as.size(); ++j)
        out.push_back(norm(as[i]->centroid_xy() - as[j]->centroid_xy()));
    return;
  }
  for (const auto* a : as)
    for (const auto* b : bs) out.push_back(norm(a->centroid_xy() - b->centroid_xy()));
}

bool layout_has_pair(const Layout& layout, const CategoryPair& pair) {
  int a = 0, b = 0;
  for (const auto& o : layout.objects) {
    if (o.category == pair.first) ++a;
    if (o.category == pair.second) ++b;
  }
  return pair.first == pair.second ? a >= 2 : (a >= 1 && b >= 1);
}

}  // namespace

bool collides(const SceneObject& a, const SceneObject& b) {
  return footprints_overlap(footprint(a), footprint(b));
}

double col_obj(std::span<const Layout> layouts) {
  const auto counts = all_collisions(layouts);
  long long colliding = 0, total = 0;
  for (const auto& c : counts) {
    colliding += c.colliding_objects;
    total += c.total_objects;
  }
  return total == 0 ? 0.0 : static_cast<double>(colliding) / total;
}

double col_scene(std::span<const Layout> layouts) {
  const auto counts = all_collisions(layouts);
  long long scenes = 0;
  for (const auto& c : counts) scenes += c.any_collision ? 1 : 0;
  return static_cast<double>(scenes) / counts.size();
}

double r_out(std::span<const Layout> layouts, OutRule rule, double area_threshold) {
  if (layouts.empty()) throw std::invalid_argument("r_out: empty input");
  for (const auto& l : layouts)
    if (!l.floorplan || l.floorplan->size() < 3)
      throw std::invalid_argument("r_out: every layout needs a floorplan");

  std::vector<std::pair<int, int>> per(layouts.size());  // (out, total)
  parallel_for(layouts.size(), [&](size_t li) {
    const Layout& layout = layouts[li];
    const auto& poly = *layout.floorplan;
    int out_count = 0;
    for (const auto& obj : layout.objects) {
      const Footprint fp = footprint(obj);
      bool is_out = false;
      if (rule == OutRule::AnyCorner) {
        for (const Vec2& c : fp.corners())
          if (!point_in_polygon(c, poly, 1e-9)) is_out = true;
      } else {
        // Deterministic grid sample of the footprint interior.
        constexpr int kGrid = 24;
        int outside = 0;
        for (int iy = 0; iy < kGrid; ++iy)
          for (int ix = 0; ix < kGrid; ++ix) {
            const Vec2 local{(ix + 0.5) / kGrid * 2.0 - 1.0,
                             (iy + 0.5) / kGrid * 2.0 - 1.0};
            const Vec2 p = fp.center + rotate({local.x * fp.half_extents.x,
                                               local.y * fp.half_extents.y},
                                              fp.angle);
            if (!point_in_polygon(p, poly, 1e-9)) ++outside;
          }
        is_out = outside > area_threshold * kGrid * kGrid;
      }
      out_count += is_out ? 1 : 0;
    }
    per[li] = {out_count, static_cast<int>(layout.objects.size())};
  });
  long long out_total = 0, total = 0;
  for (const auto& [o, t] : per) {
    out_total += o;
    total += t;
  }
  return total == 0 ? 0.0 : static_cast<double>(out_total) / total;
}

std::vector<CategoryPair> frequent_pairs(std::span<const Layout> layouts,
                                         double threshold) {
  if (layouts.empty()) throw std::invalid_argument("frequent_pairs: empty input");
  std::map<CategoryPair, int> occurrence;
  for (const auto& layout : layouts) {
    std::set<CategoryPair> present;
    const auto& objs = layout.objects;
    for (size_t i = 0; i < objs.size(); ++i)
      for (size_t j = i + 1; j < objs.size(); ++j) {
        CategoryPair p{objs[i].category, objs[j].category};
        if (p.second < p.first) std::swap(p.first, p.second);
        present.insert(p);
      }
    for (const auto& p : present) occurrence[p] += 1;
  }
  std::vector<CategoryPair> out;
  const double n = static_cast<double>(layouts.size());
  for (const auto& [pair, count] : occurrence)
    if (count / n > threshold) out.push_back(pair);
  return out;
}

PairStat pair_expectation(std::span<const Layout> layouts, const CategoryPair& pair) {
  CategoryPair sorted = pair;
  if (sorted.second < sorted.first) std::swap(sorted.first, sorted.second);

  PairStat stat;
  stat.pair = sorted;
  int present = 0;
  for (const auto& layout : layouts) {
    if (layout_has_pair(layout, sorted)) ++present;
    pair_distances(layout, sorted, stat.samples);
  }
  const size_t n = stat.samples.size();
  if (n < 2)
    throw std::invalid_argument("pair_expectation: fewer than 2 samples for pair " +
                                sorted.first + "-" + sorted.second);
  stat.frequency = layouts.empty() ? 0.0 : static_cast<double>(present) / layouts.size();

  double mean = 0.0;
  for (double d : stat.samples) mean += d;
  mean /= static_cast<double>(n);
  stat.expectation = mean;  // Gaussian kernels preserve the sample mean

  double var = 0.0;
  for (double d : stat.samples) var += (d - mean) * (d - mean);
  var /= static_cast<double>(n - 1);
  stat.bandwidth = std::sqrt(var) * std::pow(static_cast<double>(n), -0.2);
  return stat;
}

double kde_density(const PairStat& stat, double x) {
  const double h = stat.bandwidth;
  if (!(h > 0.0)) return 0.0;  // degenerate: all samples identical
  const double norm_c = 1.0 / (stat.samples.size() * h * std::sqrt(2.0 * std::numbers::pi));
  double acc = 0.0;
  for (double s : stat.samples) {
    const double z = (x - s) / h;
    acc += std::exp(-0.5 * z * z);
  }
  return norm_c * acc;
}

ReferenceStats build_reference_stats(std::span<const Layout> layouts, double threshold) {
  ReferenceStats stats;
  stats.threshold = threshold;
  for (const auto& pair : frequent_pairs(layouts, threshold)) {
    try {
      stats.pairs.push_back(pair_expectation(layouts, pair));
    } catch (const std::invalid_argument&) {
      // frequent but under-sampled (single co-occurrence): not usable
    }
  }
  return stats;
}

DObjResult d_obj(std::span<const Layout> generated, const ReferenceStats& reference) {
  DObjResult out;
  double acc = 0.0;
  for (const auto& ref : reference.pairs) {
    std::vector<double> samples;
    for (const auto& layout : generated) pair_distances(layout, ref.pair, samples);
    if (samples.size() < 2) {
      out.skipped.push_back(ref.pair.first + "-" + ref.pair.second);
      continue;
    }
    double mean = 0.0;
    for (double d : samples) mean += d;
    mean /= static_cast<double>(samples.size());
    acc += std::abs(mean - ref.expectation);
    out.evaluated_pairs += 1;
  }
  if (out.evaluated_pairs == 0)
    throw std::invalid_argument("d_obj: no evaluable pairs");
  out.value = acc / out.evaluated_pairs;
  return out;
}

std::string reference_stats_to_json(const ReferenceStats& stats) {
  nlohmann::json doc;
  doc["threshold"] = stats.threshold;
  doc["pairs"] = nlohmann::json::array();
  for (const auto& p : stats.pairs) {
    nlohmann::json jp;
    jp["pair"] = {p.pair.first, p.pair.second};
    jp["frequency"] = p.frequency;
    jp["expectation"] = p.expectation;
    jp["bandwidth"] = p.bandwidth;
    jp["samples"] = p.samples;
    doc["pairs"].push_back(std::move(jp));
  }
  return doc.dump(2) + "\n";
}

ReferenceStats reference_stats_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("reference stats parse failure: ") + e.what());
  }
  ReferenceStats stats;
  stats.threshold = doc.at("threshold").get<double>();
  for (const auto& jp : doc.at("pairs")) {
    PairStat p;
    p.pair = {jp.at("pair").at(0).get<std::string>(),
              jp.at("pair").at(1).get<std::string>()};
    p.frequency = jp.at("frequency").get<double>();
    p.expectation = jp.at("expectation").get<double>();
    p.bandwidth = jp.at("bandwidth").get<double>();
    if (jp.contains("samples")) p.samples = jp["samples"].get<std::vector<double>>();
    stats.pairs.push_back(std::move(p));
  }
  return stats;
}

}  // namespace hiertriple
