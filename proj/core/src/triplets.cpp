#include "hiertriple/triplets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hiertriple/triangulation.hpp"

namespace hiertriple {

using nlohmann::json;

namespace {

constexpr double kMaxInteriorAngle = 160.0 * std::numbers::pi / 180.0;
constexpr double kMinTriangleArea = 1e-9;  // normalized units, doubled area / 2

double triangle_area(const std::array<Vec2, 3>& v) {
  return std::abs(orient2d(v[0], v[1], v[2])) / 2.0;
}

double max_interior_angle(const std::array<Vec2, 3>& v) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2 e1 = v[(i + 1) % 3] - v[i];
    const Vec2 e2 = v[(i + 2) % 3] - v[i];
    const double n1 = norm(e1), n2 = norm(e2);
    if (n1 == 0.0 || n2 == 0.0) return std::numbers::pi;
    const double c = std::clamp(dot(e1, e2) / (n1 * n2), -1.0, 1.0);
    worst = std::max(worst, std::acos(c));
  }
  return worst;
}

Footprint normalized_footprint(const SceneObject& obj, const NormalizationTransform& t) {
  const Footprint fp = footprint(obj);
  return {t.apply(fp.center), fp.half_extents * t.scale, fp.angle};
}

std::vector<const SceneObject*> members_by_id(const FunctionalRegion& region,
                                              const Layout& layout) {
  std::vector<const SceneObject*> out;
  for (int id : region.member_ids) {
    const SceneObject* obj = layout.find(id);
    if (!obj) throw std::invalid_argument("region references unknown object id " +
                                          std::to_string(id));
    out.push_back(obj);
  }
  std::sort(out.begin(), out.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  return out;
}

void note(std::vector<std::string>* diagnostics, std::string msg) {
  if (diagnostics) diagnostics->push_back(std::move(msg));
}

Triplet make_o2o_triplet(std::array<const SceneObject*, 3> objs, int region_id,
                         const NormalizationTransform& t) {
  std::sort(objs.begin(), objs.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  Triplet tr;
  tr.kind = TripletKind::O2O;
  tr.region_id = region_id;
  for (int i = 0; i < 3; ++i) {
    tr.anchors[i] = Anchor::centroid(objs[i]->id);
    tr.gt[i] = t.apply(objs[i]->centroid_xy());
  }
  return tr;
}

}  // namespace

Anchor Anchor::centroid(int object_id) {
  Anchor a;
  a.kind = AnchorKind::ObjectCentroid;
  a.object_id = object_id;
  return a;
}

Anchor Anchor::corner(int object_id, int corner_index) {
  Anchor a;
  a.kind = AnchorKind::ObjectCorner;
  a.object_id = object_id;
  a.corner_index = corner_index;
  return a;
}

Anchor Anchor::region_corner(int region_id, int corner_index, const Vec2& p) {
  Anchor a;
  a.kind = AnchorKind::RegionCorner;
  a.region_id = region_id;
  a.corner_index = corner_index;
  a.fixed_point = p;
  return a;
}

Anchor Anchor::virtual_point(const Vec2& p) {
  Anchor a;
  a.kind = AnchorKind::VirtualPoint;
  a.fixed_point = p;
  return a;
}

std::string to_string(O2OStrategy s) {
  switch (s) {
    case O2OStrategy::TwoNN: return "2nn";
    case O2OStrategy::DT: return "dt";
    case O2OStrategy::WDT: return "wdt";
    case O2OStrategy::PointLinks: return "pointlinks";
  }
  return "pointlinks";
}

O2OStrategy o2o_strategy_from_string(const std::string& s) {
  if (s == "2nn") return O2OStrategy::TwoNN;
  if (s == "dt") return O2OStrategy::DT;
  if (s == "wdt") return O2OStrategy::WDT;
  if (s == "pointlinks") return O2OStrategy::PointLinks;
  throw std::invalid_argument("unknown O2O strategy: " + s);
}

std::array<Vec2, 3> resolve(const Triplet& triplet, const Layout& layout) {
  std::array<Vec2, 3> out;
  for (int i = 0; i < 3; ++i) {
    const Anchor& a = triplet.anchors[i];
    switch (a.kind) {
      case AnchorKind::ObjectCentroid: {
        const SceneObject* obj = layout.find(a.object_id);
        if (!obj)
          throw std::invalid_argument("resolve: dangling object id " +
                                      std::to_string(a.object_id));
        out[i] = obj->centroid_xy();
        break;
      }
      case AnchorKind::ObjectCorner: {
        const SceneObject* obj = layout.find(a.object_id);
        if (!obj)
          throw std::invalid_argument("resolve: dangling object id " +
                                      std::to_string(a.object_id));
        out[i] = footprint(*obj).corners()[a.corner_index];
        break;
      }
      case AnchorKind::RegionCorner:
      case AnchorKind::VirtualPoint:
        out[i] = a.fixed_point;
        break;
    }
  }
  return out;
}

std::vector<Triplet> extract_o2r(const FunctionalRegion& region, const Layout& layout,
                                 const NormalizationTransform& t) {
  const auto members = members_by_id(region, layout);
  if (members.empty()) return {};

  const SceneObject* dominant = members[0];
  for (const SceneObject* o : members)
    if (o->footprint_area() > dominant->footprint_area()) dominant = o;

  const Vec2 centroid = t.apply(dominant->centroid_xy());
  const Aabb rect{t.apply(region.rect.min), t.apply(region.rect.max)};
  const FunctionalRegion norm_region{region.id, region.member_ids, rect};
  const auto corners = norm_region.virtual_corners();

  std::vector<Triplet> out;
  for (int k = 0; k < 4; ++k) {
    const Vec2 c1 = corners[k];
    const Vec2 c2 = corners[(k + 1) % 4];
    const std::array<Vec2, 3> verts{centroid, c1, c2};
    if (triangle_area(verts) <= kMinTriangleArea) continue;
    if (max_interior_angle(verts) > kMaxInteriorAngle) continue;
    Triplet tr;
    tr.kind = TripletKind::O2R;
    tr.region_id = region.id;
    tr.anchors = {Anchor::centroid(dominant->id),
                  Anchor::region_corner(region.id, k, c1),
                  Anchor::region_corner(region.id, (k + 1) % 4, c2)};
    tr.gt = verts;
    out.push_back(tr);
  }
  return out;
}

std::vector<Triplet> extract_o2o(const FunctionalRegion& region, const Layout& layout,
                                 const NormalizationTransform& t, O2OStrategy strategy,
                                 std::vector<std::string>* diagnostics) {
  const auto members = members_by_id(region, layout);
  const int n = static_cast<int>(members.size());
  if (n <= 1) return {};

  std::vector<Vec2> pts;
  pts.reserve(n);
  for (const SceneObject* o : members) pts.push_back(t.apply(o->centroid_xy()));

  std::vector<Triplet> out;
  if (n == 2) {
    // Virtual node completing an equilateral triangle on the left of the
    // directed edge from the lower to the higher object id.
    const Vec2 edge = pts[1] - pts[0];
    const double len = norm(edge);
    const Vec2 apex =
        (pts[0] + pts[1]) / 2.0 + perp_ccw(edge) * (std::numbers::sqrt3 / 2.0);
    const std::array<Vec2, 3> verts{pts[0], pts[1], apex};
    if (len == 0.0 || triangle_area(verts) <= kMinTriangleArea) {
      note(diagnostics, "o2o: region " + std::to_string(region.id) +
                            " skipped (degenerate two-object edge)");
      return {};
    }
    Triplet tr;
    tr.kind = TripletKind::O2O;
    tr.region_id = region.id;
    tr.anchors = {Anchor::centroid(members[0]->id), Anchor::centroid(members[1]->id),
                  Anchor::virtual_point(apex)};
    tr.gt = verts;
    out.push_back(tr);
    return out;
  }

  std::set<std::array<int, 3>> seen;  // sorted member-id triples
  auto push_triplet = [&](int i, int j, int k) {
    std::array<int, 3> ids{members[i]->id, members[j]->id, members[k]->id};
    std::sort(ids.begin(), ids.end());
    if (!seen.insert(ids).second) return;
    Triplet tr = make_o2o_triplet({members[i], members[j], members[k]}, region.id, t);
    if (triangle_area(tr.gt) <= kMinTriangleArea) {
      note(diagnostics, "o2o: region " + std::to_string(region.id) +
                            " skipped degenerate triangle (" + std::to_string(ids[0]) +
                            "," + std::to_string(ids[1]) + "," + std::to_string(ids[2]) +
                            ")");
      return;
    }
    out.push_back(tr);
  };

  if (strategy == O2OStrategy::TwoNN) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> others;
      for (int j = 0; j < n; ++j)
        if (j != i) others.push_back(j);
      std::sort(others.begin(), others.end(), [&](int a, int b) {
        const double da = norm2(pts[a] - pts[i]);
        const double db = norm2(pts[b] - pts[i]);
        return da != db ? da < db : members[a]->id < members[b]->id;
      });
      push_triplet(i, others[0], others[1]);
    }
    return out;
  }

  try {
    TriangulationResult tri;
    if (strategy == O2OStrategy::DT) {
      tri = delaunay(pts);
    } else {
      std::vector<double> weights;
      for (const SceneObject* o : members)
        weights.push_back(o->size.x * t.scale * (o->size.y * t.scale));
      tri = weighted_delaunay(pts, weights);
      if (strategy == O2OStrategy::PointLinks) tri = point_link_repair(tri);
    }
    for (const auto& tr : tri.triangles) push_triplet(tr[0], tr[1], tr[2]);
  } catch (const std::invalid_argument& e) {
    note(diagnostics, "o2o: region " + std::to_string(region.id) +
                          " triangulation skipped (" + e.what() + ")");
  }
  return out;
}

std::vector<Triplet> extract_c2c(const Triplet& o2o, const Layout& layout,
                                 const NormalizationTransform& t,
                                 std::vector<std::string>* diagnostics) {
  for (const Anchor& a : o2o.anchors)
    if (a.kind != AnchorKind::ObjectCentroid) {
      note(diagnostics, "c2c: skipped triplet with virtual anchor in region " +
                            std::to_string(o2o.region_id));
      return {};
    }

  std::array<const SceneObject*, 3> objs{};
  std::array<Footprint, 3> fps;
  for (int i = 0; i < 3; ++i) {
    objs[i] = layout.find(o2o.anchors[i].object_id);
    if (!objs[i])
      throw std::invalid_argument("c2c: dangling object id " +
                                  std::to_string(o2o.anchors[i].object_id));
    fps[i] = normalized_footprint(*objs[i], t);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (footprints_overlap(fps[i], fps[j])) {
        note(diagnostics, "c2c: skipped overlapping footprints (" +
                              std::to_string(objs[i]->id) + "," +
                              std::to_string(objs[j]->id) + ") in region " +
                              std::to_string(o2o.region_id));
        return {};
      }

  std::vector<Vec2> pts;
  std::vector<std::array<int, 2>> segments;
  for (int i = 0; i < 3; ++i) {
    const auto cs = fps[i].corners();
    const int base = i * 4;
    for (int k = 0; k < 4; ++k) {
      pts.push_back(cs[k]);
      segments.push_back({base + k, base + (k + 1) % 4});
    }
  }
  const std::vector<int> hull = convex_hull(pts);
  for (size_t k = 0; k < hull.size(); ++k)
    segments.push_back({hull[k], hull[(k + 1) % hull.size()]});

  TriangulationResult cdt;
  try {
    cdt = constrained_delaunay(pts, segments);
  } catch (const std::invalid_argument& e) {
    note(diagnostics, std::string("c2c: CDT skipped (") + e.what() + ") in region " +
                          std::to_string(o2o.region_id));
    return {};
  }

  auto inside_footprint = [&](const Vec2& p, const Footprint& fp) {
    const Vec2 local = rotate(p - fp.center, -fp.angle);
    constexpr double tol = 1e-12;
    return std::abs(local.x) <= fp.half_extents.x + tol &&
           std::abs(local.y) <= fp.half_extents.y + tol;
  };

  std::vector<Triplet> out;
  for (const auto& tri : cdt.triangles) {
    const Vec2 centroid = (pts[tri[0]] + pts[tri[1]] + pts[tri[2]]) / 3.0;
    bool covered = false;
    for (const auto& fp : fps) covered = covered || inside_footprint(centroid, fp);
    if (covered) continue;

    std::set<int> owners;
    for (int v : tri) owners.insert(v / 4);
    if (owners.size() != 2) continue;

    std::array<std::pair<int, int>, 3> refs;  // (object_id, corner_index)
    for (int i = 0; i < 3; ++i)
      refs[i] = {objs[tri[i] / 4]->id, tri[i] % 4};
    std::sort(refs.begin(), refs.end());

    Triplet tr;
    tr.kind = TripletKind::C2C;
    tr.region_id = o2o.region_id;
    for (int i = 0; i < 3; ++i) {
      tr.anchors[i] = Anchor::corner(refs[i].first, refs[i].second);
      const Footprint* fp = nullptr;
      for (int k = 0; k < 3; ++k)
        if (objs[k]->id == refs[i].first) fp = &fps[k];
      tr.gt[i] = fp->corners()[refs[i].second];
    }
    if (triangle_area(tr.gt) <= kMinTriangleArea) continue;
    out.push_back(tr);
  }
  return out;
}

TripletSet extract_all(const Layout& layout, const ExtractConfig& cfg) {
  const auto violations = validate_layout(layout);
  if (!violations.empty())
    throw std::invalid_argument("extract_all: invalid layout: " + violations.front());

  TripletSet set;
  set.config = cfg;
  if (layout.objects.empty()) return set;

  set.transform = normalize_layout(layout).second;
  set.regions = cluster(layout, cfg.cluster);
  for (const auto& region : set.regions) {
    const auto o2r = extract_o2r(region, layout, set.transform);
    set.o2r.insert(set.o2r.end(), o2r.begin(), o2r.end());
    const auto o2o =
        extract_o2o(region, layout, set.transform, cfg.strategy, &set.diagnostics);
    for (const auto& tr : o2o) {
      set.o2o.push_back(tr);
      const auto c2c = extract_c2c(tr, layout, set.transform, &set.diagnostics);
      set.c2c.insert(set.c2c.end(), c2c.begin(), c2c.end());
    }
  }
  return set;
}

// --- JSON ------------------------------------------------------------------

namespace {

json vec2_json(const Vec2& v) { return json::array({v.x, v.y}); }
Vec2 vec2_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json gt_json(const Triplet& t) {
  return json::array({vec2_json(t.gt[0]), vec2_json(t.gt[1]), vec2_json(t.gt[2])});
}

void gt_from(const json& j, Triplet& t) {
  for (int i = 0; i < 3; ++i) t.gt[i] = vec2_from(j.at(i));
}

}  // namespace

std::string triplet_set_to_json(const TripletSet& set) {
  json doc;
  doc["normalization"] = {{"scale", set.transform.scale},
                          {"offset", vec2_json(set.transform.offset)}};
  doc["strategy"] = to_string(set.config.strategy);
  doc["cluster"] = {{"eps", set.config.cluster.eps},
                    {"min_samples", set.config.cluster.min_samples},
                    {"lambda_giou", set.config.cluster.lambda_giou}};

  doc["regions"] = json::array();
  for (const auto& r : set.regions) {
    json jr;
    jr["id"] = r.id;
    jr["members"] = r.member_ids;
    jr["rect"] = json::array({vec2_json(r.rect.min), vec2_json(r.rect.max)});
    doc["regions"].push_back(std::move(jr));
  }

  doc["o2r"] = json::array();
  for (const auto& t : set.o2r) {
    json jt;
    jt["region"] = t.region_id;
    jt["object"] = t.anchors[0].object_id;
    jt["corners"] = {t.anchors[1].corner_index, t.anchors[2].corner_index};
    jt["corner_points"] = {vec2_json(t.anchors[1].fixed_point),
                           vec2_json(t.anchors[2].fixed_point)};
    jt["gt"] = gt_json(t);
    doc["o2r"].push_back(std::move(jt));
  }

  doc["o2o"] = json::array();
  for (const auto& t : set.o2o) {
    json jt;
    jt["region"] = t.region_id;
    json ids = json::array();
    for (const auto& a : t.anchors)
      if (a.kind == AnchorKind::ObjectCentroid) ids.push_back(a.object_id);
    jt["objects"] = std::move(ids);
    if (t.anchors[2].kind == AnchorKind::VirtualPoint)
      jt["virtual"] = vec2_json(t.anchors[2].fixed_point);
    jt["gt"] = gt_json(t);
    doc["o2o"].push_back(std::move(jt));
  }

  doc["c2c"] = json::array();
  for (const auto& t : set.c2c) {
    json jt;
    jt["region"] = t.region_id;
    json corners = json::array();
    for (const auto& a : t.anchors)
      corners.push_back({{"object", a.object_id}, {"corner", a.corner_index}});
    jt["corners"] = std::move(corners);
    jt["gt"] = gt_json(t);
    doc["c2c"].push_back(std::move(jt));
  }

  doc["diagnostics"] = set.diagnostics;
  return doc.dump(2) + "\n";
}

TripletSet triplet_set_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("triplet JSON parse failure: ") + e.what());
  }

  TripletSet set;
  const auto& jn = doc.at("normalization");
  set.transform.scale = jn.at("scale").get<double>();
  set.transform.offset = vec2_from(jn.at("offset"));
  set.config.strategy = o2o_strategy_from_string(doc.at("strategy").get<std::string>());
  const auto& jc = doc.at("cluster");
  set.config.cluster.eps = jc.at("eps").get<double>();
  set.config.cluster.min_samples = jc.at("min_samples").get<int>();
  set.config.cluster.lambda_giou = jc.at("lambda_giou").get<double>();

  for (const auto& jr : doc.at("regions")) {
    FunctionalRegion r;
    r.id = jr.at("id").get<int>();
    r.member_ids = jr.at("members").get<std::vector<int>>();
    r.rect = {vec2_from(jr.at("rect").at(0)), vec2_from(jr.at("rect").at(1))};
    set.regions.push_back(std::move(r));
  }

  for (const auto& jt : doc.at("o2r")) {
    Triplet t;
    t.kind = TripletKind::O2R;
    t.region_id = jt.at("region").get<int>();
    const int object = jt.at("object").get<int>();
    t.anchors[0] = Anchor::centroid(object);
    for (int i = 0; i < 2; ++i)
      t.anchors[i + 1] = Anchor::region_corner(t.region_id,
                                               jt.at("corners").at(i).get<int>(),
                                               vec2_from(jt.at("corner_points").at(i)));
    gt_from(jt.at("gt"), t);
    set.o2r.push_back(std::move(t));
  }

  for (const auto& jt : doc.at("o2o")) {
    Triplet t;
    t.kind = TripletKind::O2O;
    t.region_id = jt.at("region").get<int>();
    const auto ids = jt.at("objects").get<std::vector<int>>();
    for (size_t i = 0; i < ids.size(); ++i) t.anchors[i] = Anchor::centroid(ids[i]);
    if (jt.contains("virtual")) {
      if (ids.size() != 2)
        throw std::invalid_argument("o2o entry with virtual point must have 2 objects");
      t.anchors[2] = Anchor::virtual_point(vec2_from(jt.at("virtual")));
    } else if (ids.size() != 3) {
      throw std::invalid_argument("o2o entry must reference 3 objects");
    }
    gt_from(jt.at("gt"), t);
    set.o2o.push_back(std::move(t));
  }

  for (const auto& jt : doc.at("c2c")) {
    Triplet t;
    t.kind = TripletKind::C2C;
    t.region_id = jt.at("region").get<int>();
    const auto& corners = jt.at("corners");
    for (int i = 0; i < 3; ++i)
      t.anchors[i] = Anchor::corner(corners.at(i).at("object").get<int>(),
                                    corners.at(i).at("corner").get<int>());
    gt_from(jt.at("gt"), t);
    set.c2c.push_back(std::move(t));
  }

  if (doc.contains("diagnostics"))
    set.diagnostics = doc["diagnostics"].get<std::vector<std::string>>();
  return set;
}

TripletSet load_triplet_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open triplet file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return triplet_set_from_json(buf.str());
}

void save_triplet_set(const TripletSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write triplet file: " + path);
  out << triplet_set_to_json(set);
}

}  // namespace hiertriple
