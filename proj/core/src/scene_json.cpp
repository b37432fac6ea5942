#include "hiertriple/scene_json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hiertriple {

using nlohmann::json;

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* k) { return it.key() == k; });
    if (!known)
      throw std::invalid_argument(std::string("unknown key \"") + it.key() +
                                  "\" in " + where);
  }
}

Vec3 parse_vec3(const json& a, const char* what) {
  if (!a.is_array() || a.size() != 3)
    throw std::invalid_argument(std::string(what) + " must be a 3-element array");
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

}  // namespace

Layout parse_scene_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scene JSON parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("scene document must be an object");
  require_keys(doc, {"objects", "floorplan"}, "scene document");
  if (!doc.contains("objects") || !doc["objects"].is_array())
    throw std::invalid_argument("scene document requires an \"objects\" array");

  Layout layout;
  for (const auto& jo : doc["objects"]) {
    require_keys(jo, {"id", "category", "size", "position", "orientation", "feature"},
                 "object");
    SceneObject o;
    o.id = jo.at("id").get<int>();
    o.category = jo.at("category").get<std::string>();
    o.size = parse_vec3(jo.at("size"), "size");
    o.position = parse_vec3(jo.at("position"), "position");
    const auto& orient = jo.at("orientation");
    if (!orient.is_array() || orient.size() != 2)
      throw std::invalid_argument("orientation must be [cos, sin]");
    o.orientation = {orient[0].get<double>(), orient[1].get<double>()};
    if (jo.contains("feature")) {
      const auto& f = jo["feature"];
      if (!f.is_array() || f.size() != 32)
        throw std::invalid_argument("feature must be a 32-element array");
      std::array<double, 32> feat{};
      for (size_t i = 0; i < 32; ++i) feat[i] = f[i].get<double>();
      o.shape_feature = feat;
    }
    layout.objects.push_back(std::move(o));
  }
  if (doc.contains("floorplan")) {
    std::vector<Vec2> poly;
    for (const auto& jp : doc["floorplan"]) {
      if (!jp.is_array() || jp.size() != 2)
        throw std::invalid_argument("floorplan vertices must be [x, y]");
      poly.push_back({jp[0].get<double>(), jp[1].get<double>()});
    }
    layout.floorplan = std::move(poly);
  }
  layout.bounds = default_bounds(layout.objects, layout.floorplan);
  return layout;
}

Layout load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene_json(buf.str());
}

std::string scene_to_json(const Layout& layout) {
  json doc;
  doc["objects"] = json::array();

  std::vector<const SceneObject*> ordered;
  ordered.reserve(layout.objects.size());
  for (const auto& o : layout.objects) ordered.push_back(&o);
  std::sort(ordered.begin(), ordered.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });

  for (const SceneObject* o : ordered) {
    json jo;
    jo["id"] = o->id;
    jo["category"] = o->category;
    jo["size"] = {o->size.x, o->size.y, o->size.z};
    jo["position"] = {o->position.x, o->position.y, o->position.z};
    jo["orientation"] = {o->orientation.x, o->orientation.y};
    if (o->shape_feature) jo["feature"] = *o->shape_feature;
    doc["objects"].push_back(std::move(jo));
  }
  if (layout.floorplan) {
    doc["floorplan"] = json::array();
    for (const auto& p : *layout.floorplan) doc["floorplan"].push_back({p.x, p.y});
  }
  return doc.dump(2) + "\n";
}

void save_scene(const Layout& layout, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scene file: " + path);
  out << scene_to_json(layout);
}

}  // namespace hiertriple
