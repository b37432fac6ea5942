#include "hiertriple/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hiertriple {

namespace {

constexpr double kDegenerateArea2 = 2e-12;  // doubled area threshold (1e-12 area)
constexpr double kZeroMass = 1e-12;

void validate_config(const RasterConfig& cfg) {
  if (cfg.resolution < 8) throw std::invalid_argument("raster: resolution must be >= 8");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("raster: tau must be positive");
  if (!(cfg.pixel_scale() > 0.0))
    throw std::invalid_argument("raster: margin leaves no canvas");
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct SdfEval {
  double sd = 0.0;                // signed distance, negative inside
  std::array<Vec2, 3> grad{};    // d(sd)/d(vertex k), pixel units
};

/// Signed distance from p to the triangle boundary; orientation-agnostic
/// (orient = sign of the doubled area, passed in).
SdfEval triangle_sdf(const std::array<Vec2, 3>& t, double orient, const Vec2& p,
                     bool want_grad) {
  int best_edge = 0;
  double best_dist = 0.0, best_t = 0.0;
  Vec2 best_q;
  bool inside = true;
  for (int e = 0; e < 3; ++e) {
    const Vec2& u = t[e];
    const Vec2& w = t[(e + 1) % 3];
    const Vec2 d = w - u;
    const double len2 = norm2(d);
    const double tt = len2 > 0.0 ? std::clamp(dot(p - u, d) / len2, 0.0, 1.0) : 0.0;
    const Vec2 q = u + d * tt;
    const double dist = norm(p - q);
    if (e == 0 || dist < best_dist) {
      best_edge = e;
      best_dist = dist;
      best_t = tt;
      best_q = q;
    }
    if (orient * cross(d, p - u) < 0.0) inside = false;
  }
  SdfEval out;
  const double s = inside ? -1.0 : 1.0;
  out.sd = s * best_dist;
  if (!want_grad) return out;

  const int i = best_edge, j = (best_edge + 1) % 3;
  Vec2 nhat;
  if (best_dist > 1e-12) {
    nhat = (p - best_q) / best_dist;  // d(dist)/dp
  } else {
    const Vec2 d = t[j] - t[i];
    nhat = perp_ccw(d) * (-orient / std::max(norm(d), 1e-300));
  }
  // sd = s * |p - q(u, w)| with q the clamped projection; the envelope along
  // the clamp makes d(dist)/du = -(1 - t) nhat and d(dist)/dw = -t nhat.
  const Vec2 gu = nhat * (-s * (1.0 - best_t));
  const Vec2 gw = nhat * (-s * best_t);
  out.grad[i] = gu * (best_dist > 1e-12 ? 1.0 : s);  // boundary limit keeps -N
  out.grad[j] = gw * (best_dist > 1e-12 ? 1.0 : s);
  return out;
}

struct Window {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // inclusive; empty when x1 < x0
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  bool empty() const { return x1 < x0 || y1 < y0; }
};

Window support_window(const std::array<Vec2, 3>& a, const std::array<Vec2, 3>& b,
                      const RasterConfig& cfg) {
  const double pad = std::max(8.0, std::ceil(40.0 * cfg.tau));
  Aabb box{a[0], a[0]};
  for (const auto& v : a) box.expand(v);
  for (const auto& v : b) box.expand(v);
  Window w;
  w.x0 = std::max(0, static_cast<int>(std::floor(box.min.x - pad)));
  w.y0 = std::max(0, static_cast<int>(std::floor(box.min.y - pad)));
  w.x1 = std::min(cfg.resolution - 1, static_cast<int>(std::ceil(box.max.x + pad)));
  w.y1 = std::min(cfg.resolution - 1, static_cast<int>(std::ceil(box.max.y + pad)));
  return w;
}

struct EdgeLabels {
  std::array<std::string, 3> label;
};

EdgeLabels anchor_labels(const Triplet& t, const Layout& layout) {
  EdgeLabels out;
  for (int i = 0; i < 3; ++i) {
    const Anchor& a = t.anchors[i];
    switch (a.kind) {
      case AnchorKind::ObjectCentroid:
      case AnchorKind::ObjectCorner: {
        const SceneObject* obj = layout.find(a.object_id);
        out.label[i] = obj ? obj->category : "__missing";
        break;
      }
      case AnchorKind::RegionCorner:
        out.label[i] = "__region";
        break;
      case AnchorKind::VirtualPoint:
        out.label[i] = "__virtual";
        break;
    }
  }
  return out;
}

struct Alignment {
  std::array<Vec2, 3> aligned;  // normalized coordinates
  // Jacobian blocks d(aligned_k)/d(resolved_j) decomposed as
  //   rot * (k == j ? 1 : 0 - third) * I  +  u_k * g_j^T
  double rot_c = 1.0, rot_s = 0.0;  // rotation applied (identity for None)
  double diag = 1.0, off = 0.0;     // coefficient of I for k==j / k!=j
  std::array<Vec2, 3> u{};          // rotation-derivative column
  std::array<Vec2, 3> g{};          // d(phi)/d(resolved_j)
  bool rotation_fallback = false;
};

Alignment align_triplet(const std::array<Vec2, 3>& resolved, const Triplet& triplet,
                        const EdgeLabels& labels, AlignMode mode) {
  Alignment out;
  if (mode == AlignMode::None) {
    out.aligned = resolved;
    return out;
  }
  const Vec2 c = (resolved[0] + resolved[1] + resolved[2]) / 3.0;
  const Vec2 gt_c = (triplet.gt[0] + triplet.gt[1] + triplet.gt[2]) / 3.0;
  out.diag = 1.0 - 1.0 / 3.0;
  out.off = -1.0 / 3.0;
  if (mode == AlignMode::Translation) {
    for (int k = 0; k < 3; ++k) out.aligned[k] = resolved[k] - c + gt_c;
    return out;
  }

  // Rotation: pick the matching-label edge with the longest ground-truth
  // length (ties by lower edge indices), rotate about the shared centroid so
  // the denoised edge direction meets the ground-truth one.
  static constexpr std::array<std::array<int, 2>, 3> kEdges{{{0, 1}, {1, 2}, {2, 0}}};
  int best_i = -1, best_j = -1;
  bool best_swapped = false;
  double best_len = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto [p, q] = std::pair{kEdges[i][0], kEdges[i][1]};
      const auto [r, s] = std::pair{kEdges[j][0], kEdges[j][1]};
      const bool direct = labels.label[p] == labels.label[r] &&
                          labels.label[q] == labels.label[s];
      const bool swapped = labels.label[p] == labels.label[s] &&
                           labels.label[q] == labels.label[r];
      if (!direct && !swapped) continue;
      const double len = norm(triplet.gt[s] - triplet.gt[r]);
      if (len > best_len + 1e-15) {
        best_len = len;
        best_i = i;
        best_j = j;
        best_swapped = !direct;
      }
    }
  if (best_i < 0) {  // no matching labels: longest edge to longest edge
    out.rotation_fallback = true;
    double dlen = -1.0, glen = -1.0;
    for (int e = 0; e < 3; ++e) {
      const double dl = norm(resolved[kEdges[e][1]] - resolved[kEdges[e][0]]);
      const double gl = norm(triplet.gt[kEdges[e][1]] - triplet.gt[kEdges[e][0]]);
      if (dl > dlen) {
        dlen = dl;
        best_i = e;
      }
      if (gl > glen) {
        glen = gl;
        best_j = e;
      }
    }
    best_swapped = false;
  }

  const int p = kEdges[best_i][0], q = kEdges[best_i][1];
  int r = kEdges[best_j][0], s = kEdges[best_j][1];
  if (best_swapped) std::swap(r, s);
  const Vec2 e_den = resolved[q] - resolved[p];
  const Vec2 e_gt = triplet.gt[s] - triplet.gt[r];
  const double theta_den = std::atan2(e_den.y, e_den.x);
  const double theta_gt = std::atan2(e_gt.y, e_gt.x);
  const double phi = theta_gt - theta_den;
  out.rot_c = std::cos(phi);
  out.rot_s = std::sin(phi);

  for (int k = 0; k < 3; ++k) {
    const Vec2 d = resolved[k] - c;
    out.aligned[k] = Vec2{out.rot_c * d.x - out.rot_s * d.y,
                          out.rot_s * d.x + out.rot_c * d.y} +
                     gt_c;
    // d(aligned_k)/d(phi) = R'(phi) (resolved_k - c)
    out.u[k] = {-out.rot_s * d.x - out.rot_c * d.y,
                out.rot_c * d.x - out.rot_s * d.y};
  }
  const double len2 = std::max(norm2(e_den), 1e-300);
  const Vec2 dphi_de{e_den.y / len2, -e_den.x / len2};  // phi = gt - atan2(e)
  out.g[p] = dphi_de * -1.0;
  out.g[q] = dphi_de;
  return out;
}

struct TripletEval {
  double loss = 0.0;  // 1 - IoU
  bool degenerate = false;
  bool rotation_fallback = false;
  std::array<Vec2, 3> dloss_dR{};  // w.r.t. resolved vertices, normalized units
};

TripletEval eval_triplet(const std::array<Vec2, 3>& resolved, const Triplet& triplet,
                         const EdgeLabels& labels, AlignMode mode,
                         const RasterConfig& cfg, bool want_grad) {
  TripletEval out;
  if (std::abs(orient2d(resolved[0], resolved[1], resolved[2])) < kDegenerateArea2) {
    out.loss = 1.0;
    out.degenerate = true;
    return out;
  }

  const Alignment al = align_triplet(resolved, triplet, labels, mode);
  out.rotation_fallback = al.rotation_fallback;

  std::array<Vec2, 3> dpx, gpx;
  for (int k = 0; k < 3; ++k) {
    dpx[k] = cfg.to_pixels(al.aligned[k]);
    gpx[k] = cfg.to_pixels(triplet.gt[k]);
  }
  const double orient_d = orient2d(dpx[0], dpx[1], dpx[2]) >= 0.0 ? 1.0 : -1.0;
  const double orient_g = orient2d(gpx[0], gpx[1], gpx[2]) >= 0.0 ? 1.0 : -1.0;

  const Window win = support_window(dpx, gpx, cfg);
  if (win.empty()) {
    out.loss = 1.0;
    return out;
  }

  const int wpx = win.width(), hpx = win.height();
  std::vector<double> abuf, bbuf;
  if (want_grad) {
    abuf.resize(static_cast<size_t>(wpx) * hpx);
    bbuf.resize(static_cast<size_t>(wpx) * hpx);
  }
  double sum_min = 0.0, sum_max = 0.0;
  for (int iy = win.y0; iy <= win.y1; ++iy)
    for (int ix = win.x0; ix <= win.x1; ++ix) {
      const Vec2 p{ix + 0.5, iy + 0.5};
      const double a = sigmoid(-triangle_sdf(dpx, orient_d, p, false).sd / cfg.tau);
      const double b = sigmoid(-triangle_sdf(gpx, orient_g, p, false).sd / cfg.tau);
      sum_min += std::min(a, b);
      sum_max += std::max(a, b);
      if (want_grad) {
        const size_t o = static_cast<size_t>(iy - win.y0) * wpx + (ix - win.x0);
        abuf[o] = a;
        bbuf[o] = b;
      }
    }

  if (sum_max <= kZeroMass) {
    out.loss = 1.0;  // both images empty on-canvas
    return out;
  }
  const double iou = sum_min / sum_max;
  out.loss = 1.0 - iou;
  if (!want_grad) return out;

  // d(loss)/d(aligned pixel vertices), then back through the canvas scale,
  // the alignment Jacobian and finally to the resolved vertices.
  std::array<Vec2, 3> dloss_dpx{};
  const double inv_max2 = 1.0 / (sum_max * sum_max);
  for (int iy = win.y0; iy <= win.y1; ++iy)
    for (int ix = win.x0; ix <= win.x1; ++ix) {
      const size_t o = static_cast<size_t>(iy - win.y0) * wpx + (ix - win.x0);
      const double a = abuf[o], b = bbuf[o];
      if (a == b) continue;  // ties contribute no derivative
      const double diou_da = (a < b ? sum_max : -sum_min) * inv_max2;
      const double sprime = a * (1.0 - a);
      if (std::abs(diou_da) * sprime < 1e-18) continue;
      const Vec2 p{ix + 0.5, iy + 0.5};
      const SdfEval sd = triangle_sdf(dpx, orient_d, p, true);
      const double da_dsd = -sprime / cfg.tau;
      const double dloss_da = -diou_da;
      for (int k = 0; k < 3; ++k)
        dloss_dpx[k] += sd.grad[k] * (dloss_da * da_dsd);
    }

  const double scale = cfg.pixel_scale();
  std::array<Vec2, 3> dloss_daligned;
  for (int k = 0; k < 3; ++k) dloss_daligned[k] = dloss_dpx[k] * scale;

  for (int j = 0; j < 3; ++j) {
    Vec2 acc{0.0, 0.0};
    double phi_acc = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double coef = (k == j) ? al.diag : al.off;
      const Vec2& v = dloss_daligned[k];
      // transpose of (coef * R(phi)): R(-phi) * v * coef
      acc += Vec2{al.rot_c * v.x + al.rot_s * v.y,
                  -al.rot_s * v.x + al.rot_c * v.y} *
             coef;
      phi_acc += dot(al.u[k], v);
    }
    out.dloss_dR[j] = acc + al.g[j] * phi_acc;
  }
  return out;
}

struct KindAccum {
  double loss_sum = 0.0;
  int count = 0;
  int degenerate = 0;
  int fallbacks = 0;
};

void accumulate_kind(const std::vector<Triplet>& triplets, const Layout& layout,
                     AlignMode mode, const RasterConfig& cfg, double lambda_over_n,
                     bool want_grad, KindAccum& acc,
                     std::map<int, PoseGradient>* grads) {
  for (const auto& t : triplets) {
    const auto resolved = resolve(t, layout);
    const EdgeLabels labels = anchor_labels(t, layout);
    const TripletEval ev = eval_triplet(resolved, t, labels, mode, cfg, want_grad);
    acc.loss_sum += ev.loss;
    acc.count += 1;
    acc.degenerate += ev.degenerate ? 1 : 0;
    acc.fallbacks += ev.rotation_fallback ? 1 : 0;
    if (!want_grad || ev.degenerate) continue;
    for (int j = 0; j < 3; ++j) {
      const Anchor& a = t.anchors[j];
      if (a.kind != AnchorKind::ObjectCentroid && a.kind != AnchorKind::ObjectCorner)
        continue;
      PoseGradient& g = (*grads)[a.object_id];
      const Vec2 gv = ev.dloss_dR[j] * lambda_over_n;
      g.x += gv.x;
      g.y += gv.y;
      if (a.kind == AnchorKind::ObjectCorner) {
        const SceneObject* obj = layout.find(a.object_id);
        const Vec2 arm = resolved[j] - obj->centroid_xy();
        g.theta += dot(ev.dloss_dR[j] * lambda_over_n, perp_ccw(arm));
      }
    }
  }
}

double kind_loss(const std::vector<Triplet>& triplets, const Layout& layout,
                 AlignMode mode, const RasterConfig& cfg) {
  if (triplets.empty()) return 0.0;
  KindAccum acc;
  accumulate_kind(triplets, layout, mode, cfg, 0.0, false, acc, nullptr);
  return acc.loss_sum / acc.count;
}

}  // namespace

double OccupancyImage::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

AlignMode align_mode_from_string(const std::string& s) {
  if (s == "none") return AlignMode::None;
  if (s == "translation") return AlignMode::Translation;
  if (s == "rotation") return AlignMode::Rotation;
  throw std::invalid_argument("unknown align mode: " + s);
}

std::string to_string(AlignMode m) {
  switch (m) {
    case AlignMode::None: return "none";
    case AlignMode::Translation: return "translation";
    case AlignMode::Rotation: return "rotation";
  }
  return "translation";
}

OccupancyImage rasterize_soft(const std::array<Vec2, 3>& tri, const RasterConfig& cfg) {
  validate_config(cfg);
  if (std::abs(orient2d(tri[0], tri[1], tri[2])) < kDegenerateArea2)
    throw std::invalid_argument("rasterize_soft: degenerate triangle");
  std::array<Vec2, 3> px;
  for (int k = 0; k < 3; ++k) px[k] = cfg.to_pixels(tri[k]);
  const double orient = orient2d(px[0], px[1], px[2]) >= 0.0 ? 1.0 : -1.0;

  OccupancyImage img;
  img.resolution = cfg.resolution;
  img.values.assign(static_cast<size_t>(cfg.resolution) * cfg.resolution, 0.0);
  for (int iy = 0; iy < cfg.resolution; ++iy)
    for (int ix = 0; ix < cfg.resolution; ++ix) {
      const Vec2 p{ix + 0.5, iy + 0.5};
      const double sd = triangle_sdf(px, orient, p, false).sd;
      img.values[static_cast<size_t>(iy) * cfg.resolution + ix] =
          std::clamp(sigmoid(-sd / cfg.tau), 0.0, 1.0);
    }
  return img;
}

OccupancyImage rasterize_hard(const std::array<Vec2, 3>& tri, const RasterConfig& cfg) {
  validate_config(cfg);
  if (std::abs(orient2d(tri[0], tri[1], tri[2])) < kDegenerateArea2)
    throw std::invalid_argument("rasterize_hard: degenerate triangle");
  std::array<Vec2, 3> px;
  for (int k = 0; k < 3; ++k) px[k] = cfg.to_pixels(tri[k]);
  const double orient = orient2d(px[0], px[1], px[2]) >= 0.0 ? 1.0 : -1.0;

  OccupancyImage img;
  img.resolution = cfg.resolution;
  img.values.assign(static_cast<size_t>(cfg.resolution) * cfg.resolution, 0.0);
  for (int iy = 0; iy < cfg.resolution; ++iy)
    for (int ix = 0; ix < cfg.resolution; ++ix) {
      const Vec2 p{ix + 0.5, iy + 0.5};
      img.values[static_cast<size_t>(iy) * cfg.resolution + ix] =
          triangle_sdf(px, orient, p, false).sd <= 0.0 ? 1.0 : 0.0;
    }
  return img;
}

double soft_iou(const OccupancyImage& a, const OccupancyImage& b) {
  if (a.resolution != b.resolution || a.values.size() != b.values.size())
    throw std::invalid_argument("soft_iou: resolution mismatch");
  double smin = 0.0, smax = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    smin += std::min(a.values[i], b.values[i]);
    smax += std::max(a.values[i], b.values[i]);
  }
  return smax <= kZeroMass ? 0.0 : smin / smax;
}

double loss_o2r(const Layout& denoised, const TripletSet& set, const RasterConfig& cfg) {
  validate_config(cfg);
  return kind_loss(set.o2r, denoised, AlignMode::None, cfg);
}

double loss_o2o(const Layout& denoised, const TripletSet& set, const RasterConfig& cfg,
                AlignMode align) {
  validate_config(cfg);
  return kind_loss(set.o2o, denoised, align, cfg);
}

double loss_c2c(const Layout& denoised, const TripletSet& set, const RasterConfig& cfg,
                AlignMode align) {
  validate_config(cfg);
  return kind_loss(set.c2c, denoised, align, cfg);
}

LossBreakdown total_relational_loss(const Layout& denoised, const TripletSet& set,
                                    const LossWeights& weights, const RasterConfig& cfg,
                                    AlignMode align) {
  validate_config(cfg);
  LossBreakdown out;
  out.o2r = kind_loss(set.o2r, denoised, AlignMode::None, cfg);
  out.o2o = kind_loss(set.o2o, denoised, align, cfg);
  out.c2c = kind_loss(set.c2c, denoised, align, cfg);
  out.total = weights.lambda_o2r * out.o2r + weights.lambda_o2o * out.o2o +
              weights.lambda_c2c * out.c2c;
  return out;
}

GradientResult loss_gradient(const Layout& denoised, const TripletSet& set,
                             const LossWeights& weights, const RasterConfig& cfg,
                             AlignMode align) {
  validate_config(cfg);
  GradientResult out;
  for (const auto& obj : denoised.objects) out.by_object[obj.id];  // zero-init all

  struct KindSpec {
    const std::vector<Triplet>* triplets;
    AlignMode mode;
    double lambda;
    double* slot;
  };
  const std::array<KindSpec, 3> kinds{
      KindSpec{&set.o2r, AlignMode::None, weights.lambda_o2r, &out.loss.o2r},
      KindSpec{&set.o2o, align, weights.lambda_o2o, &out.loss.o2o},
      KindSpec{&set.c2c, align, weights.lambda_c2c, &out.loss.c2c}};

  for (const auto& kind : kinds) {
    if (kind.triplets->empty()) continue;
    KindAccum acc;
    const double f = kind.lambda / static_cast<double>(kind.triplets->size());
    accumulate_kind(*kind.triplets, denoised, kind.mode, cfg, f, true, acc,
                    &out.by_object);
    *kind.slot = acc.loss_sum / acc.count;
    out.loss.degenerate_skips += acc.degenerate;
  }
  out.loss.total = weights.lambda_o2r * out.loss.o2r + weights.lambda_o2o * out.loss.o2o +
                   weights.lambda_c2c * out.loss.c2c;
  return out;
}

}  // namespace hiertriple
