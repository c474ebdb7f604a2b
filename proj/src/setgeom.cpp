#include "cnr/setgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cnr/parallel.hpp"

namespace cnr {

namespace {

double cross(Complex o, Complex a, Complex b) {
  const Complex u = a - o;
  const Complex v = b - o;
  return u.real() * v.imag() - u.imag() * v.real();
}

double segment_distance(Complex a, Complex b, Complex z) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const Complex w = z - a;
  const double t = std::clamp((w.real() * d.real() + w.imag() * d.imag()) / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

void require_nonempty(const PointCloud& a, const char* what) {
  if (a.points.empty()) throw InvalidArgument(std::string(what) + ": empty point cloud");
}

}  // namespace

NearestIndex::NearestIndex(std::span<const Complex> points) : points_(points.begin(), points.end()) {
  if (points_.empty()) throw InvalidArgument("NearestIndex: empty point set");
  double x1 = points_[0].real(), y1 = points_[0].imag();
  x0_ = x1;
  y0_ = y1;
  for (const auto& p : points_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw InvalidArgument("NearestIndex: non-finite point");
    x0_ = std::min(x0_, p.real());
    y0_ = std::min(y0_, p.imag());
    x1 = std::max(x1, p.real());
    y1 = std::max(y1, p.imag());
  }
  const double w = x1 - x0_;
  const double hgt = y1 - y0_;
  const double count = static_cast<double>(points_.size());
  // about two points per cell; the second term bounds the cell count for thin boxes
  h_ = std::max(std::sqrt(2.0 * w * hgt / count), 2.0 * std::max(w, hgt) / count);
  if (!(h_ > 0.0)) h_ = 1.0;
  nx_ = static_cast<long>(std::floor(w / h_)) + 1;
  ny_ = static_cast<long>(std::floor(hgt / h_)) + 1;

  const auto cells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> cell_of(points_.size());
  cell_start_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long cx = std::min(nx_ - 1, static_cast<long>((points_[i].real() - x0_) / h_));
    const long cy = std::min(ny_ - 1, static_cast<long>((points_[i].imag() - y0_) / h_));
    cell_of[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_items_.resize(points_.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) cell_items_[fill[cell_of[i]]++] = i;
}

double NearestIndex::distance(Complex z) const {
  return search(z, std::numeric_limits<std::size_t>::max());
}

double NearestIndex::distance_excluding(Complex z, std::size_t self) const { return search(z, self); }

double NearestIndex::search(Complex z, std::size_t skip) const {
  // Project onto the bounding box: the projection is no farther from any
  // indexed point than z itself, so ring bounds measured from it stay valid.
  const double qx = std::clamp(z.real(), x0_, x0_ + static_cast<double>(nx_) * h_);
  const double qy = std::clamp(z.imag(), y0_, y0_ + static_cast<double>(ny_) * h_);
  const long cx = std::clamp(static_cast<long>((qx - x0_) / h_), 0L, nx_ - 1);
  const long cy = std::clamp(static_cast<long>((qy - y0_) / h_), 0L, ny_ - 1);

  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](long ix, long iy) {
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
    const auto c = static_cast<std::size_t>(iy * nx_ + ix);
    for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
      const std::size_t i = cell_items_[k];
      if (i == skip) continue;
      best = std::min(best, std::abs(z - points_[i]));
    }
  };

  const long max_ring = std::max(nx_, ny_);
  for (long r = 0; r <= max_ring; ++r) {
    if (r == 0) {
      scan(cx, cy);
    } else {
      for (long ix = cx - r; ix <= cx + r; ++ix) {
        scan(ix, cy - r);
        scan(ix, cy + r);
      }
      for (long iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
        scan(cx - r, iy);
        scan(cx + r, iy);
      }
    }
    // unvisited points are at least r cells away
    if (best <= static_cast<double>(r) * h_) break;
  }
  return best;
}

double point_set_distance(Complex z, const PointCloud& a) {
  require_nonempty(a, "point_set_distance");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : a.points) best = std::min(best, std::abs(z - w));
  return best;
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
  require_nonempty(a, "hausdorff");
  require_nonempty(b, "hausdorff");
  const NearestIndex index(b.points);
  std::vector<double> d(a.points.size());
  parallel_for(a.points.size(), [&](std::size_t i) { d[i] = index.distance(a.points[i]); });
  return *std::max_element(d.begin(), d.end());
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ConvexPolygon convex_hull(std::span<const Complex> points) {
  std::vector<Complex> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return {pts};

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return {hull};
}

double hull_signed_distance(const ConvexPolygon& poly, Complex z) {
  const auto& v = poly.vertices;
  if (v.empty()) throw InvalidArgument("hull_signed_distance: empty polygon");
  if (v.size() == 1) return std::abs(z - v[0]);
  if (v.size() == 2) return segment_distance(v[0], v[1], z);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex a = v[i];
    const Complex b = v[(i + 1) % v.size()];
    worst = std::max(worst, -cross(a, b, z) / std::abs(b - a));
  }
  return worst;
}

bool hull_contains(const ConvexPolygon& poly, Complex z, double tol) {
  return hull_signed_distance(poly, z) <= tol;
}

double polygon_distance(const ConvexPolygon& poly, Complex z) {
  const auto& v = poly.vertices;
  if (v.size() >= 3 && hull_signed_distance(poly, z) <= 0.0) return 0.0;
  if (v.size() <= 2) return hull_signed_distance(poly, z);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, segment_distance(v[i], v[(i + 1) % v.size()], z));
  return best;
}

double hausdorff_convex(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.vertices.empty() || b.vertices.empty()) throw InvalidArgument("hausdorff_convex: empty polygon");
  double d = 0.0;
  for (const auto& v : a.vertices) d = std::max(d, polygon_distance(b, v));
  for (const auto& v : b.vertices) d = std::max(d, polygon_distance(a, v));
  return d;
}

double diameter(std::span<const Complex> points) {
  if (points.empty()) return 0.0;
  const auto hull = convex_hull(points);
  double d = 0.0;
  for (std::size_t i = 0; i < hull.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < hull.vertices.size(); ++j)
      d = std::max(d, std::abs(hull.vertices[i] - hull.vertices[j]));
  return d;
}

StarReport star_shaped_wrt(const PointCloud& a, Complex center, double epsilon, int t_grid) {
  require_nonempty(a, "star_shaped_wrt");
  if (!(epsilon > 0.0)) throw InvalidArgument("star_shaped_wrt: epsilon must be positive");
  if (t_grid < 2) throw InvalidArgument("star_shaped_wrt: t_grid must be >= 2");

  const NearestIndex index(a.points);
  struct Worst {
    double gap = -1.0;
    double t = 0.0;
  };
  std::vector<Worst> per_point(a.points.size());
  parallel_for(a.points.size(), [&](std::size_t i) {
    const Complex z = a.points[i];
    Worst w;
    for (int k = 0; k <= t_grid; ++k) {
      const double t = static_cast<double>(k) / t_grid;
      const double d = index.distance(t * z + (1.0 - t) * center);
      if (d > w.gap) w = {d, t};
    }
    per_point[i] = w;
  });

  StarReport report;
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < per_point.size(); ++i)
    if (per_point[i].gap > per_point[worst_index].gap) worst_index = i;
  report.worst_point = a.points[worst_index];
  report.worst_t = per_point[worst_index].t;
  report.worst_gap = per_point[worst_index].gap;
  report.holds = report.worst_gap <= epsilon;
  return report;
}

double covering_radius_estimate(const PointCloud& a) {
  require_nonempty(a, "covering_radius_estimate");
  if (a.points.size() == 1) return 0.0;
  const NearestIndex index(a.points);
  std::vector<double> d(a.points.size());
  parallel_for(a.points.size(), [&](std::size_t i) { d[i] = index.distance_excluding(a.points[i], i); });
  return 2.0 * *std::max_element(d.begin(), d.end());
}

LadderLimitReport set_sequence_limit(std::span<const PointCloud> clouds) {
  if (clouds.size() < 2) throw InvalidArgument("set_sequence_limit: need at least two clouds");
  LadderLimitReport r;
  for (std::size_t i = 0; i + 1 < clouds.size(); ++i) r.pairwise.push_back(hausdorff(clouds[i], clouds[i + 1]));
  const std::size_t tail = std::max<std::size_t>(1, (r.pairwise.size() + 2) / 3);
  r.cauchy_tail = *std::max_element(r.pairwise.end() - static_cast<std::ptrdiff_t>(tail), r.pairwise.end());
  return r;
}

}  // namespace cnr
