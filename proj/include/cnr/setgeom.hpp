#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cnr/types.hpp"

namespace cnr {

struct CloudMeta {
  enum class Source { sampled, exact, hull_vertices };
  Source source = Source::exact;
  std::size_t sample_count = 0;
  std::optional<std::uint64_t> seed;
};

// Finite stand-in for a compact subset of the plane.
struct PointCloud {
  std::vector<Complex> points;
  CloudMeta meta;
};

// Counterclockwise hull vertices. One vertex is a point, two a segment.
struct ConvexPolygon {
  std::vector<Complex> vertices;
};

// Uniform-grid nearest-neighbour index over a fixed point set. Distances are
// computed exactly as std::abs(z - w), so results equal a linear scan.
class NearestIndex {
 public:
  explicit NearestIndex(std::span<const Complex> points);

  double distance(Complex z) const;
  // Distance to the nearest point other than points[self].
  double distance_excluding(Complex z, std::size_t self) const;

 private:
  double search(Complex z, std::size_t skip) const;

  std::vector<Complex> points_;
  std::vector<std::size_t> cell_start_;  // CSR layout: cell -> [start, start+1)
  std::vector<std::size_t> cell_items_;
  double x0_ = 0.0, y0_ = 0.0, h_ = 1.0;
  long nx_ = 1, ny_ = 1;
};

// d(z, A) = min_{w in A} |z - w|
double point_set_distance(Complex z, const PointCloud& a);

// max_{z in A} d(z, B)
double directed_hausdorff(const PointCloud& a, const PointCloud& b);
double hausdorff(const PointCloud& a, const PointCloud& b);

ConvexPolygon convex_hull(std::span<const Complex> points);
inline ConvexPolygon convex_hull(const PointCloud& a) { return convex_hull(a.points); }

// True iff the signed distance of z to every edge line is <= tol. Point and
// segment polygons use the Euclidean distance instead.
bool hull_contains(const ConvexPolygon& poly, Complex z, double tol);

// Largest signed edge distance of z (<= 0 inside).
double hull_signed_distance(const ConvexPolygon& poly, Complex z);

// Euclidean distance from z to the filled polygon (0 inside).
double polygon_distance(const ConvexPolygon& poly, Complex z);

// Hausdorff distance between the filled convex polygons; exact, since the
// farthest point of a convex polygon from a convex set is a vertex.
double hausdorff_convex(const ConvexPolygon& a, const ConvexPolygon& b);

double diameter(std::span<const Complex> points);
inline double diameter(const ConvexPolygon& p) { return diameter(p.vertices); }

struct StarReport {
  bool holds = false;
  Complex worst_point;
  double worst_t = 0.0;
  double worst_gap = 0.0;  // largest d(t z + (1 - t) c, A) encountered
};

// Checks d(t z + (1-t) c, A) <= epsilon for all z in A, t = k / t_grid. A pass
// certifies that the epsilon-dilation of A is star-shaped with respect to c.
StarReport star_shaped_wrt(const PointCloud& a, Complex center, double epsilon, int t_grid = 64);

// Twice the largest nearest-neighbour distance in the cloud.
double covering_radius_estimate(const PointCloud& a);

struct LadderLimitReport {
  std::vector<double> pairwise;  // Hausdorff distance of consecutive clouds
  double cauchy_tail = 0.0;      // max of pairwise over the final third
};

LadderLimitReport set_sequence_limit(std::span<const PointCloud> clouds);

}  // namespace cnr
