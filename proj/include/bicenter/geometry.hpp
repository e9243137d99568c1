#pragma once

/// \file geometry.hpp
/// Planar primitives shared by every solver: points, point pairs, disks,
/// smallest enclosing disks and circumcircle-based candidate radii.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace bicenter {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist2(Point a, Point b) { return norm2(a - b); }
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }
inline Point perp(Point a) { return {-a.y, a.x}; }

struct PointPair {
  Point first;
  Point second;
};

/// A problem instance: a nonempty list of point pairs.
struct Instance {
  std::vector<PointPair> pairs;

  /// Flattened list of all pair points, in pair order (first, second, ...).
  std::vector<Point> all_points() const {
    std::vector<Point> pts;
    pts.reserve(2 * pairs.size());
    for (const auto& pr : pairs) {
      pts.push_back(pr.first);
      pts.push_back(pr.second);
    }
    return pts;
  }
};

struct Disk {
  Point center;
  double radius = 0.0;
};

/// Relative/absolute tolerance policy for containment and radius comparisons.
/// A point p is inside D=(c,r) when |p-c| <= r*(1+rel) + abs*scale, where
/// scale is the coordinate magnitude of the instance.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double inflate(double r, double scale) const { return r * (1.0 + rel) + abs * scale; }
  double length(double scale) const { return rel * scale + abs * scale; }
};

inline double coord_scale(std::span<const Point> pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

inline bool disk_contains(const Disk& d, Point p, const Tolerance& tol, double scale) {
  return dist(p, d.center) <= tol.inflate(d.radius, scale);
}

/// Two congruent disks plus the per-pair coloring certificate.
/// coloring[k] == 0 means pairs[k].first is the red point (in disk1);
/// coloring[k] == 1 means pairs[k].second is.
struct Solution {
  Disk disk1;
  Disk disk2;
  std::vector<std::uint8_t> coloring;
  double radius = 0.0;

  double center_distance() const { return dist(disk1.center, disk2.center); }
};

inline Disk diametral_disk(Point a, Point b) {
  Point c = (a + b) * 0.5;
  return {c, dist(a, b) * 0.5};
}

namespace detail {

// Degenerate when the triangle area is vanishing relative to its extent.
inline bool collinear3(Point a, Point b, Point c) {
  double cr = cross(b - a, c - a);
  double l2 = std::max({dist2(a, b), dist2(a, c), dist2(b, c)});
  return std::abs(cr) <= 1e-13 * l2;
}

// Circumradius via the side-product formula; NaN for degenerate triples.
inline double circumradius3(Point a, Point b, Point c) {
  double cr = cross(b - a, c - a);
  double l2 = std::max({dist2(a, b), dist2(a, c), dist2(b, c)});
  if (std::abs(cr) <= 1e-13 * l2) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(dist2(a, b) * dist2(a, c) * dist2(b, c)) / (2.0 * std::abs(cr));
}

}  // namespace detail

/// Circumcircle through three non-collinear points.
inline std::optional<Disk> circumcircle3(Point a, Point b, Point c) {
  if (detail::collinear3(a, b, c)) return std::nullopt;
  double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
  Point u{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
          (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  double r = std::max({dist(u, a), dist(u, b), dist(u, c)});
  return Disk{u, r};
}

/// Circumcircle of two (diametral disk) or three points.
/// Returns nullopt for a collinear triple; callers fall back to pairs.
inline std::optional<Disk> circumcircle(std::span<const Point> pts) {
  if (pts.size() == 2) return diametral_disk(pts[0], pts[1]);
  if (pts.size() == 3) return circumcircle3(pts[0], pts[1], pts[2]);
  throw std::domain_error("circumcircle: expects 2 or 3 points");
}

namespace detail {

inline bool sed_contains(const Disk& d, Point p) {
  return dist2(p, d.center) <= d.radius * d.radius * (1.0 + 1e-10) + 1e-30;
}

// Smallest disk with all three points on or inside; the circumcircle when no
// diametral disk of a pair already covers the third point.
inline Disk disk_from3(Point a, Point b, Point c) {
  Disk d = diametral_disk(a, b);
  if (sed_contains(d, c)) return d;
  d = diametral_disk(a, c);
  if (sed_contains(d, b)) return d;
  d = diametral_disk(b, c);
  if (sed_contains(d, a)) return d;
  if (auto cc = circumcircle3(a, b, c)) return *cc;
  // Near-degenerate fallback: widest diametral disk.
  Disk best = diametral_disk(a, b);
  for (Disk cand : {diametral_disk(a, c), diametral_disk(b, c)})
    if (cand.radius > best.radius) best = cand;
  return best;
}

}  // namespace detail

inline constexpr std::uint64_t kSedDefaultSeed = 0x5eedb1c3u;

/// Smallest enclosing disk, randomized incremental construction.
/// Deterministic for a fixed input order and seed.
inline Disk smallest_enclosing_disk(std::vector<Point> pts, std::uint64_t seed = kSedDefaultSeed) {
  using detail::sed_contains;
  if (pts.empty()) throw std::domain_error("smallest_enclosing_disk: empty input");
  std::shuffle(pts.begin(), pts.end(), std::mt19937_64(seed));
  Disk d{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (sed_contains(d, pts[i])) continue;
    d = Disk{pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (sed_contains(d, pts[j])) continue;
      d = diametral_disk(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (sed_contains(d, pts[k])) continue;
        d = detail::disk_from3(pts[i], pts[j], pts[k]);
      }
    }
  }
  return d;
}

inline Disk smallest_enclosing_disk(std::span<const Point> pts, std::uint64_t seed = kSedDefaultSeed) {
  return smallest_enclosing_disk(std::vector<Point>(pts.begin(), pts.end()), seed);
}

/// All circumradii of point pairs and non-collinear triples, plus zero.
/// Sorted ascending and deduplicated under the tolerance; contains the
/// smallest-enclosing-disk radius of every subset of the input.
inline std::vector<double> candidate_radii(std::span<const Point> pts, const Tolerance& tol = {}) {
  std::size_t n = pts.size();
  if (n < 2) throw std::domain_error("candidate_radii: needs at least 2 points");
  double scale = coord_scale(pts);
  std::vector<double> vals;
  vals.reserve(1 + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6);
  vals.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vals.push_back(dist(pts[i], pts[j]) * 0.5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        double r = detail::circumradius3(pts[i], pts[j], pts[k]);
        if (std::isfinite(r)) vals.push_back(r);
      }
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  out.reserve(vals.size());
  for (double v : vals) {
    if (!out.empty() && v - out.back() <= tol.rel * std::max(1.0, v) + tol.abs * scale) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace bicenter
