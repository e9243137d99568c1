#pragma once

/// \file regions.hpp
/// Region primitives built from congruent disks:
///   CommonIntersection — the convex common intersection of disks D_r(a), a in A;
///   UnionChain        — the star-shaped intersection over pairs of D_r(p) u D_r(p');
/// plus the closed/open region intersection test and horizontal line queries.
///
/// All constructions inflate the nominal radius by the tolerance policy, so
/// regions that degenerate exactly at a candidate radius (lenses pinching to a
/// point) stay representable.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bicenter/geometry.hpp"

namespace bicenter {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

namespace detail {

inline double norm_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// Representative in [-pi, pi).
inline double norm_pm(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r >= std::numbers::pi_v<double>) r -= kTwoPi;
  return r;
}

inline double angle_of(Point v) { return std::atan2(v.y, v.x); }

// Intersection points of two circles; tangency collapses to one point.
inline int circle_circle(Point c0, double r0, Point c1, double r1, std::array<Point, 2>& out) {
  double d2 = dist2(c0, c1);
  if (d2 == 0.0) return 0;
  double d = std::sqrt(d2);
  double l = (d2 + r0 * r0 - r1 * r1) / (2.0 * d);
  double h2 = r0 * r0 - l * l;
  if (h2 < -1e-8 * std::max({r0 * r0, r1 * r1, 1e-300})) return 0;
  double h = std::sqrt(std::max(h2, 0.0));
  Point dir = (c1 - c0) * (1.0 / d);
  Point base = c0 + dir * l;
  Point off = perp(dir) * h;
  out[0] = base + off;
  out[1] = base - off;
  return dist2(out[0], out[1]) <= 1e-28 * std::max(1.0, d2) ? 1 : 2;
}

// Strict convex hull (ccw); collinear points are dropped.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  double s = coord_scale(pts);
  double eps = 1e-14 * s * s;
  std::vector<Point> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
    h[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h.empty() ? std::vector<Point>{pts[0]} : h;
}

// Forward hit distance of the ray anchor + t*u(theta) against circle(site, r),
// assuming the anchor lies in the disk.
inline double far_dist(Point site, Point anchor, double r, double theta) {
  Point u{std::cos(theta), std::sin(theta)};
  Point w = site - anchor;
  double t = dot(w, u);
  double disc = r * r - (norm2(w) - t * t);
  double s = std::sqrt(std::max(disc, 0.0));
  return std::max(t + s, 0.0);
}

}  // namespace detail

/// One circular boundary arc: the ccw portion of circle(site, r) between
/// angles a0 and a1 (measured at the site, a1 >= a0).
struct BoundaryArc {
  Point site;
  double a0 = 0.0;
  double a1 = 0.0;

  Point at(double ang, double r) const { return site + Point{std::cos(ang), std::sin(ang)} * r; }
  bool in_range(double ang) const {
    constexpr double eps = 1e-9;
    double lift = a0 + detail::norm_angle(ang - a0);
    return lift <= a1 + eps || lift >= a0 + kTwoPi - eps;
  }
};

/// Horizontal slice of a convex region: { x : (x, line_y) in region }.
struct Interval1D {
  double lo = 0.0;
  double hi = 0.0;
  double line_y = 0.0;
  bool empty = true;
};

/// Common intersection I_r(A) of congruent disks centered at the sites.
/// Convex; the boundary is a cyclic sequence of arcs. Only convex-hull
/// vertices of A constrain the region, so `sites` holds the hull.
struct CommonIntersection {
  double radius = 0.0;
  double radius_eff = 0.0;
  bool empty = false;
  std::vector<Point> sites;         // hull of the input sites
  std::vector<BoundaryArc> arcs;    // ccw boundary; nonempty iff !empty
  std::vector<Point> vertices;      // arc start points, ccw
  Point inner;                      // interior reference for angular lookup
  bool healthy = false;             // angular lookup valid
  std::vector<double> vangles;      // vertex angles from inner, rotated ascending
  std::size_t vrot = 0;

  bool contains_all_sites(Point q) const {
    if (empty) return false;
    double r2 = radius_eff * radius_eff;
    for (const auto& s : sites)
      if (dist2(q, s) > r2) return false;
    return true;
  }

  /// Membership through the boundary structure (falls back to the per-site
  /// test for degenerate regions).
  bool contains(Point q) const {
    if (empty) return false;
    if (!healthy) return contains_all_sites(q);
    double th = detail::angle_of(q - inner);
    auto it = std::upper_bound(vangles.begin(), vangles.end(), th);
    std::size_t pos = (it == vangles.begin()) ? vangles.size() - 1 : std::size_t(it - vangles.begin()) - 1;
    const BoundaryArc& arc = arcs[(vrot + pos) % arcs.size()];
    return dist(q, arc.site) <= radius_eff;
  }

  /// Intersections of the boundary with circle(c, rc).
  std::vector<Point> boundary_circle_crossings(Point c, double rc) const {
    std::vector<Point> out;
    if (empty) return out;
    std::array<Point, 2> z;
    for (const auto& arc : arcs) {
      int m = detail::circle_circle(arc.site, radius_eff, c, rc, z);
      for (int i = 0; i < m; ++i)
        if (arc.in_range(detail::angle_of(z[i] - arc.site))) out.push_back(z[i]);
    }
    return out;
  }
};

namespace detail {

struct Crossing {
  std::size_t arc;
  double ang;    // lifted into the arc range
  Point z;
  double key;    // position along the boundary walk
};

// Sub-arcs of the boundary walked forward from crossing A to crossing B.
inline std::vector<BoundaryArc> boundary_piece(const std::vector<BoundaryArc>& arcs, const Crossing& A,
                                               const Crossing& B) {
  std::vector<BoundaryArc> out;
  if (A.arc == B.arc && A.ang <= B.ang) {
    out.push_back({arcs[A.arc].site, A.ang, B.ang});
    return out;
  }
  out.push_back({arcs[A.arc].site, A.ang, arcs[A.arc].a1});
  for (std::size_t i = (A.arc + 1) % arcs.size(); i != B.arc; i = (i + 1) % arcs.size()) out.push_back(arcs[i]);
  out.push_back({arcs[B.arc].site, arcs[B.arc].a0, B.ang});
  return out;
}

inline Point piece_representative(const std::vector<BoundaryArc>& piece, double r, Point fallback) {
  for (const auto& a : piece)
    if (a.a1 - a.a0 > 1e-9) return a.at((a.a0 + a.a1) * 0.5, r);
  return fallback;
}

}  // namespace detail

/// Builds I_r(A). Empty input is rejected; r may be zero.
inline CommonIntersection common_intersection(std::span<const Point> A, double r, const Tolerance& tol = {}) {
  if (A.empty()) throw std::domain_error("common_intersection: empty site set");
  if (r < 0) throw std::domain_error("common_intersection: negative radius");
  CommonIntersection out;
  out.radius = r;
  double scale = coord_scale(A);
  double reff = tol.inflate(r, scale);
  out.radius_eff = reff;
  out.sites = detail::convex_hull(std::vector<Point>(A.begin(), A.end()));

  const double pi = std::numbers::pi_v<double>;
  out.arcs = {BoundaryArc{out.sites[0], -pi, pi}};

  std::array<Point, 2> zbuf;
  for (std::size_t si = 1; si < out.sites.size() && !out.empty; ++si) {
    Point b = out.sites[si];
    std::vector<detail::Crossing> cr;
    for (std::size_t ai = 0; ai < out.arcs.size(); ++ai) {
      const BoundaryArc& arc = out.arcs[ai];
      int m = detail::circle_circle(arc.site, reff, b, reff, zbuf);
      for (int t = 0; t < m; ++t) {
        double ang = detail::angle_of(zbuf[t] - arc.site);
        if (!arc.in_range(ang)) continue;
        double lift = arc.a0 + detail::norm_angle(ang - arc.a0);
        if (lift > arc.a1) lift = (lift - arc.a1 < arc.a0 + kTwoPi - lift) ? arc.a1 : arc.a0;
        double span = std::max(arc.a1 - arc.a0, 1e-300);
        cr.push_back({ai, lift, zbuf[t], double(ai) + (lift - arc.a0) / span});
      }
    }
    // Same geometric crossing can register on two adjacent arcs.
    std::sort(cr.begin(), cr.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
    std::vector<detail::Crossing> uniq;
    for (const auto& c : cr) {
      bool dup = false;
      for (const auto& u : uniq)
        if (dist(c.z, u.z) <= 1e-8 * scale) dup = true;
      if (!dup) uniq.push_back(c);
    }
    if (uniq.size() > 2) {
      // keep the two farthest apart
      std::size_t bi = 0, bj = 1;
      double bd = -1;
      for (std::size_t i = 0; i < uniq.size(); ++i)
        for (std::size_t j = i + 1; j < uniq.size(); ++j)
          if (dist2(uniq[i].z, uniq[j].z) > bd) bd = dist2(uniq[i].z, uniq[j].z), bi = i, bj = j;
      uniq = {uniq[bi], uniq[bj]};
      std::sort(uniq.begin(), uniq.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
    }

    if (uniq.size() < 2) {
      // no transversal crossing: region is wholly inside or outside D(b)
      std::size_t longest = 0;
      for (std::size_t ai = 1; ai < out.arcs.size(); ++ai)
        if (out.arcs[ai].a1 - out.arcs[ai].a0 > out.arcs[longest].a1 - out.arcs[longest].a0) longest = ai;
      const BoundaryArc& la = out.arcs[longest];
      Point probe = la.at((la.a0 + la.a1) * 0.5, reff);
      if (dist(probe, b) > reff) {
        out.empty = true;
        out.arcs.clear();
      }
      continue;
    }

    const detail::Crossing& X = uniq[0];
    const detail::Crossing& Y = uniq[1];
    auto pieceXY = detail::boundary_piece(out.arcs, X, Y);
    auto pieceYX = detail::boundary_piece(out.arcs, Y, X);
    double dXY = dist(detail::piece_representative(pieceXY, reff, X.z), b);
    double dYX = dist(detail::piece_representative(pieceYX, reff, Y.z), b);
    bool keepXY = dXY <= dYX;
    if (std::min(dXY, dYX) > reff + 10.0 * tol.length(scale)) {
      out.empty = true;
      out.arcs.clear();
      continue;
    }
    const detail::Crossing& P = keepXY ? X : Y;
    const detail::Crossing& Q = keepXY ? Y : X;
    std::vector<BoundaryArc> kept = keepXY ? std::move(pieceXY) : std::move(pieceYX);

    double ca0 = detail::angle_of(Q.z - b);
    double span = detail::norm_angle(detail::angle_of(P.z - b) - ca0);
    constexpr double eps_a = 1e-9;
    if (span < eps_a || span > kTwoPi - eps_a) span = 1e-12;  // equal radii: a ~2pi closing arc cannot occur
    std::vector<BoundaryArc> next;
    for (const auto& a : kept)
      if (a.a1 - a.a0 > 1e-15) next.push_back(a);
    next.push_back({b, ca0, ca0 + span});
    out.arcs = std::move(next);
  }

  if (!out.empty) {
    out.vertices.reserve(out.arcs.size());
    for (const auto& a : out.arcs) out.vertices.push_back(a.at(a.a0, reff));
    Point c{0, 0};
    for (const auto& v : out.vertices) c = c + v;
    out.inner = (out.arcs.size() == 1) ? out.arcs[0].site : c * (1.0 / double(out.vertices.size()));
    double extent = 0;
    for (const auto& v : out.vertices) extent = std::max(extent, dist(v, out.inner));
    out.healthy = out.arcs.size() >= 2 && extent > 1e-5 * scale;
    if (out.healthy) {
      std::size_t m = out.vertices.size();
      std::vector<double> ang(m);
      for (std::size_t i = 0; i < m; ++i) ang[i] = detail::angle_of(out.vertices[i] - out.inner);
      std::size_t rot = std::size_t(std::min_element(ang.begin(), ang.end()) - ang.begin());
      out.vangles.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.vangles[i] = ang[(rot + i) % m];
      out.vrot = rot;
      if (!std::is_sorted(out.vangles.begin(), out.vangles.end())) {
        out.healthy = false;
        out.vangles.clear();
      }
    }
  }
  return out;
}

/// Star-shaped region U_r(S') around an anchor that covers all pair points.
/// The boundary is the lower envelope, in (angle, distance-from-anchor) space,
/// of the per-pair union boundaries.
struct UnionChain {
  double radius = 0.0;
  double radius_eff = 0.0;
  Point anchor;
  std::vector<PointPair> pairs;
  std::vector<double> piece_start;  // ascending in [-pi, pi); piece k spans to start[k+1]
  std::vector<Point> piece_site;    // pair point whose circle bounds the piece
  std::vector<Point> vertices;      // envelope breakpoints

  std::size_t active_piece(double theta) const {
    double t = detail::norm_pm(theta);
    auto it = std::upper_bound(piece_start.begin(), piece_start.end(), t);
    return (it == piece_start.begin()) ? piece_start.size() - 1 : std::size_t(it - piece_start.begin()) - 1;
  }

  /// Boundary distance from the anchor along direction theta.
  double rho(double theta) const {
    return detail::far_dist(piece_site[active_piece(theta)], anchor, radius_eff, theta);
  }

  /// Membership through the envelope.
  bool contains(Point q) const {
    double d = dist(q, anchor);
    if (d == 0.0) return true;
    return d <= rho(detail::angle_of(q - anchor));
  }

  /// Membership straight from the definition (per-pair union test).
  bool contains_naive(Point q) const {
    double r2 = radius_eff * radius_eff;
    for (const auto& pr : pairs)
      if (dist2(q, pr.first) > r2 && dist2(q, pr.second) > r2) return false;
    return true;
  }
};

namespace detail {

struct Env {
  std::vector<double> start;  // ascending in [-pi, pi)
  std::vector<Point> site;

  std::size_t active(double theta) const {
    auto it = std::upper_bound(start.begin(), start.end(), theta);
    return (it == start.begin()) ? start.size() - 1 : std::size_t(it - start.begin()) - 1;
  }
};

inline Env pair_envelope(Point p0, Point p1, Point anchor, double reff) {
  const double pi = std::numbers::pi_v<double>;
  if (dist2(p0, p1) == 0.0) return {{-pi}, {p0}};
  std::array<Point, 2> z;
  int m = circle_circle(p0, reff, p1, reff, z);
  if (m < 2) {
    double sample = (m == 1) ? angle_of(z[0] - anchor) + pi : 0.0;
    Point w = far_dist(p0, anchor, reff, sample) >= far_dist(p1, anchor, reff, sample) ? p0 : p1;
    return {{-pi}, {w}};
  }
  double a = norm_pm(angle_of(z[0] - anchor));
  double b = norm_pm(angle_of(z[1] - anchor));
  if (a > b) std::swap(a, b);
  if (b - a < 1e-15 || b - a > kTwoPi - 1e-15) {
    Point w = far_dist(p0, anchor, reff, a + pi) >= far_dist(p1, anchor, reff, a + pi) ? p0 : p1;
    return {{-pi}, {w}};
  }
  double mid1 = (a + b) * 0.5;
  double mid2 = norm_pm(b + (kTwoPi - (b - a)) * 0.5);
  Point w1 = far_dist(p0, anchor, reff, mid1) >= far_dist(p1, anchor, reff, mid1) ? p0 : p1;
  Point w2 = far_dist(p0, anchor, reff, mid2) >= far_dist(p1, anchor, reff, mid2) ? p0 : p1;
  if (w1 == w2) return {{-pi}, {w1}};
  return {{a, b}, {w1, w2}};
}

inline Env envelope_merge(const Env& A, const Env& B, Point anchor, double reff) {
  std::vector<double> starts;
  starts.reserve(A.start.size() + B.start.size());
  starts.insert(starts.end(), A.start.begin(), A.start.end());
  starts.insert(starts.end(), B.start.begin(), B.start.end());
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  Env out;
  std::array<Point, 2> z;
  auto emit = [&out](double s, Point p) {
    if (!out.site.empty() && out.site.back() == p) return;
    out.start.push_back(s);
    out.site.push_back(p);
  };
  for (std::size_t k = 0; k < starts.size(); ++k) {
    double s = starts[k];
    double e = (k + 1 < starts.size()) ? starts[k + 1] : starts[0] + kTwoPi;
    if (e - s <= 1e-15) continue;
    double mid = norm_pm(s + (e - s) * 0.5);
    Point pa = A.site[A.active(mid)];
    Point pb = B.site[B.active(mid)];
    if (pa == pb) {
      emit(s, pa);
      continue;
    }
    std::vector<double> cuts;
    int m = circle_circle(pa, reff, pb, reff, z);
    for (int t = 0; t < m; ++t) {
      double lift = s + norm_angle(angle_of(z[t] - anchor) - s);
      if (lift > s + 1e-15 && lift < e - 1e-15) cuts.push_back(lift);
    }
    std::sort(cuts.begin(), cuts.end());
    double u = s;
    for (std::size_t t = 0; t <= cuts.size(); ++t) {
      double v = (t < cuts.size()) ? cuts[t] : e;
      if (v - u <= 1e-15) continue;
      double qm = u + (v - u) * 0.5;
      Point w = far_dist(pa, anchor, reff, qm) <= far_dist(pb, anchor, reff, qm) ? pa : pb;
      emit(u, w);  // raw angle; normalized below
      u = v;
    }
  }
  // Normalize representation: starts in [-pi, pi), ascending.
  std::vector<std::pair<double, Point>> pieces;
  pieces.reserve(out.start.size());
  for (std::size_t i = 0; i < out.start.size(); ++i) pieces.emplace_back(norm_pm(out.start[i]), out.site[i]);
  std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Env fin;
  for (const auto& [s, p] : pieces) {
    if (!fin.site.empty() && fin.site.back() == p) continue;
    if (!fin.start.empty() && s - fin.start.back() <= 1e-15) continue;
    fin.start.push_back(s);
    fin.site.push_back(p);
  }
  if (fin.start.empty()) fin = {{-std::numbers::pi_v<double>}, {out.site.empty() ? Point{} : out.site[0]}};
  return fin;
}

}  // namespace detail

/// Builds U_r(S') around `anchor`. Requires D_r(anchor) (inflated by the
/// tolerance) to cover every pair point; otherwise the region need not be
/// star-shaped and construction refuses.
inline UnionChain union_chain(std::span<const PointPair> pairs, Point anchor, double r, const Tolerance& tol = {}) {
  if (pairs.empty()) throw std::domain_error("union_chain: empty pair set");
  if (r < 0) throw std::domain_error("union_chain: negative radius");
  UnionChain out;
  out.radius = r;
  out.anchor = anchor;
  out.pairs.assign(pairs.begin(), pairs.end());
  std::vector<Point> pts;
  pts.reserve(2 * pairs.size() + 1);
  for (const auto& pr : pairs) {
    pts.push_back(pr.first);
    pts.push_back(pr.second);
  }
  pts.push_back(anchor);
  double scale = coord_scale(pts);
  double reff = tol.inflate(r, scale);
  out.radius_eff = reff;
  for (const auto& pr : pairs)
    if (dist(pr.first, anchor) > reff || dist(pr.second, anchor) > reff)
      throw std::domain_error("union_chain: anchor disk does not cover all pair points");

  std::vector<detail::Env> envs;
  envs.reserve(pairs.size());
  for (const auto& pr : pairs) envs.push_back(detail::pair_envelope(pr.first, pr.second, anchor, reff));
  while (envs.size() > 1) {
    std::vector<detail::Env> next;
    next.reserve((envs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < envs.size(); i += 2)
      next.push_back(detail::envelope_merge(envs[i], envs[i + 1], anchor, reff));
    if (envs.size() % 2) next.push_back(std::move(envs.back()));
    envs = std::move(next);
  }
  out.piece_start = std::move(envs[0].start);
  out.piece_site = std::move(envs[0].site);
  out.vertices.reserve(out.piece_start.size());
  for (std::size_t i = 0; i < out.piece_start.size(); ++i) {
    double a = out.piece_start[i];
    double d = detail::far_dist(out.piece_site[i], anchor, reff, a);
    out.vertices.push_back(anchor + Point{std::cos(a), std::sin(a)} * d);
  }
  return out;
}

enum class IntersectMode { closed, open_interior };

namespace detail {

inline std::optional<Point> closed_witness(const UnionChain& U, const CommonIntersection& I) {
  if (I.empty) return std::nullopt;
  if (I.contains_all_sites(U.anchor)) return U.anchor;
  for (const auto& v : I.vertices)
    if (U.contains_naive(v)) return v;
  for (const auto& v : U.vertices)
    if (I.contains_all_sites(v)) return v;
  std::vector<Point> env_sites = U.piece_site;
  std::sort(env_sites.begin(), env_sites.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  env_sites.erase(std::unique(env_sites.begin(), env_sites.end()), env_sites.end());
  std::array<Point, 2> z;
  for (const auto& a : I.sites) {
    for (const auto& p : env_sites) {
      if (dist(a, p) > I.radius_eff + U.radius_eff) continue;
      int m = circle_circle(a, I.radius_eff, p, U.radius_eff, z);
      for (int t = 0; t < m; ++t)
        if (I.contains_all_sites(z[t]) && U.contains_naive(z[t])) return z[t];
    }
  }
  return std::nullopt;
}

// Envelope-free witness search: complete for any finite intersection of
// shrunk disks (I side) and pair unions (U side). Every corner of the region
// lies on two of the circles; circle centers catch smooth components.
inline std::optional<Point> sweep_witness(const CommonIntersection& I, std::span<const PointPair> pairs,
                                          double r_shrunk, const Tolerance& tol) {
  if (I.empty) return std::nullopt;
  std::vector<Point> pts = I.sites;
  for (const auto& pr : pairs) {
    pts.push_back(pr.first);
    pts.push_back(pr.second);
  }
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double scale = coord_scale(pts);
  double reff = tol.inflate(r_shrunk, scale);
  double r2 = reff * reff;
  auto member = [&](Point q) {
    if (!I.contains_all_sites(q)) return false;
    for (const auto& pr : pairs)
      if (dist2(q, pr.first) > r2 && dist2(q, pr.second) > r2) return false;
    return true;
  };
  for (const auto& c : pts)
    if (member(c)) return c;
  std::array<Point, 2> z;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      int m = circle_circle(pts[i], reff, pts[j], reff, z);
      for (int t = 0; t < m; ++t)
        if (member(z[t])) return z[t];
    }
  return std::nullopt;
}

}  // namespace detail

/// Decides whether U and I intersect; returns a witness point if so.
/// closed mode counts tolerance-level contact as intersecting; open_interior
/// tests the interiors by re-running the closed test on regions shrunk by a
/// few tolerance units.
inline std::optional<Point> regions_intersect(const UnionChain& U, const CommonIntersection& I, IntersectMode mode,
                                              const Tolerance& tol = {}) {
  if (I.empty) return std::nullopt;
  if (mode == IntersectMode::closed) return detail::closed_witness(U, I);

  double scale = 1.0;
  for (const auto& s : I.sites) scale = std::max({scale, std::abs(s.x), std::abs(s.y)});
  for (const auto& pr : U.pairs) scale = std::max({scale, std::abs(pr.first.x), std::abs(pr.first.y), std::abs(pr.second.x), std::abs(pr.second.y)});
  double h = 8.0 * (tol.rel * std::max(U.radius, I.radius) + tol.abs * scale);
  double r_shr = std::min(U.radius, I.radius) - h;
  if (r_shr <= 0) return std::nullopt;
  CommonIntersection Is = common_intersection(I.sites, r_shr, tol);
  if (Is.empty) return std::nullopt;

  // Preferred route: rebuild the shrunk union chain around a valid anchor.
  std::vector<Point> upts;
  for (const auto& pr : U.pairs) {
    upts.push_back(pr.first);
    upts.push_back(pr.second);
  }
  Disk cover = smallest_enclosing_disk(upts);
  for (Point anchor : {U.anchor, cover.center}) {
    bool ok = true;
    for (const auto& p : upts)
      if (dist(p, anchor) > r_shr * (1.0 - 4.0 * tol.rel) - tol.abs * scale) ok = false;
    if (!ok) continue;
    UnionChain Us = union_chain(U.pairs, anchor, r_shr, tol);
    return detail::closed_witness(Us, Is);
  }
  // Anchor sits on the shrunk boundary: fall back to the envelope-free sweep.
  return detail::sweep_witness(Is, U.pairs, r_shr, tol);
}

/// Horizontal line intersection with a convex region.
inline Interval1D hli(const CommonIntersection& I, double y) {
  Interval1D out;
  out.line_y = y;
  if (I.empty) return out;
  double scale = coord_scale(I.sites);
  std::vector<double> xs;
  for (const auto& arc : I.arcs) {
    double dy = y - arc.site.y;
    double q = I.radius_eff * I.radius_eff - dy * dy;
    if (q < 0) continue;
    double s = std::sqrt(q);
    for (double x : {arc.site.x - s, arc.site.x + s})
      if (arc.in_range(std::atan2(dy, x - arc.site.x))) xs.push_back(x);
  }
  for (const auto& v : I.vertices)
    if (std::abs(v.y - y) <= 1e-9 * scale) xs.push_back(v.x);
  if (xs.empty()) return out;
  out.lo = *std::min_element(xs.begin(), xs.end());
  out.hi = *std::max_element(xs.begin(), xs.end());
  out.empty = false;
  return out;
}

}  // namespace bicenter
