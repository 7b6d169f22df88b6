#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tagscape {

// Web Mercator meters.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// > 0 when c lies left of the directed line a->b.
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

struct BBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool contains(Point p) const { return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y; }
    bool overlaps(const BBox& o) const
    {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
};

// Closed ring: front() == back().
using Ring = std::vector<Point>;

struct Polygon {
    Ring exterior;
    std::vector<Ring> holes;
};

// Projected multi-polygon. Exteriors are counterclockwise, holes clockwise.
struct RegionSet {
    std::vector<Polygon> polygons;

    double area() const;
    double polygon_area(std::size_t m) const;
    BBox bbox() const;
};

inline constexpr double kEarthRadius = 6378137.0;
inline constexpr double kMaxMercatorX = 20037508.342789244;
inline constexpr double kMaxLatitude = 85.06;
inline constexpr double kTouchTolerance = 1e-9;
inline constexpr double kMetersPerPoint = 0.0254 / 72.0;

Point project(double lon_deg, double lat_deg);
// Inverse of project(): returns {lon, lat} in degrees.
Point unproject(Point p);

// Font points to ground meters at a representative-fraction scale (e.g. 1/20921196).
inline double points_to_ground(double pt, double scale) { return pt * kMetersPerPoint / scale; }

double signed_area(std::span<const Point> ring);
BBox ring_bbox(std::span<const Point> ring);

// Crossing-number test; points on the boundary may land on either side.
bool point_in_ring(Point p, std::span<const Point> ring);
bool point_in_polygon(Point p, const Polygon& poly);
std::optional<std::size_t> locate(Point p, const RegionSet& region);

// Distance from p to the segment [a, b].
double segment_distance(Point p, Point a, Point b);

// True when the open segments cross at a single interior point (touching excluded).
bool segments_cross(Point a, Point b, Point c, Point d, double tol = kTouchTolerance);

struct OrientedBox {
    Point center;
    double width = 0.0;
    double height = 0.0;
    double angle_deg = 0.0;

    // Counterclockwise, starting at the lower-left corner of the unrotated box.
    std::array<Point, 4> corners() const;
    BBox bounds() const;
    double area() const { return width * height; }
    // Closed containment with tolerance.
    bool contains(Point p, double tol = kTouchTolerance) const;
    bool strictly_contains(Point p, double tol = kTouchTolerance) const;
};

// The nine admissible tag orientations, in the canonical preference order.
inline constexpr std::array<int, 9> kOrientations = {0, 30, 45, 60, 90, -30, -45, -60, -90};
bool is_valid_orientation(int angle_deg);

// Separating-axis test over both boxes' edge normals. Touching within kTouchTolerance is not an overlap.
bool boxes_intersect(const OrientedBox& a, const OrientedBox& b);

// Index of the polygon that fully hosts the box, if any: all corners inside the polygon, no box edge
// crossing a ring, and no ring vertex strictly inside the box.
std::optional<std::size_t> box_in_region(const OrientedBox& box, const RegionSet& region);

// Throws GeometryError naming the offending ring. Checks closure, area and self-intersection.
void validate_region(const RegionSet& region);
// Reorients rings in place: exteriors counterclockwise, holes clockwise.
void normalize_orientation(RegionSet& region);

} // namespace tagscape
