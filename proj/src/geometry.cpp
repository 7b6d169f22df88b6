#include "tagscape/geometry.hpp"

#include "tagscape/error.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

namespace tagscape {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Liang-Barsky clip of segment [p, q] against the axis-aligned rectangle [-hx, hx] x [-hy, hy].
bool segment_meets_rect(Point p, Point q, double hx, double hy)
{
    if (hx <= 0.0 || hy <= 0.0) return false;
    double t0 = 0.0, t1 = 1.0;
    const Point d = q - p;
    const double pp[4] = {-d.x, d.x, -d.y, d.y};
    const double qq[4] = {p.x + hx, hx - p.x, p.y + hy, hy - p.y};
    for (int i = 0; i < 4; ++i) {
        if (pp[i] == 0.0) {
            if (qq[i] <= 0.0) return false;
            continue;
        }
        const double r = qq[i] / pp[i];
        if (pp[i] < 0.0) t0 = std::max(t0, r);
        else t1 = std::min(t1, r);
        if (t0 > t1) return false;
    }
    // A single touching point does not count.
    return t1 - t0 > 0.0 && (t1 - t0) * std::hypot(d.x, d.y) > kTouchTolerance;
}

} // namespace

Point project(double lon_deg, double lat_deg)
{
    if (!std::isfinite(lon_deg) || !std::isfinite(lat_deg) || std::abs(lat_deg) >= kMaxLatitude)
        throw GeometryError("latitude out of projectable range: " + std::to_string(lat_deg));
    if (std::abs(lon_deg) > 180.0) throw GeometryError("longitude out of range: " + std::to_string(lon_deg));
    const double x = kEarthRadius * lon_deg * kDegToRad;
    const double y = kEarthRadius * std::log(std::tan(std::numbers::pi / 4.0 + lat_deg * kDegToRad / 2.0));
    return {x, y};
}

Point unproject(Point p)
{
    const double lon = p.x / kEarthRadius / kDegToRad;
    const double lat = (2.0 * std::atan(std::exp(p.y / kEarthRadius)) - std::numbers::pi / 2.0) / kDegToRad;
    return {lon, lat};
}

double signed_area(std::span<const Point> ring)
{
    double twice = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
        twice += cross(ring[i], ring[i + 1]);
    if (!ring.empty() && !(ring.front() == ring.back()))
        twice += cross(ring.back(), ring.front());
    return 0.5 * twice;
}

BBox ring_bbox(std::span<const Point> ring)
{
    BBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : ring) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

double RegionSet::polygon_area(std::size_t m) const
{
    const Polygon& poly = polygons.at(m);
    double a = std::abs(signed_area(poly.exterior));
    for (const Ring& h : poly.holes)
        a -= std::abs(signed_area(h));
    return a;
}

double RegionSet::area() const
{
    double a = 0.0;
    for (std::size_t m = 0; m < polygons.size(); ++m)
        a += polygon_area(m);
    return a;
}

BBox RegionSet::bbox() const
{
    BBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Polygon& poly : polygons) {
        const BBox r = ring_bbox(poly.exterior);
        b.min_x = std::min(b.min_x, r.min_x);
        b.min_y = std::min(b.min_y, r.min_y);
        b.max_x = std::max(b.max_x, r.max_x);
        b.max_y = std::max(b.max_y, r.max_y);
    }
    return b;
}

bool point_in_ring(Point p, std::span<const Point> ring)
{
    bool inside = false;
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = ring[i];
        const Point b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_at) inside = !inside;
        }
    }
    return inside;
}

bool point_in_polygon(Point p, const Polygon& poly)
{
    if (!point_in_ring(p, poly.exterior)) return false;
    for (const Ring& h : poly.holes)
        if (point_in_ring(p, h)) return false;
    return true;
}

std::optional<std::size_t> locate(Point p, const RegionSet& region)
{
    for (std::size_t m = 0; m < region.polygons.size(); ++m)
        if (point_in_polygon(p, region.polygons[m])) return m;
    return std::nullopt;
}

double segment_distance(Point p, Point a, Point b)
{
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

bool segments_cross(Point a, Point b, Point c, Point d, double tol)
{
    const double len_ab = distance(a, b);
    const double len_cd = distance(c, d);
    if (len_ab == 0.0 || len_cd == 0.0) return false;
    // Signed distances of each endpoint from the other segment's supporting line.
    const double d1 = orient(a, b, c) / len_ab;
    const double d2 = orient(a, b, d) / len_ab;
    const double d3 = orient(c, d, a) / len_cd;
    const double d4 = orient(c, d, b) / len_cd;
    const bool straddle_ab = (d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol);
    const bool straddle_cd = (d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol);
    return straddle_ab && straddle_cd;
}

std::array<Point, 4> OrientedBox::corners() const
{
    const double rad = angle_deg * kDegToRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    const double hw = 0.5 * width;
    const double hh = 0.5 * height;
    return {center - u * hw - v * hh, center + u * hw - v * hh, center + u * hw + v * hh,
            center - u * hw + v * hh};
}

BBox OrientedBox::bounds() const { return ring_bbox(corners()); }

bool OrientedBox::contains(Point p, double tol) const
{
    const double rad = angle_deg * kDegToRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    const Point d = p - center;
    return std::abs(dot(d, u)) <= 0.5 * width + tol && std::abs(dot(d, v)) <= 0.5 * height + tol;
}

bool OrientedBox::strictly_contains(Point p, double tol) const
{
    const double rad = angle_deg * kDegToRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    const Point d = p - center;
    return std::abs(dot(d, u)) < 0.5 * width - tol && std::abs(dot(d, v)) < 0.5 * height - tol;
}

bool is_valid_orientation(int angle_deg)
{
    return std::find(kOrientations.begin(), kOrientations.end(), angle_deg) != kOrientations.end();
}

bool boxes_intersect(const OrientedBox& a, const OrientedBox& b)
{
    // Cheap reject on bounding circles.
    const double ra = 0.5 * std::hypot(a.width, a.height);
    const double rb = 0.5 * std::hypot(b.width, b.height);
    if (distance(a.center, b.center) > ra + rb + kTouchTolerance) return false;

    const auto ca = a.corners();
    const auto cb = b.corners();
    const auto separated_on = [&](Point axis) {
        double min_a = std::numeric_limits<double>::infinity(), max_a = -min_a;
        double min_b = min_a, max_b = -min_a;
        for (const Point& p : ca) {
            const double s = dot(p, axis);
            min_a = std::min(min_a, s);
            max_a = std::max(max_a, s);
        }
        for (const Point& p : cb) {
            const double s = dot(p, axis);
            min_b = std::min(min_b, s);
            max_b = std::max(max_b, s);
        }
        return std::min(max_a, max_b) - std::max(min_a, min_b) <= kTouchTolerance;
    };
    for (const auto* box : {&a, &b}) {
        const double rad = box->angle_deg * kDegToRad;
        const Point u{std::cos(rad), std::sin(rad)};
        if (separated_on(u) || separated_on(Point{-u.y, u.x})) return false;
    }
    return true;
}

std::optional<std::size_t> box_in_region(const OrientedBox& box, const RegionSet& region)
{
    const BBox bb = box.bounds();
    const double rad = box.angle_deg * kDegToRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    const double hx = 0.5 * box.width - kTouchTolerance;
    const double hy = 0.5 * box.height - kTouchTolerance;
    const auto to_local = [&](Point p) {
        const Point d = p - box.center;
        return Point{dot(d, u), dot(d, v)};
    };
    const auto ring_clear = [&](const Ring& ring) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            const Point a = ring[i];
            const Point b = ring[i + 1];
            if (std::max(a.x, b.x) < bb.min_x || std::min(a.x, b.x) > bb.max_x ||
                std::max(a.y, b.y) < bb.min_y || std::min(a.y, b.y) > bb.max_y)
                continue;
            if (segment_meets_rect(to_local(a), to_local(b), hx, hy)) return false;
        }
        return true;
    };
    for (const Polygon& poly : region.polygons) {
        if (!ring_bbox(poly.exterior).overlaps(bb)) continue;
        if (!ring_clear(poly.exterior)) return std::nullopt;
        for (const Ring& h : poly.holes)
            if (!ring_clear(h)) return std::nullopt;
    }
    // No ring touches the open box, so the whole box lies on one side of every ring.
    const auto m = locate(box.center, region);
    if (!m) return std::nullopt;
    for (const Point& c : box.corners()) {
        const Polygon& poly = region.polygons[*m];
        if (!point_in_polygon(c, poly)) {
            // A corner exactly on the boundary is acceptable; anything farther out is not.
            double nearest = std::numeric_limits<double>::infinity();
            const auto scan = [&](const Ring& r) {
                for (std::size_t i = 0; i + 1 < r.size(); ++i)
                    nearest = std::min(nearest, segment_distance(c, r[i], r[i + 1]));
            };
            scan(poly.exterior);
            for (const Ring& h : poly.holes) scan(h);
            if (nearest > 1e-6 * std::max(1.0, std::hypot(box.width, box.height))) return std::nullopt;
        }
    }
    return m;
}

namespace {

void validate_ring(const Ring& ring, const std::string& name)
{
    if (ring.size() < 4) throw GeometryError(name + ": ring needs at least 4 positions");
    for (const Point& p : ring)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError(name + ": non-finite coordinate");
    if (!(ring.front() == ring.back())) throw GeometryError(name + ": ring is not closed");
    if (std::abs(signed_area(ring)) <= 0.0) throw GeometryError(name + ": ring has zero area");
    const std::size_t edges = ring.size() - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        if (ring[i] == ring[i + 1]) throw GeometryError(name + ": repeated vertex " + std::to_string(i));
        for (std::size_t j = i + 2; j < edges; ++j) {
            if (i == 0 && j == edges - 1) continue;
            if (segments_cross(ring[i], ring[i + 1], ring[j], ring[j + 1], 0.0))
                throw GeometryError(name + ": self-intersection between edges " + std::to_string(i) + " and " +
                                    std::to_string(j));
        }
    }
}

} // namespace

void validate_region(const RegionSet& region)
{
    if (region.polygons.empty()) throw GeometryError("region has no polygons");
    for (std::size_t m = 0; m < region.polygons.size(); ++m) {
        const Polygon& poly = region.polygons[m];
        validate_ring(poly.exterior, "polygon " + std::to_string(m) + " exterior ring");
        for (std::size_t h = 0; h < poly.holes.size(); ++h)
            validate_ring(poly.holes[h], "polygon " + std::to_string(m) + " hole ring " + std::to_string(h));
        if (region.polygon_area(m) <= 0.0) throw GeometryError("polygon " + std::to_string(m) + " has no area");
    }
}

void normalize_orientation(RegionSet& region)
{
    for (Polygon& poly : region.polygons) {
        if (signed_area(poly.exterior) < 0.0) std::reverse(poly.exterior.begin(), poly.exterior.end());
        for (Ring& h : poly.holes)
            if (signed_area(h) > 0.0) std::reverse(h.begin(), h.end());
    }
}

} // namespace tagscape
