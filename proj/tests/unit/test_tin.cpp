#include "oracles.hpp"

#include "tagscape/error.hpp"
#include "tagscape/tin.hpp"

#include <doctest.h>

#include <random>

using namespace tagscape;

namespace {

double box_area_in(const OrientedBox& b, const RegionSet& region)
{
    // Boxes used below are fully inside the region, so the intersection is the box.
    REQUIRE(box_in_region(b, region));
    return b.area();
}

bool is_delaunay(const Mesh& mesh)
{
    // No vertex strictly inside any circumcircle, except across constraint edges (not used here).
    for (const auto& t : mesh.triangles) {
        const Point a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            if (static_cast<int>(v) == t[0] || static_cast<int>(v) == t[1] || static_cast<int>(v) == t[2]) continue;
            const Point d = mesh.vertices[v];
            const double adx = a.x - d.x, ady = a.y - d.y, bdx = b.x - d.x, bdy = b.y - d.y, cdx = c.x - d.x, cdy = c.y - d.y;
            const double det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                               (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                               (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
            if (det > 1e-9) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("unit square conserves area")
{
    const Tin tin = build_tin(oracle::square_region(1.0), {});
    CHECK(tin.total_area() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tin.triangles.size() == 2);
}

TEST_CASE("square with a hole conserves area")
{
    RegionSet r = oracle::square_region(10.0);
    r.polygons[0].holes.push_back(oracle::square_ring(3.0, 3.0, 2.0, false));
    const Tin tin = build_tin(r, {});
    CHECK(tin.total_area() == doctest::Approx(96.0).epsilon(1e-9));
    for (const Triangle& t : tin.triangles)
        CHECK(oracle::inside_polygon(t.centroid, r.polygons[0]));
}

TEST_CASE("placed boxes are carved out")
{
    const RegionSet r = oracle::square_region(100.0);
    const std::vector<OrientedBox> boxes{{{30.0, 40.0}, 20.0, 6.0, 0.0}, {{70.0, 60.0}, 24.0, 8.0, 45.0},
                                         {{50.0, 15.0}, 10.0, 4.0, -60.0}};
    const Tin tin = build_tin(r, boxes);
    double carved = 0.0;
    for (const auto& b : boxes)
        carved += box_area_in(b, r);
    CHECK(tin.total_area() == doctest::Approx(r.area() - carved).epsilon(1e-6));
    for (const Triangle& t : tin.triangles)
        for (const auto& b : boxes)
            CHECK_FALSE(b.contains(t.centroid, 0.0));
}

TEST_CASE("triangles come sorted by area")
{
    RegionSet r;
    r.polygons.push_back({{{0, 0}, {40, 0}, {45, 20}, {20, 35}, {-5, 22}, {0, 0}}, {}});
    const Tin tin = build_tin(r, std::vector<OrientedBox>{{{20.0, 15.0}, 8.0, 3.0, 30.0}});
    for (std::size_t i = 1; i < tin.triangles.size(); ++i)
        CHECK(tin.triangles[i - 1].area >= tin.triangles[i].area);
}

TEST_CASE("area conservation on random box sets")
{
    std::mt19937_64 rng(3);
    RegionSet r;
    Polygon p;
    p.exterior = {{0, 0}, {200, 0}, {220, 90}, {120, 160}, {10, 140}, {0, 0}};
    p.holes.push_back({{80, 60}, {80, 90}, {110, 90}, {110, 60}, {80, 60}});
    r.polygons.push_back(p);
    r.polygons.push_back({oracle::square_ring(300.0, 0.0, 60.0), {}});
    normalize_orientation(r);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<OrientedBox> boxes;
        for (int attempt = 0; attempt < 200 && boxes.size() < 12; ++attempt) {
            const OrientedBox b{{oracle::uniform(rng, 0.0, 360.0), oracle::uniform(rng, 0.0, 160.0)},
                                oracle::uniform(rng, 4.0, 30.0), oracle::uniform(rng, 2.0, 8.0),
                                static_cast<double>(kOrientations[rng() % kOrientations.size()])};
            if (!box_in_region(b, r)) continue;
            bool clear = true;
            for (const auto& o : boxes)
                clear = clear && !boxes_intersect(o, b);
            if (clear) boxes.push_back(b);
        }
        const Tin tin = build_tin(r, boxes);
        double carved = 0.0;
        for (const auto& b : boxes)
            carved += b.area();
        CHECK(tin.total_area() == doctest::Approx(r.area() - carved).epsilon(1e-6));
    }
}

TEST_CASE("constrained_delaunay without constraints is Delaunay")
{
    std::mt19937_64 rng(17);
    std::vector<Point> pts;
    for (int i = 0; i < 150; ++i)
        pts.push_back({oracle::uniform(rng, 0.0, 1.0), oracle::uniform(rng, 0.0, 1.0)});
    const Mesh mesh = constrained_delaunay(pts, {});
    CHECK(mesh.vertices.size() == pts.size());
    CHECK(is_delaunay(mesh));
    double area = 0.0;
    for (const auto& t : mesh.triangles) {
        const double a = orient(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        CHECK(a > 0.0);
        area += 0.5 * a;
    }
    CHECK(area > 0.9); // convex hull of 150 uniform points
}

TEST_CASE("constraint segments appear as mesh edges")
{
    const std::vector<Point> pts{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {2, 5}, {8, 5}, {5, 1}, {5, 9}};
    const std::vector<std::pair<Point, Point>> segs{{{2, 5}, {8, 5}}};
    const Mesh mesh = constrained_delaunay(pts, segs);
    bool found = false;
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            const Point a = mesh.vertices[t[e]], b = mesh.vertices[t[(e + 1) % 3]];
            if ((a == Point{2, 5} && b == Point{8, 5}) || (a == Point{8, 5} && b == Point{2, 5})) found = true;
        }
    CHECK(found);
}

TEST_CASE("crossing constraints are split")
{
    const std::vector<Point> pts{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    const std::vector<std::pair<Point, Point>> segs{{{0, 0}, {10, 10}}, {{10, 0}, {0, 10}}};
    const Mesh mesh = constrained_delaunay(pts, segs);
    bool has_center = false;
    for (const Point& v : mesh.vertices)
        has_center = has_center || (std::abs(v.x - 5.0) < 1e-9 && std::abs(v.y - 5.0) < 1e-9);
    CHECK(has_center);
    CHECK(mesh.triangles.size() == 4);
}

TEST_CASE("zero-area region is rejected")
{
    RegionSet flat;
    flat.polygons.push_back({{{0, 0}, {1, 0}, {2, 0}, {0, 0}}, {}});
    CHECK_THROWS_AS(build_tin(flat, {}), GeometryError);
}
