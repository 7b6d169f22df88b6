#pragma once

#include "tagscape/geometry.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tagscape {

struct Triangle {
    std::array<Point, 3> vertices;
    double area = 0.0;
    Point centroid;
    std::size_t polygon_index = 0;
};

// Constrained triangulation of the free space (region minus placed boxes).
struct Tin {
    // Sorted by descending area; ties by centroid (y, then x).
    std::vector<Triangle> triangles;
    std::vector<std::pair<Point, Point>> constraint_edges;

    double total_area() const;
};

// Plain triangle mesh over an indexed vertex list.
struct Mesh {
    std::vector<Point> vertices;
    std::vector<std::array<int, 3>> triangles; // counterclockwise
    std::vector<std::pair<int, int>> constraints;
};

// Constrained Delaunay triangulation of a point set and constraint segments. Crossing segments are
// split at their intersection and segments passing through a vertex are split there. The returned
// mesh covers the convex hull of the input.
Mesh constrained_delaunay(std::span<const Point> points, std::span<const std::pair<Point, Point>> segments);

// Triangulates region vertices, box corners and box centers constrained on every ring and box edge.
// Triangles whose centroid falls outside the region or inside a box are dropped.
Tin build_tin(const RegionSet& region, std::span<const OrientedBox> placed);

} // namespace tagscape
