#include "tagscape/tin.hpp"

#include "tagscape/error.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace tagscape {

double Tin::total_area() const
{
    double a = 0.0;
    for (const Triangle& t : triangles)
        a += t.area;
    return a;
}

namespace {

// Tolerances in normalized coordinates (input bbox scaled to unit size).
constexpr double kMergeTol = 1e-12;
constexpr double kOnSegmentTol = 1e-11;

std::uint64_t edge_key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

std::uint64_t undirected_key(int a, int b) { return a < b ? edge_key(a, b) : edge_key(b, a); }

bool in_circle(Point a, Point b, Point c, Point d)
{
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    const double det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
    return det > 1e-18;
}

bool proper_cross(Point a, Point b, Point c, Point d)
{
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

class Triangulator {
public:
    explicit Triangulator(std::vector<Point> pts) : pts_(std::move(pts))
    {
        real_count_ = static_cast<int>(pts_.size());
        pts_.push_back({-100.0, -100.0});
        pts_.push_back({100.0, -100.0});
        pts_.push_back({0.0, 100.0});
        add_triangle({real_count_, real_count_ + 1, real_count_ + 2});
        for (int i = 0; i < real_count_; ++i)
            insert(i);
    }

    void insert_constraint(int a, int b)
    {
        if (a == b) return;
        constrained_.insert(undirected_key(a, b));
        if (tri_of(a, b) >= 0 || tri_of(b, a) >= 0) return;

        std::deque<std::pair<int, int>> crossing;
        for (const auto& t : tris_) {
            if (t[0] < 0) continue;
            for (int e = 0; e < 3; ++e) {
                const int u = t[e], v = t[(e + 1) % 3];
                if (u > v && tri_of(v, u) >= 0) continue; // visit each shared edge once
                if (u == a || u == b || v == a || v == b) continue;
                if (proper_cross(pts_[a], pts_[b], pts_[u], pts_[v])) crossing.emplace_back(u, v);
            }
        }
        std::size_t guard = 0;
        const std::size_t limit = 64 * (crossing.size() + 1) * (crossing.size() + 1);
        while (!crossing.empty()) {
            if (++guard > limit) throw GeometryError("constraint insertion failed to converge");
            const auto [u, v] = crossing.front();
            crossing.pop_front();
            const int t1 = tri_of(u, v);
            const int t2 = tri_of(v, u);
            if (t1 < 0 || t2 < 0) continue;
            const int p = third(t1, u, v);
            const int q = third(t2, v, u);
            const bool convex = orient(pts_[p], pts_[q], pts_[u]) * orient(pts_[p], pts_[q], pts_[v]) < 0.0;
            if (!convex) {
                crossing.emplace_back(u, v);
                continue;
            }
            flip(u, v);
            if (p != a && p != b && q != a && q != b && proper_cross(pts_[a], pts_[b], pts_[p], pts_[q]))
                crossing.emplace_back(p, q);
        }
    }

    // Lawson flips on every unconstrained edge until all are locally Delaunay.
    void restore_delaunay()
    {
        std::vector<std::pair<int, int>> stack;
        for (const auto& t : tris_) {
            if (t[0] < 0) continue;
            for (int e = 0; e < 3; ++e)
                stack.emplace_back(t[e], t[(e + 1) % 3]);
        }
        legalize(stack);
    }

    Mesh mesh() const
    {
        Mesh m;
        m.vertices.assign(pts_.begin(), pts_.begin() + real_count_);
        for (const auto& t : tris_) {
            if (t[0] < 0) continue;
            if (t[0] >= real_count_ || t[1] >= real_count_ || t[2] >= real_count_) continue;
            m.triangles.push_back(t);
        }
        std::vector<std::uint64_t> keys(constrained_.begin(), constrained_.end());
        std::sort(keys.begin(), keys.end());
        for (std::uint64_t k : keys)
            m.constraints.emplace_back(static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu));
        return m;
    }

private:
    std::vector<Point> pts_;
    int real_count_ = 0;
    std::vector<std::array<int, 3>> tris_;
    std::vector<int> free_;
    std::unordered_map<std::uint64_t, int> edges_;
    std::unordered_set<std::uint64_t> constrained_;
    int last_ = 0;

    int tri_of(int a, int b) const
    {
        const auto it = edges_.find(edge_key(a, b));
        return it == edges_.end() ? -1 : it->second;
    }

    int third(int t, int a, int b) const
    {
        for (int v : tris_[t])
            if (v != a && v != b) return v;
        return -1;
    }

    int add_triangle(std::array<int, 3> v)
    {
        int id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
            tris_[id] = v;
        } else {
            id = static_cast<int>(tris_.size());
            tris_.push_back(v);
        }
        for (int e = 0; e < 3; ++e)
            edges_[edge_key(v[e], v[(e + 1) % 3])] = id;
        last_ = id;
        return id;
    }

    void remove_triangle(int id)
    {
        const auto v = tris_[id];
        for (int e = 0; e < 3; ++e) {
            const auto it = edges_.find(edge_key(v[e], v[(e + 1) % 3]));
            if (it != edges_.end() && it->second == id) edges_.erase(it);
        }
        tris_[id] = {-1, -1, -1};
        free_.push_back(id);
    }

    // Replaces the diagonal (a, b) of its quad with the opposite diagonal.
    void flip(int a, int b)
    {
        const int t = tri_of(a, b);
        const int u = tri_of(b, a);
        const int p = third(t, a, b);
        const int q = third(u, b, a);
        remove_triangle(t);
        remove_triangle(u);
        add_triangle({a, q, p});
        add_triangle({q, b, p});
    }

    int locate(Point p)
    {
        int t = last_;
        if (tris_[t][0] < 0) {
            for (t = 0; t < static_cast<int>(tris_.size()) && tris_[t][0] < 0; ++t) {}
        }
        const std::size_t max_steps = 4 * tris_.size() + 16;
        for (std::size_t step = 0, rot = 0; step < max_steps; ++step) {
            const auto& v = tris_[t];
            bool moved = false;
            for (int k = 0; k < 3; ++k) {
                const int e = static_cast<int>((k + rot) % 3);
                const int a = v[e], b = v[(e + 1) % 3];
                if (orient(pts_[a], pts_[b], p) < 0.0) {
                    const int n = tri_of(b, a);
                    if (n >= 0) {
                        t = n;
                        moved = true;
                        break;
                    }
                }
            }
            ++rot;
            if (!moved) return t;
        }
        // Walk cycled on near-degenerate input; fall back to a scan.
        int best = -1;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
            const auto& v = tris_[i];
            if (v[0] < 0) continue;
            const double s = std::min({orient(pts_[v[0]], pts_[v[1]], p), orient(pts_[v[1]], pts_[v[2]], p),
                                       orient(pts_[v[2]], pts_[v[0]], p)});
            if (s > best_score) best_score = s, best = i;
        }
        return best;
    }

    void insert(int pi)
    {
        const Point p = pts_[pi];
        const int t = locate(p);
        const auto v = tris_[t];
        std::vector<std::pair<int, int>> stack;

        // Point on an edge: split both adjacent triangles.
        for (int e = 0; e < 3; ++e) {
            const int a = v[e], b = v[(e + 1) % 3], c = v[(e + 2) % 3];
            const double len = distance(pts_[a], pts_[b]);
            if (std::abs(orient(pts_[a], pts_[b], p)) <= kMergeTol * len) {
                const int n = tri_of(b, a);
                remove_triangle(t);
                add_triangle({a, pi, c});
                add_triangle({pi, b, c});
                stack.emplace_back(b, c);
                stack.emplace_back(c, a);
                if (n >= 0) {
                    const int d = third(n, b, a);
                    remove_triangle(n);
                    add_triangle({b, pi, d});
                    add_triangle({pi, a, d});
                    stack.emplace_back(a, d);
                    stack.emplace_back(d, b);
                }
                legalize(stack);
                return;
            }
        }
        remove_triangle(t);
        add_triangle({v[0], v[1], pi});
        add_triangle({v[1], v[2], pi});
        add_triangle({v[2], v[0], pi});
        stack.emplace_back(v[0], v[1]);
        stack.emplace_back(v[1], v[2]);
        stack.emplace_back(v[2], v[0]);
        legalize(stack);
    }

    void legalize(std::vector<std::pair<int, int>>& stack)
    {
        std::size_t guard = 0;
        const std::size_t limit = 1000 * (tris_.size() + 16);
        while (!stack.empty()) {
            if (++guard > limit) throw GeometryError("Delaunay legalization failed to converge");
            const auto [a, b] = stack.back();
            stack.pop_back();
            if (constrained_.count(undirected_key(a, b))) continue;
            const int t = tri_of(a, b);
            const int u = tri_of(b, a);
            if (t < 0 || u < 0) continue;
            const int p = third(t, a, b);
            const int q = third(u, b, a);
            if (!in_circle(pts_[a], pts_[b], pts_[p], pts_[q])) continue;
            // Only strictly convex quads can flip.
            if (!(orient(pts_[p], pts_[q], pts_[a]) * orient(pts_[p], pts_[q], pts_[b]) < 0.0)) continue;
            flip(a, b);
            stack.emplace_back(a, q);
            stack.emplace_back(q, b);
            stack.emplace_back(b, p);
            stack.emplace_back(p, a);
        }
    }
};

struct Normalizer {
    Point origin;
    double scale = 1.0;

    Point to_local(Point p) const { return (p - origin) * (1.0 / scale); }
};

} // namespace

Mesh constrained_delaunay(std::span<const Point> points, std::span<const std::pair<Point, Point>> segments)
{
    std::vector<Point> all(points.begin(), points.end());
    for (const auto& [a, b] : segments) {
        all.push_back(a);
        all.push_back(b);
    }
    if (all.empty()) return {};
    const BBox bb = ring_bbox(all);
    Normalizer norm{{0.5 * (bb.min_x + bb.max_x), 0.5 * (bb.min_y + bb.max_y)}, std::max(bb.width(), bb.height())};
    if (!(norm.scale > 0.0)) throw GeometryError("degenerate point set");

    // Merge coincident vertices. Indices refer to the sorted, deduplicated list.
    std::vector<Point> local;
    std::vector<Point> original;
    std::map<std::pair<double, double>, int> lookup;
    const auto vertex_id = [&](Point p) {
        const Point l = norm.to_local(p);
        auto it = lookup.lower_bound({l.x - kMergeTol, -std::numeric_limits<double>::infinity()});
        for (; it != lookup.end() && it->first.first <= l.x + kMergeTol; ++it)
            if (std::abs(it->first.second - l.y) <= kMergeTol) return it->second;
        const int id = static_cast<int>(local.size());
        local.push_back(l);
        original.push_back(p);
        lookup.emplace(std::make_pair(l.x, l.y), id);
        return id;
    };
    for (const Point& p : points)
        vertex_id(p);
    std::vector<std::pair<int, int>> segs;
    for (const auto& [a, b] : segments) {
        const int ia = vertex_id(a), ib = vertex_id(b);
        if (ia != ib) segs.emplace_back(ia, ib);
    }

    // Crossing segments get a vertex at their intersection; the split pass below cuts both there.
    const std::size_t seg_count = segs.size();
    for (std::size_t i = 0; i < seg_count; ++i) {
        const Point a = local[segs[i].first], b = local[segs[i].second];
        const BBox bi = ring_bbox(std::array{a, b});
        for (std::size_t j = i + 1; j < seg_count; ++j) {
            const Point c = local[segs[j].first], d = local[segs[j].second];
            if (!bi.overlaps(ring_bbox(std::array{c, d}))) continue;
            if (!segments_cross(a, b, c, d, kOnSegmentTol)) continue;
            const double t = cross(c - a, d - c) / cross(b - a, d - c);
            vertex_id(original[segs[i].first] + (original[segs[i].second] - original[segs[i].first]) * t);
        }
    }

    // Split every segment at the vertices lying on it.
    std::vector<std::pair<int, int>> split;
    for (const auto& [ia, ib] : segs) {
        const Point a = local[ia], b = local[ib];
        const Point ab = b - a;
        const double len2 = dot(ab, ab);
        const BBox sb{std::min(a.x, b.x) - kOnSegmentTol, std::min(a.y, b.y) - kOnSegmentTol,
                      std::max(a.x, b.x) + kOnSegmentTol, std::max(a.y, b.y) + kOnSegmentTol};
        std::vector<std::pair<double, int>> on;
        for (int v = 0; v < static_cast<int>(local.size()); ++v) {
            if (v == ia || v == ib || !sb.contains(local[v])) continue;
            const double t = dot(local[v] - a, ab) / len2;
            if (t <= 0.0 || t >= 1.0) continue;
            if (segment_distance(local[v], a, b) <= kOnSegmentTol) on.emplace_back(t, v);
        }
        std::sort(on.begin(), on.end());
        int prev = ia;
        for (const auto& [t, v] : on) {
            split.emplace_back(prev, v);
            prev = v;
        }
        split.emplace_back(prev, ib);
    }
    std::sort(split.begin(), split.end(), [](auto x, auto y) {
        return undirected_key(x.first, x.second) < undirected_key(y.first, y.second);
    });
    split.erase(std::unique(split.begin(), split.end(),
                            [](auto x, auto y) {
                                return undirected_key(x.first, x.second) == undirected_key(y.first, y.second);
                            }),
                split.end());

    Triangulator tri(local);
    for (const auto& [a, b] : split)
        tri.insert_constraint(a, b);
    tri.restore_delaunay();

    Mesh m = tri.mesh();
    m.vertices = original;
    return m;
}

Tin build_tin(const RegionSet& region, std::span<const OrientedBox> placed)
{
    if (region.polygons.empty() || !(region.area() > 0.0)) throw GeometryError("degenerate region: zero area");

    std::vector<Point> points;
    std::vector<std::pair<Point, Point>> segments;
    const auto add_ring = [&](const Ring& ring) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            points.push_back(ring[i]);
            segments.emplace_back(ring[i], ring[i + 1]);
        }
    };
    for (const Polygon& poly : region.polygons) {
        add_ring(poly.exterior);
        for (const Ring& h : poly.holes)
            add_ring(h);
    }
    for (const OrientedBox& box : placed) {
        const auto c = box.corners();
        for (int i = 0; i < 4; ++i) {
            points.push_back(c[i]);
            segments.emplace_back(c[i], c[(i + 1) % 4]);
        }
        points.push_back(box.center);
    }

    const Mesh mesh = constrained_delaunay(points, segments);

    Tin tin;
    for (const auto& [a, b] : mesh.constraints)
        tin.constraint_edges.emplace_back(mesh.vertices[a], mesh.vertices[b]);
    for (const auto& t : mesh.triangles) {
        Triangle tri;
        tri.vertices = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
        tri.area = 0.5 * orient(tri.vertices[0], tri.vertices[1], tri.vertices[2]);
        if (!(tri.area > 0.0)) continue;
        tri.centroid = (tri.vertices[0] + tri.vertices[1] + tri.vertices[2]) * (1.0 / 3.0);
        const auto m = locate(tri.centroid, region);
        if (!m) continue;
        bool covered = false;
        for (const OrientedBox& box : placed) {
            if (box.contains(tri.centroid, 0.0)) {
                covered = true;
                break;
            }
        }
        if (covered) continue;
        tri.polygon_index = *m;
        tin.triangles.push_back(tri);
    }
    std::sort(tin.triangles.begin(), tin.triangles.end(), [](const Triangle& a, const Triangle& b) {
        if (a.area != b.area) return a.area > b.area;
        if (a.centroid.y != b.centroid.y) return a.centroid.y < b.centroid.y;
        return a.centroid.x < b.centroid.x;
    });
    return tin;
}

} // namespace tagscape
