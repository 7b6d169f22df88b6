#include "oracles.hpp"

#include "tagscape/bundle.hpp"
#include "tagscape/error.hpp"
#include "tagscape/layout.hpp"
#include "tagscape/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tagscape;

namespace {

// One pt of font is one ground meter at this scale.
constexpr double kUnitScale = kMetersPerPoint;

LayoutConfig unit_config()
{
    LayoutConfig c;
    c.scale = kUnitScale;
    return c;
}

TagSpec tag(std::string text, double weight) { return {std::move(text), weight, std::nullopt, std::nullopt}; }

void check_layout_invariants(const LayoutBundle& b)
{
    for (std::size_t i = 0; i < b.placed.size(); ++i) {
        const PlacedTag& t = b.placed[i];
        CHECK(t.rank == i);
        REQUIRE(box_in_region(t.box, b.region) == std::optional<std::size_t>{t.polygon_index});
        CHECK(oracle::box_samples_inside(t.box, b.region.polygons[t.polygon_index], 20));
        for (std::size_t j = 0; j < i; ++j)
            CHECK(oracle::overlap_area(t.box, b.placed[j].box) < 1e-9 * t.box.area());
    }
    double last = std::numeric_limits<double>::infinity();
    for (const PlacedTag& t : b.placed) {
        if (t.spec.fixed_font || t.spec.pinned_center) continue;
        CHECK(t.font_size <= last);
        last = t.font_size;
    }
}

} // namespace

TEST_CASE("font size mapping")
{
    const TagSpec lo = tag("a", 2.0), hi = tag("b", 10.0), mid = tag("c", 6.0);
    CHECK(font_size_for_weight(lo, 10.0, 2.0, 60.0, 6.0) == 6.0);
    CHECK(font_size_for_weight(hi, 10.0, 2.0, 60.0, 6.0) == 60.0);
    CHECK(font_size_for_weight(mid, 10.0, 2.0, 60.0, 6.0) == doctest::Approx(33.0));
    CHECK(font_size_for_weight(mid, 6.0, 6.0, 60.0, 6.0) == 60.0);
    TagSpec fixed = mid;
    fixed.fixed_font = 17.0;
    CHECK(font_size_for_weight(fixed, 10.0, 2.0, 60.0, 6.0) == 17.0);
}

TEST_CASE("config validation")
{
    LayoutConfig c;
    CHECK_NOTHROW(c.validate());
    c.orientations = {0, 15};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.orientations = {0, 0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = LayoutConfig{};
    c.f_min = 70.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = LayoutConfig{};
    c.orientations = {90, 0, 45};
    c.orientation_weights.set(0, 2.0);
    CHECK(c.preference_order() == std::vector<int>{0, 90, 45});
}

TEST_CASE("shrink_fmax matches a downward scan")
{
    // In a square of side L, the two TIN centroids sit L/3 from two edges, so an unrotated "abcd"
    // box (2.4 F wide at one meter per pt) fits iff 1.2 F <= L / 3.
    const auto scan = [](double side, double f_max, double f_min) -> std::optional<double> {
        for (double f = f_max; f >= f_min; f -= 1.0)
            if (1.2 * f <= side / 3.0 + 1e-12) return f;
        return std::nullopt;
    };
    const TagSpec t = tag("abcd", 1.0);
    for (double side : {3.6 * 60.5, 3.6 * 57.5, 3.6 * 41.2}) {
        LayoutState state(oracle::square_region(side), unit_config(), kUnitScale);
        const auto expected = scan(side, 60.0, 6.0);
        REQUIRE(expected);
        CHECK(shrink_fmax(state, t) == *expected);
    }
    LayoutState fits_minus_three(oracle::square_region(3.6 * 57.5), unit_config(), kUnitScale);
    CHECK(shrink_fmax(fits_minus_three, t) == 57.0);

    LayoutState tiny(oracle::square_region(3.6 * 5.5), unit_config(), kUnitScale);
    CHECK_THROWS_AS(shrink_fmax(tiny, t), InfeasibleLayout);
}

TEST_CASE("candidates")
{
    LayoutConfig cfg = unit_config();
    cfg.orientations = {0, 90, 45};
    RegionSet region;
    region.polygons.push_back({{{0, 0}, {400, 0}, {500, 200}, {300, 380}, {-40, 260}, {0, 0}}, {}});
    LayoutState state(region, cfg, kUnitScale);
    const TagSpec t = tag("abc", 1.0);

    const auto one = candidates(state, t, 10.0, 1);
    REQUIRE_FALSE(one.empty());
    for (const Candidate& c : one)
        CHECK(c.triangle_rank == one.front().triangle_rank);
    CHECK(one.front().location == state.tin().triangles.front().centroid);
    CHECK(one.front().triangle_area == state.tin().triangles.front().area);

    for (std::size_t n_t : {1u, 2u, 5u}) {
        const auto cands = candidates(state, t, 10.0, n_t);
        CHECK(cands.size() <= n_t * cfg.orientations.size());
        for (const Candidate& c : cands) {
            CHECK(state.feasible(c.box));
            CHECK(c.min_distance == 0.0);
        }
    }
    const auto all = candidates(state, t, 10.0, std::nullopt);
    CHECK(all.size() >= candidates(state, t, 10.0, 5).size());
    CHECK(state.stats().triangle_visits > 0);
}

TEST_CASE("filter_close examples")
{
    const std::vector<PlacedTag> placed{{tag("x", 1.0), 10.0, {{0.0, 0.0}, 1.0, 1.0, 0.0}, 0, 0}};
    const auto make = [](std::vector<double> ds) {
        std::vector<Candidate> out;
        for (std::size_t i = 0; i < ds.size(); ++i)
            out.push_back({{static_cast<double>(i), 0.0}, 0, 1.0, i, 0, ds[i], {}});
        return out;
    };
    const auto kept = filter_close(make({1.0, 2.0, 3.0}), placed);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].min_distance == 2.0);
    CHECK(kept[1].min_distance == 3.0);
    CHECK(filter_close(make({4.0, 4.0, 4.0}), placed).size() == 3);
    CHECK(filter_close(make({1.0, 2.0, 3.0}), {}).size() == 3);

    // Post-condition on random lists.
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> ds;
        for (std::size_t i = 0, n = 1 + rng() % 20; i < n; ++i)
            ds.push_back(std::round(oracle::uniform(rng, 0.0, 50.0)));
        double mean = 0.0;
        for (double d : ds) mean += d;
        mean /= static_cast<double>(ds.size());
        const auto out = filter_close(make(ds), placed);
        CHECK_FALSE(out.empty());
        for (const Candidate& c : out)
            CHECK((c.min_distance >= mean || std::all_of(ds.begin(), ds.end(), [&](double d) { return d == ds[0]; })));
    }
}

TEST_CASE("select_best prefers the layout with the higher index")
{
    LayoutConfig cfg = unit_config();
    const RegionSet region = oracle::square_region(1000.0);
    LayoutState state(region, cfg, kUnitScale);
    state.set_virtual_field(generate_virtual_field(region, VirtualStrategy::grid, 100.0, 0));
    const TagSpec big = tag("giant", 10.0);
    state.place(big, 60.0, state.tag_box(big, 60.0, {250.0, 500.0}, 0), 0);

    const TagSpec small = tag("dot", 1.0);
    const double f = 10.0;
    std::vector<Candidate> cands;
    for (Point p : {Point{250.0, 560.0}, Point{820.0, 480.0}}) {
        const OrientedBox box = state.tag_box(small, f, p, 0);
        REQUIRE(state.feasible(box));
        cands.push_back({p, 0, 1.0, cands.size(), 0, distance(p, {250.0, 500.0}), box});
    }

    std::vector<double> oracle_scores;
    for (const Candidate& c : cands) {
        std::vector<SizedMark> marks;
        for (const SizedMark& m : state.marks())
            if (m.is_virtual == false || !c.box.contains(m.center)) marks.push_back(m);
        marks.push_back({c.location, f, 0, false});
        oracle_scores.push_back(oracle::layout_index(marks));
    }
    const std::size_t expected = oracle_scores[1] > oracle_scores[0] ? 1 : 0;
    CHECK(select_best(cands, state, f) == std::optional<std::size_t>{expected});
    CHECK(expected == 1);
}

TEST_CASE("select_best tie-breaks")
{
    LayoutConfig cfg = unit_config();
    const RegionSet region = oracle::square_region(1000.0);
    LayoutState state(region, cfg, kUnitScale);
    const TagSpec t = tag("abc", 1.0);

    SUBCASE("equal scores, larger triangle wins")
    {
        // No marks at all: every hypothesis has a single mark and scores 0.
        std::vector<Candidate> cands{{{100.0, 100.0}, 0, 50.0, 1, 0, 0.0, state.tag_box(t, 10.0, {100.0, 100.0}, 0)},
                                     {{700.0, 700.0}, 0, 80.0, 0, 0, 0.0, state.tag_box(t, 10.0, {700.0, 700.0}, 0)}};
        CHECK(select_best(cands, state, 10.0) == std::optional<std::size_t>{1});
    }

    SUBCASE("preferred horizontal orientation wins at equal positive index")
    {
        LayoutConfig weighted = cfg;
        weighted.orientations = {90, 0};
        weighted.orientation_weights.set(0, 2.0);
        LayoutState ws(region, weighted, kUnitScale);
        const TagSpec big = tag("giant", 10.0);
        ws.place(big, 60.0, ws.tag_box(big, 60.0, {200.0, 200.0}, 0), 0);
        const Point p{700.0, 700.0};
        std::vector<Candidate> cands{{p, 90, 10.0, 0, 0, 0.0, ws.tag_box(t, 10.0, p, 90)},
                                     {p, 0, 10.0, 0, 0, 0.0, ws.tag_box(t, 10.0, p, 0)}};
        CHECK(select_best(cands, ws, 10.0) == std::optional<std::size_t>{1});
    }

    SUBCASE("baseline takes the largest triangle")
    {
        LayoutConfig base = cfg;
        base.mode = SelectionMode::baseline;
        base.orientations = {0, 90};
        LayoutState bs(region, base, kUnitScale);
        const auto cands = candidates(bs, t, 10.0, std::nullopt);
        const auto chosen = select_best(cands, bs, 10.0);
        REQUIRE(chosen);
        for (const Candidate& c : cands)
            CHECK(cands[*chosen].triangle_area >= c.triangle_area);
        CHECK(cands[*chosen].orientation == 0);
    }

    CHECK_FALSE(select_best({}, state, 10.0));
}

TEST_CASE("place_all on trivial inputs")
{
    const RegionSet region = oracle::square_region(1000.0);
    const LayoutBundle empty = place_all(region, {}, unit_config());
    CHECK(empty.placed.empty());
    CHECK(empty.metrics.n == 0);
    CHECK(empty.metrics.index == 0.0);

    // A triangle region triangulates into a single triangle, so both modes see one location.
    RegionSet tri;
    tri.polygons.push_back({{{0, 0}, {900, 0}, {300, 700}, {0, 0}}, {}});
    LayoutConfig cfg = unit_config();
    const LayoutBundle a = place_all(tri, {tag("solo", 3.0)}, cfg);
    cfg.mode = SelectionMode::baseline;
    const LayoutBundle b = place_all(tri, {tag("solo", 3.0)}, cfg);
    REQUIRE(a.placed.size() == 1);
    REQUIRE(b.placed.size() == 1);
    CHECK(a.placed[0].box.center == b.placed[0].box.center);
    CHECK(a.placed[0].box.angle_deg == b.placed[0].box.angle_deg);
    CHECK(a.placed[0].font_size == b.placed[0].font_size);
}

TEST_CASE("place_all invariants on the demo region")
{
    const RegionSet region = demo_region();
    for (SelectionMode mode : {SelectionMode::index, SelectionMode::baseline}) {
        LayoutConfig cfg;
        cfg.mode = mode;
        cfg.orientations = {0, 90, 45, -45};
        cfg.seed = 3;
        std::size_t iterations = 0;
        const LayoutBundle b = place_all(region, demo_corpus(3, 40), cfg, [&](const IterationSnapshot& s) {
            ++iterations;
            for (const SizedMark& m : s.state->virtual_field().marks)
                for (const PlacedTag& p : s.state->placed())
                    CHECK_FALSE(p.box.contains(m.center));
        });
        CHECK(iterations == b.placed.size());
        CHECK(b.placed.size() + b.unplaced.size() == 40);
        check_layout_invariants(b);
        for (const PlacedTag& t : b.placed) {
            CHECK(t.font_size >= cfg.f_min);
            CHECK(t.font_size <= b.effective_f_max);
        }
    }
}

TEST_CASE("place_all is deterministic")
{
    const RegionSet region = demo_region();
    LayoutConfig cfg;
    cfg.orientations = {0, 30, -30, 90};
    cfg.virtual_strategy = VirtualStrategy::random;
    cfg.seed = 99;
    LayoutBundle a = place_all(region, demo_corpus(5, 30), cfg);
    LayoutBundle b = place_all(region, demo_corpus(5, 30), cfg);
    a.metrics.seconds.reset();
    b.metrics.seconds.reset();
    CHECK(serialize_bundle(a) == serialize_bundle(b));
}

TEST_CASE("pinned and fixed-size tags")
{
    const RegionSet region = oracle::square_region(1000.0);
    std::vector<TagSpec> tags{tag("alpha", 9.0), tag("beta", 5.0), tag("gamma", 1.0)};
    tags[2].pinned_center = Point{500.0, 500.0};
    tags[1].fixed_font = 20.0;
    const LayoutBundle b = place_all(region, tags, unit_config());
    REQUIRE(b.placed.size() == 3);
    CHECK(b.placed[0].spec.text == "gamma");
    CHECK(b.placed[0].box.center == Point{500.0, 500.0});
    for (const PlacedTag& t : b.placed)
        if (t.spec.text == "beta") CHECK(t.font_size == 20.0);
    check_layout_invariants(b);

    // A pin outside the region cannot be honored.
    tags[2].pinned_center = Point{5000.0, 500.0};
    CHECK_THROWS_AS(place_all(region, tags, unit_config()), InfeasibleLayout);

    // A fixed size that cannot fit shrinks by whole points.
    std::vector<TagSpec> big{tag("filler", 5.0), tag("wide", 1.0)};
    big[1].fixed_font = 500.0;
    const LayoutBundle s = place_all(oracle::square_region(300.0), big, unit_config());
    for (const PlacedTag& t : s.placed)
        if (t.spec.text == "wide") CHECK(t.font_size < 500.0);
}

TEST_CASE("F_max shrinks when the largest tag does not fit")
{
    LayoutConfig cfg = unit_config();
    const LayoutBundle b = place_all(oracle::square_region(3.6 * 57.5), {tag("abcd", 2.0), tag("x", 1.0)}, cfg);
    CHECK(b.effective_f_max == 57.0);
    REQUIRE_FALSE(b.placed.empty());
    CHECK(b.placed[0].font_size == 57.0);
    CHECK_FALSE(b.warnings.empty());
    CHECK_THROWS_AS(place_all(oracle::square_region(10.0), {tag("abcd", 2.0)}, cfg), InfeasibleLayout);
}

TEST_CASE("disabling strategy I scans more triangles")
{
    const RegionSet region = demo_region();
    LayoutConfig cfg;
    cfg.n_t = 20;
    const LayoutBundle with = place_all(region, demo_corpus(1, 25), cfg);
    cfg.strategy1 = false;
    const LayoutBundle without = place_all(region, demo_corpus(1, 25), cfg);
    CHECK(without.stats.triangle_visits > with.stats.triangle_visits);
    check_layout_invariants(without);
}

TEST_CASE("raising F_min does not place more tags")
{
    const RegionSet region = demo_region();
    for (std::uint64_t seed : {1u, 2u}) {
        std::size_t last = std::numeric_limits<std::size_t>::max();
        for (double f_min : {6.0, 12.0, 24.0}) {
            LayoutConfig cfg;
            cfg.f_min = f_min;
            cfg.seed = seed;
            const LayoutBundle b = place_all(region, demo_corpus(seed, 150), cfg);
            CHECK(b.placed.size() <= last);
            last = b.placed.size();
        }
    }
}

TEST_CASE("place_all rejects bad tags")
{
    const RegionSet region = oracle::square_region(1000.0);
    CHECK_THROWS_AS(place_all(region, {tag("", 1.0)}, unit_config()), InputError);
    CHECK_THROWS_AS(place_all(region, {tag("a", -1.0)}, unit_config()), InputError);
}
