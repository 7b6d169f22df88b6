#include "tagscape/bundle.hpp"
#include "tagscape/error.hpp"
#include "tagscape/io.hpp"
#include "tagscape/layout.hpp"
#include "tagscape/metrics.hpp"
#include "tagscape/multiscale.hpp"
#include "tagscape/svg.hpp"
#include "tagscape/synthetic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace tagscape;
namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

double to_double(const std::string& s, const std::string& what)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError(what + ": '" + s + "' is not a number");
    return v;
}

int to_int(const std::string& s, const std::string& what)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError(what + ": '" + s + "' is not an integer");
    return v;
}

std::optional<std::uint64_t> env_seed()
{
    const char* env = std::getenv("TAGSCAPE_SEED");
    if (!env || !*env) return std::nullopt;
    const std::string s = env;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("TAGSCAPE_SEED: '" + s + "' is not a seed");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = s.find(sep, start);
        out.push_back(s.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

TagSpec* find_tag(std::vector<TagSpec>& tags, const std::string& text, const std::string& flag)
{
    for (TagSpec& t : tags)
        if (t.text == text) return &t;
    throw InputError(flag + ": no tag named '" + text + "'");
}

std::vector<double> parse_ratios(const std::string& list)
{
    std::vector<double> ratios;
    for (const std::string& r : split(list, ','))
        ratios.push_back(to_double(r, "--ratios"));
    return ratios;
}

struct LayoutArgs {
    std::string region;
    std::string tags;
    double f_max = 60.0;
    double f_min = 6.0;
    std::size_t n_t = 200;
    std::string orientations = "0";
    std::vector<std::string> weights;
    std::string mode = "index";
    std::string virtual_strategy = "grid";
    std::uint64_t seed = 0;
    bool no_strategy1 = false;
    bool no_strategy2 = false;
    std::vector<std::string> pins;
    std::vector<std::string> fixed_sizes;
    std::string metrics;
    std::optional<double> scale;
    std::string ratios = "1,0.5,0.25";
    bool no_timing = false;
    std::string out = "bundle.json";
    std::string svg;
};

LayoutConfig build_config(const LayoutArgs& a)
{
    LayoutConfig c;
    c.f_max = a.f_max;
    c.f_min = a.f_min;
    c.n_t = a.n_t;
    c.orientations.clear();
    for (const std::string& o : split(a.orientations, ','))
        c.orientations.push_back(to_int(o, "--orientations"));
    for (const std::string& w : a.weights) {
        const auto eq = w.find('=');
        if (eq == std::string::npos) throw InputError("--weight expects <angle>=<weight>, got '" + w + "'");
        c.orientation_weights.set(to_int(w.substr(0, eq), "--weight"), to_double(w.substr(eq + 1), "--weight"));
    }
    c.mode = parse_selection_mode(a.mode);
    c.virtual_strategy = parse_virtual_strategy(a.virtual_strategy);
    c.seed = a.seed;
    if (const auto env = env_seed()) c.seed = *env;
    c.strategy1 = !a.no_strategy1;
    c.strategy2 = !a.no_strategy2;
    c.scale = a.scale;
    c.level_ratios = parse_ratios(a.ratios);
    if (!a.metrics.empty()) c.metrics = TextMetricsModel::from_json_file(a.metrics);
    c.validate();
    return c;
}

void apply_tag_overrides(std::vector<TagSpec>& tags, const LayoutArgs& a)
{
    for (const std::string& p : a.pins) {
        const auto at = p.rfind('@');
        if (at == std::string::npos) throw InputError("--pin expects <text>@lon,lat, got '" + p + "'");
        const auto ll = split(p.substr(at + 1), ',');
        if (ll.size() != 2) throw InputError("--pin expects <text>@lon,lat, got '" + p + "'");
        find_tag(tags, p.substr(0, at), "--pin")->pinned_center =
            project(to_double(ll[0], "--pin"), to_double(ll[1], "--pin"));
    }
    for (const std::string& f : a.fixed_sizes) {
        const auto eq = f.rfind('=');
        if (eq == std::string::npos) throw InputError("--fixed-size expects <text>=<pt>, got '" + f + "'");
        find_tag(tags, f.substr(0, eq), "--fixed-size")->fixed_font = to_double(f.substr(eq + 1), "--fixed-size");
    }
}

void print_summary(const LayoutBundle& b, std::ostream& os)
{
    os << "placed " << b.metrics.n << " of " << b.placed.size() + b.unplaced.size() << " tags, I = " << b.metrics.index
       << ", C = " << b.metrics.compactness << ", N_hor = " << b.metrics.n_horizontal << "\n";
    for (const std::string& w : b.warnings)
        os << "warning: " << w << "\n";
}

int run_layout(const LayoutArgs& a)
{
    LayoutConfig config = build_config(a);
    const RegionSet region = load_region(a.region);
    std::vector<TagSpec> tags = load_tags(a.tags);
    apply_tag_overrides(tags, a);
    LayoutBundle bundle = place_all(region, std::move(tags), config);
    const std::optional<double> seconds = bundle.metrics.seconds;
    if (a.no_timing) bundle.metrics.seconds.reset();
    write_file(a.out, serialize_bundle(bundle));
    if (!a.svg.empty()) write_file(a.svg, export_svg(bundle, 0));
    print_summary(bundle, std::cout);
    if (seconds) std::cout << "t = " << *seconds << " s\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tag map layout engine"};
    app.require_subcommand(1);

    LayoutArgs la;
    auto* layout = app.add_subcommand("layout", "Place a tag corpus inside a region");
    layout->add_option("--region", la.region, "Region GeoJSON (WGS84)")->required();
    layout->add_option("--tags", la.tags, "Tags as CSV or JSON")->required();
    layout->add_option("--fmax", la.f_max, "Largest font size, pt");
    layout->add_option("--fmin", la.f_min, "Smallest font size, pt");
    layout->add_option("--nt", la.n_t, "Candidate locations per tag");
    layout->add_option("--orientations", la.orientations, "Comma-separated angles in degrees");
    layout->add_option("--weight", la.weights, "Orientation weight, <angle>=<w>");
    layout->add_option("--mode", la.mode, "index or baseline");
    layout->add_option("--virtual", la.virtual_strategy, "grid or random");
    layout->add_option("--seed", la.seed, "Seed (TAGSCAPE_SEED overrides)");
    layout->add_flag("--no-strategy1", la.no_strategy1, "Scan the whole TIN for every tag");
    layout->add_flag("--no-strategy2", la.no_strategy2, "Keep candidates close to placed tags");
    layout->add_option("--pin", la.pins, "Pin a tag, <text>@lon,lat");
    layout->add_option("--fixed-size", la.fixed_sizes, "Fix a tag's size, <text>=<pt>");
    layout->add_option("--metrics", la.metrics, "Glyph advance table, JSON {char: em}");
    layout->add_option("--scale", la.scale, "Representative fraction, e.g. 4.78e-8");
    layout->add_option("--ratios", la.ratios, "Level ratios S_tar/S_ori");
    layout->add_flag("--no-timing", la.no_timing, "Leave wall time out of the bundle");
    layout->add_option("--out", la.out, "Bundle path");
    layout->add_option("--svg", la.svg, "Also render level 0 to this path");

    std::string eval_bundle, eval_out;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Compute N, I, C, t and N_hor for a bundle");
    evaluate_cmd->add_option("--bundle", eval_bundle)->required();
    evaluate_cmd->add_option("--out", eval_out, "Report path (stdout when absent)");

    std::string lv_bundle, lv_ratios = "1,0.5,0.25", lv_out;
    auto* levels = app.add_subcommand("levels", "Rescale a layout to other map scales");
    levels->add_option("--bundle", lv_bundle)->required();
    levels->add_option("--ratios", lv_ratios, "Comma-separated S_tar/S_ori");
    levels->add_option("--out", lv_out, "Levels path (stdout when absent)");

    std::string cmp_a, cmp_b, cmp_format = "table";
    auto* compare_cmd = app.add_subcommand("compare", "Compare two evaluation reports");
    compare_cmd->add_option("--a", cmp_a)->required();
    compare_cmd->add_option("--b", cmp_b)->required();
    compare_cmd->add_option("--format", cmp_format)->check(CLI::IsMember({"table", "json"}));

    std::string rd_bundle, rd_out;
    std::size_t rd_level = 0;
    auto* render = app.add_subcommand("render", "Render one level of a bundle as SVG");
    render->add_option("--bundle", rd_bundle)->required();
    render->add_option("--level", rd_level, "Level index");
    render->add_option("--out", rd_out)->required();

    std::string demo_dir = "demo";
    std::uint64_t demo_seed = 7;
    std::size_t demo_n = 100;
    std::string demo_mode = "index";
    auto* demo = app.add_subcommand("demo", "Lay out the bundled synthetic region and corpus");
    demo->add_option("--out-dir", demo_dir);
    demo->add_option("--seed", demo_seed, "Corpus and layout seed (TAGSCAPE_SEED overrides)");
    demo->add_option("--n", demo_n, "Corpus size");
    demo->add_option("--mode", demo_mode, "index or baseline");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*layout) return run_layout(la);

        if (*evaluate_cmd) {
            const EvalReport report = evaluate(read_bundle(eval_bundle));
            const std::string text = report_to_json(report).dump(1) + "\n";
            if (eval_out.empty()) std::cout << text;
            else write_file(eval_out, text);
            return 0;
        }

        if (*levels) {
            const LayoutBundle bundle = read_bundle(lv_bundle);
            const std::vector<double> ratios = parse_ratios(lv_ratios);
            const std::string text = levels_to_json(level_views(bundle, ratios)).dump(1) + "\n";
            if (lv_out.empty()) std::cout << text;
            else write_file(lv_out, text);
            return 0;
        }

        if (*compare_cmd) {
            const auto load = [](const std::string& path) {
                try {
                    return report_from_json(nlohmann::json::parse(read_file(path)));
                } catch (const nlohmann::json::exception& e) {
                    throw InputError(path + ": " + e.what());
                }
            };
            const Comparison c = compare(load(cmp_a), load(cmp_b));
            if (cmp_format == "json") std::cout << comparison_to_json(c).dump(1) << "\n";
            else std::cout << format_table(c, "a", "b");
            return 0;
        }

        if (*render) {
            write_file(rd_out, export_svg(read_bundle(rd_bundle), rd_level));
            return 0;
        }

        if (*demo) {
            LayoutConfig config = demo_config(env_seed().value_or(demo_seed));
            config.mode = parse_selection_mode(demo_mode);
            const RegionSet region = demo_region();
            std::vector<TagSpec> tags = demo_corpus(config.seed, demo_n);
            fs::create_directories(demo_dir);
            const fs::path dir = demo_dir;
            write_file(dir / "region.geojson", region_to_geojson(region).dump(1) + "\n");
            write_file(dir / "tags.csv", tags_to_csv(tags));
            LayoutBundle bundle = place_all(region, std::move(tags), config);
            const std::optional<double> seconds = bundle.metrics.seconds;
            bundle.metrics.seconds.reset();
            write_file(dir / "bundle.json", serialize_bundle(bundle));
            write_file(dir / "layout.svg", export_svg(bundle, 0));
            print_summary(bundle, std::cout);
            if (seconds) std::cout << "t = " << *seconds << " s\n";
            std::cout << "wrote " << (dir / "bundle.json").string() << " and " << (dir / "layout.svg").string() << "\n";
            return 0;
        }
    } catch (const InfeasibleLayout& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
