#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

namespace hsconvex::cli {

namespace {

struct RawArgs {
    std::optional<std::string> f, g, h, theorem, klass, format, out, config;
    std::optional<double> s, a, b, tol, p, search_tolerance_scale;
    std::optional<int> grid, prop, refine_top_k;
    std::optional<std::int64_t> search_budget;
    std::optional<std::uint64_t> seed;
    bool check_hypothesis = false;
    bool chain = false;
};

void add_shared_options(CLI::App* cmd, RawArgs& raw) {
    cmd->set_help_flag("--help", "Print help");  // frees -h / --h for the weight function
    cmd->add_option("--f", raw.f, "Function f: catalog name or expression");
    cmd->add_option("--g", raw.g, "Second function for product theorems");
    cmd->add_option("--h", raw.h, "Weight function h: identity, one, reciprocal, power(p) or expression");
    cmd->add_option("--s", raw.s, "Class exponent s in (0,1]");
    cmd->add_option("--a", raw.a, "Interval left endpoint");
    cmd->add_option("--b", raw.b, "Interval right endpoint");
    cmd->add_option("--theorem", raw.theorem, "Theorem id (see docs/schema.md)");
    cmd->add_option("--class", raw.klass, "Convexity class kind");
    cmd->add_option("--prop", raw.prop, "Proposition id 1..4 (default: all)");
    cmd->add_option("--tol", raw.tol, "Quadrature tolerance (absolute)");
    cmd->add_option("--grid", raw.grid, "Search grid points per axis / sweep resolution");
    cmd->add_option("--p", raw.p, "Exponent for the p-logarithmic mean");
    cmd->add_option("--format", raw.format, "Output format: json, csv or text");
    cmd->add_option("--out", raw.out, "Write the report to this path instead of stdout");
    cmd->add_option("--seed", raw.seed, "Seed recorded in the report header");
    cmd->add_option("--config", raw.config, "JSON config file; flags override it");
    cmd->add_option("--search-tolerance-scale", raw.search_tolerance_scale,
                    "Membership tolerance scale (defect > scale*(1+max|f|) violates)");
    cmd->add_option("--search-budget", raw.search_budget, "Defect evaluation budget");
    cmd->add_option("--refine-top-k", raw.refine_top_k, "Positive cells refined by ascent");
    cmd->add_flag("--check-hypothesis", raw.check_hypothesis,
                  "Also run the membership check for the theorem's hypothesis class");
    cmd->add_flag("--chain", raw.chain, "Include the H<=G<=L<=I<=A<=K chain (means)");
}

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_object()) {
        throw std::invalid_argument("config file must hold a flat JSON object");
    }
    return doc;
}

template <typename T>
void merge(std::optional<T>& target, const nlohmann::json& doc, const char* key) {
    if (target.has_value()) return;  // flag wins
    auto it = doc.find(key);
    if (it != doc.end() && !it->is_null()) {
        target = it->get<T>();
    }
}

}  // namespace

SearchConfig RunConfig::search_config() const {
    SearchConfig sc;
    sc.grid_x = sc.grid_y = sc.grid_t = grid;
    if (search_tolerance_scale) sc.tolerance_scale = *search_tolerance_scale;
    if (search_budget) sc.max_defect_evaluations = *search_budget;
    if (refine_top_k) sc.refine_top_k = *refine_top_k;
    return sc;
}

RunConfig parse_arguments(const std::vector<std::string>& args) {
    CLI::App app{"Numerical checker for generalized convexity classes, Hadamard-type "
                 "inequalities and special means"};
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);

    RawArgs raw;
    const char* subcommands[] = {"class-check", "s-range", "verify", "sweep", "means", "props"};
    const char* descriptions[] = {
        "Decide class membership for f on [a,b] by defect maximization",
        "Find the s subintervals of (0,1] where membership holds",
        "Evaluate one Hadamard-type inequality and report margins",
        "Evaluate one inequality over a grid of (s, interval) values",
        "Evaluate the special means and their ordering chain",
        "Audit the special-means propositions for f(x) = ln x"};
    for (int i = 0; i < 6; ++i) {
        add_shared_options(app.add_subcommand(subcommands[i], descriptions[i]), raw);
    }

    // CLI11 wants argv in reverse order without the program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    RunConfig config;
    config.subcommand = app.get_subcommands().front()->get_name();

    if (raw.config) {
        const nlohmann::json doc = load_config_file(*raw.config);
        merge(raw.f, doc, "f");
        merge(raw.g, doc, "g");
        merge(raw.h, doc, "h");
        merge(raw.s, doc, "s");
        merge(raw.a, doc, "a");
        merge(raw.b, doc, "b");
        merge(raw.theorem, doc, "theorem");
        merge(raw.klass, doc, "class");
        merge(raw.prop, doc, "prop");
        merge(raw.tol, doc, "tol");
        merge(raw.grid, doc, "grid");
        merge(raw.p, doc, "p");
        merge(raw.format, doc, "format");
        merge(raw.out, doc, "out");
        merge(raw.seed, doc, "seed");
        merge(raw.search_tolerance_scale, doc, "search_tolerance_scale");
        merge(raw.search_budget, doc, "search_budget");
        merge(raw.refine_top_k, doc, "refine_top_k");
        if (!raw.check_hypothesis && doc.contains("check_hypothesis")) {
            raw.check_hypothesis = doc["check_hypothesis"].get<bool>();
        }
        if (!raw.chain && doc.contains("chain")) {
            raw.chain = doc["chain"].get<bool>();
        }
    }

    config.f = raw.f;
    config.g = raw.g;
    config.h = raw.h;
    config.s = raw.s;
    config.a = raw.a;
    config.b = raw.b;
    config.theorem = raw.theorem;
    config.klass = raw.klass;
    config.prop = raw.prop;
    if (raw.tol) config.tol = *raw.tol;
    if (raw.grid) config.grid = *raw.grid;
    if (raw.format) config.format = *raw.format;
    config.out = raw.out;
    if (raw.seed) config.seed = *raw.seed;
    config.check_hypothesis = raw.check_hypothesis;
    config.chain = raw.chain;
    config.p = raw.p;
    config.search_tolerance_scale = raw.search_tolerance_scale;
    config.search_budget = raw.search_budget;
    config.refine_top_k = raw.refine_top_k;

    if (config.format != "json" && config.format != "csv" && config.format != "text") {
        throw std::invalid_argument("unknown --format '" + config.format +
                                    "' (expected json, csv or text)");
    }
    if (config.tol <= 0.0) {
        throw std::invalid_argument("--tol must be positive");
    }
    if (config.grid < 2) {
        throw std::invalid_argument("--grid must be at least 2");
    }
    return config;
}

}  // namespace hsconvex::cli
