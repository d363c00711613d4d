#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hsconvex/convexity_classes.hpp"
#include "hsconvex/hadamard.hpp"
#include "hsconvex/means.hpp"
#include "hsconvex/real_function.hpp"
#include "report_writer.hpp"
#include "run_config.hpp"

namespace hsconvex::cli {

namespace {

double require(const std::optional<double>& v, const char* flag) {
    if (!v) throw std::invalid_argument(std::string("missing required flag ") + flag);
    return *v;
}

std::string require(const std::optional<std::string>& v, const char* flag) {
    if (!v) throw std::invalid_argument(std::string("missing required flag ") + flag);
    return *v;
}

bool theorem_needs_s(TheoremId id) {
    return id == TheoremId::SConvexHadamard || id == TheoremId::HsUpper ||
           id == TheoremId::HsSandwich || id == TheoremId::HsProduct ||
           id == TheoremId::HsSymmetricUpper || id == TheoremId::HsBullen;
}

bool theorem_needs_h(TheoremId id) {
    return theorem_needs_s(id) && id != TheoremId::SConvexHadamard;
}

bool class_needs_h(ClassKind kind) {
    return kind == ClassKind::HConvex || kind == ClassKind::HsFirst ||
           kind == ClassKind::HsSecond;
}

bool class_needs_s(ClassKind kind) {
    return kind == ClassKind::SConvexSecond || kind == ClassKind::HsFirst ||
           kind == ClassKind::HsSecond;
}

std::vector<ordered_json> run_class_check(const RunConfig& config) {
    const Interval iv(require(config.a, "--a"), require(config.b, "--b"));
    const ClassKind kind = class_kind_from_string(require(config.klass, "--class"));
    const RealFunction f = resolve_function(require(config.f, "--f"), iv);

    std::optional<RealFunction> h;
    std::optional<double> s;
    std::string h_name;
    if (class_needs_h(kind)) {
        h_name = config.h.value_or("identity");
        h = resolve_function(h_name, Interval(0.0, 1.0), /*as_weight=*/true);
    }
    if (class_needs_s(kind)) {
        s = require(config.s, "--s");
    }
    const ClassSpec spec = ClassSpec::make(kind, h, s);
    const MembershipVerdict verdict = check_membership(spec, f, iv, config.search_config());

    ordered_json payload;
    payload["type"] = "membership";
    payload["class"] = to_string(kind);
    payload["f"] = f.name();
    payload["h"] = h ? ordered_json(h_name) : ordered_json(nullptr);
    payload["s"] = s ? ordered_json(*s) : ordered_json(nullptr);
    payload["a"] = iv.a;
    payload["b"] = iv.b;
    ordered_json v = verdict_json(verdict);
    for (auto it = v.begin(); it != v.end(); ++it) payload[it.key()] = it.value();
    payload["holds"] = verdict.status == MembershipStatus::MemberOnGrid;
    return {payload};
}

std::vector<ordered_json> run_s_range(const RunConfig& config) {
    const Interval iv(require(config.a, "--a"), require(config.b, "--b"));
    const ClassKind kind = class_kind_from_string(require(config.klass, "--class"));
    const RealFunction f = resolve_function(require(config.f, "--f"), iv);
    const std::string h_name = config.h.value_or("identity");
    const RealFunction h = resolve_function(h_name, Interval(0.0, 1.0), /*as_weight=*/true);

    const auto ranges = find_valid_s_range(kind, h, f, iv, config.search_config());

    ordered_json payload;
    payload["type"] = "s_range";
    payload["class"] = to_string(kind);
    payload["f"] = f.name();
    payload["h"] = h_name;
    payload["a"] = iv.a;
    payload["b"] = iv.b;
    payload["resolution"] = kSRangeResolution;
    ordered_json arr = ordered_json::array();
    for (const SRange& r : ranges) {
        ordered_json rj;
        rj["lo"] = r.lo;
        rj["hi"] = r.hi;
        arr.push_back(rj);
    }
    payload["intervals"] = arr;
    payload["holds"] = true;
    return {payload};
}

ordered_json one_verify(const RunConfig& config, TheoremId id, const Interval& iv,
                        std::optional<double> s_override = std::nullopt) {
    TheoremRequest request{id,
                           resolve_function(require(config.f, "--f"), iv),
                           std::nullopt,
                           std::nullopt,
                           std::nullopt,
                           iv,
                           config.tol,
                           config.check_hypothesis,
                           config.search_config()};
    if (config.g) {
        request.g = resolve_function(*config.g, iv);
    }
    std::string h_name;
    if (theorem_needs_h(id)) {
        h_name = config.h.value_or("identity");
        request.h = resolve_function(h_name, Interval(0.0, 1.0), /*as_weight=*/true);
    }
    if (theorem_needs_s(id)) {
        request.s = s_override ? s_override : config.s;
        if (!request.s) {
            throw std::invalid_argument("theorem '" + to_string(id) + "' requires --s");
        }
    }

    const ordered_json base = inequality_json(evaluate_theorem(request));
    ordered_json payload;
    payload["type"] = base.at("type");
    payload["theorem"] = base.at("theorem");
    payload["f"] = request.f.name();
    payload["g"] = request.g ? ordered_json(request.g->name()) : ordered_json(nullptr);
    payload["h"] = request.h ? ordered_json(h_name) : ordered_json(nullptr);
    payload["s"] = request.s ? ordered_json(*request.s) : ordered_json(nullptr);
    payload["a"] = iv.a;
    payload["b"] = iv.b;
    for (auto it = base.begin(); it != base.end(); ++it) {
        if (!payload.contains(it.key())) payload[it.key()] = it.value();
    }
    return payload;
}

std::vector<ordered_json> run_verify(const RunConfig& config) {
    const Interval iv(require(config.a, "--a"), require(config.b, "--b"));
    const TheoremId id = theorem_from_string(require(config.theorem, "--theorem"));
    return {one_verify(config, id, iv)};
}

std::vector<ordered_json> run_sweep(const RunConfig& config) {
    const double a = require(config.a, "--a");
    const double b = require(config.b, "--b");
    if (!(a < b)) throw std::invalid_argument("sweep requires a < b");
    const TheoremId id = theorem_from_string(require(config.theorem, "--theorem"));

    const int n = config.grid;
    std::vector<std::optional<double>> s_values;
    if (theorem_needs_s(id)) {
        for (int i = 1; i <= n; ++i) {
            s_values.push_back(static_cast<double>(i) / n);
        }
    } else {
        s_values.push_back(std::nullopt);
    }

    std::vector<ordered_json> reports;
    for (const auto& s : s_values) {
        for (int j = 0; j < n; ++j) {
            // Nested subintervals shrinking toward the center.
            const double shrink = (b - a) * j / (4.0 * n);
            const Interval iv(a + shrink, b - shrink);
            reports.push_back(one_verify(config, id, iv, s));
        }
    }
    return reports;
}

std::vector<ordered_json> run_means(const RunConfig& config) {
    const double a = require(config.a, "--a");
    const double b = require(config.b, "--b");

    ordered_json payload;
    payload["type"] = "means";
    payload["a"] = a;
    payload["b"] = b;
    const ChainReport chain = chain_check(a, b);
    ordered_json values;
    for (const ChainEntry& e : chain.means) {
        values[e.label] = e.value;
    }
    payload["values"] = values;
    if (config.p) {
        payload["p"] = *config.p;
        payload["p_logarithmic"] = p_log_mean(a, b, *config.p);
    }
    payload["chain"] = chain_json(chain);
    payload["holds"] = chain.all_hold();
    return {payload};
}

std::vector<ordered_json> run_props(const RunConfig& config) {
    const double a = require(config.a, "--a");
    const double b = require(config.b, "--b");
    const double s = require(config.s, "--s");

    std::vector<int> ids;
    if (config.prop) {
        ids.push_back(*config.prop);
    } else {
        ids = {1, 2, 3, 4};
    }
    std::vector<ordered_json> reports;
    for (int id : ids) {
        reports.push_back(proposition_json(proposition_check(id, a, b, s,
                                                             config.search_config())));
    }
    return reports;
}

int run(const std::vector<std::string>& args) {
    const RunConfig config = parse_arguments(args);

    std::vector<ordered_json> reports;
    if (config.subcommand == "class-check") {
        reports = run_class_check(config);
    } else if (config.subcommand == "s-range") {
        reports = run_s_range(config);
    } else if (config.subcommand == "verify") {
        reports = run_verify(config);
    } else if (config.subcommand == "sweep") {
        reports = run_sweep(config);
    } else if (config.subcommand == "means") {
        reports = run_means(config);
    } else {
        reports = run_props(config);
    }

    const std::string rendered = render_document(config, reports);
    if (config.out) {
        std::ofstream file(*config.out, std::ios::binary);
        if (!file) {
            throw std::invalid_argument("cannot open output file '" + *config.out + "'");
        }
        file << rendered;
    } else {
        std::cout << rendered;
    }
    return all_reports_hold(reports) ? 0 : 1;
}

}  // namespace

}  // namespace hsconvex::cli

int main(int argc, char** argv) {
    try {
        return hsconvex::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const hsconvex::cli::HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
