#include "report_writer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hsconvex::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";  // JSON has no literal for non-finite numbers
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_value(const ordered_json& v, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (v.type()) {
        case nlohmann::detail::value_t::null:
            out += "null";
            break;
        case nlohmann::detail::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case nlohmann::detail::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            break;
        case nlohmann::detail::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            break;
        case nlohmann::detail::value_t::number_float:
            out += format_double(v.get<double>());
            break;
        case nlohmann::detail::value_t::string:
            out += nlohmann::json(v.get<std::string>()).dump();  // escaped
            break;
        case nlohmann::detail::value_t::array: {
            if (v.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += pad_in;
                write_value(v[i], out, depth + 1);
                if (i + 1 < v.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        }
        case nlohmann::detail::value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                out += pad_in + nlohmann::json(it.key()).dump() + ": ";
                write_value(it.value(), out, depth + 1);
                if (i + 1 < v.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
        }
        default:
            out += "null";
            break;
    }
}

ordered_json opt_json(const std::optional<std::string>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json opt_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json opt_json(const std::optional<int>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

// --- CSV ---------------------------------------------------------------

void csv_row(std::string& out, const std::string& subject, const std::string& lhs,
             double lhs_value, const std::string& rhs, double rhs_value, double margin,
             bool holds) {
    out += subject + ',' + lhs + ',' + format_double(lhs_value) + ',' + rhs + ',' +
           format_double(rhs_value) + ',' + format_double(margin) + ',' +
           (holds ? "true" : "false") + '\n';
}

double term_value(const ordered_json& payload, const std::string& label) {
    for (const auto& t : payload.at("terms")) {
        if (t.at("label") == label) return t.at("value").get<double>();
    }
    return 0.0;
}

void csv_payload(std::string& out, const ordered_json& payload) {
    const std::string type = payload.at("type");
    if (type == "inequality") {
        const std::string subject = payload.at("theorem");
        for (const auto& c : payload.at("comparisons")) {
            csv_row(out, subject, c.at("lhs"), term_value(payload, c.at("lhs")), c.at("rhs"),
                    term_value(payload, c.at("rhs")), c.at("margin").get<double>(),
                    c.at("holds").get<bool>());
        }
    } else if (type == "membership") {
        csv_row(out, "class-check:" + payload.at("class").get<std::string>(), "max_defect",
                payload.at("max_defect").get<double>(), "tolerance",
                payload.at("tolerance").get<double>(),
                payload.at("tolerance").get<double>() - payload.at("max_defect").get<double>(),
                payload.at("holds").get<bool>());
    } else if (type == "s_range") {
        for (const auto& r : payload.at("intervals")) {
            csv_row(out, "s-range:" + payload.at("class").get<std::string>(), "lo",
                    r.at("lo").get<double>(), "hi", r.at("hi").get<double>(),
                    r.at("hi").get<double>() - r.at("lo").get<double>(), true);
        }
    } else if (type == "means") {
        if (payload.contains("chain")) {
            for (const auto& c : payload.at("chain")) {
                const auto& values = payload.at("values");
                csv_row(out, "means-chain", c.at("lhs"),
                        values.at(c.at("lhs").get<std::string>()).get<double>(), c.at("rhs"),
                        values.at(c.at("rhs").get<std::string>()).get<double>(),
                        c.at("margin").get<double>(), c.at("holds").get<bool>());
            }
        }
    } else if (type == "proposition") {
        const std::string subject = "proposition_" + std::to_string(payload.at("id").get<int>());
        const double ln_identric = payload.at("ln_identric").get<double>();
        if (!payload.at("lower_printed").is_null()) {
            const double lower = payload.at("lower_printed").get<double>();
            csv_row(out, subject, "lower_printed", lower, "ln_identric", ln_identric,
                    ln_identric - lower, payload.at("holds_printed").get<bool>());
        }
        const double upper_printed = payload.at("upper_printed").get<double>();
        csv_row(out, subject, "ln_identric", ln_identric, "upper_printed", upper_printed,
                upper_printed - ln_identric, payload.at("holds_printed").get<bool>());
        const double upper_derived = payload.at("upper_derived").get<double>();
        csv_row(out, subject, "ln_identric", ln_identric, "upper_derived", upper_derived,
                upper_derived - ln_identric, payload.at("holds_derived").get<bool>());
    }
}

// --- text ---------------------------------------------------------------

void text_payload(std::string& out, const ordered_json& payload) {
    const std::string type = payload.at("type");
    if (type == "inequality") {
        out += "theorem " + payload.at("theorem").get<std::string>() + "\n";
        for (const auto& t : payload.at("terms")) {
            out += "  " + t.at("label").get<std::string>() + " = " +
                   format_double(t.at("value").get<double>());
            const double err = t.at("error_bound").get<double>();
            if (err > 0.0) out += " (+/- " + format_double(err) + ")";
            out += "\n";
        }
        for (const auto& c : payload.at("comparisons")) {
            out += "  " + c.at("lhs").get<std::string>() + " <= " +
                   c.at("rhs").get<std::string>() +
                   ": margin=" + format_double(c.at("margin").get<double>()) +
                   (c.at("holds").get<bool>() ? "  HOLDS" : "  VIOLATED") + "\n";
        }
        for (const auto& n : payload.at("notes")) {
            out += "  note: " + n.get<std::string>() + "\n";
        }
    } else if (type == "membership") {
        out += "class-check " + payload.at("class").get<std::string>() + ": " +
               payload.at("status").get<std::string>() +
               " (max defect " + format_double(payload.at("max_defect").get<double>()) +
               ", tolerance " + format_double(payload.at("tolerance").get<double>()) + ")\n";
        if (!payload.at("witness").is_null()) {
            const auto& w = payload.at("witness");
            out += "  witness: x=" + format_double(w.at("x").get<double>()) +
                   " y=" + format_double(w.at("y").get<double>()) +
                   " t=" + format_double(w.at("t").get<double>()) +
                   " defect=" + format_double(w.at("defect").get<double>()) + "\n";
        }
    } else if (type == "s_range") {
        out += "valid s ranges for " + payload.at("class").get<std::string>() + ":";
        if (payload.at("intervals").empty()) out += " (none)";
        out += "\n";
        for (const auto& r : payload.at("intervals")) {
            out += "  [" + format_double(r.at("lo").get<double>()) + ", " +
                   format_double(r.at("hi").get<double>()) + "]\n";
        }
    } else if (type == "means") {
        for (const auto& item : payload.at("values").items()) {
            out += "  " + item.key() + " = " + format_double(item.value().get<double>()) + "\n";
        }
        if (payload.contains("p_logarithmic")) {
            out += "  p_logarithmic = " +
                   format_double(payload.at("p_logarithmic").get<double>()) + "\n";
        }
        if (payload.contains("chain")) {
            for (const auto& c : payload.at("chain")) {
                out += "  " + c.at("lhs").get<std::string>() + " <= " +
                       c.at("rhs").get<std::string>() +
                       ": margin=" + format_double(c.at("margin").get<double>()) +
                       (c.at("holds").get<bool>() ? "  HOLDS" : "  VIOLATED") + "\n";
            }
        }
    } else if (type == "proposition") {
        out += "proposition " + std::to_string(payload.at("id").get<int>()) +
               " (s=" + format_double(payload.at("s").get<double>()) + ")\n";
        out += "  ln I = " + format_double(payload.at("ln_identric").get<double>()) + "\n";
        if (!payload.at("lower_printed").is_null()) {
            out += "  lower bound as printed = " +
                   format_double(payload.at("lower_printed").get<double>()) + "\n";
        }
        out += "  upper bound as printed = " +
               format_double(payload.at("upper_printed").get<double>()) +
               (payload.at("holds_printed").get<bool>() ? "  HOLDS" : "  VIOLATED") + "\n";
        out += "  upper bound from " + payload.at("derived_theorem").get<std::string>() + " = " +
               format_double(payload.at("upper_derived").get<double>()) +
               (payload.at("holds_derived").get<bool>() ? "  HOLDS" : "  VIOLATED") + "\n";
        out += "  hypothesis (ln in SX((h-s)_2)): " +
               payload.at("hypothesis").at("status").get<std::string>() + "\n";
    }
}

}  // namespace

std::string dump_canonical(const ordered_json& doc) {
    std::string out;
    write_value(doc, out, 0);
    out += '\n';
    return out;
}

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["subcommand"] = c.subcommand;
    j["f"] = opt_json(c.f);
    j["g"] = opt_json(c.g);
    j["h"] = opt_json(c.h);
    j["s"] = opt_json(c.s);
    j["a"] = opt_json(c.a);
    j["b"] = opt_json(c.b);
    j["theorem"] = opt_json(c.theorem);
    j["class"] = opt_json(c.klass);
    j["prop"] = opt_json(c.prop);
    j["tol"] = c.tol;
    j["grid"] = c.grid;
    j["p"] = opt_json(c.p);
    j["format"] = c.format;
    j["out"] = opt_json(c.out);
    j["seed"] = c.seed;
    j["check_hypothesis"] = c.check_hypothesis;
    j["chain"] = c.chain;
    j["search_tolerance_scale"] = opt_json(c.search_tolerance_scale);
    j["search_budget"] =
        c.search_budget ? ordered_json(*c.search_budget) : ordered_json(nullptr);
    j["refine_top_k"] = opt_json(c.refine_top_k);
    return j;
}

ordered_json verdict_json(const MembershipVerdict& v) {
    ordered_json j;
    j["status"] =
        v.status == MembershipStatus::MemberOnGrid ? "member_on_grid" : "violated";
    j["max_defect"] = v.max_defect;
    j["tolerance"] = v.tolerance;
    j["grid"] = ordered_json::array({v.grid_x, v.grid_y, v.grid_t});
    j["search_complete"] = v.search_complete;
    if (v.witness) {
        ordered_json w;
        w["x"] = v.witness->x;
        w["y"] = v.witness->y;
        w["t"] = v.witness->t;
        w["defect"] = v.witness->defect;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

ordered_json inequality_json(const InequalityReport& r) {
    ordered_json j;
    j["type"] = "inequality";
    j["theorem"] = to_string(r.theorem);
    ordered_json terms = ordered_json::array();
    for (const Term& t : r.terms) {
        ordered_json tj;
        tj["label"] = t.label;
        tj["value"] = t.value;
        tj["error_bound"] = t.error_bound;
        terms.push_back(tj);
    }
    j["terms"] = terms;
    ordered_json comparisons = ordered_json::array();
    for (const Comparison& c : r.comparisons) {
        ordered_json cj;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["margin"] = c.margin;
        cj["holds"] = c.holds;
        comparisons.push_back(cj);
    }
    j["comparisons"] = comparisons;
    ordered_json hypothesis = ordered_json::array();
    for (const HypothesisCheck& h : r.hypothesis) {
        ordered_json hj;
        hj["function"] = h.function_label;
        hj["class"] = to_string(h.klass);
        hj["verdict"] = verdict_json(h.verdict);
        hypothesis.push_back(hj);
    }
    j["hypothesis"] = hypothesis;
    j["notes"] = r.notes;
    j["quadrature_converged"] = r.quadrature_converged;
    j["holds"] = r.all_hold();
    return j;
}

ordered_json chain_json(const ChainReport& r) {
    ordered_json chain = ordered_json::array();
    for (const Comparison& c : r.comparisons) {
        ordered_json cj;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["margin"] = c.margin;
        cj["holds"] = c.holds;
        chain.push_back(cj);
    }
    return chain;
}

ordered_json proposition_json(const PropositionReport& r) {
    ordered_json j;
    j["type"] = "proposition";
    j["id"] = r.id;
    j["a"] = r.a;
    j["b"] = r.b;
    j["s"] = r.s;
    j["ln_identric"] = r.ln_identric;
    j["ln_identric_quad"] = r.ln_identric_quad;
    j["quad_error"] = r.quad_error;
    j["lower_printed"] = opt_json(r.lower_printed);
    j["upper_printed"] = r.upper_printed;
    j["lower_derived"] = opt_json(r.lower_derived);
    j["upper_derived"] = r.upper_derived;
    j["derived_theorem"] = r.derived_theorem;
    j["holds_printed"] = r.holds_printed;
    j["holds_derived"] = r.holds_derived;
    j["hypothesis"] = verdict_json(r.hypothesis);
    j["holds"] = r.holds_printed;
    return j;
}

std::string render_document(const RunConfig& config, const std::vector<ordered_json>& reports) {
    if (config.format == "json") {
        ordered_json doc;
        doc["version"] = kVersion;
        doc["seed"] = config.seed;
        doc["config"] = config_json(config);
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(r);
        doc["reports"] = arr;
        return dump_canonical(doc);
    }
    if (config.format == "csv") {
        std::string out = "subject,lhs,lhs_value,rhs,rhs_value,margin,holds\n";
        for (const auto& r : reports) csv_payload(out, r);
        return out;
    }
    std::string out;
    for (const auto& r : reports) text_payload(out, r);
    bool holds = all_reports_hold(reports);
    out += holds ? "verdict: all checks hold\n" : "verdict: some checks FAILED\n";
    return out;
}

bool all_reports_hold(const std::vector<ordered_json>& reports) {
    for (const auto& r : reports) {
        if (r.contains("holds") && !r.at("holds").get<bool>()) return false;
    }
    return true;
}

}  // namespace hsconvex::cli
