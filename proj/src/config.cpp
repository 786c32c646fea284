#include "sparsespec/config.hpp"

#include "sparsespec/error.hpp"

#include <set>

namespace sparsespec::cli {

using nlohmann::ordered_json;

namespace {

// Reads fields of one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const ordered_json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    const ordered_json& get(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) throw ConfigError(field(key) + ": required field missing");
        return obj_.at(key);
    }

    void read(const std::string& key, double& out) {
        if (!has(key)) return;
        const auto& v = get(key);
        if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
        out = v.get<double>();
    }

    void read(const std::string& key, Index& out) {
        if (!has(key)) return;
        const auto& v = get(key);
        if (!v.is_number_unsigned()) throw ConfigError(field(key) + ": expected a nonnegative integer");
        out = v.get<Index>();
    }

    void read(const std::string& key, std::string& out) {
        if (!has(key)) return;
        const auto& v = get(key);
        if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
        out = v.get<std::string>();
    }

    void read(const std::string& key, std::vector<double>& out) {
        if (!has(key)) return;
        const auto& v = get(key);
        if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
        out.clear();
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
            out.push_back(x.get<double>());
        }
    }

    std::string type_tag() {
        const auto& v = get("type");
        if (!v.is_string()) throw ConfigError(field("type") + ": expected a string");
        return v.get<std::string>();
    }

    std::string field(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (const auto& item : obj_.items())
            if (!seen_.count(item.key())) throw ConfigError(field(item.key()) + ": unknown key");
    }

private:
    const ordered_json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

Kind parse_kind(const ordered_json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "delta") return Kind::delta;
        if (s == "delta_prime") return Kind::delta_prime;
    }
    throw ConfigError("system.kind: expected \"delta\" or \"delta_prime\"");
}

void parse_positions(const ordered_json& v, SystemConfig& sys) {
    ObjectReader r(v, "system.positions");
    const std::string type = r.type_tag();
    r.read("max_index", sys.max_index);
    if (type == "factorial") {
        sys.positions = lattice::Factorial{};
    } else if (type == "power") {
        lattice::PowerLaw g;
        r.read("c", g.c);
        r.read("p", g.p);
        sys.positions = g;
    } else if (type == "exponential") {
        lattice::Exponential g;
        r.read("c", g.c);
        r.read("q", g.q);
        r.read("r", g.r);
        sys.positions = g;
    } else if (type == "explicit") {
        lattice::ExplicitPoints g;
        r.get("points");
        r.read("points", g.points);
        sys.positions = g;
    } else {
        throw ConfigError("system.positions.type: unknown generator \"" + type + "\"");
    }
    r.finish();
}

void parse_strengths(const ordered_json& v, SystemConfig& sys) {
    ObjectReader r(v, "system.strengths");
    const std::string type = r.type_tag();
    if (type == "power") {
        lattice::PowerStrength g;
        r.read("c", g.c);
        r.read("p", g.p);
        sys.strengths = g;
    } else if (type == "constant") {
        lattice::ConstantStrength g;
        r.read("c", g.c);
        sys.strengths = g;
    } else if (type == "explicit") {
        lattice::ExplicitStrengths g;
        r.get("values");
        r.read("values", g.values);
        sys.strengths = g;
    } else {
        throw ConfigError("system.strengths.type: unknown generator \"" + type + "\"");
    }
    r.finish();
}

Params parse_params(const ordered_json& v) {
    Params p;
    ObjectReader r(v, "params");
    r.read("window_start", p.window_start);
    r.read("window_end", p.window_end);
    r.read("infinity_threshold", p.infinity_threshold);
    r.read("min_growth_exponent", p.min_growth_exponent);
    r.read("tail_fraction", p.tail_fraction);
    r.read("margin", p.margin);
    r.read("zero_threshold", p.zero_threshold);
    r.read("sparse_threshold", p.sparse_threshold);
    if (r.has("lambda0_grid")) {
        ObjectReader g(r.get("lambda0_grid"), "params.lambda0_grid");
        g.read("min", p.lambda0_grid.min);
        g.read("max", p.lambda0_grid.max);
        g.read("count", p.lambda0_grid.count);
        g.finish();
    }
    r.read("lambda0", p.lambda0);
    r.read("N", p.N);
    r.read("lambda", p.lambda);
    if (r.has("xi0")) {
        std::vector<double> xi0;
        r.read("xi0", xi0);
        if (xi0.size() != 2) throw ConfigError("params.xi0: expected two numbers");
        p.xi0 = {xi0[0], xi0[1]};
    }
    r.read("samples_per_interval", p.samples_per_interval);
    r.read("lambda_min", p.lambda_min);
    r.read("lambda_max", p.lambda_max);
    r.read("grid_intervals", p.grid_intervals);
    r.read("tol", p.tol);
    r.read("oracle", p.oracle);
    if (p.oracle != "none" && p.oracle != "fd") throw ConfigError("params.oracle: expected \"none\" or \"fd\"");
    r.read("h", p.h);
    r.read("alignment_tolerance", p.alignment_tolerance);
    r.read("max_nodes", p.max_nodes);
    r.finish();
    return p;
}

OutputConfig parse_output(const ordered_json& v) {
    OutputConfig o;
    ObjectReader r(v, "output");
    r.read("format", o.format);
    if (!o.format.empty() && o.format != "csv" && o.format != "json")
        throw ConfigError("output.format: expected \"csv\" or \"json\"");
    r.read("path", o.path);
    r.finish();
    return o;
}

}  // namespace

RunConfig config_from_json(const ordered_json& doc) {
    RunConfig cfg;
    ObjectReader top(doc, "config");
    {
        ObjectReader sys(top.get("system"), "system");
        cfg.system.kind = parse_kind(sys.get("kind"));
        parse_positions(sys.get("positions"), cfg.system);
        parse_strengths(sys.get("strengths"), cfg.system);
        sys.finish();
    }
    if (top.has("params")) cfg.params = parse_params(top.get("params"));
    if (top.has("output")) cfg.output = parse_output(top.get("output"));
    top.finish();
    return cfg;
}

RunConfig parse_config(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(doc);
}

ordered_json to_json(const SystemConfig& s) {
    ordered_json pos;
    std::visit(
        [&pos](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, lattice::Factorial>) {
                pos["type"] = "factorial";
            } else if constexpr (std::is_same_v<G, lattice::PowerLaw>) {
                pos["type"] = "power";
                pos["c"] = g.c;
                pos["p"] = g.p;
            } else if constexpr (std::is_same_v<G, lattice::Exponential>) {
                pos["type"] = "exponential";
                pos["c"] = g.c;
                pos["q"] = g.q;
                pos["r"] = g.r;
            } else {
                pos["type"] = "explicit";
                pos["points"] = g.points;
            }
        },
        s.positions);
    pos["max_index"] = s.max_index;

    ordered_json str;
    std::visit(
        [&str](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, lattice::PowerStrength>) {
                str["type"] = "power";
                str["c"] = g.c;
                str["p"] = g.p;
            } else if constexpr (std::is_same_v<G, lattice::ConstantStrength>) {
                str["type"] = "constant";
                str["c"] = g.c;
            } else {
                str["type"] = "explicit";
                str["values"] = g.values;
            }
        },
        s.strengths);

    ordered_json out;
    out["kind"] = std::string(to_string(s.kind));
    out["positions"] = std::move(pos);
    out["strengths"] = std::move(str);
    return out;
}

ordered_json to_json(const Params& p) {
    ordered_json out;
    out["window_start"] = p.window_start;
    out["window_end"] = p.window_end;
    out["infinity_threshold"] = p.infinity_threshold;
    out["min_growth_exponent"] = p.min_growth_exponent;
    out["tail_fraction"] = p.tail_fraction;
    out["margin"] = p.margin;
    out["zero_threshold"] = p.zero_threshold;
    out["sparse_threshold"] = p.sparse_threshold;
    out["lambda0_grid"] = {{"min", p.lambda0_grid.min}, {"max", p.lambda0_grid.max}, {"count", p.lambda0_grid.count}};
    out["lambda0"] = p.lambda0;
    out["N"] = p.N;
    out["lambda"] = p.lambda;
    out["xi0"] = {p.xi0[0], p.xi0[1]};
    out["samples_per_interval"] = p.samples_per_interval;
    out["lambda_min"] = p.lambda_min;
    out["lambda_max"] = p.lambda_max;
    out["grid_intervals"] = p.grid_intervals;
    out["tol"] = p.tol;
    out["oracle"] = p.oracle;
    out["h"] = p.h;
    out["alignment_tolerance"] = p.alignment_tolerance;
    out["max_nodes"] = p.max_nodes;
    return out;
}

ordered_json to_json(const RunConfig& c) {
    ordered_json out;
    out["system"] = to_json(c.system);
    out["params"] = to_json(c.params);
    out["output"] = {{"format", c.output.format}, {"path", c.output.path}};
    return out;
}

std::string serialize_config(const RunConfig& config) {
    return to_json(config).dump(2);
}

lattice::SystemSpec build_system(const SystemConfig& system) {
    try {
        return lattice::SystemSpec(system.kind, lattice::SparseSet(system.positions, system.max_index),
                                   lattice::StrengthSequence(system.strengths));
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("system: ") + e.what());
    }
}

spectrum::ClassifyOptions classify_options(const Params& p) {
    spectrum::ClassifyOptions o;
    o.window_start = p.window_start;
    o.window_end = p.window_end;
    o.a_options.infinity_threshold = p.infinity_threshold;
    o.a_options.min_growth_exponent = p.min_growth_exponent;
    o.a_options.tail_fraction = p.tail_fraction;
    o.verdict.margin = p.margin;
    o.verdict.tail_fraction = p.tail_fraction;
    o.zero_threshold = p.zero_threshold;
    o.sparse_threshold = p.sparse_threshold;
    try {
        o.lambda0_grid = spectrum::geometric_grid(p.lambda0_grid.min, p.lambda0_grid.max, p.lambda0_grid.count);
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("params.lambda0_grid: ") + e.what());
    }
    return o;
}

}  // namespace sparsespec::cli
