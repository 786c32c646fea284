#include "sparsespec/commands.hpp"

#include "sparsespec/error.hpp"
#include "sparsespec/growth.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/transfer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace sparsespec::cli {

using nlohmann::ordered_json;
using spectrum::format_number;

namespace {

constexpr std::array<std::string_view, 5> names{"classify", "growth", "eigs", "propagate", "avalue"};

ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

ordered_json interval(const std::optional<spectrum::Interval>& iv) {
    if (!iv) return nullptr;
    return iv->text();
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Column-ordered numeric table rendered as CSV or JSON.
struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> footer;

    std::string render(Format format, const RunConfig& config) const {
        if (format == Format::json) {
            ordered_json out;
            out["command"] = command;
            out["columns"] = columns;
            ordered_json data = ordered_json::array();
            for (const auto& row : rows) {
                ordered_json r = ordered_json::array();
                for (double x : row) r.push_back(number(x));
                data.push_back(std::move(r));
            }
            out["rows"] = std::move(data);
            out["footer"] = footer;
            out["config"] = to_json(config);
            return out.dump(2) + "\n";
        }
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
            os << '\n';
        }
        for (const auto& line : footer) os << '#' << line << '\n';
        os << "# config: " << to_json(config).dump() << '\n';
        return os.str();
    }
};

double index_value(Index n) { return static_cast<double>(n); }

void require_window(const Params& p) {
    if (p.window_start < 1 || p.window_end <= p.window_start)
        throw ConfigError("params.window_start/window_end: need 1 <= window_start < window_end");
}

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    return std::nullopt;
}

std::span<const std::string_view> command_names() { return names; }

Format default_format(std::string_view command) {
    return (command == "classify" || command == "avalue") ? Format::json : Format::csv;
}

CommandResult cmd_classify(const RunConfig& config, Format format) {
    require_window(config.params);
    const auto spec = build_system(config.system);
    const auto options = classify_options(config.params);
    const auto c = spectrum::classify(spec, options);

    ordered_json a;
    a["value"] = number(c.a.value);
    a["infinite"] = c.a.infinite;
    a["diverging"] = c.a.diverging;
    a["trend"] = std::string(lattice::to_string(c.a.trend));
    a["tail_growth_exponent"] = number(c.a.tail_growth_exponent);
    a["last_value"] = number(c.a.last_value);
    a["argmin"] = c.a.argmin;
    a["window"] = {options.window_start, options.window_end};
    a["tail_start"] = c.a.tail_start;

    ordered_json spectrum_json;
    spectrum_json["sigma"] = interval(c.sigma);
    if (c.tag == spectrum::CaseTag::case_ii)
        spectrum_json["pp_window"] = "empty";
    else
        spectrum_json["pp_window"] = interval(c.pp_window);
    spectrum_json["sc_contains"] = interval(c.sc_contains);
    spectrum_json["sc_within"] = interval(c.sc_within);
    spectrum_json["ac"] = std::string(spectrum::to_string(c.ac));
    spectrum_json["essential"] = interval(c.essential);
    spectrum_json["negative_axis"] = std::string(spectrum::to_string(c.negative_axis));

    ordered_json grid;
    grid["min"] = config.params.lambda0_grid.min;
    grid["max"] = config.params.lambda0_grid.max;
    grid["count"] = config.params.lambda0_grid.count;
    grid["diverging"] = c.grid_diverging;
    grid["pp_bound"] = c.grid_pp_bound ? number(*c.grid_pp_bound) : ordered_json(nullptr);

    ordered_json heuristics;
    heuristics["infinity_threshold"] = options.a_options.infinity_threshold;
    heuristics["min_growth_exponent"] = options.a_options.min_growth_exponent;
    heuristics["tail_fraction"] = options.a_options.tail_fraction;
    heuristics["margin"] = options.verdict.margin;
    heuristics["zero_threshold"] = options.zero_threshold;
    heuristics["sparse_threshold"] = options.sparse_threshold;

    ordered_json out;
    out["command"] = "classify";
    out["case"] = std::string(spectrum::to_string(c.tag));
    out["kind"] = std::string(to_string(c.kind));
    out["a_estimate"] = std::move(a);
    out["preconditions"] = {{"sparse", c.sparse},
                            {"strengths_growing", c.strengths_growing},
                            {"strengths_positive", c.strengths_positive}};
    out["spectrum"] = std::move(spectrum_json);
    out["lambda0_grid"] = std::move(grid);
    out["heuristics"] = std::move(heuristics);
    out["caveats"] = c.caveats;
    out["diagnostics"] = c.diagnostics;
    out["config"] = to_json(config);

    CommandResult result;
    if (format == Format::json) {
        result.text = out.dump(2) + "\n";
        return result;
    }
    std::ostringstream os;
    os << "field,value\n";
    const auto emit = [&os](const std::string& key, const ordered_json& v) {
        os << key << ',' << csv_cell(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    };
    emit("case", out["case"]);
    emit("kind", out["kind"]);
    for (const auto& item : out["a_estimate"].items()) emit("a_estimate." + item.key(), item.value());
    for (const auto& item : out["preconditions"].items()) emit("preconditions." + item.key(), item.value());
    for (const auto& item : out["spectrum"].items()) emit("spectrum." + item.key(), item.value());
    for (const auto& item : out["lambda0_grid"].items()) emit("lambda0_grid." + item.key(), item.value());
    for (const auto& item : out["heuristics"].items()) emit("heuristics." + item.key(), item.value());
    for (const auto& line : c.caveats) os << "# caveat: " << line << '\n';
    for (const auto& line : c.diagnostics) os << "# diagnostic: " << line << '\n';
    os << "# config: " << to_json(config).dump() << '\n';
    result.text = os.str();
    return result;
}

CommandResult cmd_growth(const RunConfig& config, Format format) {
    const auto spec = build_system(config.system);
    const auto& p = config.params;
    const auto profile = growth::series_terms(spec, p.lambda0, p.N);

    Table t;
    t.command = "growth";
    t.columns = {"n", "log_gap", "log_A_n", "dalembert_ratio", "series_term"};
    for (Index n = 0; n <= p.N; ++n) {
        const double ratio = n == 0 ? std::nan("") : growth::dalembert_ratio(spec, p.lambda0, n);
        t.rows.push_back({index_value(n), profile.log_gap[n], profile.log_A[n], ratio, profile.term[n]});
    }
    t.footer.push_back(" log_A_n is ln A_n(" + std::string(spec.kind() == Kind::delta ? "lambda0" : "1/lambda0") +
                       ") with lambda0 = " + format_number(p.lambda0));
    return {t.render(format, config), false, {}};
}

CommandResult cmd_eigs(const RunConfig& config, Format format) {
    const auto spec = build_system(config.system);
    const auto& p = config.params;
    spectrum::ShootingOptions opts;
    opts.lambda_min = p.lambda_min;
    opts.lambda_max = p.lambda_max;
    opts.grid_intervals = p.grid_intervals;
    opts.tol = p.tol;
    const auto roots = spectrum::truncated_eigenvalues(spec, p.N, opts);

    Table t;
    t.command = "eigs";
    t.columns = {"index", "lambda", "residual", "bracket_width"};
    const bool with_oracle = p.oracle == "fd";
    std::vector<double> fd;
    if (with_oracle) {
        t.columns.push_back("fd_lambda");
        t.columns.push_back("rel_deviation");
        spectrum::FdOptions fo;
        fo.h = p.h;
        fo.count = roots.size() + 10;
        fo.alignment_tolerance = p.alignment_tolerance;
        fo.max_nodes = p.max_nodes;
        fd = spectrum::fd_oracle_eigenvalues(spec, p.N, fo).lambdas();
    }
    for (Index i = 0; i < roots.size(); ++i) {
        const auto& r = roots.values[i];
        std::vector<double> row{index_value(i + 1), r.lambda, r.residual, r.bracket_width};
        if (with_oracle) {
            double nearest = std::nan("");
            for (double f : fd)
                if (std::isnan(nearest) || std::abs(f - r.lambda) < std::abs(nearest - r.lambda)) nearest = f;
            row.push_back(nearest);
            row.push_back(std::abs(nearest - r.lambda) / std::abs(r.lambda));
        }
        t.rows.push_back(std::move(row));
    }
    CommandResult result;
    if (roots.unresolved) {
        const std::string msg = " warning: unresolved roots: expected at least " + std::to_string(roots.expected_count) +
                                ", found " + std::to_string(roots.size()) + ", suspected misses " +
                                std::to_string(roots.suspected_misses) + "; refine grid_intervals";
        t.footer.push_back(msg);
        result.warnings.push_back(msg.substr(1));
        result.numeric_failure = true;
    }
    result.text = t.render(format, config);
    return result;
}

CommandResult cmd_propagate(const RunConfig& config, Format format) {
    const auto spec = build_system(config.system);
    const auto& p = config.params;
    const Vec2d xi0{p.xi0[0], p.xi0[1]};

    CommandResult result;
    std::vector<Vec2d> xi;
    std::optional<Index> overflow_at;
    try {
        xi = transfer::propagate(spec, p.lambda, xi0, p.N);
    } catch (const OverflowError& e) {
        overflow_at = e.index();
        xi = transfer::propagate(spec, p.lambda, xi0, e.index() - 1);
    }
    const Index reached = xi.size() - 1;

    Table t;
    t.command = "propagate";
    t.columns = {"n", "x_n", "re_psi", "re_psi_prime", "log_norm_xi"};
    if (p.samples_per_interval == 0) {
        for (Index n = 0; n <= reached; ++n)
            t.rows.push_back({index_value(n), spec.lattice().position(n), xi[n].first, xi[n].second,
                              std::log(norm(xi[n]))});
    } else {
        std::vector<double> grid;
        std::vector<Index> interval_of;
        for (Index n = 0; n < reached; ++n) {
            const double x0 = spec.lattice().position(n);
            const double dx = spec.lattice().gap(n);
            for (Index i = 0; i < p.samples_per_interval; ++i) {
                grid.push_back(x0 + dx * static_cast<double>(i) / static_cast<double>(p.samples_per_interval));
                interval_of.push_back(n);
            }
        }
        grid.push_back(spec.lattice().position(reached));
        interval_of.push_back(reached);
        const auto sample = transfer::sample_solution(spec, p.lambda, xi0, grid);
        for (Index i = 0; i < sample.points.size(); ++i) {
            const auto& pt = sample.points[i];
            t.rows.push_back({index_value(interval_of[i]), pt.x, pt.psi, pt.dpsi, std::log(std::hypot(pt.psi, pt.dpsi))});
        }
    }
    if (overflow_at) {
        t.footer.push_back("overflow at n=" + std::to_string(*overflow_at));
        result.warnings.push_back("overflow at n=" + std::to_string(*overflow_at));
        result.numeric_failure = true;
    }
    result.text = t.render(format, config);
    return result;
}

CommandResult cmd_avalue(const RunConfig& config, Format format) {
    require_window(config.params);
    const auto spec = build_system(config.system);
    const auto& p = config.params;
    const auto options = classify_options(p).a_options;
    const auto est = lattice::estimate_a(spec, p.window_start, p.window_end, options);

    if (format == Format::csv) {
        Table t;
        t.command = "avalue";
        t.columns = {"n", "a_ratio", "sparseness_ratio"};
        for (Index n = p.window_start; n <= p.window_end; ++n)
            t.rows.push_back({index_value(n), lattice::a_ratio(spec, n), spec.lattice().sparseness_ratio(n)});
        t.footer.push_back(" estimate=" + format_number(est.value) + " diverging=" + (est.diverging ? "true" : "false") +
                           " trend=" + std::string(lattice::to_string(est.trend)) +
                           " tail_growth_exponent=" + format_number(est.tail_growth_exponent));
        return {t.render(format, config), false, {}};
    }
    ordered_json out;
    out["command"] = "avalue";
    out["estimate"] = number(est.value);
    out["argmin"] = est.argmin;
    out["infinite"] = est.infinite;
    out["diverging"] = est.diverging;
    out["trend"] = std::string(lattice::to_string(est.trend));
    out["tail_growth_exponent"] = number(est.tail_growth_exponent);
    out["last_value"] = number(est.last_value);
    out["window"] = {est.window_start, est.window_end};
    out["tail_start"] = est.tail_start;
    out["config"] = to_json(config);
    return {out.dump(2) + "\n", false, {}};
}

CommandResult run_command(std::string_view command, const RunConfig& config, std::optional<Format> format) {
    if (!format && !config.output.format.empty()) format = parse_format(config.output.format);
    const Format f = format.value_or(default_format(command));
    if (command == "classify") return cmd_classify(config, f);
    if (command == "growth") return cmd_growth(config, f);
    if (command == "eigs") return cmd_eigs(config, f);
    if (command == "propagate") return cmd_propagate(config, f);
    if (command == "avalue") return cmd_avalue(config, f);
    throw ArgumentError("unknown command \"" + std::string(command) + "\"");
}

}  // namespace sparsespec::cli
