// Command-line front end over the sparsespec C API.
#include "sparsespec/sparsespec.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

int exit_code_for(ss_status status) {
    switch (status) {
        case SS_OK: return exit_ok;
        case SS_ERR_OVERFLOW:
        case SS_ERR_NUMERIC:
        case SS_ERR_INTERNAL: return exit_numeric;
        default: return exit_config;
    }
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_atomic(const std::filesystem::path& path, const std::string& text, std::string& error) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            error = "cannot open " + tmp.string() + " for writing";
            return false;
        }
        out << text;
        out.flush();
        if (!out) {
            error = "write failed for " + tmp.string();
            std::filesystem::remove(tmp);
            return false;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        error = "cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message();
        std::filesystem::remove(tmp, ec);
        return false;
    }
    return true;
}

struct ConfigDeleter {
    void operator()(ss_config* c) const { ss_config_free(c); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of point interactions on sparse lattices"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_path;
    std::string format;
    bool strict = false;

    const char* commands[][2] = {
        {"classify", "Spectral classification (JSON by default)"},
        {"growth", "Growth products and d'Alembert ratios (CSV by default)"},
        {"eigs", "Eigenvalues of the truncated operator (CSV by default)"},
        {"propagate", "Boundary vectors along the lattice (CSV by default)"},
        {"avalue", "Estimate of the sparseness limit a (JSON by default)"},
    };
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd[0], cmd[1]);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_path, "Output path (default: config output.path, else stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--strict", strict, "Exit 3 on overflow or unresolved roots");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::string text;
    if (!read_file(config_path, text)) {
        std::cerr << "error: cannot read config file " << config_path << '\n';
        return exit_config;
    }

    ss_config* raw = nullptr;
    if (ss_status st = ss_config_parse(text.c_str(), &raw); st != SS_OK) {
        std::cerr << "error: " << ss_last_error() << '\n';
        return exit_code_for(st);
    }
    std::unique_ptr<ss_config, ConfigDeleter> config(raw);

    char* output = nullptr;
    int numeric_failure = 0;
    if (ss_status st = ss_run_command(command.c_str(), config.get(), format.empty() ? nullptr : format.c_str(),
                                      &output, &numeric_failure);
        st != SS_OK) {
        std::cerr << "error: " << ss_last_error() << '\n';
        return exit_code_for(st);
    }
    const std::string result(output);
    ss_string_free(output);

    if (out_path.empty()) out_path = ss_config_output_path(config.get());

    if (out_path.empty() || out_path == "-") {
        std::cout << result;
        std::cout.flush();
    } else {
        std::string error;
        if (!write_atomic(out_path, result, error)) {
            std::cerr << "error: " << error << '\n';
            return exit_config;
        }
    }

    if (numeric_failure) {
        std::cerr << "warning: numerical failure reported in output footer\n";
        if (strict) return exit_numeric;
    }
    return exit_ok;
}
