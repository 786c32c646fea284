#include "sparsespec/sparsespec.h"

#include "sparsespec/commands.hpp"
#include "sparsespec/config.hpp"
#include "sparsespec/error.hpp"
#include "sparsespec/growth.hpp"
#include "sparsespec/lattice.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/transfer.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct ss_config {
    sparsespec::cli::RunConfig value;
};

struct ss_system {
    sparsespec::lattice::SystemSpec value;
};

namespace {

thread_local std::string last_error;

ss_status fail(ss_status status, const char* what) {
    last_error = what;
    return status;
}

template <typename F>
ss_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return SS_OK;
    } catch (const sparsespec::Error& e) {
        return fail(static_cast<ss_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(SS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SS_ERR_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bool missing(const void* p, const char* name, ss_status& status) {
    if (p) return false;
    status = fail(SS_ERR_ARGUMENT, (std::string(name) + " is null").c_str());
    return true;
}

}  // namespace

#define SS_REQUIRE(p)                          \
    do {                                       \
        ss_status st_;                         \
        if (missing((p), #p, st_)) return st_; \
    } while (0)

extern "C" {

const char* ss_version(void) { return "0.1.0"; }

const char* ss_last_error(void) { return last_error.c_str(); }

void ss_string_free(char* s) { std::free(s); }

ss_status ss_config_parse(const char* json, ss_config** out) {
    SS_REQUIRE(json);
    SS_REQUIRE(out);
    return guarded([&] { *out = new ss_config{sparsespec::cli::parse_config(json)}; });
}

ss_status ss_config_serialize(const ss_config* config, char** out) {
    SS_REQUIRE(config);
    SS_REQUIRE(out);
    return guarded([&] { *out = copy_string(sparsespec::cli::serialize_config(config->value)); });
}

ss_status ss_config_system(const ss_config* config, ss_system** out) {
    SS_REQUIRE(config);
    SS_REQUIRE(out);
    return guarded([&] { *out = new ss_system{sparsespec::cli::build_system(config->value.system)}; });
}

const char* ss_config_output_path(const ss_config* config) { return config ? config->value.output.path.c_str() : ""; }

void ss_config_free(ss_config* config) { delete config; }

ss_status ss_system_parse(const char* json, ss_system** out) {
    SS_REQUIRE(json);
    SS_REQUIRE(out);
    return guarded([&] {
        nlohmann::ordered_json doc;
        try {
            doc = nlohmann::ordered_json::parse(json);
        } catch (const nlohmann::json::parse_error& e) {
            throw sparsespec::ConfigError(std::string("invalid JSON: ") + e.what());
        }
        nlohmann::ordered_json wrapper;
        wrapper["system"] = std::move(doc);
        const auto config = sparsespec::cli::config_from_json(wrapper);
        *out = new ss_system{sparsespec::cli::build_system(config.system)};
    });
}

void ss_system_free(ss_system* system) { delete system; }

int ss_system_kind(const ss_system* system) {
    return system && system->value.kind() == sparsespec::Kind::delta_prime ? 1 : 0;
}

size_t ss_system_max_index(const ss_system* system) { return system ? system->value.max_index() : 0; }

ss_status ss_lattice_position(const ss_system* system, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = system->value.lattice().position(n); });
}

ss_status ss_lattice_gap(const ss_system* system, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = system->value.lattice().gap(n); });
}

ss_status ss_lattice_log_gap(const ss_system* system, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = system->value.lattice().log_gap(n); });
}

ss_status ss_lattice_sparseness_ratio(const ss_system* system, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = system->value.lattice().sparseness_ratio(n); });
}

ss_status ss_strength(const ss_system* system, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = system->value.strengths()(n); });
}

ss_status ss_a_ratio(const ss_system* system, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = sparsespec::lattice::a_ratio(system->value, n); });
}

ss_status ss_estimate_a(const ss_system* system, size_t window_start, size_t window_end, ss_a_estimate* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] {
        const auto e = sparsespec::lattice::estimate_a(system->value, window_start, window_end);
        *out = {e.value, e.argmin, e.infinite, e.diverging, e.tail_growth_exponent, e.last_value};
    });
}

ss_status ss_growth_log_A(const ss_system* system, double lambda, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = sparsespec::growth::log_decay_product(system->value, lambda, n); });
}

ss_status ss_growth_dalembert_ratio(const ss_system* system, double lambda0, size_t n, double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] { *out = sparsespec::growth::dalembert_ratio(system->value, lambda0, n); });
}

ss_status ss_transfer_propagate(const ss_system* system, double lambda, double psi0, double dpsi0, size_t N,
                                double* out) {
    SS_REQUIRE(system);
    SS_REQUIRE(out);
    return guarded([&] {
        const auto xi = sparsespec::transfer::propagate(system->value, lambda, {psi0, dpsi0}, N);
        for (size_t n = 0; n < xi.size(); ++n) {
            out[2 * n] = xi[n].first;
            out[2 * n + 1] = xi[n].second;
        }
    });
}

ss_status ss_spectrum_truncated_eigenvalues(const ss_system* system, size_t N, double lambda_min, double lambda_max,
                                            size_t grid_intervals, double tol, double* values, size_t capacity,
                                            size_t* count, int* unresolved) {
    SS_REQUIRE(system);
    SS_REQUIRE(count);
    if (capacity > 0) SS_REQUIRE(values);
    return guarded([&] {
        const auto list = sparsespec::spectrum::truncated_eigenvalues(
            system->value, N, {lambda_min, lambda_max, grid_intervals, tol});
        *count = list.size();
        for (size_t i = 0; i < list.size() && i < capacity; ++i) values[i] = list.values[i].lambda;
        if (unresolved) *unresolved = list.unresolved ? 1 : 0;
    });
}

ss_status ss_run_command(const char* command, const ss_config* config, const char* format, char** out,
                         int* numeric_failure) {
    SS_REQUIRE(command);
    SS_REQUIRE(config);
    SS_REQUIRE(out);
    return guarded([&] {
        std::optional<sparsespec::cli::Format> f;
        if (format) {
            f = sparsespec::cli::parse_format(format);
            if (!f) throw sparsespec::ConfigError(std::string("unknown format \"") + format + "\"");
        }
        const auto result = sparsespec::cli::run_command(command, config->value, f);
        *out = copy_string(result.text);
        if (numeric_failure) *numeric_failure = result.numeric_failure ? 1 : 0;
    });
}

}  // extern "C"
