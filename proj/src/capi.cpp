#include "stagwalk.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "stagwalk/asymptotics.hpp"
#include "stagwalk/experiments.hpp"
#include "stagwalk/io.hpp"
#include "stagwalk/lattice.hpp"
#include "stagwalk/spectral.hpp"
#include "stagwalk/walk.hpp"

namespace sw = stagwalk;

struct sw_walk {
    sw::LatticeSpec lattice;
    sw::Walk walk;
};

struct sw_state {
    sw::StateVector state;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

sw_status classify(const std::runtime_error& e) {
    const std::string msg = e.what();
    if (msg.find("no sign change") != std::string::npos) return SW_ERR_NO_SIGN_CHANGE;
    if (msg.rfind("cannot open", 0) == 0 || msg.rfind("write fail", 0) == 0) {
        return SW_ERR_IO;
    }
    return SW_ERR_INTERNAL;
}

template <typename F>
sw_status guarded(F&& fn) {
    try {
        fn();
        return SW_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SW_ERR_INVALID_ARGUMENT;
    } catch (const std::out_of_range& e) {
        set_error(e.what());
        return SW_ERR_INVALID_ARGUMENT;
    } catch (const std::length_error& e) {
        set_error(e.what());
        return SW_ERR_CAP_EXCEEDED;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return classify(e);
    } catch (const std::exception& e) {
        set_error(e.what());
        return SW_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return SW_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

std::array<sw::TessLabel, 4> ordering_or_default(const char* ordering) {
    if (ordering == nullptr || *ordering == '\0') return sw::kDefaultOrdering;
    return sw::parse_ordering(ordering);
}

std::pair<sw::LatticeSpec, sw::WalkConfig> to_cpp(const sw_config* config) {
    require(config != nullptr, "config is null");
    const sw::LatticeSpec lattice = sw::LatticeSpec::make(config->n);
    sw::WalkConfig wc;
    wc.theta = config->theta;
    wc.ordering = sw::parse_ordering(config->ordering);
    wc.global_sign = config->global_sign;
    if (config->has_marked) {
        wc.marked = sw::Vertex{config->marked_x, config->marked_y};
        sw::vertex_index(*wc.marked, lattice);  // range check now, not at step time
    } else {
        wc.marked.reset();
    }
    return {lattice, wc};
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double stod_full(const std::string& s) {
    std::size_t idx = 0;
    const double v = std::stod(s, &idx);
    if (idx != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
    return v;
}

double parse_theta_impl(const std::string& raw) {
    const std::string s = trimmed(raw);
    require(!s.empty(), "empty theta");
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return stod_full(s);
    const std::string coef_s = trimmed(s.substr(0, pos));
    const std::string rest = trimmed(s.substr(pos + 2));
    double coef = 1.0;
    if (coef_s == "-") {
        coef = -1.0;
    } else if (!coef_s.empty() && coef_s != "+") {
        coef = stod_full(coef_s);
    }
    double den = 1.0;
    if (!rest.empty()) {
        require(rest[0] == '/', "expected '/' after pi");
        den = stod_full(trimmed(rest.substr(1)));
        require(den != 0.0, "zero denominator in theta");
    }
    return coef * std::numbers::pi / den;
}

sw::EmitFormat format_or_throw(const char* format) {
    require(format != nullptr, "format is null");
    return sw::parse_format(format);
}

std::string path_or_empty(const char* path) { return path ? path : ""; }

void fill_run_record(const sw::RunRecord& rec, sw_run_record* out) {
    out->n = rec.n;
    out->num_vertices = rec.num_vertices;
    out->t_opt = rec.t_opt;
    out->p_max = rec.p_max;
    out->lambda = rec.lambda;
    out->phi_min = rec.phi_min;
    out->wall_time_s = rec.wall_time_s;
    out->amplified = rec.amplified ? 1 : 0;
}

// Search-style commands share the config contract: sign -1, marked (0, 0).
void check_search_config(const sw::WalkConfig& wc) {
    require(wc.global_sign == -1, "search requires global sign -1");
    require(wc.marked && wc.marked->x == 0 && wc.marked->y == 0,
            "search requires the marked vertex at (0, 0)");
}

std::vector<int> int_list(const int* values, long count) {
    require(values != nullptr, "n list is null");
    require(count > 0, "n list is empty");
    return std::vector<int>(values, values + count);
}

}  // namespace

extern "C" {

const char* sw_status_string(sw_status status) {
    switch (status) {
        case SW_OK: return "ok";
        case SW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SW_ERR_CAP_EXCEEDED: return "cap exceeded";
        case SW_ERR_NO_SIGN_CHANGE: return "no sign change";
        case SW_ERR_IO: return "io error";
        case SW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* sw_last_error(void) { return g_last_error.c_str(); }

const char* sw_version(void) { return "0.1.0"; }

void sw_config_default(int n, sw_config* out) {
    if (out == nullptr) return;
    std::memset(out, 0, sizeof(*out));
    out->n = n;
    out->theta = std::numbers::pi / 4;
    std::snprintf(out->ordering, sizeof(out->ordering), "%s",
                  sw::ordering_string(sw::kDefaultOrdering).c_str());
    out->global_sign = -1;
    out->has_marked = 1;
    out->marked_x = 0;
    out->marked_y = 0;
}

sw_status sw_walk_create(const sw_config* config, sw_walk** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        auto [lattice, wc] = to_cpp(config);
        *out = new sw_walk{lattice, sw::Walk(lattice, wc)};
    });
}

void sw_walk_destroy(sw_walk* walk) { delete walk; }

sw_status sw_state_create_initial(const sw_walk* walk, sw_state** out) {
    return guarded([&] {
        require(walk != nullptr, "walk is null");
        require(out != nullptr, "out is null");
        *out = new sw_state{sw::initial_state(walk->lattice)};
    });
}

void sw_state_destroy(sw_state* state) { delete state; }

sw_status sw_walk_step(const sw_walk* walk, sw_state* state) {
    return guarded([&] {
        require(walk != nullptr && state != nullptr, "null handle");
        walk->walk.step(state->state);
    });
}

sw_status sw_walk_step_unmarked(const sw_walk* walk, sw_state* state) {
    return guarded([&] {
        require(walk != nullptr && state != nullptr, "null handle");
        walk->walk.step_unmarked(state->state);
    });
}

sw_status sw_walk_evolve(const sw_walk* walk, sw_state* state, long steps,
                         double* probs) {
    return guarded([&] {
        require(walk != nullptr && state != nullptr, "null handle");
        require(steps >= 0, "steps must be nonnegative");
        int probe = -1;
        if (probs != nullptr) {
            const auto& marked = walk->walk.config().marked;
            require(marked.has_value(), "probability trace requires a marked walk");
            probe = sw::vertex_index(*marked, walk->lattice);
            probs[0] = std::norm(state->state.amp[static_cast<std::size_t>(probe)]);
        }
        for (long t = 1; t <= steps; ++t) {
            walk->walk.step(state->state);
            if (probs != nullptr) {
                probs[t] = std::norm(state->state.amp[static_cast<std::size_t>(probe)]);
            }
        }
    });
}

sw_status sw_state_num_vertices(const sw_state* state, long* out) {
    return guarded([&] {
        require(state != nullptr && out != nullptr, "null argument");
        *out = state->state.lattice.num_vertices;
    });
}

sw_status sw_state_amplitude(const sw_state* state, int x, int y, double* re,
                             double* im) {
    return guarded([&] {
        require(state != nullptr && re != nullptr && im != nullptr, "null argument");
        const int i = sw::vertex_index(sw::Vertex{x, y}, state->state.lattice);
        const sw::cd a = state->state.amp[static_cast<std::size_t>(i)];
        *re = a.real();
        *im = a.imag();
    });
}

sw_status sw_state_norm(const sw_state* state, double* out) {
    return guarded([&] {
        require(state != nullptr && out != nullptr, "null argument");
        *out = state->state.norm();
    });
}

sw_status sw_state_write_csv(const sw_state* state, const char* path) {
    return guarded([&] {
        require(state != nullptr, "state is null");
        sw::write_output([&](std::ostream& os) { sw::emit_state(state->state, os); },
                         path_or_empty(path), std::cout);
    });
}

sw_status sw_parse_theta(const char* text, double* out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = parse_theta_impl(text);
    });
}

sw_status sw_phi_min(int n, double theta, const char* ordering, double* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = sw::phi_min(n, theta, ordering_or_default(ordering));
    });
}

sw_status sw_lambda_root(int n, double* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = sw::lambda_root(n);
    });
}

sw_status sw_lambda_general(int n, double theta, const char* ordering, double* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = sw::lambda_general(n, theta, ordering_or_default(ordering));
    });
}

sw_status sw_asymptotics_compute(int n, sw_asymptotics_record* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const sw::AsymptoticsRecord r = sw::asymptotics_record(n);
        out->n = r.n;
        out->lambda_exact = r.lambda_exact;
        out->lambda_approx = r.lambda_approx;
        out->c2_direct = r.c2_direct;
        out->c2_reduced = r.c2_reduced;
        out->i_n = r.i_n;
        out->phi_min = r.phi_min;
        out->overlap_marked = r.overlap_marked;
        out->t_opt = r.t_opt;
        out->p_model = r.p_model;
    });
}

sw_status sw_run_search(const sw_config* config, long max_steps, int with_timing,
                        sw_run_record* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        auto [lattice, wc] = to_cpp(config);
        check_search_config(wc);
        const sw::RunRecord rec =
            sw::run_search(config->n, wc.theta, wc.ordering, max_steps,
                           with_timing != 0);
        fill_run_record(rec, out);
    });
}

sw_status sw_fit_power_law(const double* x, const double* y, long count,
                           sw_fit_result* out) {
    return guarded([&] {
        require(x != nullptr && y != nullptr && out != nullptr, "null argument");
        require(count > 0, "empty data");
        const std::vector<double> xs(x, x + count), ys(y, y + count);
        const sw::FitResult fit = sw::fit_power_law(xs, ys);
        out->exponent = fit.exponent;
        out->coefficient = fit.coefficient;
        out->r_squared = fit.r_squared;
    });
}

sw_status sw_cmd_search(const sw_config* config, long max_steps, int with_timing,
                        const char* format, const char* out_path) {
    return guarded([&] {
        auto [lattice, wc] = to_cpp(config);
        check_search_config(wc);
        const sw::EmitFormat fmt = format_or_throw(format);
        const sw::RunRecord rec =
            sw::run_search(config->n, wc.theta, wc.ordering, max_steps,
                           with_timing != 0);
        if (!rec.amplified) {
            std::cerr << "warning: probability never exceeded twice its initial value"
                         " within the step cap; reporting the best step seen\n";
        }
        sw::write_output(
            [&](std::ostream& os) { sw::emit_run_records({rec}, fmt, os); },
            path_or_empty(out_path), std::cout);
    });
}

sw_status sw_cmd_scaling(const int* n_values, long count, double theta,
                         const char* ordering, long max_steps, int with_timing,
                         const char* format, const char* out_path) {
    return guarded([&] {
        const sw::EmitFormat fmt = format_or_throw(format);
        const sw::ScalingResult result =
            sw::scaling_sweep(int_list(n_values, count), theta,
                              ordering_or_default(ordering), max_steps,
                              with_timing != 0);
        for (const sw::RunRecord& rec : result.records) {
            if (!rec.amplified) {
                std::cerr << "warning: n=" << rec.n
                          << " never amplified within the step cap\n";
            }
        }
        sw::write_output([&](std::ostream& os) { sw::emit_scaling(result, fmt, os); },
                         path_or_empty(out_path), std::cout);
    });
}

sw_status sw_cmd_theta_scan(int n, const double* thetas, long count,
                            const char* ordering, long max_steps, int with_timing,
                            const char* format, const char* out_path) {
    return guarded([&] {
        require(thetas != nullptr, "theta list is null");
        require(count > 0, "theta list is empty");
        const sw::EmitFormat fmt = format_or_throw(format);
        const sw::ThetaScanResult result =
            sw::theta_scan(n, std::vector<double>(thetas, thetas + count),
                           ordering_or_default(ordering), max_steps,
                           with_timing != 0);
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            if (!result.records[i].amplified) {
                std::cerr << "warning: theta=" << result.thetas[i]
                          << " never amplified within the step cap\n";
            }
        }
        sw::write_output(
            [&](std::ostream& os) { sw::emit_theta_scan(result, fmt, os); },
            path_or_empty(out_path), std::cout);
    });
}

sw_status sw_cmd_eigen_trend(const int* n_values, long count, double theta,
                             const char* ordering, const char* format,
                             const char* out_path) {
    return guarded([&] {
        const sw::EmitFormat fmt = format_or_throw(format);
        const std::vector<sw::EigenTrendRow> rows =
            sw::eigen_trend(theta, int_list(n_values, count),
                            ordering_or_default(ordering));
        sw::write_output(
            [&](std::ostream& os) { sw::emit_eigen_trend(rows, fmt, os); },
            path_or_empty(out_path), std::cout);
    });
}

sw_status sw_cmd_spectrum(int n, const char* format, const char* out_path) {
    return guarded([&] {
        const sw::EmitFormat fmt = format_or_throw(format);
        const std::vector<sw::SpectralEntry> entries = sw::enumerate_spectrum(n);
        sw::write_output(
            [&](std::ostream& os) { sw::emit_spectrum(entries, fmt, os); },
            path_or_empty(out_path), std::cout);
    });
}

sw_status sw_cmd_appendix(const int* n_values, long count, const char* format,
                          const char* out_path) {
    return guarded([&] {
        const sw::EmitFormat fmt = format_or_throw(format);
        std::vector<sw::AsymptoticsRecord> records;
        for (int n : int_list(n_values, count)) {
            records.push_back(sw::asymptotics_record(n));
        }
        sw::write_output(
            [&](std::ostream& os) { sw::emit_asymptotics(records, fmt, os); },
            path_or_empty(out_path), std::cout);
    });
}

}  // extern "C"
