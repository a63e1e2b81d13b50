// Command-line front end. Everything goes through the C API on purpose: the
// CLI is also the smoke test for the shared-library surface.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stagwalk.h"

namespace {

struct CommonOpts {
    int n = 0;
    std::vector<int> n_list;
    std::string theta = "pi/4";
    std::string theta_list = "pi/8,pi/6,pi/4,pi/3,3pi/8";
    std::string ordering = "00,01,10,11";
    long max_steps = 0;
    std::string format = "csv";
    std::string out;
    bool timing = false;
};

int fail(sw_status status) {
    std::fprintf(stderr, "error: %s: %s\n", sw_status_string(status), sw_last_error());
    return static_cast<int>(status);
}

int parse_theta_or_die(const std::string& text, double* out) {
    const sw_status status = sw_parse_theta(text.c_str(), out);
    return status == SW_OK ? 0 : fail(status);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

const char* out_or_null(const CommonOpts& o) {
    return o.out.empty() ? nullptr : o.out.c_str();
}

sw_status make_config(const CommonOpts& o, double theta, sw_config* config) {
    sw_config_default(o.n, config);
    config->theta = theta;
    if (o.ordering.size() >= sizeof(config->ordering)) {
        std::fprintf(stderr, "error: ordering string too long\n");
        return SW_ERR_INVALID_ARGUMENT;
    }
    std::snprintf(config->ordering, sizeof(config->ordering), "%s", o.ordering.c_str());
    return SW_OK;
}

void add_format_out(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
}

void add_run_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--theta", o.theta, "Sweep angle in radians, or a pi fraction like pi/4");
    cmd->add_option("--ordering", o.ordering, "Tessellation application order");
    cmd->add_option("--max-steps", o.max_steps, "Step cap (default 10*sqrt(N ln N))");
    cmd->add_flag("--timing", o.timing, "Record wall-clock time per run");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Staggered quantum walk search on the 2D torus"};
    app.require_subcommand(1);

    CommonOpts o;

    CLI::App* search = app.add_subcommand("search", "Single search run");
    search->add_option("--n", o.n, "Half side; torus is 2n x 2n")->required();
    add_run_opts(search, o);
    add_format_out(search, o);

    CLI::App* scaling = app.add_subcommand("scaling", "Sweep n and fit power laws");
    scaling->add_option("--n-list", o.n_list, "Values of n")->required()->delimiter(',');
    add_run_opts(scaling, o);
    add_format_out(scaling, o);

    CLI::App* theta_scan = app.add_subcommand("theta-scan", "Sweep theta at fixed n");
    theta_scan->add_option("--n", o.n, "Half side")->required();
    theta_scan->add_option("--theta-list", o.theta_list, "Comma-separated theta values");
    theta_scan->add_option("--ordering", o.ordering, "Tessellation application order");
    theta_scan->add_option("--max-steps", o.max_steps, "Step cap");
    theta_scan->add_flag("--timing", o.timing, "Record wall-clock time per run");
    add_format_out(theta_scan, o);

    CLI::App* eigen_trend = app.add_subcommand(
        "eigen-trend", "Principal eigenphase and spectral gap vs n");
    eigen_trend->add_option("--n-list", o.n_list, "Values of n")->required()->delimiter(',');
    eigen_trend->add_option("--theta", o.theta, "Sweep angle");
    eigen_trend->add_option("--ordering", o.ordering, "Tessellation application order");
    add_format_out(eigen_trend, o);

    CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenphase table of the unmarked walk");
    spectrum->add_option("--n", o.n, "Half side")->required();
    add_format_out(spectrum, o);

    CLI::App* appendix = app.add_subcommand("appendix", "Analytic cross-check table");
    appendix->add_option("--n-list", o.n_list, "Values of n")->required()->delimiter(',');
    add_format_out(appendix, o);

    CLI11_PARSE(app, argc, argv);

    if (search->parsed()) {
        double theta = 0.0;
        if (int rc = parse_theta_or_die(o.theta, &theta)) return rc;
        sw_config config;
        if (make_config(o, theta, &config) != SW_OK) return 1;
        const sw_status status = sw_cmd_search(&config, o.max_steps, o.timing ? 1 : 0,
                                               o.format.c_str(), out_or_null(o));
        return status == SW_OK ? 0 : fail(status);
    }
    if (scaling->parsed()) {
        double theta = 0.0;
        if (int rc = parse_theta_or_die(o.theta, &theta)) return rc;
        const sw_status status = sw_cmd_scaling(
            o.n_list.data(), static_cast<long>(o.n_list.size()), theta,
            o.ordering.c_str(), o.max_steps, o.timing ? 1 : 0, o.format.c_str(),
            out_or_null(o));
        return status == SW_OK ? 0 : fail(status);
    }
    if (theta_scan->parsed()) {
        std::vector<double> thetas;
        for (const std::string& part : split_commas(o.theta_list)) {
            double theta = 0.0;
            if (int rc = parse_theta_or_die(part, &theta)) return rc;
            thetas.push_back(theta);
        }
        const sw_status status = sw_cmd_theta_scan(
            o.n, thetas.data(), static_cast<long>(thetas.size()), o.ordering.c_str(),
            o.max_steps, o.timing ? 1 : 0, o.format.c_str(), out_or_null(o));
        return status == SW_OK ? 0 : fail(status);
    }
    if (eigen_trend->parsed()) {
        double theta = 0.0;
        if (int rc = parse_theta_or_die(o.theta, &theta)) return rc;
        const sw_status status = sw_cmd_eigen_trend(
            o.n_list.data(), static_cast<long>(o.n_list.size()), theta,
            o.ordering.c_str(), o.format.c_str(), out_or_null(o));
        return status == SW_OK ? 0 : fail(status);
    }
    if (spectrum->parsed()) {
        const sw_status status =
            sw_cmd_spectrum(o.n, o.format.c_str(), out_or_null(o));
        return status == SW_OK ? 0 : fail(status);
    }
    if (appendix->parsed()) {
        const sw_status status =
            sw_cmd_appendix(o.n_list.data(), static_cast<long>(o.n_list.size()),
                            o.format.c_str(), out_or_null(o));
        return status == SW_OK ? 0 : fail(status);
    }
    return 1;
}
