#include "stagwalk/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stagwalk/io.hpp"

namespace stagwalk {

namespace {

constexpr double kPi = std::numbers::pi;

bool analytic_fast_path(double theta, const std::array<TessLabel, 4>& ordering) {
    return std::abs(theta - kPi / 4) < 1e-15 && ordering == kDefaultOrdering;
}

}  // namespace

EmitFormat parse_format(const std::string& s) {
    if (s == "csv") return EmitFormat::Csv;
    if (s == "json") return EmitFormat::Json;
    throw std::invalid_argument("format must be 'csv' or 'json', got '" + s + "'");
}

long default_max_steps(int n) {
    const double N = 4.0 * n * n;
    return std::lround(10.0 * std::sqrt(N * std::log(N)));
}

RunRecord run_search(int n, double theta,
                     const std::array<TessLabel, 4>& ordering, long max_steps,
                     bool with_timing) {
    const LatticeSpec lattice = LatticeSpec::make(n);
    if (max_steps <= 0) max_steps = default_max_steps(n);

    WalkConfig config;
    config.theta = theta;
    config.ordering = ordering;
    config.marked = Vertex{0, 0};
    const Walk walk(lattice, config);

    RunRecord rec;
    rec.n = n;
    rec.num_vertices = lattice.num_vertices;
    if (analytic_fast_path(theta, ordering)) {
        rec.lambda = lambda_root(n);
        rec.phi_min = phi_min(n, theta);
    } else {
        rec.lambda = std::numeric_limits<double>::quiet_NaN();
        rec.phi_min = std::numeric_limits<double>::quiet_NaN();
    }

    const auto t_start = std::chrono::steady_clock::now();
    StateVector state = initial_state(lattice);
    FirstMaxDetector detector(state.probability_at(Vertex{0, 0}));
    double best_p = -1.0;
    long best_t = 1;
    for (long t = 1; t <= max_steps; ++t) {
        walk.step(state);
        const double cur = state.probability_at(Vertex{0, 0});
        if (cur > best_p) {
            best_p = cur;
            best_t = t;
        }
        if (detector.feed(cur)) break;
    }
    rec.amplified = detector.fired();
    if (rec.amplified) {
        rec.t_opt = detector.t_opt();
        rec.p_max = detector.p_max();
    } else {
        rec.t_opt = best_t;
        rec.p_max = best_p;
    }
    if (with_timing) {
        rec.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                .count();
    }
    return rec;
}

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_power_law: size mismatch");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("fit_power_law: need at least two points");
    }
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("fit_power_law: data must be positive");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        syy += (ly[i] - my) * (ly[i] - my);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_power_law: need at least two distinct x");
    }
    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.coefficient = std::exp(my - fit.exponent * mx);
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

ScalingResult scaling_sweep(const std::vector<int>& n_values, double theta,
                            const std::array<TessLabel, 4>& ordering,
                            long max_steps, bool with_timing) {
    if (std::set<int>(n_values.begin(), n_values.end()).size() < 4) {
        throw std::invalid_argument("scaling_sweep: need at least 4 distinct n values");
    }
    ScalingResult result;
    for (int n : n_values) {
        result.records.push_back(run_search(n, theta, ordering, max_steps, with_timing));
    }
    std::vector<double> Ns, ts, inv_ps;
    for (const RunRecord& rec : result.records) {
        if (!rec.amplified || rec.t_opt < 1) continue;
        Ns.push_back(static_cast<double>(rec.num_vertices));
        ts.push_back(static_cast<double>(rec.t_opt));
        inv_ps.push_back(1.0 / rec.p_max);
    }
    if (std::set<double>(Ns.begin(), Ns.end()).size() < 2) {
        throw std::runtime_error("scaling_sweep: degenerate fit (fewer than 2 distinct N amplified)");
    }
    result.fit_t_opt = fit_power_law(Ns, ts);
    result.fit_inv_p_max = fit_power_law(Ns, inv_ps);
    return result;
}

std::vector<EigenTrendRow> eigen_trend(double theta, const std::vector<int>& n_values,
                                       const std::array<TessLabel, 4>& ordering) {
    auto one_row = [theta, &ordering](int n) {
        EigenTrendRow row;
        row.n = n;
        row.num_vertices = 4L * n * n;
        if (analytic_fast_path(theta, ordering)) {
            row.lambda = lambda_root(n);
            row.phi_min = phi_min(n, theta, ordering);
        } else {
            const LatticeSpec lattice = LatticeSpec::make(n);
            WalkConfig config;
            config.theta = theta;
            config.ordering = ordering;
            config.marked.reset();
            const std::vector<PlaneSample> samples = scan_planes(lattice, config);
            row.lambda = lambda_from_samples(n, samples);
            double best = 2.0 * kPi;
            for (const PlaneSample& s : samples) {
                if (s.phase > 1e-9) best = std::min(best, s.phase);
            }
            row.phi_min = best;
        }
        return row;
    };
    std::vector<std::future<EigenTrendRow>> futures;
    futures.reserve(n_values.size());
    for (int n : n_values) {
        futures.push_back(std::async(std::launch::async, one_row, n));
    }
    std::vector<EigenTrendRow> rows;
    rows.reserve(n_values.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

ThetaScanResult theta_scan(int n, const std::vector<double>& theta_values,
                           const std::array<TessLabel, 4>& ordering,
                           long max_steps, bool with_timing) {
    if (theta_values.empty()) {
        throw std::invalid_argument("theta_scan: need at least one theta");
    }
    ThetaScanResult result;
    result.thetas = theta_values;
    for (double theta : theta_values) {
        result.records.push_back(run_search(n, theta, ordering, max_steps, with_timing));
    }
    return result;
}

namespace {

const char* kRunHeader = "n,N,t_opt,p_max,lambda,phi_min,wall_time_s";

void run_record_csv_row(const RunRecord& r, std::ostream& out) {
    out << r.n << ',' << r.num_vertices << ',' << r.t_opt << ',' << fmt17(r.p_max)
        << ',' << fmt17(r.lambda) << ',' << fmt17(r.phi_min) << ','
        << fmt17(r.wall_time_s) << '\n';
}

// JSON has no NaN literal; non-finite values become null.
std::string json_num(double x) {
    return std::isfinite(x) ? fmt17(x) : "null";
}

void run_record_json(const RunRecord& r, std::ostream& out) {
    out << "{\"n\":" << r.n << ",\"N\":" << r.num_vertices << ",\"t_opt\":" << r.t_opt
        << ",\"p_max\":" << json_num(r.p_max) << ",\"lambda\":" << json_num(r.lambda)
        << ",\"phi_min\":" << json_num(r.phi_min) << ",\"wall_time_s\":"
        << json_num(r.wall_time_s) << "}";
}

void fit_json(const FitResult& f, std::ostream& out) {
    out << "{\"exponent\":" << json_num(f.exponent) << ",\"coefficient\":"
        << json_num(f.coefficient) << ",\"r_squared\":" << json_num(f.r_squared) << "}";
}

template <typename T, typename RowFn>
void json_array(const std::vector<T>& items, std::ostream& out, RowFn&& row) {
    out << "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out << ",";
        out << "\n  ";
        row(items[i]);
    }
    out << "\n]\n";
}

}  // namespace

void emit_run_records(const std::vector<RunRecord>& records, EmitFormat format,
                      std::ostream& out) {
    if (format == EmitFormat::Csv) {
        out << kRunHeader << '\n';
        for (const RunRecord& r : records) run_record_csv_row(r, out);
    } else {
        json_array(records, out, [&out](const RunRecord& r) { run_record_json(r, out); });
    }
}

void emit_scaling(const ScalingResult& result, EmitFormat format, std::ostream& out) {
    if (format == EmitFormat::Csv) {
        emit_run_records(result.records, format, out);
        // Comment lines: ignored by gnuplot, kept out of the record table.
        out << "# fit,quantity,exponent,coefficient,r_squared\n";
        out << "# fit,t_opt," << fmt17(result.fit_t_opt.exponent) << ','
            << fmt17(result.fit_t_opt.coefficient) << ','
            << fmt17(result.fit_t_opt.r_squared) << '\n';
        out << "# fit,inv_p_max," << fmt17(result.fit_inv_p_max.exponent) << ','
            << fmt17(result.fit_inv_p_max.coefficient) << ','
            << fmt17(result.fit_inv_p_max.r_squared) << '\n';
    } else {
        out << "{\"records\":[";
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            if (i) out << ",";
            out << "\n  ";
            run_record_json(result.records[i], out);
        }
        out << "\n],\"fit_t_opt\":";
        fit_json(result.fit_t_opt, out);
        out << ",\"fit_inv_p_max\":";
        fit_json(result.fit_inv_p_max, out);
        out << "}\n";
    }
}

void emit_theta_scan(const ThetaScanResult& result, EmitFormat format,
                     std::ostream& out) {
    if (format == EmitFormat::Csv) {
        out << "theta," << kRunHeader << '\n';
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            out << fmt17(result.thetas[i]) << ',';
            run_record_csv_row(result.records[i], out);
        }
    } else {
        out << "[";
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            if (i) out << ",";
            out << "\n  {\"theta\":" << json_num(result.thetas[i]) << ",";
            std::ostringstream row;
            run_record_json(result.records[i], row);
            out << row.str().substr(1);  // merge into one object
        }
        out << "\n]\n";
    }
}

void emit_eigen_trend(const std::vector<EigenTrendRow>& rows, EmitFormat format,
                      std::ostream& out) {
    if (format == EmitFormat::Csv) {
        out << "n,N,lambda,phi_min\n";
        for (const EigenTrendRow& r : rows) {
            out << r.n << ',' << r.num_vertices << ',' << fmt17(r.lambda) << ','
                << fmt17(r.phi_min) << '\n';
        }
    } else {
        json_array(rows, out, [&out](const EigenTrendRow& r) {
            out << "{\"n\":" << r.n << ",\"N\":" << r.num_vertices << ",\"lambda\":"
                << json_num(r.lambda) << ",\"phi_min\":" << json_num(r.phi_min) << "}";
        });
    }
}

void emit_spectrum(const std::vector<SpectralEntry>& entries, EmitFormat format,
                   std::ostream& out) {
    if (format == EmitFormat::Csv) {
        out << "k,l,class,phi,re_v0,im_v0,re_v1,im_v1\n";
        for (const SpectralEntry& e : entries) {
            out << e.momentum.k << ',' << e.momentum.l << ',' << to_string(e.klass)
                << ',' << fmt17(e.phi) << ',' << fmt17(e.v[0].real()) << ','
                << fmt17(e.v[0].imag()) << ',' << fmt17(e.v[1].real()) << ','
                << fmt17(e.v[1].imag()) << '\n';
        }
    } else {
        json_array(entries, out, [&out](const SpectralEntry& e) {
            out << "{\"k\":" << e.momentum.k << ",\"l\":" << e.momentum.l
                << ",\"class\":\"" << json_escape(to_string(e.klass)) << "\",\"phi\":"
                << json_num(e.phi) << ",\"re_v0\":" << json_num(e.v[0].real())
                << ",\"im_v0\":" << json_num(e.v[0].imag()) << ",\"re_v1\":"
                << json_num(e.v[1].real()) << ",\"im_v1\":" << json_num(e.v[1].imag())
                << "}";
        });
    }
}

void emit_asymptotics(const std::vector<AsymptoticsRecord>& records, EmitFormat format,
                      std::ostream& out) {
    if (format == EmitFormat::Csv) {
        out << "n,lambda_exact,lambda_approx,c2_direct,c2_reduced,i_n,phi_min,"
               "overlap_marked,t_opt,p_model\n";
        for (const AsymptoticsRecord& r : records) {
            out << r.n << ',' << fmt17(r.lambda_exact) << ',' << fmt17(r.lambda_approx)
                << ',' << fmt17(r.c2_direct) << ',' << fmt17(r.c2_reduced) << ','
                << fmt17(r.i_n) << ',' << fmt17(r.phi_min) << ','
                << fmt17(r.overlap_marked) << ',' << r.t_opt << ','
                << fmt17(r.p_model) << '\n';
        }
    } else {
        json_array(records, out, [&out](const AsymptoticsRecord& r) {
            out << "{\"n\":" << r.n << ",\"lambda_exact\":" << json_num(r.lambda_exact)
                << ",\"lambda_approx\":" << json_num(r.lambda_approx)
                << ",\"c2_direct\":" << json_num(r.c2_direct) << ",\"c2_reduced\":"
                << json_num(r.c2_reduced) << ",\"i_n\":" << json_num(r.i_n)
                << ",\"phi_min\":" << json_num(r.phi_min) << ",\"overlap_marked\":"
                << json_num(r.overlap_marked) << ",\"t_opt\":" << r.t_opt
                << ",\"p_model\":" << json_num(r.p_model) << "}";
        });
    }
}

void emit_state(const StateVector& state, std::ostream& out) {
    out << "x,y,re,im,prob\n";
    for (int i = 0; i < state.lattice.num_vertices; ++i) {
        const Vertex v = vertex_at(i, state.lattice);
        const cd a = state.amp[static_cast<std::size_t>(i)];
        out << v.x << ',' << v.y << ',' << fmt17(a.real()) << ',' << fmt17(a.imag())
            << ',' << fmt17(std::norm(a)) << '\n';
    }
}

std::vector<RunRecord> parse_run_records_csv(std::istream& in) {
    std::vector<RunRecord> records;
    std::string line;
    if (!std::getline(in, line)) return records;
    if (line != kRunHeader) {
        throw std::runtime_error("unexpected run-record header: '" + line + "'");
    }
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7) {
            throw std::runtime_error("bad run-record row: '" + line + "'");
        }
        RunRecord r;
        r.n = std::stoi(fields[0]);
        r.num_vertices = std::stol(fields[1]);
        r.t_opt = std::stol(fields[2]);
        r.p_max = std::stod(fields[3]);
        r.lambda = std::stod(fields[4]);
        r.phi_min = std::stod(fields[5]);
        r.wall_time_s = std::stod(fields[6]);
        r.amplified = true;  // not serialized
        records.push_back(r);
    }
    return records;
}

}  // namespace stagwalk
