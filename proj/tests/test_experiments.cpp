#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stagwalk/experiments.hpp"

using namespace stagwalk;

namespace {

constexpr double kPi = std::numbers::pi;

// Model success curve with unit amplitude; the detector only compares
// probability ratios, so the n^2 lambda^2 / 2 prefactor is irrelevant.
double model_curve(double lambda, long t) {
    const double s = std::sin(lambda * (t + 0.5));
    return s * s;
}

std::string emit_to_string(const std::vector<RunRecord>& records, EmitFormat f) {
    std::ostringstream out;
    emit_run_records(records, f, out);
    return out.str();
}

}  // namespace

TEST_CASE("format parsing") {
    CHECK(parse_format("csv") == EmitFormat::Csv);
    CHECK(parse_format("json") == EmitFormat::Json);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
    CHECK_THROWS_AS(parse_format(""), std::invalid_argument);
}

TEST_CASE("default step cap") {
    // 10 sqrt(N ln N) at n = 8: N = 256, ln N ~ 5.545.
    CHECK(default_max_steps(8) == 377);
    CHECK(default_max_steps(2) == 67);
}

TEST_CASE("detector on the closed-form curve lands on the rounded peak time") {
    std::mt19937 rng(9001);
    std::uniform_real_distribution<double> pick(0.002, 0.499);
    std::vector<double> lambdas = {0.49, 0.3, 0.1, 0.05, 0.013};
    for (int i = 0; i < 40; ++i) lambdas.push_back(pick(rng));

    for (double lambda : lambdas) {
        FirstMaxDetector det(model_curve(lambda, 0));
        long t = 0;
        while (!det.fired()) {
            ++t;
            REQUIRE(t < 10000);
            det.feed(model_curve(lambda, t));
        }
        const long expected = std::lround(kPi / (2.0 * lambda) - 0.5);
        CHECK(det.t_opt() == expected);
        CHECK(det.p_max() == model_curve(lambda, det.t_opt()));
    }
}

TEST_CASE("single search run at a pinned size") {
    const RunRecord r = run_search(8, kPi / 4);
    CHECK(r.n == 8);
    CHECK(r.num_vertices == 256);
    CHECK(r.t_opt == 11);
    CHECK(r.p_max == doctest::Approx(0.511872324888).epsilon(1e-10));
    CHECK(r.amplified);
    CHECK(r.lambda == doctest::Approx(lambda_root(8)).epsilon(1e-14));
    CHECK(r.phi_min == doctest::Approx(phi_min(8, kPi / 4)).epsilon(1e-14));
    CHECK(r.wall_time_s == 0.0);
    CHECK(r.p_max > 0.0);
    CHECK(r.p_max <= 1.0);
    CHECK(r.t_opt >= 1);

    const RunRecord timed = run_search(4, kPi / 4, kDefaultOrdering, 0, true);
    CHECK(timed.wall_time_s > 0.0);
}

TEST_CASE("predicted versus measured run time at n = 32") {
    const RunRecord r = run_search(32, kPi / 4);
    const long predicted = optimal_time(r.lambda);
    // The measured first maximum rides an O(lambda) ripple on a peak with
    // O(lambda^2) curvature, so it can sit a few steps off the model time.
    CHECK(std::abs(r.t_opt - predicted) <= 5);
    const double p_model = 32.0 * 32.0 * r.lambda * r.lambda / 2.0;
    CHECK(r.p_max == doctest::Approx(p_model).epsilon(0.15));
}

TEST_CASE("no amplification at the degenerate angle") {
    const RunRecord r = run_search(16, kPi / 2, kDefaultOrdering, 400);
    CHECK_FALSE(r.amplified);
    CHECK(r.t_opt >= 1);
    // The marked probability never leaves the 1/(2n^2) scale.
    CHECK(r.p_max <= 1.0 / (2.0 * 16 * 16) + 1e-15);
    CHECK(r.p_max > 0.0);
}

TEST_CASE("off-angle runs fail to reach constant success probability") {
    const RunRecord r = run_search(8, kPi / 3);
    // The detector fires on the first small ripple (the curve clears twice
    // its initial value almost immediately) but the peak stays tiny.
    CHECK(r.p_max < 0.05);
}

TEST_CASE("power-law fit recovers exact parameters") {
    std::vector<double> x, y;
    for (double v : {16.0, 64.0, 256.0, 1024.0, 4096.0}) {
        x.push_back(v);
        y.push_back(7.0 * std::pow(v, 0.75));
    }
    const FitResult fit = fit_power_law(x, y);
    CHECK(fit.exponent == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(fit.coefficient == doctest::Approx(7.0).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fit input validation") {
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({1.0, -2.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({3.0, 3.0}, {1.0, 2.0}), std::invalid_argument);

    // Noisy data: r^2 drops below one but stays in range.
    const FitResult fit =
        fit_power_law({2.0, 4.0, 8.0, 16.0}, {3.0, 10.0, 17.0, 80.0});
    CHECK(fit.r_squared > 0.0);
    CHECK(fit.r_squared < 1.0);
}

TEST_CASE("scaling sweep plumbing") {
    CHECK_THROWS_AS(scaling_sweep({2, 2, 3, 4}, kPi / 4), std::invalid_argument);

    const ScalingResult result = scaling_sweep({4, 6, 8, 12}, kPi / 4);
    REQUIRE(result.records.size() == 4);
    std::vector<double> Ns, ts, ips;
    for (const RunRecord& r : result.records) {
        CHECK(r.amplified);
        Ns.push_back(static_cast<double>(r.num_vertices));
        ts.push_back(static_cast<double>(r.t_opt));
        ips.push_back(1.0 / r.p_max);
    }
    const FitResult check_t = fit_power_law(Ns, ts);
    CHECK(result.fit_t_opt.exponent == doctest::Approx(check_t.exponent).epsilon(1e-14));
    CHECK(result.fit_t_opt.r_squared >= 0.0);
    CHECK(result.fit_t_opt.r_squared <= 1.0);
    const FitResult check_p = fit_power_law(Ns, ips);
    CHECK(result.fit_inv_p_max.coefficient ==
          doctest::Approx(check_p.coefficient).epsilon(1e-14));
}

TEST_CASE("scaling sweep rejects a fit with no amplified runs") {
    // One step is never enough to trip the detector.
    CHECK_THROWS_AS(scaling_sweep({2, 3, 4, 6}, kPi / 4, kDefaultOrdering, 1),
                    std::runtime_error);
}

TEST_CASE("eigen trend on the closed-form path") {
    const std::vector<EigenTrendRow> rows = eigen_trend(kPi / 4, {4, 2});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 4);  // input order preserved
    CHECK(rows[1].n == 2);
    CHECK(rows[0].lambda == doctest::Approx(lambda_root(4)).epsilon(1e-14));
    CHECK(rows[1].phi_min == doctest::Approx(2 * kPi / 3).epsilon(1e-14));
    CHECK(rows[0].num_vertices == 64);
}

TEST_CASE("eigen trend on the scan path") {
    const std::vector<EigenTrendRow> rows = eigen_trend(kPi / 3, {2, 3});
    REQUIRE(rows.size() == 2);
    for (const EigenTrendRow& row : rows) {
        CHECK(row.lambda ==
              doctest::Approx(lambda_general(row.n, kPi / 3)).epsilon(1e-12));
        CHECK(row.phi_min ==
              doctest::Approx(phi_min(row.n, kPi / 3)).epsilon(1e-12));
        CHECK(row.lambda > 0.0);
        CHECK(row.phi_min > 0.0);
    }
}

TEST_CASE("angle scan at n = 32") {
    const std::vector<double> thetas = {kPi / 8, kPi / 6, kPi / 4, kPi / 3,
                                        3 * kPi / 8};
    const ThetaScanResult scan = theta_scan(32, thetas);
    REQUIRE(scan.records.size() == 5);

    // The symmetric-angle row is bit-identical to a direct run.
    const RunRecord direct = run_search(32, kPi / 4);
    CHECK(scan.records[2].t_opt == direct.t_opt);
    CHECK(scan.records[2].p_max == direct.p_max);

    // Only the symmetric angle amplifies to constant probability; every
    // other angle stalls two orders of magnitude lower. Raw t_opt is not
    // comparable across angles (a failed run peaks on its first ripple), so
    // the degradation is asserted on p_max.
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (i == 2) {
            CHECK(scan.records[i].p_max > 0.1);
        } else {
            CHECK(scan.records[i].p_max < 0.01);
            CHECK(scan.records[i].p_max * 100.0 < scan.records[2].p_max);
        }
    }
    // Moving from pi/4 toward pi/2 the peak decays monotonically.
    CHECK(scan.records[2].p_max > scan.records[3].p_max);
    CHECK(scan.records[3].p_max > scan.records[4].p_max);

    CHECK_THROWS_AS(theta_scan(4, {}), std::invalid_argument);
}

TEST_CASE("run-record CSV shape and round-trip") {
    std::vector<RunRecord> records;
    records.push_back(run_search(2, kPi / 4));
    records.push_back(run_search(3, kPi / 4));
    RunRecord odd = run_search(2, 0.9);  // carries NaN lambda/phi_min
    records.push_back(odd);

    const std::string csv = emit_to_string(records, EmitFormat::Csv);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,N,t_opt,p_max,lambda,phi_min,wall_time_s");

    std::istringstream again(csv);
    const std::vector<RunRecord> parsed = parse_run_records_csv(again);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].n == records[i].n);
        CHECK(parsed[i].num_vertices == records[i].num_vertices);
        CHECK(parsed[i].t_opt == records[i].t_opt);
        CHECK(parsed[i].p_max == records[i].p_max);  // 17 digits round-trip
        if (std::isnan(records[i].lambda)) {
            CHECK(std::isnan(parsed[i].lambda));
        } else {
            CHECK(parsed[i].lambda == records[i].lambda);
        }
    }

    CHECK(emit_to_string({}, EmitFormat::Csv) ==
          "n,N,t_opt,p_max,lambda,phi_min,wall_time_s\n");
}

TEST_CASE("run-record JSON parses and encodes missing values as null") {
    std::vector<RunRecord> records = {run_search(2, kPi / 4), run_search(2, 0.9)};
    const nlohmann::json j =
        nlohmann::json::parse(emit_to_string(records, EmitFormat::Json));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["n"] == 2);
    CHECK(j[0]["N"] == 16);
    CHECK(j[0]["t_opt"] == records[0].t_opt);
    CHECK(j[0]["p_max"].get<double>() == records[0].p_max);
    CHECK(j[0]["lambda"].get<double>() == records[0].lambda);
    CHECK(j[1]["lambda"].is_null());
    CHECK(j[1]["phi_min"].is_null());
}

TEST_CASE("scaling output carries the fits") {
    const ScalingResult result = scaling_sweep({4, 6, 8, 12}, kPi / 4);

    std::ostringstream csv;
    emit_scaling(result, EmitFormat::Csv, csv);
    std::istringstream lines(csv.str());
    std::string line;
    int fit_lines = 0, data_lines = 0;
    bool first = true;
    while (std::getline(lines, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.rfind("# fit,", 0) == 0) {
            ++fit_lines;
        } else {
            ++data_lines;
        }
    }
    CHECK(data_lines == 4);
    CHECK(fit_lines == 3);  // column key plus the two fits

    // The comment lines are transparent to the record parser.
    std::istringstream again(csv.str());
    CHECK(parse_run_records_csv(again).size() == 4);

    std::ostringstream js;
    emit_scaling(result, EmitFormat::Json, js);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    CHECK(j["records"].size() == 4);
    CHECK(j["fit_t_opt"]["exponent"].get<double>() == result.fit_t_opt.exponent);
    CHECK(j["fit_inv_p_max"]["r_squared"].get<double>() ==
          result.fit_inv_p_max.r_squared);
}

TEST_CASE("angle-scan output format") {
    const ThetaScanResult scan = theta_scan(2, {kPi / 4, 0.9});
    std::ostringstream csv;
    emit_theta_scan(scan, EmitFormat::Csv, csv);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "theta,n,N,t_opt,p_max,lambda,phi_min,wall_time_s");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 2);

    std::ostringstream js;
    emit_theta_scan(scan, EmitFormat::Json, js);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    CHECK(j[0]["theta"].get<double>() == kPi / 4);
    CHECK(j[1]["lambda"].is_null());
}

TEST_CASE("eigen-trend output format") {
    const std::vector<EigenTrendRow> rows = eigen_trend(kPi / 4, {2, 3});
    std::ostringstream csv;
    emit_eigen_trend(rows, EmitFormat::Csv, csv);
    CHECK(csv.str().rfind("n,N,lambda,phi_min\n", 0) == 0);

    std::ostringstream js;
    emit_eigen_trend(rows, EmitFormat::Json, js);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    CHECK(j[0]["lambda"].get<double>() == rows[0].lambda);
    CHECK(j[1]["phi_min"].get<double>() == rows[1].phi_min);
}

TEST_CASE("spectrum table output") {
    const std::vector<SpectralEntry> entries = enumerate_spectrum(2);
    std::ostringstream csv;
    emit_spectrum(entries, EmitFormat::Csv, csv);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "k,l,class,phi,re_v0,im_v0,re_v1,im_v1");
    int rows = 0;
    std::string line;
    bool saw_trivial = false;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.find("TrivialPi") != std::string::npos) saw_trivial = true;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(rows == 16);
    CHECK(saw_trivial);

    std::ostringstream js;
    emit_spectrum(entries, EmitFormat::Json, js);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    REQUIRE(j.size() == 16);
    CHECK(j[0]["class"].is_string());
    CHECK(j[0]["phi"].get<double>() == entries[0].phi);
}

TEST_CASE("analytic table output") {
    const std::vector<AsymptoticsRecord> records = {asymptotics_record(2)};
    std::ostringstream csv;
    emit_asymptotics(records, EmitFormat::Csv, csv);
    CHECK(csv.str().rfind("n,lambda_exact,lambda_approx,c2_direct,c2_reduced,"
                          "i_n,phi_min,overlap_marked,t_opt,p_model\n",
                          0) == 0);

    std::ostringstream js;
    emit_asymptotics(records, EmitFormat::Json, js);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    CHECK(j[0]["c2_reduced"].get<double>() == 0.625);
    CHECK(j[0]["t_opt"] == records[0].t_opt);
}

TEST_CASE("state snapshot output") {
    const LatticeSpec lat = LatticeSpec::make(2);
    std::ostringstream out;
    emit_state(initial_state(lat), out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "x,y,re,im,prob");
    int rows = 0;
    double total_prob = 0.0;
    std::string line;
    while (std::getline(lines, line)) {
        ++rows;
        const auto last = line.rfind(',');
        total_prob += std::stod(line.substr(last + 1));
    }
    CHECK(rows == 16);
    CHECK(total_prob == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identical configurations produce identical bytes") {
    const ScalingResult a = scaling_sweep({4, 6, 8, 12}, kPi / 4);
    const ScalingResult b = scaling_sweep({4, 6, 8, 12}, kPi / 4);
    std::ostringstream sa, sb;
    emit_scaling(a, EmitFormat::Csv, sa);
    emit_scaling(b, EmitFormat::Csv, sb);
    CHECK(sa.str() == sb.str());

    std::ostringstream ja, jb;
    emit_scaling(a, EmitFormat::Json, ja);
    emit_scaling(b, EmitFormat::Json, jb);
    CHECK(ja.str() == jb.str());
}
