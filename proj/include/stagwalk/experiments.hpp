#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stagwalk/asymptotics.hpp"
#include "stagwalk/spectral.hpp"
#include "stagwalk/walk.hpp"

namespace stagwalk {

struct RunRecord {
    int n = 0;
    long num_vertices = 0;
    long t_opt = 0;
    double p_max = 0.0;
    double lambda = 0.0;      // NaN when no analytic fast path applies
    double phi_min = 0.0;     // NaN when no analytic fast path applies
    double wall_time_s = 0.0;
    bool amplified = false;   // detector fired (not serialized; CLI warns on false)
};

struct FitResult {
    double exponent = 0.0;
    double coefficient = 0.0;
    double r_squared = 0.0;
};

enum class EmitFormat { Csv, Json };
EmitFormat parse_format(const std::string& s);  // "csv" | "json"

// 10 * sqrt(N ln N): generous for theta = pi/4 and the alternative ordering;
// far-off theta hits this cap and reports failure to amplify.
long default_max_steps(int n);

// First-maximum rule as a streaming state machine: once p(t) has risen above
// 2 * p(0), the first decrease ends the run and the preceding step is the
// answer. Feed p(1), p(2), ... in order; fired() flips when the rule
// triggers, after which t_opt/p_max are valid.
class FirstMaxDetector {
  public:
    explicit FirstMaxDetector(double p0) : p0_(p0), prev_(p0) {}

    bool feed(double p) {
        ++t_;
        if (!fired_ && prev_ > 2.0 * p0_ && p < prev_) {
            fired_ = true;
            t_opt_ = t_ - 1;
            p_max_ = prev_;
        }
        prev_ = p;
        return fired_;
    }

    bool fired() const { return fired_; }
    long t_opt() const { return t_opt_; }
    double p_max() const { return p_max_; }

  private:
    double p0_;
    double prev_;
    long t_ = 0;
    bool fired_ = false;
    long t_opt_ = 0;
    double p_max_ = 0.0;
};

// Evolves the marked walk from the uniform initial state and applies the
// first-maximum rule. max_steps <= 0 selects the default cap. When the
// detector never fires the record instead carries the best step in
// [1, max_steps] and amplified = false.
RunRecord run_search(int n, double theta,
                     const std::array<TessLabel, 4>& ordering = kDefaultOrdering,
                     long max_steps = 0, bool with_timing = false);

// Log-log least squares of y vs x: y ~ coefficient * x^exponent. Requires
// positive data and at least two distinct x.
FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingResult {
    std::vector<RunRecord> records;
    FitResult fit_t_opt;      // t_opt vs N
    FitResult fit_inv_p_max;  // 1/p_max vs N
};

// run_search over >= 4 distinct n plus the two power-law fits.
ScalingResult scaling_sweep(const std::vector<int>& n_values, double theta,
                            const std::array<TessLabel, 4>& ordering = kDefaultOrdering,
                            long max_steps = 0, bool with_timing = false);

struct EigenTrendRow {
    int n = 0;
    long num_vertices = 0;
    double lambda = 0.0;
    double phi_min = 0.0;
};

// lambda and phi_min per n at the given theta; one plane scan per n serves
// both quantities on the general-theta path. Rows run in parallel.
std::vector<EigenTrendRow> eigen_trend(double theta, const std::vector<int>& n_values,
                                       const std::array<TessLabel, 4>& ordering = kDefaultOrdering);

struct ThetaScanResult {
    std::vector<double> thetas;
    std::vector<RunRecord> records;  // same length as thetas
};

ThetaScanResult theta_scan(int n, const std::vector<double>& theta_values,
                           const std::array<TessLabel, 4>& ordering = kDefaultOrdering,
                           long max_steps = 0, bool with_timing = false);

// Emitters. CSV headers are fixed; every double is written with fmt17; JSON
// mirrors the CSV columns as an array of objects (insertion order).
void emit_run_records(const std::vector<RunRecord>& records, EmitFormat format,
                      std::ostream& out);
void emit_scaling(const ScalingResult& result, EmitFormat format, std::ostream& out);
void emit_theta_scan(const ThetaScanResult& result, EmitFormat format, std::ostream& out);
void emit_eigen_trend(const std::vector<EigenTrendRow>& rows, EmitFormat format,
                      std::ostream& out);
void emit_spectrum(const std::vector<SpectralEntry>& entries, EmitFormat format,
                   std::ostream& out);
void emit_asymptotics(const std::vector<AsymptoticsRecord>& records, EmitFormat format,
                      std::ostream& out);
// State snapshot: x,y,re,im,prob with header row.
void emit_state(const StateVector& state, std::ostream& out);

// Inverse of emit_run_records for CSV (used for round-trip checks).
std::vector<RunRecord> parse_run_records_csv(std::istream& in);

}  // namespace stagwalk
