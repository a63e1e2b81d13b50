#include "stagwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace stagwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// cot(x/2), written without the 1 - cos(x) form whose cancellation costs
// half the significand for moderate x.
double cot_half(double x) { return std::cos(0.5 * x) / std::sin(0.5 * x); }

}  // namespace

SecularTable secular_table(int n) {
    if (n <= 1) throw std::invalid_argument("secular_table requires n > 1");
    SecularTable table;
    table.n = n;
    for (const SpectralEntry& entry : enumerate_spectrum(n)) {
        const double weight = std::norm(entry.v[0]);
        const SecularTerm term{entry.phi, weight};
        switch (entry.klass) {
            case PhiClass::TrivialPi: ++table.excluded_trivial_pi; break;
            case PhiClass::Diagonal: ++table.excluded_diagonal; break;
            case PhiClass::Generic: table.generic.push_back(term); break;
        }
        if (weight > 0.0) table.terms.push_back(term);
    }
    return table;
}

double secular_lhs(const SecularTable& table, double lambda) {
    // Compensated sum: near the root the terms cancel to ~1e-10 of their
    // magnitude at large n, and plain accumulation eats the residual budget.
    double s = 0.0, comp = 0.0;
    for (const SecularTerm& term : table.terms) {
        const double y = term.weight * cot_half(lambda - term.phase) - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

double secular_lhs_split(int n, double lambda) {
    // Phase-pi family: 2n - 1 weighted slots, each cot((lambda - pi)/2) = -tan(lambda/2).
    double s = (1.0 - 2.0 * n) * std::tan(lambda / 2.0);
    // Diagonal family (includes the fixed-point slot k = 0): phases -2 pi k / n.
    for (int k = 0; k < n; ++k) {
        if (2 * k == n) continue;  // those indices fall in the phase-pi family
        s += cot_half(lambda + 2.0 * kPi * k / n);
    }
    // Generic double sum with slot-signed phases and closed-form weights.
    for (int k = 0; k < 2 * n; ++k) {
        for (int l = 0; l < 2 * n; ++l) {
            const PhiResult pr = phi(k, l, n);
            if (pr.klass != PhiClass::Generic) continue;
            const ReducedBlock blk = coefficients(k, l, n);
            const double sphi = std::sin(pr.phi);
            const double w = (k < n) ? (blk.b + sphi) / (2.0 * sphi)
                                     : (sphi - blk.b) / (2.0 * sphi);
            const double signed_phi = (k < n) ? pr.phi : -pr.phi;
            s += w * cot_half(lambda - signed_phi);
        }
    }
    return s;
}

namespace {

// Bisect f (strictly decreasing) on (lo, hi) with f(lo) > 0 > f(hi). Runs to
// floating-point exhaustion: the secular slope grows like n^2, so stopping at
// a fixed interval width would leave an n-dependent residual.
template <typename F>
double bisect_decreasing(F&& f, double lo, double hi) {
    for (int iter = 0; iter < 200 && lo < std::midpoint(lo, hi) &&
                       std::midpoint(lo, hi) < hi;
         ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double lambda_root(int n) {
    if (n <= 1) throw std::invalid_argument("lambda_root requires n > 1");
    const double pm = phi_min(n, kPi / 4);
    auto f = [n](double lam) { return secular_lhs_split(n, lam); };
    const int grid = 256;
    double prev_x = pm / (grid + 1);
    double prev_f = f(prev_x);
    for (int i = 2; i <= grid; ++i) {
        const double x = pm * i / (grid + 1);
        const double fx = f(x);
        if (prev_f > 0.0 && fx <= 0.0) {
            return bisect_decreasing(f, prev_x, x);
        }
        prev_x = x;
        prev_f = fx;
    }
    throw std::runtime_error("lambda_root: no sign change in (0, phi_min) for n = " +
                             std::to_string(n));
}

double lambda_general(int n, double theta,
                      const std::array<TessLabel, 4>& ordering) {
    const LatticeSpec lattice = LatticeSpec::make(n);
    WalkConfig config;
    config.theta = theta;
    config.ordering = ordering;
    config.marked.reset();
    return lambda_from_samples(n, scan_planes(lattice, config));
}

double lambda_from_samples(int n, const std::vector<PlaneSample>& samples_in) {
    constexpr double kPositiveTol = 1e-9;
    constexpr double kGroupTol = 1e-9;
    constexpr double kZeroWeight = 1e-14;

    std::vector<PlaneSample> samples = samples_in;
    std::sort(samples.begin(), samples.end(),
              [](const PlaneSample& a, const PlaneSample& b) { return a.phase < b.phase; });

    struct Group {
        double phase;
        double weight;
        int multiplicity;
    };
    std::vector<Group> groups;
    for (const PlaneSample& s : samples) {
        if (!groups.empty() && s.phase - groups.back().phase < kGroupTol) {
            groups.back().weight += s.weight;
            groups.back().multiplicity += s.multiplicity;
        } else {
            groups.push_back(Group{s.phase, s.weight, s.multiplicity});
        }
    }
    double total_weight = 0.0;
    for (const Group& g : groups) total_weight += g.weight;
    if (std::abs(total_weight - 2.0 * n * n) > 1e-6 * n * n) {
        throw std::runtime_error("lambda_from_samples: weight completeness violated");
    }

    std::vector<Group> poles;
    std::vector<double> candidates;
    for (const Group& g : groups) {
        if (g.weight > kZeroWeight) poles.push_back(g);
        // Zero-overlap or repeated eigenphases of U survive the rank-1 oracle.
        if ((g.weight <= kZeroWeight || g.multiplicity >= 2) && g.phase > kPositiveTol) {
            candidates.push_back(g.phase);
        }
    }
    if (poles.empty()) {
        throw std::runtime_error("lambda_from_samples: no weighted eigenphases");
    }

    auto f = [&poles](double lam) {
        double s = 0.0, comp = 0.0;
        for (const Group& p : poles) {
            const double y = p.weight * cot_half(lam - p.phase) - comp;
            const double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        return s;
    };
    // One root strictly between each pair of circularly adjacent poles.
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const double lo0 = poles[i].phase;
        const double hi0 = (i + 1 < poles.size()) ? poles[i + 1].phase
                                                  : poles[0].phase + 2.0 * kPi;
        if (hi0 <= kPositiveTol) continue;
        const double lo = lo0 + 1e-13;
        const double hi = hi0 - 1e-13;
        if (lo >= hi) continue;
        if (!(f(lo) > 0.0 && f(hi) < 0.0)) continue;
        const double root = wrap_angle(bisect_decreasing(f, lo, hi));
        if (root > kPositiveTol) candidates.push_back(root);
    }
    if (candidates.empty()) {
        throw std::runtime_error("lambda_from_samples: no positive eigenphase found");
    }
    return *std::min_element(candidates.begin(), candidates.end());
}

double C2_direct(int n) {
    if (n <= 1) throw std::invalid_argument("C2_direct requires n > 1");
    double s = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        for (int l = 0; l < 2 * n; ++l) {
            const PhiResult pr = phi(k, l, n);
            if (pr.klass != PhiClass::Generic) continue;
            const ReducedBlock blk = coefficients(k, l, n);
            const double sphi = std::sin(pr.phi);
            const double w = (k < n) ? (blk.b + sphi) / (2.0 * sphi)
                                     : (sphi - blk.b) / (2.0 * sphi);
            s += w / (1.0 - std::cos(pr.phi));
        }
    }
    return s / (2.0 * n * n);
}

double lambda_approx(int n) { return 1.0 / (n * std::sqrt(C2_direct(n))); }

double C2_reduced(int n) {
    if (n <= 1) throw std::invalid_argument("C2_reduced requires n > 1");
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (k == 0 && l == 0) continue;
            const double f = std::cos(kPi * k / n) + std::cos(kPi * l / n);
            s += 1.0 / (2.0 - f);
        }
    }
    return s / (static_cast<double>(n) * n);
}

double I_n(int n) {
    if (n < 2) throw std::invalid_argument("I_n requires n >= 2");
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (k == 0 && l == 0) continue;
            s += 1.0 / (static_cast<double>(k) * k + static_cast<double>(l) * l);
        }
    }
    return s;
}

double symmetry_sum(int n) {
    if (n <= 1) throw std::invalid_argument("symmetry_sum requires n > 1");
    double s = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        for (int l = 0; l < 2 * n; ++l) {
            const PhiResult pr = phi(k, l, n);
            if (pr.klass != PhiClass::Generic) continue;
            const double signed_phi = (k < n) ? pr.phi : -pr.phi;
            const double b = coefficients(k, l, n).b;
            s += b / (std::sin(signed_phi) * (1.0 - std::cos(signed_phi)));
        }
    }
    return s;
}

double success_model(int n, double lambda, double t) {
    const double amp = std::sin(lambda * (t + 0.5));
    return 0.5 * n * n * lambda * lambda * amp * amp;
}

long optimal_time(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("optimal_time requires lambda > 0");
    return std::lround(kPi / (2.0 * lambda));
}

Overlaps overlaps(int n, double lambda) {
    Overlaps out;
    out.overlap_marked = n * lambda / 2.0;
    out.lambda_psi0 = cd{0.0, -1.0} * std::polar(1.0 / std::sqrt(2.0), lambda / 2.0);
    return out;
}

AsymptoticsRecord asymptotics_record(int n) {
    AsymptoticsRecord rec;
    rec.n = n;
    rec.lambda_exact = lambda_root(n);
    rec.lambda_approx = stagwalk::lambda_approx(n);
    rec.c2_direct = C2_direct(n);
    rec.c2_reduced = C2_reduced(n);
    rec.i_n = I_n(n);
    rec.phi_min = phi_min(n, kPi / 4);
    rec.overlap_marked = overlaps(n, rec.lambda_exact).overlap_marked;
    rec.t_opt = optimal_time(rec.lambda_exact);
    rec.p_model = 0.5 * n * n * rec.lambda_exact * rec.lambda_exact;
    return rec;
}

}  // namespace stagwalk
