#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "stagwalk/spectral.hpp"

namespace stagwalk {

struct SecularTerm {
    double phase;   // slot-signed eigenphase in (-pi, pi]
    double weight;  // |<e0|v>|^2 for the slot, in [0, 1]
};

// Eigenphase/weight data feeding the secular equation at theta = pi/4.
// `terms` lists every slot with nonzero marked-vertex overlap (the scale
// factor 1/(2n^2) on all weights is dropped; it does not move the root).
// `generic` is the subset outside the two excluded index families.
struct SecularTable {
    int n = 0;
    std::vector<SecularTerm> terms;
    std::vector<SecularTerm> generic;
    std::size_t excluded_trivial_pi = 0;  // slots with k+l or k-l = n (mod 2n)
    std::size_t excluded_diagonal = 0;    // k = l slots outside the previous set
};

SecularTable secular_table(int n);

// Unsplit evaluation: sum of w * cot((lambda - phase)/2) over weighted slots.
double secular_lhs(const SecularTable& table, double lambda);

// Same function via the three-term split: (1-2n)tan(lambda/2) for the
// phase-pi family, a closed diagonal sum, and the generic double sum.
double secular_lhs_split(int n, double lambda);

// The root of the secular equation in (0, phi_min): smallest positive
// eigenphase of the marked walk at theta = pi/4, default ordering, marked
// (0,0). Grid scan (256 points) plus bisection to 1e-12. Throws
// std::runtime_error if no sign change is found.
double lambda_root(int n);

// Smallest positive eigenphase of the marked walk for arbitrary theta and
// ordering, built from the plane scan: grouped eigenphase poles, one
// cot-sum root per gap between adjacent weighted poles, plus eigenphases
// that persist (zero overlap or multiplicity >= 2).
double lambda_general(int n, double theta,
                      const std::array<TessLabel, 4>& ordering = kDefaultOrdering);

// Same computation from an existing plane scan (lets callers share one scan
// between lambda and phi_min).
double lambda_from_samples(int n, const std::vector<PlaneSample>& samples);

// Leading-order model 1/(n*C) with C^2 = C2_direct(n).
double lambda_approx(int n);

// C^2 as the weighted spectral sum over generic slots:
// (1/(2n^2)) * sum w / (1 - cos phi).
double C2_direct(int n);

// C^2 after index reduction: (1/n^2) * sum_{0<=k,l<n, (k,l)!=(0,0)}
// 1/(2 - f_kl) with f_kl = cos(pi k/n) + cos(pi l/n).
double C2_reduced(int n);

// sum 1/(k^2 + l^2) over 0 <= k,l < n excluding the origin.
double I_n(int n);

// Antisymmetric companion sum over generic slots; identically zero by the
// (k,l) -> (k+n, l+n) pairing, evaluated directly as a cancellation check.
double symmetry_sum(int n);

// Closed-form success curve (n^2 lambda^2 / 2) * sin^2(lambda (t + 1/2)).
double success_model(int n, double lambda, double t);

// round(pi / (2 lambda)).
long optimal_time(double lambda);

struct Overlaps {
    double overlap_marked;  // |<marked|lambda>| = n lambda / 2
    cd lambda_psi0;         // <lambda|psi_0> = -i e^{i lambda/2} / sqrt(2)
};
Overlaps overlaps(int n, double lambda);

struct AsymptoticsRecord {
    int n = 0;
    double lambda_exact = 0.0;
    double lambda_approx = 0.0;
    double c2_direct = 0.0;
    double c2_reduced = 0.0;
    double i_n = 0.0;
    double phi_min = 0.0;
    double overlap_marked = 0.0;
    long t_opt = 0;
    double p_model = 0.0;
};

// All theta = pi/4 analytic quantities for one n.
AsymptoticsRecord asymptotics_record(int n);

}  // namespace stagwalk
