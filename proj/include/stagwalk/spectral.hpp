#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "stagwalk/walk.hpp"

namespace stagwalk {

// Angle wrapped to (-pi, pi]; the -pi endpoint maps to +pi.
double wrap_angle(double x);

struct MomentumPair {
    int k = 0;
    int l = 0;
    double tilde_k = 0.0;  // pi*k/n
    double tilde_l = 0.0;  // pi*l/n
};

// Closed-form reduced-block data at theta = pi/4.
struct ReducedBlock {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    cd A;  // a + ib
    cd B;  // c + id
};

ReducedBlock coefficients(int k, int l, int n);

// Row-major 2x2 complex matrix acting on span{psi0, psi1} coordinates.
struct Mat2 {
    cd m00, m01, m10, m11;
};

// [[A, B], [-conj(B), conj(A)]] from the closed-form coefficients.
Mat2 reduced_operator(int k, int l, int n);

enum class PhiClass { TrivialPi, Diagonal, Generic };
std::string to_string(PhiClass c);

// Eigenphase classification; first match wins:
//   TrivialPi  k+l or k-l = n (mod 2n)  -> phi = pi
//   Diagonal   k = l                    -> phi = wrap(-2 pi k / n)
//   Generic    otherwise                -> phi = arccos(a) in (0, pi)
// Downstream (enumerate_spectrum, secular weights) the sign of phi inverts for
// slots with n <= k < 2n.
struct PhiResult {
    PhiClass klass;
    double phi;
};
PhiResult phi(int k, int l, int n);

// Reduced eigenvector for the (k,l) slot: the +phi vector for k < n, the -phi
// companion for k >= n; trivial classes get (1,0) / (0,1).
std::array<cd, 2> eigvec(int k, int l, int n);

// Momentum basis vector |psi^0_kl> (which = 0, even-parity support) or
// |psi^1_kl> (which = 1, odd-parity support), omega = exp(i pi / n).
StateVector basis_state(int k, int l, const LatticeSpec& lattice, int which);

// v[0]*|psi0_kl> + v[1]*|psi1_kl>.
StateVector lift_eigenvector(int k, int l, const LatticeSpec& lattice,
                             const std::array<cd, 2>& v);

// Residual of the closed-form block relation under the matrix-free unmarked
// step at theta = pi/4, default ordering:
//   max(|| U psi0 - (A psi0 - conj(B) psi1) ||, || U psi1 - (B psi0 + conj(A) psi1) ||)
double verify_invariant_plane(int k, int l, const LatticeSpec& lattice);

struct SpectralEntry {
    MomentumPair momentum;
    PhiClass klass;
    double phi;  // slot-signed eigenphase in (-pi, pi]
    std::array<cd, 2> v;
};

// All 4n^2 (k,l) slots; lifted vectors form an orthonormal eigenbasis of the
// unmarked U at theta = pi/4.
std::vector<SpectralEntry> enumerate_spectrum(int n);

// General-theta reduced block by projection: two matrix-free applications of
// the unmarked step per (k,l). residual_out (optional) receives the
// out-of-plane leakage, which is zero up to rounding for every theta.
Mat2 projected_block(int k, int l, const Walk& walk, double* residual_out = nullptr);
Mat2 projected_block(int k, int l, const LatticeSpec& lattice,
                     const WalkConfig& config, double* residual_out = nullptr);

// Eigen-decomposition of a unitary 2x2 block. A unitary matrix with a
// repeated eigenvalue is scalar, so `degenerate` doubles as the scalar test;
// in that case only phase[0]/weight[0] are meaningful and the weight is the
// whole plane's (= 1).
struct PlaneEig {
    std::array<double, 2> phase;
    std::array<double, 2> weight;  // |<e0|v>|^2, orthonormal pair, sums to 1
    bool degenerate = false;
};
PlaneEig eig2_unitary(const Mat2& m);

// One eigenphase/weight sample of U's spectrum from the plane scan.
struct PlaneSample {
    double phase;    // wrapped to (-pi, pi]
    double weight;   // |<e0|v>|^2 within the plane (NOT divided by 2n^2)
    int multiplicity;  // 2 when the plane block is scalar
};

// Spectrum of the unmarked walk over plane representatives k in [0,n),
// l in [0,2n); covers every eigenvalue of U exactly once (sum of weights =
// 2n^2). Throws std::runtime_error if any plane leaks (residual > 1e-8).
std::vector<PlaneSample> scan_planes(const LatticeSpec& lattice,
                                     const WalkConfig& config);

// Smallest positive eigenphase of the unmarked U. Closed form
// arccos(a_{1,0}) at theta = pi/4 with the default ordering; otherwise via
// scan_planes.
double phi_min(int n, double theta,
               const std::array<TessLabel, 4>& ordering = kDefaultOrdering);

}  // namespace stagwalk
