#include "stagwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stagwalk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_momentum(int k, int l, int n) {
    if (n <= 1) throw std::invalid_argument("momentum analysis requires n > 1");
    if (k < 0 || k >= 2 * n || l < 0 || l >= 2 * n) {
        throw std::out_of_range("momentum (" + std::to_string(k) + "," +
                                std::to_string(l) + ") outside [0, 2n) for n = " +
                                std::to_string(n));
    }
}

}  // namespace

double wrap_angle(double x) {
    double y = std::remainder(x, 2.0 * kPi);
    if (y <= -kPi) y += 2.0 * kPi;
    return y;
}

ReducedBlock coefficients(int k, int l, int n) {
    check_momentum(k, l, n);
    const double kt = kPi * k / n;
    const double lt = kPi * l / n;
    const double g = std::cos(kt) + std::cos(lt);
    ReducedBlock blk;
    blk.a = 0.5 * g * g - 1.0;
    blk.b = -0.5 * (std::sin(kt) + std::sin(lt)) * g;
    blk.c = 0.5 * std::sin(lt - kt) * g;
    blk.d = 0.5 * (std::cos(kt - lt) - 1.0) * g;
    blk.A = cd{blk.a, blk.b};
    blk.B = cd{blk.c, blk.d};
    return blk;
}

Mat2 reduced_operator(int k, int l, int n) {
    const ReducedBlock blk = coefficients(k, l, n);
    return Mat2{blk.A, blk.B, -std::conj(blk.B), std::conj(blk.A)};
}

std::string to_string(PhiClass c) {
    switch (c) {
        case PhiClass::TrivialPi: return "TrivialPi";
        case PhiClass::Diagonal: return "Diagonal";
        case PhiClass::Generic: return "Generic";
    }
    throw std::invalid_argument("bad PhiClass");
}

PhiResult phi(int k, int l, int n) {
    check_momentum(k, l, n);
    const int two_n = 2 * n;
    const int sum = (k + l) % two_n;
    const int diff = ((k - l) % two_n + two_n) % two_n;
    if (sum == n || diff == n) return {PhiClass::TrivialPi, kPi};
    if (k == l) return {PhiClass::Diagonal, wrap_angle(-2.0 * kPi * k / n)};
    const double a = std::clamp(coefficients(k, l, n).a, -1.0, 1.0);
    return {PhiClass::Generic, std::acos(a)};
}

namespace {

// Degenerate guard: the closed form needs b + sin(phi) (k < n) or
// sin(phi) - b (k >= n) bounded away from zero under the square root; below
// this the eigenvector is rebuilt from the block's row relations instead.
constexpr double kEigvecDegenerateTol = 1e-12;

std::array<cd, 2> eigvec_from_rows(const Mat2& m, cd mu) {
    const std::array<cd, 2> c1{m.m01, mu - m.m00};
    const std::array<cd, 2> c2{mu - m.m11, m.m10};
    const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
    const double n2 = std::sqrt(std::norm(c2[0]) + std::norm(c2[1]));
    std::array<cd, 2> v = (n1 >= n2) ? c1 : c2;
    const double nn = std::max(n1, n2);
    if (nn < kEigvecDegenerateTol) return {cd{1.0, 0.0}, cd{0.0, 0.0}};
    v[0] /= nn;
    v[1] /= nn;
    return v;
}

}  // namespace

std::array<cd, 2> eigvec(int k, int l, int n) {
    const PhiResult pr = phi(k, l, n);
    if (pr.klass != PhiClass::Generic) {
        return (k < n) ? std::array<cd, 2>{cd{1.0, 0.0}, cd{0.0, 0.0}}
                       : std::array<cd, 2>{cd{0.0, 0.0}, cd{1.0, 0.0}};
    }
    const ReducedBlock blk = coefficients(k, l, n);
    const double s = std::sin(pr.phi);
    const double den = (k < n) ? blk.b + s : s - blk.b;
    if (den <= kEigvecDegenerateTol) {
        const double slot_phi = (k < n) ? pr.phi : wrap_angle(-pr.phi);
        return eigvec_from_rows(reduced_operator(k, l, n),
                                std::polar(1.0, slot_phi));
    }
    const double v0 = std::sqrt(den / (2.0 * s));
    const cd dc{blk.d, blk.c};
    const cd v1 = ((k < n) ? dc : -dc) / std::sqrt(2.0 * s * den);
    return {cd{v0, 0.0}, v1};
}

StateVector basis_state(int k, int l, const LatticeSpec& lattice, int which) {
    check_momentum(k, l, lattice.n);
    if (which != 0 && which != 1) {
        throw std::invalid_argument("basis_state: which must be 0 or 1");
    }
    const int n = lattice.n;
    const int side = lattice.side;
    StateVector state{lattice, std::vector<cd>(lattice.num_vertices, cd{0.0, 0.0})};
    const double scale = 1.0 / (std::sqrt(2.0) * n);
    auto omega_pow = [&](long long m) {
        return std::polar(scale, kPi * static_cast<double>(m) / n);
    };
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (which == 0) {
                state.amp[static_cast<std::size_t>(2 * x + side * (2 * y))] =
                    omega_pow(2LL * x * k + 2LL * y * l);
                state.amp[static_cast<std::size_t>(2 * x + 1 + side * (2 * y + 1))] =
                    omega_pow((2LL * x + 1) * k + (2LL * y + 1) * l);
            } else {
                state.amp[static_cast<std::size_t>(2 * x + side * (2 * y + 1))] =
                    omega_pow(2LL * x * k + (2LL * y + 1) * l);
                state.amp[static_cast<std::size_t>(2 * x + 1 + side * (2 * y))] =
                    omega_pow((2LL * x + 1) * k + 2LL * y * l);
            }
        }
    }
    return state;
}

StateVector lift_eigenvector(int k, int l, const LatticeSpec& lattice,
                             const std::array<cd, 2>& v) {
    StateVector p0 = basis_state(k, l, lattice, 0);
    const StateVector p1 = basis_state(k, l, lattice, 1);
    for (std::size_t i = 0; i < p0.amp.size(); ++i) {
        p0.amp[i] = v[0] * p0.amp[i] + v[1] * p1.amp[i];
    }
    return p0;
}

namespace {

WalkConfig unmarked_config(double theta, const std::array<TessLabel, 4>& ordering) {
    WalkConfig config;
    config.theta = theta;
    config.ordering = ordering;
    config.marked.reset();
    return config;
}

double diff_norm(const std::vector<cd>& x, const std::vector<cd>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

}  // namespace

double verify_invariant_plane(int k, int l, const LatticeSpec& lattice) {
    const ReducedBlock blk = coefficients(k, l, lattice.n);
    const Walk walk(lattice, unmarked_config(kPi / 4, kDefaultOrdering));
    const StateVector p0 = basis_state(k, l, lattice, 0);
    const StateVector p1 = basis_state(k, l, lattice, 1);

    StateVector u0 = p0;
    walk.step_unmarked(u0);
    std::vector<cd> pred(p0.amp.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        pred[i] = blk.A * p0.amp[i] - std::conj(blk.B) * p1.amp[i];
    }
    const double r0 = diff_norm(u0.amp, pred);

    StateVector u1 = p1;
    walk.step_unmarked(u1);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        pred[i] = blk.B * p0.amp[i] + std::conj(blk.A) * p1.amp[i];
    }
    const double r1 = diff_norm(u1.amp, pred);
    return std::max(r0, r1);
}

std::vector<SpectralEntry> enumerate_spectrum(int n) {
    if (n <= 1) throw std::invalid_argument("enumerate_spectrum requires n > 1");
    std::vector<SpectralEntry> entries;
    entries.reserve(static_cast<std::size_t>(4) * n * n);
    for (int k = 0; k < 2 * n; ++k) {
        for (int l = 0; l < 2 * n; ++l) {
            const PhiResult pr = phi(k, l, n);
            SpectralEntry entry;
            entry.momentum = MomentumPair{k, l, kPi * k / n, kPi * l / n};
            entry.klass = pr.klass;
            entry.phi = (k < n) ? wrap_angle(pr.phi) : wrap_angle(-pr.phi);
            entry.v = eigvec(k, l, n);
            entries.push_back(entry);
        }
    }
    return entries;
}

Mat2 projected_block(int k, int l, const Walk& walk, double* residual_out) {
    const LatticeSpec& lattice = walk.lattice();
    const StateVector p0 = basis_state(k, l, lattice, 0);
    const StateVector p1 = basis_state(k, l, lattice, 1);

    auto inner = [](const StateVector& x, const StateVector& y) {
        cd s{0.0, 0.0};
        for (std::size_t i = 0; i < x.amp.size(); ++i) {
            s += std::conj(x.amp[i]) * y.amp[i];
        }
        return s;
    };

    StateVector u0 = p0;
    walk.step_unmarked(u0);
    StateVector u1 = p1;
    walk.step_unmarked(u1);

    Mat2 m{inner(p0, u0), inner(p0, u1), inner(p1, u0), inner(p1, u1)};
    if (residual_out) {
        std::vector<cd> pred(p0.amp.size());
        for (std::size_t i = 0; i < pred.size(); ++i) {
            pred[i] = m.m00 * p0.amp[i] + m.m10 * p1.amp[i];
        }
        const double r0 = diff_norm(u0.amp, pred);
        for (std::size_t i = 0; i < pred.size(); ++i) {
            pred[i] = m.m01 * p0.amp[i] + m.m11 * p1.amp[i];
        }
        const double r1 = diff_norm(u1.amp, pred);
        *residual_out = std::max(r0, r1);
    }
    return m;
}

Mat2 projected_block(int k, int l, const LatticeSpec& lattice,
                     const WalkConfig& config, double* residual_out) {
    return projected_block(k, l, Walk(lattice, config), residual_out);
}

PlaneEig eig2_unitary(const Mat2& m) {
    PlaneEig out;
    const cd tr = m.m00 + m.m11;
    const double off = std::abs(m.m01) + std::abs(m.m10) + std::abs(m.m00 - m.m11);
    if (off < 1e-12) {
        // Scalar block: repeated eigenvalue, whole-plane weight.
        out.degenerate = true;
        out.phase = {std::arg(tr / 2.0), std::arg(tr / 2.0)};
        out.weight = {1.0, 0.0};
        return out;
    }
    const cd det = m.m00 * m.m11 - m.m01 * m.m10;
    const cd disc = std::sqrt(tr * tr - 4.0 * det);
    const cd mu1 = (tr + disc) / 2.0;
    const cd mu2 = (tr - disc) / 2.0;
    const std::array<cd, 2> v = eigvec_from_rows(m, mu1);
    const double w1 = std::norm(v[0]);
    out.phase = {std::arg(mu1), std::arg(mu2)};
    // The second eigenvector is the orthogonal complement, so the pair's
    // weights sum to exactly 1.
    out.weight = {w1, 1.0 - w1};
    return out;
}

std::vector<PlaneSample> scan_planes(const LatticeSpec& lattice,
                                     const WalkConfig& config) {
    const int n = lattice.n;
    const Walk walk(lattice, config);
    std::vector<PlaneSample> samples;
    samples.reserve(static_cast<std::size_t>(4) * n * n);
    double worst_residual = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < 2 * n; ++l) {
            double residual = 0.0;
            const Mat2 m = projected_block(k, l, walk, &residual);
            worst_residual = std::max(worst_residual, residual);
            const PlaneEig eig = eig2_unitary(m);
            if (eig.degenerate) {
                samples.push_back(PlaneSample{wrap_angle(eig.phase[0]), 1.0, 2});
            } else {
                samples.push_back(PlaneSample{wrap_angle(eig.phase[0]), eig.weight[0], 1});
                samples.push_back(PlaneSample{wrap_angle(eig.phase[1]), eig.weight[1], 1});
            }
        }
    }
    if (worst_residual > 1e-8) {
        throw std::runtime_error("scan_planes: invariant-plane residual " +
                                 std::to_string(worst_residual) +
                                 " (projection no longer closes; regression)");
    }
    return samples;
}

double phi_min(int n, double theta, const std::array<TessLabel, 4>& ordering) {
    if (n <= 1) throw std::invalid_argument("phi_min requires n > 1");
    if (std::abs(theta - kPi / 4) < 1e-15 && ordering == kDefaultOrdering) {
        return std::acos(std::clamp(coefficients(1, 0, n).a, -1.0, 1.0));
    }
    const LatticeSpec lattice = LatticeSpec::make(n);
    const auto samples = scan_planes(lattice, unmarked_config(theta, ordering));
    double best = 2.0 * kPi;
    for (const auto& s : samples) {
        if (s.phase > 1e-9) best = std::min(best, s.phase);
    }
    return best;
}

}  // namespace stagwalk
