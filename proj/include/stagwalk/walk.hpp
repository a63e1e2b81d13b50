#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "stagwalk/lattice.hpp"

namespace stagwalk {

using cd = std::complex<double>;

struct StateVector {
    LatticeSpec lattice;
    std::vector<cd> amp;  // length N, index = x + 2n*y

    double norm() const;
    double probability_at(const Vertex& v) const;
};

// Uniform superposition over the 2n^2 even-parity vertices, amplitude 1/(sqrt2 n).
StateVector initial_state(const LatticeSpec& lattice);

struct WalkConfig {
    double theta = std::numbers::pi / 4;
    // Applied first-to-last; the default realizes the product U11*U10*U01*U00
    // read right-to-left.
    std::array<TessLabel, 4> ordering = kDefaultOrdering;
    int global_sign = -1;  // +1 or -1, applied once per step
    std::optional<Vertex> marked = Vertex{0, 0};
};

// One polygon block: (alpha, beta) -> (alpha cos t + i beta sin t,
//                                      i alpha sin t + beta cos t).
// Exact for every theta since the restricted Hamiltonian is the 2x2 swap.
void apply_tessellation_unitary(StateVector& state, const Tessellation& tess,
                                double theta);

// Negates the amplitude at the marked vertex (rank-1 reflection I - 2|m><m|).
void apply_oracle(StateVector& state, const Vertex& marked);

// Precompiled evolution: tessellations built once, polygons stored as index
// pairs so a step is four in-place sweeps.
class Walk {
  public:
    Walk(const LatticeSpec& lattice, const WalkConfig& config);

    const LatticeSpec& lattice() const { return lattice_; }
    const WalkConfig& config() const { return config_; }

    // Oracle (when a marked vertex is configured), then the four sweeps in
    // configured order, then the global sign.
    void step(StateVector& state) const;
    // Same product without the oracle (the unmarked operator U).
    void step_unmarked(StateVector& state) const;

  private:
    void sweeps(StateVector& state) const;

    LatticeSpec lattice_;
    WalkConfig config_;
    double cos_theta_, sin_theta_;
    int marked_index_ = -1;
    std::array<std::vector<std::pair<int, int>>, 4> pairs_;  // in ordering order
};

struct EvolveResult {
    std::vector<double> prob;  // p_marked(t) for t = 0..steps
    StateVector final_state;
};

// Records |<marked|psi(t)>|^2 while stepping; with no marked vertex the
// probability at (0,0) is recorded.
EvolveResult evolve(StateVector state, const WalkConfig& config, int steps);

struct DenseOperator {
    int dim = 0;
    std::vector<cd> col_major;  // dim*dim entries, column j = step of basis j
};

inline constexpr int kDenseOperatorCap = 4096;

// Brute-force matrix of one step (including oracle and sign). Throws
// std::length_error when N exceeds the cap.
DenseOperator dense_operator(const WalkConfig& config, const LatticeSpec& lattice,
                             int cap = kDenseOperatorCap);

// y = M x for a column-major square matrix.
std::vector<cd> dense_apply(const DenseOperator& op, const std::vector<cd>& x);

}  // namespace stagwalk
