#include "stagwalk/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace stagwalk {

double StateVector::norm() const {
    double s = 0.0;
    for (const cd& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

double StateVector::probability_at(const Vertex& v) const {
    return std::norm(amp[static_cast<std::size_t>(vertex_index(v, lattice))]);
}

StateVector initial_state(const LatticeSpec& lattice) {
    StateVector state{lattice, std::vector<cd>(lattice.num_vertices, cd{0.0, 0.0})};
    const double a = 1.0 / (std::sqrt(2.0) * lattice.n);
    for (int y = 0; y < lattice.side; ++y) {
        for (int x = 0; x < lattice.side; ++x) {
            if ((x + y) % 2 == 0) {
                state.amp[static_cast<std::size_t>(x + lattice.side * y)] = a;
            }
        }
    }
    return state;
}

void apply_tessellation_unitary(StateVector& state, const Tessellation& tess,
                                double theta) {
    if (tess.lattice.n != state.lattice.n) {
        throw std::invalid_argument(
            "apply_tessellation_unitary: tessellation n = " +
            std::to_string(tess.lattice.n) + " vs state n = " +
            std::to_string(state.lattice.n));
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cd is{0.0, s};
    for (const auto& poly : tess.polygons) {
        const int i = vertex_index(poly.anchor, state.lattice);
        const int j = vertex_index(poly.partner, state.lattice);
        const cd alpha = state.amp[static_cast<std::size_t>(i)];
        const cd beta = state.amp[static_cast<std::size_t>(j)];
        state.amp[static_cast<std::size_t>(i)] = c * alpha + is * beta;
        state.amp[static_cast<std::size_t>(j)] = is * alpha + c * beta;
    }
}

void apply_oracle(StateVector& state, const Vertex& marked) {
    const int i = vertex_index(marked, state.lattice);
    state.amp[static_cast<std::size_t>(i)] = -state.amp[static_cast<std::size_t>(i)];
}

Walk::Walk(const LatticeSpec& lattice, const WalkConfig& config)
    : lattice_(lattice),
      config_(config),
      cos_theta_(std::cos(config.theta)),
      sin_theta_(std::sin(config.theta)) {
    if (config.global_sign != 1 && config.global_sign != -1) {
        throw std::invalid_argument("global_sign must be +1 or -1");
    }
    std::array<bool, 4> seen{};
    for (TessLabel label : config.ordering) {
        if (seen[static_cast<int>(label)]) {
            throw std::invalid_argument("ordering must be a permutation of the four labels");
        }
        seen[static_cast<int>(label)] = true;
    }
    for (int i = 0; i < 4; ++i) {
        Tessellation tess = build_tessellation(lattice, config.ordering[i]);
        auto& pairs = pairs_[i];
        pairs.reserve(tess.polygons.size());
        for (const auto& poly : tess.polygons) {
            pairs.emplace_back(vertex_index(poly.anchor, lattice),
                               vertex_index(poly.partner, lattice));
        }
    }
    if (config.marked) marked_index_ = vertex_index(*config.marked, lattice);
}

void Walk::sweeps(StateVector& state) const {
    const double c = cos_theta_;
    const cd is{0.0, sin_theta_};
    for (const auto& pairs : pairs_) {
        for (const auto& [i, j] : pairs) {
            const cd alpha = state.amp[static_cast<std::size_t>(i)];
            const cd beta = state.amp[static_cast<std::size_t>(j)];
            state.amp[static_cast<std::size_t>(i)] = c * alpha + is * beta;
            state.amp[static_cast<std::size_t>(j)] = is * alpha + c * beta;
        }
    }
    if (config_.global_sign < 0) {
        for (cd& a : state.amp) a = -a;
    }
}

void Walk::step(StateVector& state) const {
    if (state.lattice.n != lattice_.n) {
        throw std::invalid_argument("step: state built for a different lattice");
    }
    if (marked_index_ >= 0) {
        auto& a = state.amp[static_cast<std::size_t>(marked_index_)];
        a = -a;
    }
    sweeps(state);
}

void Walk::step_unmarked(StateVector& state) const {
    if (state.lattice.n != lattice_.n) {
        throw std::invalid_argument("step_unmarked: state built for a different lattice");
    }
    sweeps(state);
}

EvolveResult evolve(StateVector state, const WalkConfig& config, int steps) {
    if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
    const Walk walk(state.lattice, config);
    const Vertex probe = config.marked.value_or(Vertex{0, 0});
    const std::size_t probe_index =
        static_cast<std::size_t>(vertex_index(probe, state.lattice));
    EvolveResult result;
    result.prob.reserve(static_cast<std::size_t>(steps) + 1);
    result.prob.push_back(std::norm(state.amp[probe_index]));
    for (int t = 1; t <= steps; ++t) {
        walk.step(state);
        result.prob.push_back(std::norm(state.amp[probe_index]));
    }
    result.final_state = std::move(state);
    return result;
}

DenseOperator dense_operator(const WalkConfig& config, const LatticeSpec& lattice,
                             int cap) {
    const int N = lattice.num_vertices;
    if (N > cap) {
        throw std::length_error("dense_operator: N = " + std::to_string(N) +
                                " exceeds cap " + std::to_string(cap));
    }
    const Walk walk(lattice, config);
    DenseOperator op;
    op.dim = N;
    op.col_major.assign(static_cast<std::size_t>(N) * N, cd{0.0, 0.0});
    StateVector basis{lattice, {}};
    for (int j = 0; j < N; ++j) {
        basis.amp.assign(static_cast<std::size_t>(N), cd{0.0, 0.0});
        basis.amp[static_cast<std::size_t>(j)] = 1.0;
        walk.step(basis);
        std::copy(basis.amp.begin(), basis.amp.end(),
                  op.col_major.begin() + static_cast<std::size_t>(j) * N);
    }
    return op;
}

std::vector<cd> dense_apply(const DenseOperator& op, const std::vector<cd>& x) {
    if (static_cast<int>(x.size()) != op.dim) {
        throw std::invalid_argument("dense_apply: dimension mismatch");
    }
    std::vector<cd> y(static_cast<std::size_t>(op.dim), cd{0.0, 0.0});
    for (int j = 0; j < op.dim; ++j) {
        const cd xj = x[static_cast<std::size_t>(j)];
        if (xj == cd{0.0, 0.0}) continue;
        const cd* col = op.col_major.data() + static_cast<std::size_t>(j) * op.dim;
        for (int i = 0; i < op.dim; ++i) {
            y[static_cast<std::size_t>(i)] += col[i] * xj;
        }
    }
    return y;
}

}  // namespace stagwalk
