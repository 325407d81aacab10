#include "grimglue/mode_op.hpp"

#include <cmath>
#include <stdexcept>

namespace grimglue {

namespace {

struct Stencil {
    double lo, mid, hi;  // weights of f_{i-1}, f_i, f_{i+1}
};

// Second-order nonuniform three-point weights for f'' and f'.
Stencil second_derivative(double hm, double hp) {
    return {2.0 / (hm * (hm + hp)), -2.0 / (hm * hp), 2.0 / (hp * (hm + hp))};
}

Stencil first_derivative(double hm, double hp) {
    return {-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))};
}

}  // namespace

Eigen::SparseMatrix<double> ModeOperator::assemble() const {
    const std::size_t n = size();
    if (n < 3 || a2.size() != n || a1.size() != n || a0.size() != n)
        throw std::invalid_argument("ModeOperator: inconsistent arrays");
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(3 * n);

    auto add_interior_row = [&](std::size_t i, double hm, double hp, long lo_col, long hi_col) {
        const Stencil s2 = second_derivative(hm, hp);
        const Stencil s1 = first_derivative(hm, hp);
        const double w_lo = a2[i] * s2.lo + a1[i] * s1.lo;
        const double w_mid = a2[i] * s2.mid + a1[i] * s1.mid + a0[i];
        const double w_hi = a2[i] * s2.hi + a1[i] * s1.hi;
        const long row = static_cast<long>(i);
        if (lo_col >= 0) {
            triplets.emplace_back(row, lo_col, w_lo);
        } else {
            // Ghost at x_0 - hm folded by the inner boundary condition.
            if (inner.kind == BoundaryCondition::Kind::neumann_ghost) {
                triplets.emplace_back(row, row + 1, w_lo);  // mirror: f_{-1} = f_1
            } else {  // robin: f' + c f = 0 -> f_{-1} = f_1 + 2 hm c f_0
                triplets.emplace_back(row, row + 1, w_lo);
                triplets.emplace_back(row, row, 2 * hm * inner.coeff * w_lo);
            }
        }
        triplets.emplace_back(row, row, w_mid);
        if (hi_col >= 0) {
            triplets.emplace_back(row, hi_col, w_hi);
        } else {
            // Ghost at x_{n-1} + hp folded by the outer condition.
            if (outer.kind == BoundaryCondition::Kind::neumann_ghost) {
                triplets.emplace_back(row, row - 1, w_hi);
            } else {  // robin: f' + c f = 0 -> f_{n} = f_{n-2} - 2 hp c f_{n-1}
                triplets.emplace_back(row, row - 1, w_hi);
                triplets.emplace_back(row, row, -2 * hp * outer.coeff * w_hi);
            }
        }
    };

    // Inner node.
    if (inner.kind == BoundaryCondition::Kind::dirichlet) {
        triplets.emplace_back(0, 0, 1.0);
    } else {
        const double h = x[1] - x[0];
        add_interior_row(0, h, h, -1, 1);
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        add_interior_row(i, x[i] - x[i - 1], x[i + 1] - x[i], static_cast<long>(i) - 1,
                         static_cast<long>(i) + 1);
    if (outer.kind == BoundaryCondition::Kind::dirichlet) {
        triplets.emplace_back(n - 1, n - 1, 1.0);
    } else {
        const double h = x[n - 1] - x[n - 2];
        add_interior_row(n - 1, h, h, static_cast<long>(n) - 2, -1);
    }

    Eigen::SparseMatrix<double> matrix(static_cast<long>(n), static_cast<long>(n));
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return matrix;
}

std::vector<double> ModeOperator::apply(const std::vector<double>& f) const {
    const Eigen::SparseMatrix<double> matrix = assemble();
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), static_cast<long>(f.size()));
    Eigen::VectorXd out = matrix * fv;
    return std::vector<double>(out.data(), out.data() + out.size());
}

ModeSolver::ModeSolver(const ModeOperator& op) : op_(op), matrix_(op.assemble()) {
    lu_ = std::make_shared<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
    lu_->analyzePattern(matrix_);
    lu_->factorize(matrix_);
    if (lu_->info() != Eigen::Success)
        throw std::runtime_error("ModeSolver: singular discretization (mode " +
                                 std::to_string(op.m) + ")");
}

std::vector<double> ModeSolver::solve(const std::vector<double>& rhs) const {
    if (rhs.size() != op_.size()) throw std::invalid_argument("ModeSolver: rhs size mismatch");
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), rhs.size());
    // Boundary rows carry the boundary values (zero for our problems).
    if (op_.inner.kind == BoundaryCondition::Kind::dirichlet) b[0] = 0.0;
    if (op_.outer.kind == BoundaryCondition::Kind::dirichlet) b[b.size() - 1] = 0.0;
    Eigen::VectorXd sol = lu_->solve(b);
    return std::vector<double>(sol.data(), sol.data() + sol.size());
}

std::vector<double> random_band_limited(const std::vector<double>& x, int max_wave, Rng& rng,
                                        double support_lo, double support_hi) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const double length = support_hi - support_lo;
    std::vector<double> amplitudes, phases;
    for (int k = 1; k <= max_wave; ++k) {
        amplitudes.push_back(coeff(rng) / k);
        phases.push_back(M_PI * coeff(rng));
    }
    std::vector<double> out(x.size(), 0.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = (x[i] - support_lo) / length;
        if (t <= 0 || t >= 1) continue;
        // sin(pi k t) factors vanish at the support edges.
        double value = 0.0;
        for (int k = 1; k <= max_wave; ++k)
            value += amplitudes[k - 1] * std::sin(M_PI * k * t + phases[k - 1] * t * (1 - t));
        out[i] = value * std::sin(M_PI * t);
        sup = std::max(sup, std::abs(out[i]));
    }
    if (sup > 0)
        for (auto& v : out) v /= sup;
    return out;
}

double inverse_norm_estimate(const ModeSolver& solver, int probes, Rng& rng) {
    const auto& x = solver.op().x;
    double best = 0.0;
    for (int p = 0; p < probes; ++p) {
        std::vector<double> g =
            random_band_limited(x, 8, rng, x.front(), x.back());
        for (int iter = 0; iter < 4; ++iter) {
            const std::vector<double> f = solver.solve(g);
            double sup = 0.0;
            for (double v : f) sup = std::max(sup, std::abs(v));
            if (sup == 0.0) break;
            best = std::max(best, sup);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i] / sup;
        }
    }
    return best;
}

}  // namespace grimglue
