#pragma once

#include "grimglue/report.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace grimglue {

// Weight/conjugation metadata carried by a mode operator.
struct WeightSpec {
    enum class Kind { phi_gamma, psi, composite, none } kind = Kind::none;
    double gamma = 0.0;
    double cutoff_lo = 0.0;
    double cutoff_hi = 0.0;
};

struct BoundaryCondition {
    enum class Kind {
        dirichlet,      // f = 0 at the node (explicit row)
        neumann_ghost,  // f' = 0 folded into the PDE row at the node
        robin_ghost,    // f' + coeff * f = 0 folded into the PDE row
    } kind = Kind::dirichlet;
    double coeff = 0.0;
};

// Discretized second-order radial operator for one angular Fourier mode:
//   L f = a2 f'' + a1 f' + a0 f
// on a monotone node vector x (any coordinate; r carries the physical radius
// per node for reports). Second-order centered stencils, nonuniform-ready.
struct ModeOperator {
    int m = 0;
    std::vector<double> x;
    std::vector<double> r;
    std::vector<double> a2, a1, a0;
    BoundaryCondition inner, outer;
    WeightSpec weight;

    std::size_t size() const { return x.size(); }
    Eigen::SparseMatrix<double> assemble() const;
    std::vector<double> apply(const std::vector<double>& f) const;
};

class ModeSolver {
  public:
    explicit ModeSolver(const ModeOperator& op);
    std::vector<double> solve(const std::vector<double>& rhs) const;
    const ModeOperator& op() const { return op_; }

  private:
    ModeOperator op_;
    Eigen::SparseMatrix<double> matrix_;
    std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
};

// Randomized lower-bound estimate of the discrete inverse sup-norm:
// power-iteration style probing with smooth band-limited right sides.
double inverse_norm_estimate(const ModeSolver& solver, int probes, Rng& rng);

// Smooth random band-limited samples on the nodes, sup-normalized.
std::vector<double> random_band_limited(const std::vector<double>& x, int max_wave, Rng& rng,
                                        double support_lo, double support_hi);

}  // namespace grimglue
