#pragma once

#include "grimglue/mode_op.hpp"
#include "grimglue/norms.hpp"
#include "grimglue/surgery.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace grimglue {

struct PingPongConfig {
    GluingConfig gluing;
    int symmetry_order = 1;  // g: admitted modes are multiples of g + 1 (and 0)
    int m_max = 8;
    double s_out = 8.0;      // unit-coordinate outer truncation of the Grim end
    int n_nodes = 3000;
    double alpha = 0.05;
    double gamma = 0.05;
    double delta = 1.5;
    double neumann_tol = 1e-10;
    int max_neumann_terms = 300;

    std::vector<int> modes() const;
};

struct CompactInverse {
    ModalField phi;
    double l = 0.0;
    double v = 0.0;
};

struct NeumannDiagnostics {
    int terms = 0;
    double last_ratio = 0.0;
};

struct RightInverse {
    double l = 0.0;
    double v = 0.0;
    ModalField p;
};

struct RefineResult {
    std::vector<double> residual_history;  // sup norms, starting with M(0,0,0)
    double l = 0.0, v = 0.0;
    std::vector<double> f;  // radial correction on the mesh
    bool converged = false;
};

// Desk-scale ping-pong: a catenoid core joined to a Grim end, per-mode
// discretizations on a shared logarithmic mesh, and the alternating
// approximate inverses combined through Neumann series into a right inverse
// of the joined operator modulo the deficiency directions.
class PingPong {
  public:
    explicit PingPong(const PingPongConfig& config);

    const PingPongConfig& config() const { return config_; }
    const std::vector<double>& mesh() const { return mesh_; }
    const GluedSurface& glued() const { return glued_; }
    const std::vector<double>& x_field() const { return x_field_; }
    const std::vector<double>& y_field() const { return y_field_; }

    // e = X Le + Y Ve + J_C Phi e at every collocation node.
    CompactInverse compact_right_inverse(const ModalField& e) const;

    // f = J_G Psi f at every collocation node (harmonically extended operator).
    ModalField grim_right_inverse(const ModalField& f) const;
    double vertical_extraction(const ModalField& f) const;  // (Psi f)(0)

    // Upward and downward operators; outputs are support-masked with the
    // measured pre-mask tails recorded.
    ModalField ping_pong_A(const ModalField& e) const;
    ModalField ping_pong_B(const ModalField& f) const;
    // Independent commutator-form assemblies for cross-checks.
    ModalField ping_pong_A_alt(const ModalField& e) const;
    ModalField ping_pong_B_alt(const ModalField& f) const;
    double last_mask_tail() const { return last_mask_tail_; }

    ModalField neumann_QE(const ModalField& e, NeumannDiagnostics* diag = nullptr) const;
    ModalField neumann_QF(const ModalField& f, NeumannDiagnostics* diag = nullptr) const;

    RightInverse assemble_right_inverse(const ModalField& f) const;
    // sup over nodes (bar the truncation node) of |J_S P f + X Lf + Y Vf - f|.
    double identity_residual(const ModalField& f, const RightInverse& inverse) const;

    // Measured operator norms ||AB|| and ||BA|| from random probes.
    struct ContractionEstimate {
        double ab = 0.0;
        double ba = 0.0;
    };
    ContractionEstimate measure_contraction(int probes, Rng& rng) const;

    // Region seminorms ||.||_{0,C} and ||.||_{0,G} of the construction.
    double norm_C(const ModalField& field) const;
    double norm_G(const ModalField& field) const;

    ModalField apply_S(const ModalField& field) const;
    ModalField zero_field() const;
    ModalField random_E_field(Rng& rng, int max_wave = 6) const;
    ModalField random_F_field(Rng& rng, int max_wave = 6) const;

    // Axisymmetric fixed-point refinement of the MCFS residual.
    RefineResult refine_soliton(int max_iters, double tol) const;

    // Nonlinear mode-0 MCFS residual of the perturbed surface on the mesh.
    std::vector<double> radial_mcfs(double l, double v, const std::vector<double>& f) const;

  private:
    struct ModeData {
        int m = 0;
        ModeOperator op_C, op_G, op_S;
        Eigen::SparseMatrix<double> matrix_S;
        std::unique_ptr<ModeSolver> grim;
        // Compact side: bordered system for m = 0, plain solver otherwise.
        std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> compact_bordered;
        std::unique_ptr<ModeSolver> compact_plain;
    };

    const ModeData& mode_data(int m) const;
    std::vector<double> apply_mode_S(int m, const std::vector<double>& values) const;

    PingPongConfig config_;
    GluedSurface glued_;
    std::vector<double> mesh_;
    std::vector<double> x_field_, y_field_;
    std::map<int, ModeData> modes_;
    std::size_t idx_R_ = 0;      // first node with r > R
    std::size_t idx_2R_ = 0;     // first node with r > 2R
    ProfileFn unit_grim_;        // unit-speed Grim profile for the G norms
    mutable double last_mask_tail_ = 0.0;
};

}  // namespace grimglue
