#include "grimglue/greens.hpp"

#include "grimglue/modified.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grimglue {

namespace {

std::vector<double> log_mesh(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = lo * std::exp(step * i);
    return out;
}

double sup_abs(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) out = std::max(out, std::abs(x));
    return out;
}

double field_sup(const ModalField& f) {
    double out = 0.0;
    for (const auto& [m, values] : f.modes) {
        (void)m;
        out = std::max(out, sup_abs(values));
    }
    return out;
}

}  // namespace

std::vector<int> PingPongConfig::modes() const {
    std::vector<int> out{0};
    for (int m = symmetry_order + 1; m <= m_max; m += symmetry_order + 1) out.push_back(m);
    return out;
}

PingPong::PingPong(const PingPongConfig& config) : config_(config) {
    config_.gluing.r_max = config_.s_out / config_.gluing.epsilon * 1.002;
    glued_ = build_glued(config_.gluing, config_.gluing.c0);
    mesh_ = log_mesh(config_.gluing.R0, config_.s_out / config_.gluing.epsilon,
                     config_.n_nodes);
    const double R = config_.gluing.R;
    idx_R_ = std::upper_bound(mesh_.begin(), mesh_.end(), R) - mesh_.begin();
    idx_2R_ = std::upper_bound(mesh_.begin(), mesh_.end(), 2 * R) - mesh_.begin();

    x_field_ = deficiency_X(config_.gluing, 1.0, mesh_).values;
    y_field_ = deficiency_Y(glued_, 1.0, mesh_);

    // Unit-speed view of the Grim end for the G-norms.
    {
        const double eps = config_.gluing.epsilon;
        const ProfileFn big = glued_.end;
        unit_grim_ = ProfileFn{
            [big, eps](double s) { return eps * big.u(s / eps); },
            [big, eps](double s) { return big.v(s / eps); },
            [big, eps](double s) { return big.dv(s / eps) / eps; },
            [big, eps](double s) { return big.ddv(s / eps) / (eps * eps); },
        };
    }

    const double eps = config_.gluing.epsilon;
    const ProfileFn joined = glued_.joined();
    const RadialOperatorCoeffs grim_coeffs = modified_grim_operator(glued_.end, eps);
    const double rho0 = R / 4.0;  // harmonic-extension ball of the Grim end
    const double alpha_b = grim_coeffs.second_order_factor(rho0);
    const double beta_b = grim_coeffs.first_order_factor(rho0);

    for (int m : config_.modes()) {
        ModeData data;
        data.m = m;
        const BoundaryCondition neumann{BoundaryCondition::Kind::neumann_ghost, 0.0};
        const BoundaryCondition dirichlet{BoundaryCondition::Kind::dirichlet, 0.0};
        data.op_C =
            radial_graph_mode_operator(glued_.core, eps, m, mesh_, neumann, dirichlet);
        data.op_S = radial_graph_mode_operator(joined, eps, m, mesh_, neumann, dirichlet);
        data.matrix_S = data.op_S.assemble();

        // Grim operator with mode-wise harmonic extension inside B(R/4): the
        // second-order field delta + alpha_b [delta (1-t)/2 + x x^T t / r^2]
        // and the linear first-order field beta_b x^i.
        data.op_G.m = m;
        data.op_G.weight = WeightSpec{WeightSpec::Kind::composite, config_.gamma, rho0, 0.0};
        data.op_G.x = mesh_;
        data.op_G.r = mesh_;
        const std::size_t n = mesh_.size();
        data.op_G.a2.resize(n);
        data.op_G.a1.resize(n);
        data.op_G.a0.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = mesh_[i];
            if (r >= rho0) {
                data.op_G.a2[i] = grim_coeffs.f_rr_coeff(r);
                data.op_G.a1[i] = grim_coeffs.f_r_coeff(r);
                data.op_G.a0[i] = -static_cast<double>(m) * m / (r * r);
            } else {
                const double t = r * r / (rho0 * rho0);
                const double lap = 1.0 + alpha_b * (1.0 - t) / 2.0;
                data.op_G.a2[i] = lap + alpha_b * t;
                data.op_G.a1[i] = lap / r + beta_b * r;
                data.op_G.a0[i] = -lap * static_cast<double>(m) * m / (r * r);
            }
        }
        data.op_G.inner =
            BoundaryCondition{BoundaryCondition::Kind::robin_ghost, -m / config_.gluing.R0};
        data.op_G.outer = dirichlet;
        data.grim = std::make_unique<ModeSolver>(data.op_G);

        if (m == 0) {
            // Bordered compact system: PDE rows at nodes 0..n-2 with the
            // deficiency columns, the double outer condition, and a gauge.
            const Eigen::SparseMatrix<double> base = data.op_C.assemble();
            std::vector<Eigen::Triplet<double>> triplets;
            for (int k = 0; k < base.outerSize(); ++k)
                for (Eigen::SparseMatrix<double>::InnerIterator it(base, k); it; ++it)
                    if (it.row() < static_cast<long>(n) - 1)
                        triplets.emplace_back(it.row(), it.col(), it.value());
            for (std::size_t i = 0; i + 1 < n; ++i) {
                triplets.emplace_back(i, n, x_field_[i]);
                triplets.emplace_back(i, n + 1, y_field_[i]);
            }
            triplets.emplace_back(n - 1, n - 2, 1.0);  // phi(second-to-last) = 0
            triplets.emplace_back(n, n - 1, 1.0);      // phi(last) = 0
            triplets.emplace_back(n + 1, 0, 1.0);      // gauge phi(R0) = 0
            Eigen::SparseMatrix<double> bordered(n + 2, n + 2);
            bordered.setFromTriplets(triplets.begin(), triplets.end());
            data.compact_bordered =
                std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
            data.compact_bordered->analyzePattern(bordered);
            data.compact_bordered->factorize(bordered);
            if (data.compact_bordered->info() != Eigen::Success)
                throw std::runtime_error("PingPong: singular bordered compact system");
        } else {
            data.compact_plain = std::make_unique<ModeSolver>(data.op_C);
        }
        modes_.emplace(m, std::move(data));
    }
}

const PingPong::ModeData& PingPong::mode_data(int m) const {
    auto it = modes_.find(m);
    if (it == modes_.end()) throw std::invalid_argument("PingPong: mode outside symmetry class");
    return it->second;
}

std::vector<double> PingPong::apply_mode_S(int m, const std::vector<double>& values) const {
    const ModeData& data = mode_data(m);
    Eigen::Map<const Eigen::VectorXd> f(values.data(), static_cast<long>(values.size()));
    Eigen::VectorXd out = data.matrix_S * f;
    return std::vector<double>(out.data(), out.data() + out.size());
}

ModalField PingPong::zero_field() const {
    ModalField out;
    out.r = mesh_;
    return out;
}

ModalField PingPong::apply_S(const ModalField& field) const {
    ModalField out = zero_field();
    for (const auto& [m, values] : field.modes) out.modes[m] = apply_mode_S(m, values);
    return out;
}

CompactInverse PingPong::compact_right_inverse(const ModalField& e) const {
    CompactInverse out;
    out.phi = zero_field();
    const std::size_t n = mesh_.size();
    for (const auto& [m, values] : e.modes) {
        const ModeData& data = mode_data(m);
        if (m == 0) {
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 2);
            for (std::size_t i = 0; i + 1 < n; ++i) rhs[i] = values[i];
            const Eigen::VectorXd sol = data.compact_bordered->solve(rhs);
            out.phi.modes[0] = std::vector<double>(sol.data(), sol.data() + n);
            out.l = sol[n];
            out.v = sol[n + 1];
        } else {
            out.phi.modes[m] = data.compact_plain->solve(values);
        }
    }
    return out;
}

ModalField PingPong::grim_right_inverse(const ModalField& f) const {
    ModalField out = zero_field();
    for (const auto& [m, values] : f.modes) out.modes[m] = mode_data(m).grim->solve(values);
    return out;
}

double PingPong::vertical_extraction(const ModalField& f) const {
    auto it = f.modes.find(0);
    if (it == f.modes.end()) return 0.0;
    return mode_data(0).grim->solve(it->second)[0];
}

ModalField PingPong::ping_pong_A(const ModalField& e) const {
    const CompactInverse ci = compact_right_inverse(e);
    const CutoffFunction chi_u(std::pow(config_.gluing.R, 4));
    ModalField cut = ci.phi;
    for (auto& [m, values] : cut.modes) {
        (void)m;
        for (std::size_t i = 0; i < values.size(); ++i) values[i] *= chi_u(mesh_[i]);
    }
    ModalField out = apply_S(cut);
    for (const auto& [m, values] : e.modes) {
        auto& target = out.modes[m];
        if (target.empty()) target.assign(mesh_.size(), 0.0);
        for (std::size_t i = 0; i < values.size(); ++i) target[i] -= values[i];
    }
    if (out.modes.count(0)) {
        auto& target = out.modes[0];
        for (std::size_t i = 0; i < target.size(); ++i)
            target[i] += ci.l * x_field_[i] + ci.v * y_field_[i];
    }
    // Support: zero inside B(R), recording the pre-mask tail.
    double tail = 0.0;
    for (auto& [m, values] : out.modes) {
        (void)m;
        for (std::size_t i = 0; i < idx_R_; ++i) {
            tail = std::max(tail, std::abs(values[i]));
            values[i] = 0.0;
        }
    }
    last_mask_tail_ = tail;
    return out;
}

ModalField PingPong::ping_pong_B(const ModalField& f) const {
    const ModalField psi = grim_right_inverse(f);
    double vshift = 0.0;
    if (psi.modes.count(0)) vshift = psi.modes.at(0)[0];
    const CutoffFunction chi_quarter(config_.gluing.R / 4);
    ModalField cut = psi;
    for (auto& [m, values] : cut.modes) {
        const double shift = (m == 0) ? vshift : 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = (1.0 - chi_quarter(mesh_[i])) * (values[i] - shift);
    }
    ModalField out = apply_S(cut);
    for (const auto& [m, values] : f.modes) {
        auto& target = out.modes[m];
        if (target.empty()) target.assign(mesh_.size(), 0.0);
        for (std::size_t i = 0; i < values.size(); ++i) target[i] -= values[i];
    }
    if (out.modes.count(0) || vshift != 0.0) {
        auto& target = out.modes[0];
        if (target.empty()) target.assign(mesh_.size(), 0.0);
        for (std::size_t i = 0; i < target.size(); ++i) target[i] += vshift * y_field_[i];
    }
    // Support: zero outside B(2R). The final node is the truncation row of
    // the Grim solve, not an operator value; it is clamped without entering
    // the tail diagnostic.
    double tail = 0.0;
    for (auto& [m, values] : out.modes) {
        (void)m;
        for (std::size_t i = idx_2R_; i < values.size(); ++i) {
            if (i + 1 < values.size()) tail = std::max(tail, std::abs(values[i]));
            values[i] = 0.0;
        }
    }
    last_mask_tail_ = tail;
    return out;
}

ModalField PingPong::ping_pong_A_alt(const ModalField& e) const {
    // (J_S - J_C)(chi_u Phi e) + [J_C, chi_u] Phi e, assembled from operator
    // differences and an explicit commutator.
    const CompactInverse ci = compact_right_inverse(e);
    const CutoffFunction chi_u(std::pow(config_.gluing.R, 4));
    ModalField out = zero_field();
    for (const auto& [m, phi] : ci.phi.modes) {
        const ModeData& data = mode_data(m);
        std::vector<double> cut(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) cut[i] = chi_u(mesh_[i]) * phi[i];
        const auto s_cut = apply_mode_S(m, cut);
        const auto c_cut = data.op_C.apply(cut);
        const auto c_phi = data.op_C.apply(phi);
        std::vector<double> row(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i)
            row[i] = (s_cut[i] - c_cut[i]) + (c_cut[i] - chi_u(mesh_[i]) * c_phi[i]);
        out.modes[m] = std::move(row);
    }
    return out;
}

ModalField PingPong::ping_pong_B_alt(const ModalField& f) const {
    // (J_S - J_G)(chi (Psi f - Vf)) + [J_G, chi](Psi f - Vf) + Y Vf with
    // chi = 1 - chi_{R/4}; manifestly supported in B(2R).
    const ModalField psi = grim_right_inverse(f);
    double vshift = 0.0;
    if (psi.modes.count(0)) vshift = psi.modes.at(0)[0];
    const CutoffFunction chi_quarter(config_.gluing.R / 4);
    ModalField out = zero_field();
    for (const auto& [m, values] : psi.modes) {
        const ModeData& data = mode_data(m);
        const double shift = (m == 0) ? vshift : 0.0;
        std::vector<double> centered(values.size()), cut(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            centered[i] = values[i] - shift;
            cut[i] = (1.0 - chi_quarter(mesh_[i])) * centered[i];
        }
        const auto s_cut = apply_mode_S(m, cut);
        const auto g_cut = data.op_G.apply(cut);
        const auto g_centered = data.op_G.apply(centered);
        std::vector<double> row(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            row[i] = (s_cut[i] - g_cut[i]) +
                     (g_cut[i] - (1.0 - chi_quarter(mesh_[i])) * g_centered[i]);
        out.modes[m] = std::move(row);
    }
    auto& target = out.modes[0];
    if (target.empty()) target.assign(mesh_.size(), 0.0);
    for (std::size_t i = 0; i < target.size(); ++i) target[i] += vshift * y_field_[i];
    return out;
}

namespace {

void add_field(ModalField& into, const ModalField& from, double scale = 1.0) {
    for (const auto& [m, values] : from.modes) {
        auto& target = into.modes[m];
        if (target.empty()) target.assign(values.size(), 0.0);
        for (std::size_t i = 0; i < values.size(); ++i) target[i] += scale * values[i];
    }
}

}  // namespace

ModalField PingPong::neumann_QE(const ModalField& e, NeumannDiagnostics* diag) const {
    ModalField sum = e;
    ModalField term = e;
    const double scale = field_sup(e);
    double prev = scale;
    for (int k = 1; k <= config_.max_neumann_terms; ++k) {
        term = ping_pong_B(ping_pong_A(term));
        const double norm = field_sup(term);
        if (diag) {
            diag->terms = k;
            if (prev > 0) diag->last_ratio = norm / prev;
        }
        if (k >= 3 && prev > 0 && norm >= prev)
            throw std::runtime_error("neumann_QE: contraction failure (ratio " +
                                     std::to_string(norm / prev) + ")");
        add_field(sum, term);
        if (norm <= config_.neumann_tol * scale) break;
        prev = norm;
    }
    return sum;
}

ModalField PingPong::neumann_QF(const ModalField& f, NeumannDiagnostics* diag) const {
    ModalField sum = f;
    ModalField term = f;
    const double scale = field_sup(f);
    double prev = scale;
    for (int k = 1; k <= config_.max_neumann_terms; ++k) {
        term = ping_pong_A(ping_pong_B(term));
        const double norm = field_sup(term);
        if (diag) {
            diag->terms = k;
            if (prev > 0) diag->last_ratio = norm / prev;
        }
        if (k >= 3 && prev > 0 && norm >= prev)
            throw std::runtime_error("neumann_QF: contraction failure (ratio " +
                                     std::to_string(norm / prev) + ")");
        add_field(sum, term);
        if (norm <= config_.neumann_tol * scale) break;
        prev = norm;
    }
    return sum;
}

RightInverse PingPong::assemble_right_inverse(const ModalField& f) const {
    const CutoffFunction chi(2 * config_.gluing.R);
    const CutoffFunction chi_u(std::pow(config_.gluing.R, 4));
    const CutoffFunction chi_quarter(config_.gluing.R / 4);

    ModalField e_part = f, f_part = f;
    for (auto& [m, values] : e_part.modes) {
        (void)m;
        for (std::size_t i = 0; i < values.size(); ++i) values[i] *= chi(mesh_[i]);
    }
    for (auto& [m, values] : f_part.modes) {
        (void)m;
        for (std::size_t i = 0; i < values.size(); ++i) values[i] *= 1.0 - chi(mesh_[i]);
    }

    const ModalField q = neumann_QE(e_part);
    const ModalField g = ping_pong_A(q);
    const ModalField qf = neumann_QF(f_part);
    const ModalField h = ping_pong_B(qf);

    const CompactInverse phi_q = compact_right_inverse(q);
    const CompactInverse phi_h = compact_right_inverse(h);
    const ModalField psi_g = grim_right_inverse(g);
    const ModalField psi_qf = grim_right_inverse(qf);
    const double vg = psi_g.modes.count(0) ? psi_g.modes.at(0)[0] : 0.0;
    const double vqf = psi_qf.modes.count(0) ? psi_qf.modes.at(0)[0] : 0.0;

    RightInverse out;
    out.l = phi_q.l - phi_h.l;
    out.v = phi_q.v - vg - phi_h.v + vqf;
    out.p = zero_field();

    auto accumulate = [&](const ModalField& phi_field, double phi_sign,
                          const ModalField& psi_field, double psi_shift, double psi_sign) {
        for (const auto& [m, values] : phi_field.modes) {
            auto& target = out.p.modes[m];
            if (target.empty()) target.assign(mesh_.size(), 0.0);
            for (std::size_t i = 0; i < values.size(); ++i)
                target[i] += phi_sign * chi_u(mesh_[i]) * values[i];
        }
        for (const auto& [m, values] : psi_field.modes) {
            auto& target = out.p.modes[m];
            if (target.empty()) target.assign(mesh_.size(), 0.0);
            const double shift = (m == 0) ? psi_shift : 0.0;
            for (std::size_t i = 0; i < values.size(); ++i)
                target[i] +=
                    psi_sign * (1.0 - chi_quarter(mesh_[i])) * (values[i] - shift);
        }
    };
    accumulate(phi_q.phi, 1.0, psi_g, vg, -1.0);
    accumulate(phi_h.phi, -1.0, psi_qf, vqf, 1.0);
    return out;
}

double PingPong::identity_residual(const ModalField& f, const RightInverse& inverse) const {
    ModalField lhs = apply_S(inverse.p);
    auto& mode0 = lhs.modes[0];
    if (mode0.empty()) mode0.assign(mesh_.size(), 0.0);
    for (std::size_t i = 0; i < mesh_.size(); ++i)
        mode0[i] += inverse.l * x_field_[i] + inverse.v * y_field_[i];
    add_field(lhs, f, -1.0);
    double sup = 0.0;
    for (const auto& [m, values] : lhs.modes) {
        (void)m;
        for (std::size_t i = 0; i + 1 < values.size(); ++i)  // bar the truncation node
            sup = std::max(sup, std::abs(values[i]));
    }
    const double scale = field_sup(f);
    return scale > 0 ? sup / scale : sup;
}

PingPong::ContractionEstimate PingPong::measure_contraction(int probes, Rng& rng) const {
    ContractionEstimate est;
    for (int p = 0; p < probes; ++p) {
        const ModalField e = random_E_field(rng);
        const double ne = norm_C(e);
        if (ne > 0) {
            const double nba = norm_C(ping_pong_B(ping_pong_A(e)));
            est.ba = std::max(est.ba, nba / ne);
        }
        const ModalField f = random_F_field(rng);
        const double nf = norm_G(f);
        if (nf > 0) {
            const double nab = norm_G(ping_pong_A(ping_pong_B(f)));
            est.ab = std::max(est.ab, nab / nf);
        }
    }
    return est;
}

double PingPong::norm_C(const ModalField& field) const {
    NormSpec spec{0, config_.alpha, 2.0 + config_.delta, NormSpec::Kind::cylindrical};
    const double lo = config_.gluing.R0;
    const double hi = 4.0 * config_.gluing.R;
    return cyl_weighted_norm(field.restricted(lo, hi), spec, lo, hi);
}

double PingPong::norm_G(const ModalField& field) const {
    const double eps = config_.gluing.epsilon;
    ModalField unit = field.restricted(config_.gluing.R, mesh_.back());
    for (auto& r : unit.r) r *= eps;
    NormSpec spec{0, config_.alpha, config_.gamma, NormSpec::Kind::grim};
    const double s_lo = unit.r.front(), s_hi = unit.r.back();
    const double holder = grim_weighted_norm(unit, unit_grim_, spec, s_lo, s_hi);
    const double sobolev = grim_sobolev_norm(unit, unit_grim_, spec, s_lo, s_hi);
    return holder + sobolev / (eps * config_.gluing.R);
}

ModalField PingPong::random_E_field(Rng& rng, int max_wave) const {
    ModalField out = zero_field();
    for (int m : config_.modes())
        out.modes[m] = random_band_limited(mesh_, max_wave, rng, 1.2 * config_.gluing.R0,
                                           3.0 * config_.gluing.R);
    return out;
}

ModalField PingPong::random_F_field(Rng& rng, int max_wave) const {
    ModalField out = zero_field();
    const double R = config_.gluing.R;
    for (int m : config_.modes())
        out.modes[m] = random_band_limited(mesh_, max_wave, rng, 1.05 * R, R * R * R * R);
    return out;
}

std::vector<double> PingPong::radial_mcfs(double l, double v,
                                          const std::vector<double>& f) const {
    const GluedSurface surface =
        (l == 0.0) ? glued_ : build_glued(config_.gluing, config_.gluing.c0 + l);
    const ProfileFn H = surface.joined();
    const double eps = config_.gluing.epsilon;
    const GraphChart chart = make_chart_radial(H, mesh_.front() * 0.99, mesh_.back() * 1.01, eps);

    const std::size_t n = mesh_.size();
    // v shifts the end relative to the core through the same transition the
    // Y operator linearizes; a rigid translation would leave M unchanged.
    const CutoffFunction zeta(config_.gluing.R0);
    std::vector<double> big_r(n), big_z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = mesh_[i];
        const ModifiedNormal nhat = modified_normal(chart, eps, r, 0.0);
        const double fi = f.empty() ? 0.0 : f[i];
        big_r[i] = r + fi * nhat.direction[0];
        big_z[i] = H.u(r) + v * (1.0 - zeta(r)) + fi * nhat.direction[2];
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = mesh_[i] - mesh_[i - 1], hp = mesh_[i + 1] - mesh_[i];
        auto d1 = [&](const std::vector<double>& a) {
            return (hm * hm * a[i + 1] - hp * hp * a[i - 1] + (hp * hp - hm * hm) * a[i]) /
                   (hm * hp * (hm + hp));
        };
        auto d2 = [&](const std::vector<double>& a) {
            return 2.0 * (hm * a[i + 1] + hp * a[i - 1] - (hm + hp) * a[i]) /
                   (hm * hp * (hm + hp));
        };
        const double r1 = d1(big_r), r2 = d2(big_r);
        const double z1 = d1(big_z), z2 = d2(big_z);
        const double s = std::hypot(r1, z1);
        const double c_profile = (r1 * z2 - z1 * r2) / (s * s * s);
        const double c_circle = z1 / (big_r[i] * s);
        out[i] = -(c_profile + c_circle) + eps * r1 / s;
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
}

RefineResult PingPong::refine_soliton(int max_iters, double tol) const {
    RefineResult result;
    const std::size_t n = mesh_.size();
    result.f.assign(n, 0.0);
    double l = 0.0, v = 0.0;

    // mu of the joined surface, for the height/normal conversion.
    const ProfileFn H = glued_.joined();
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = H.v(mesh_[i]);
        mu[i] = 1.0 / std::sqrt(1.0 + w * w);
    }

    auto window_sup = [&](const std::vector<double>& rho) {
        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mesh_[i] <= 4.0 * config_.gluing.R) sup = std::max(sup, std::abs(rho[i]));
        return sup;
    };

    std::vector<double> rho = radial_mcfs(l, v, result.f);
    result.residual_history.push_back(window_sup(rho));
    for (int iter = 0; iter < max_iters; ++iter) {
        ModalField g = zero_field();
        g.modes[0].assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) g.modes[0][i] = -rho[i];
        const RightInverse ri = assemble_right_inverse(g);
        l += ri.l;
        v += ri.v;
        const auto& p0 = ri.p.modes.count(0) ? ri.p.modes.at(0) : std::vector<double>(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) result.f[i] -= p0[i] / mu[i];
        rho = radial_mcfs(l, v, result.f);
        result.residual_history.push_back(window_sup(rho));
        if (result.residual_history.back() <= tol) {
            result.converged = true;
            break;
        }
        const std::size_t k = result.residual_history.size();
        if (k >= 3 && result.residual_history[k - 1] > result.residual_history[k - 2] &&
            result.residual_history[k - 2] > result.residual_history[k - 3])
            break;  // report the divergence through the history
    }
    result.l = l;
    result.v = v;
    return result;
}

}  // namespace grimglue
