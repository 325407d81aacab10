#pragma once

#include "grimglue/profile.hpp"

#include <functional>
#include <map>
#include <vector>

namespace grimglue {

// Angular-mode representation of a function on an annulus with dihedral
// symmetry: f(r, theta) = sum_m modes[m](r) cos(m theta), on a shared radial
// grid. All solves in the operator pipeline are mode-diagonal; the norm
// estimators evaluate on polar grids.
struct ModalField {
    std::vector<double> r;
    std::map<int, std::vector<double>> modes;

    double eval_node(std::size_t i, double theta) const;
    double eval(double radius, double theta) const;  // linear blend in r
    ModalField restricted(double r_lo, double r_hi) const;
    ModalField derivative_r() const;   // 3-point nonuniform differences
    double sup_abs() const;
};

struct NormSpec {
    int m = 0;             // derivative order, in {0, 1, 2}
    double alpha = 0.05;   // Hoelder exponent
    double weight = 1.5;   // delta (cylindrical) or gamma (grim)
    enum class Kind { cylindrical, grim } kind = Kind::cylindrical;
};

// Sampled Hoelder seminorm over an interval: max over node pairs (all pairs
// up to a cap, then a deterministic stride) of |f(x)-f(y)| / |x-y|^alpha.
// A lower-bound estimator; restriction to a subinterval never increases it.
double holder_seminorm(const std::vector<double>& x, const std::vector<double>& f, double alpha);

// Same estimator over an annulus in the plane with Euclidean distances,
// using the modal field on a polar grid (n_theta angular nodes).
double holder_seminorm_annulus(const ModalField& field, double r_lo, double r_hi, double alpha,
                               int n_theta = 48);

// Localized cylindrical fractional derivative  r^alpha [f|_{A(r/2, 2r)}]_alpha
// probed at each decimated node, returning the sup of the weighted values
// r^delta * delta_cyl^alpha.
double cyl_fractional_sup(const ModalField& field, double alpha, double delta, double r_lo,
                          double r_hi, int n_theta = 32);

// Weighted cylindrical Hoelder norm ||f||_{C^{m,alpha}_{delta,cyl}} over
// [r_lo, r_hi]: sum_n sup r^delta |D_cyl^n f| plus the fractional piece.
// Plane polar derivatives stand in for the surface ones (the catenoidal
// metric correction is O(c^2/r^2) on the regions probed).
double cyl_weighted_norm(const ModalField& field, const NormSpec& spec, double r_lo, double r_hi);

// Grim Hoelder norm of a unit-scale field: || phi_gamma f ||_{C^{m,alpha}}
// with phi_gamma = exp((1+gamma) u/2) from the unit-speed profile, intrinsic
// first derivatives, restricted to [s_lo, s_hi].
double grim_weighted_norm(const ModalField& unit_field, const ProfileFn& unit_profile,
                          const NormSpec& spec, double s_lo, double s_hi);

// Grim Sobolev norm || phi_gamma f ||_{H^m} by quadrature over the surface
// measure, Parseval in the angle.
double grim_sobolev_norm(const ModalField& unit_field, const ProfileFn& unit_profile,
                         const NormSpec& spec, double s_lo, double s_hi);

struct BridgeReport {
    double holder_norm = 0.0;   // A
    double sobolev_ratio = 0.0; // B = sobolev / holder
    double first_deriv_sup = 0.0;
    double measured_constant = 0.0;  // first_deriv_sup / (B^{1-alpha} A)
};

// First-order interpolation diagnostic: |D f|_{C0} against B^{1-alpha} A.
BridgeReport sobolev_first_order_bridge(const ModalField& unit_field,
                                        const ProfileFn& unit_profile, double alpha,
                                        double gamma, double s_lo, double s_hi);

}  // namespace grimglue
