#include "grimglue/bivariate.hpp"

#include <cmath>
#include <stdexcept>

namespace grimglue {

XPoly BivariateSeries::term(int p, int q) const {
    auto it = terms_.find({p, q});
    return it == terms_.end() ? XPoly() : it->second;
}

void BivariateSeries::set_term(int p, int q, const XPoly& poly) {
    if (p < 0 || q < 0) throw std::invalid_argument("BivariateSeries: negative index");
    if (poly.is_zero()) {
        terms_.erase({p, q});
    } else {
        terms_[{p, q}] = poly;
    }
}

BivariateSeries BivariateSeries::operator+(const BivariateSeries& other) const {
    BivariateSeries out(std::min(max_total_order_, other.max_total_order_));
    for (const auto& [idx, poly] : terms_)
        if (idx.first + idx.second <= out.max_total_order_) out.set_term(idx.first, idx.second, poly);
    for (const auto& [idx, poly] : other.terms_)
        if (idx.first + idx.second <= out.max_total_order_)
            out.set_term(idx.first, idx.second, out.term(idx.first, idx.second) + poly);
    return out;
}

BivariateSeries BivariateSeries::operator-(const BivariateSeries& other) const {
    BivariateSeries negated = other;
    for (auto& [idx, poly] : negated.terms_) poly = poly * rational(-1);
    return *this + negated;
}

BivariateSeries BivariateSeries::operator*(const BivariateSeries& other) const {
    BivariateSeries out(std::min(max_total_order_, other.max_total_order_));
    for (const auto& [ia, pa] : terms_) {
        for (const auto& [ib, pb] : other.terms_) {
            const int p = ia.first + ib.first;
            const int q = ia.second + ib.second;
            if (p + q > out.max_total_order_) continue;
            out.set_term(p, q, out.term(p, q) + pa * pb);
        }
    }
    return out;
}

BivariateSeries BivariateSeries::operator*(const rational& c) const {
    BivariateSeries out(max_total_order_);
    for (const auto& [idx, poly] : terms_) out.set_term(idx.first, idx.second, poly * c);
    return out;
}

BivariateSeries BivariateSeries::apply_D1() const {
    BivariateSeries out(max_total_order_);
    for (const auto& [idx, poly] : terms_) {
        const rational lambda(1 + idx.first - idx.second);
        out.set_term(idx.first, idx.second, poly.derivative() + poly * lambda);
    }
    return out;
}

BivariateSeries BivariateSeries::apply_N_dN() const {
    BivariateSeries out(max_total_order_);
    for (const auto& [idx, poly] : terms_) out.set_term(idx.first, idx.second, poly * idx.second);
    return out;
}

bool BivariateSeries::vanishes_to_order(int order) const {
    for (const auto& [idx, poly] : terms_)
        if (idx.first + idx.second <= order && !poly.is_zero()) return false;
    return true;
}

double BivariateSeries::eval(double x, const GrimParameters& params) const {
    const double m = params.epsilon * params.A * std::exp(x);
    const double n = params.c / params.A * std::exp(-x);
    double sum = 0.0;
    for (const auto& [idx, poly] : terms_)
        sum += poly.eval(x) * std::pow(m, idx.first) * std::pow(n, idx.second);
    return sum;
}

double BivariateSeries::eval_deriv(double x, const GrimParameters& params) const {
    const double m = params.epsilon * params.A * std::exp(x);
    const double n = params.c / params.A * std::exp(-x);
    double sum = 0.0;
    for (const auto& [idx, poly] : terms_) {
        const double factor = std::pow(m, idx.first) * std::pow(n, idx.second);
        sum += (poly.derivative().eval(x) + (idx.first - idx.second) * poly.eval(x)) * factor;
    }
    return sum;
}

BivariateSeries apply_G_small(const BivariateSeries& v, int truncate_order) {
    const int order = truncate_order < 0 ? v.max_total_order() : truncate_order;
    BivariateSeries m(order);
    m.set_term(1, 0, XPoly::constant(1));
    BivariateSeries vt(order);
    for (const auto& [idx, poly] : v.terms())
        if (idx.first + idx.second <= order) vt.set_term(idx.first, idx.second, poly);
    return vt.apply_D1() - m + (vt - m) * vt * vt;
}

BivariateSeries bivariate_recurrence(int k) {
    if (k < 0) throw std::invalid_argument("bivariate_recurrence: k must be >= 0");
    const int top = 2 * k + 1;
    BivariateSeries v(top);
    // V_{0,0} = 0; build upwards in total order. Writing GV = 0 term by term:
    //   (d/dX + 1 + (p-q)) V_{p,q} = delta_{p1} delta_{q0}
    //       - sum_{p1+p2+p3=p, q1+q2+q3=q} V_.. V_.. V_..
    //       + sum_{p1+p2=p-1, q1+q2=q} V_.. V_..
    // where both sums only touch total orders <= p+q-2.
    for (int total = 1; total <= top; ++total) {
        for (int p = 0; p <= total; ++p) {
            const int q = total - p;
            XPoly rhs;
            if (p == 1 && q == 0) rhs = XPoly::constant(1);
            // Cubic sum over lower-order terms.
            for (const auto& [ia, pa] : v.terms()) {
                for (const auto& [ib, pb] : v.terms()) {
                    const int pc = p - ia.first - ib.first;
                    const int qc = q - ia.second - ib.second;
                    if (pc < 0 || qc < 0) continue;
                    const XPoly pcq = v.term(pc, qc);
                    if (pcq.is_zero()) continue;
                    rhs = rhs - pa * pb * pcq;
                }
            }
            // Quadratic sum shifted by one power of M.
            for (const auto& [ia, pa] : v.terms()) {
                const int pb = p - 1 - ia.first;
                const int qb = q - ia.second;
                if (pb < 0 || qb < 0) continue;
                const XPoly other = v.term(pb, qb);
                if (other.is_zero()) continue;
                rhs = rhs + pa * other;
            }
            const rational lambda(1 + p - q);
            XPoly sol;
            if (lambda == 0) {
                // Kernel modes q = p+1: V_{0,1} = 1, V_{p,p+1}(0) = 0 for p >= 1.
                const rational init = (p == 0) ? rational(1) : rational(0);
                sol = solve_poly_ode(lambda, rhs, init);
            } else {
                sol = solve_poly_ode(lambda, rhs);
            }
            v.set_term(p, q, sol);
        }
    }
    return v;
}

BivariateSeries jacobi_series(const BivariateSeries& v) { return v.apply_N_dN(); }

}  // namespace grimglue
