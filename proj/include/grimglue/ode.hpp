#pragma once

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace grimglue {

// Thrown when the adaptive step size underflows or the state explodes, which
// for the radial problems signals an inadmissible initial value.
struct OdeBlowup : std::runtime_error {
    double where;
    explicit OdeBlowup(double t)
        : std::runtime_error("ODE blow-up near t = " + std::to_string(t)), where(t) {}
};

// Adaptive Fehlberg 7(8) driver over long double. The per-step mechanics come
// from odeint; the loop is hand-rolled so blow-ups are detected rather than
// spun on.
template <std::size_t N>
class AdaptiveOde {
  public:
    using State = std::array<long double, N>;
    using System = std::function<void(const State&, State&, long double)>;

    AdaptiveOde(System system, long double abs_tol, long double rel_tol)
        : system_(std::move(system)), abs_tol_(abs_tol), rel_tol_(rel_tol) {}

    // Advances `state` from t0 to t1 (either direction).
    void advance(State& state, long double t0, long double t1) const {
        namespace odeint = boost::numeric::odeint;
        using Stepper = odeint::runge_kutta_fehlberg78<State, long double, State, long double,
                                                       odeint::array_algebra>;
        auto controlled = odeint::make_controlled<Stepper>(abs_tol_, rel_tol_);
        if (t1 == t0) return;
        const long double dir = t1 > t0 ? 1.0L : -1.0L;
        long double t = t0;
        long double dt = dir * std::min<long double>(1e-3L, std::abs(t1 - t0));
        const long double dt_min = std::abs(t1 - t0) * 1e-14L + 1e-300L;
        std::size_t steps = 0;
        while (dir * (t1 - t) > 0) {
            if (dir * (t + dt) > dir * t1) dt = t1 - t;
            auto result = controlled.try_step(system_, state, t, dt);
            if (result == odeint::controlled_step_result::fail) {
                if (std::abs(dt) < dt_min) throw OdeBlowup(static_cast<double>(t));
                continue;
            }
            for (const auto& x : state)
                if (!std::isfinite(static_cast<double>(x)) || std::abs(x) > 1e30L)
                    throw OdeBlowup(static_cast<double>(t));
            if (++steps > 50'000'000) throw OdeBlowup(static_cast<double>(t));
        }
    }

    // Samples the trajectory at the given monotone times; state enters at
    // times.front() and the rows of the result are the states at each time.
    std::vector<State> sample(State state, const std::vector<long double>& times) const {
        std::vector<State> out;
        out.reserve(times.size());
        out.push_back(state);
        for (std::size_t i = 1; i < times.size(); ++i) {
            advance(state, times[i - 1], times[i]);
            out.push_back(state);
        }
        return out;
    }

  private:
    System system_;
    long double abs_tol_;
    long double rel_tol_;
};

}  // namespace grimglue
