#include "relnl/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace relnl {

Event::Event(double t_, double x_) : t(t_), x(x_) {
    if (!std::isfinite(t_) || !std::isfinite(x_)) {
        throw std::invalid_argument("Event: components must be finite");
    }
}

double lorentz_gamma(double beta) {
    if (!(std::fabs(beta) < 1.0)) {
        throw std::invalid_argument("invalid frame: |beta| must be < 1");
    }
    return 1.0 / std::sqrt(1.0 - beta * beta);
}

double boost_time(const Event& e, const Frame& f) {
    return lorentz_gamma(f.beta) * (e.t - f.beta * e.x);
}

double boost_position(const Event& e, const Frame& f) {
    return lorentz_gamma(f.beta) * (e.x - f.beta * e.t);
}

Event boost_event(const Event& e, const Frame& f) {
    return Event{boost_time(e, f), boost_position(e, f)};
}

Interval classify_interval(const Event& a, const Event& b, double tol) {
    if (tol < 0.0) {
        throw std::invalid_argument("classify_interval: tol must be >= 0");
    }
    const double dt = b.t - a.t;
    const double dx = b.x - a.x;
    const double squared = dt * dt - dx * dx;
    IntervalKind kind = IntervalKind::Lightlike;
    if (std::fabs(squared) > tol) {
        kind = squared > 0.0 ? IntervalKind::Timelike : IntervalKind::Spacelike;
    }
    return Interval{kind, squared};
}

Order order_in_frame(const Event& subject, const Event& other, const Frame& f,
                     double tol) {
    const double dt = boost_time(other, f) - boost_time(subject, f);
    if (std::fabs(dt) <= tol) {
        return Order::Simultaneous;
    }
    return dt < 0.0 ? Order::Before : Order::After;
}

std::optional<double> order_flip_boost(const Event& a, const Event& b,
                                       double margin) {
    if (a.t == b.t && a.x == b.x) {
        throw std::invalid_argument("order_flip_boost: events coincide");
    }
    if (classify_interval(a, b).kind != IntervalKind::Spacelike) {
        return std::nullopt;
    }
    // Spacelike guarantees |dt/dx| < 1. Any |beta| beyond the boundary (on
    // the same side of zero) reverses the order; for a lab-simultaneous pair
    // the boundary is zero and we push toward +1.
    const double boundary = (b.t - a.t) / (b.x - a.x);
    const double limit = boundary >= 0.0 ? 1.0 : -1.0;
    return boundary + margin * (limit - boundary);
}

}  // namespace relnl
