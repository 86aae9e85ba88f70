#pragma once

#include <optional>

namespace relnl {

/// Spacetime point in the lab frame. 1+1 dimensions (time + optical axis),
/// natural units with c = 1. Constructors reject non-finite components.
struct Event {
    double t{0.0};
    double x{0.0};

    Event() = default;
    Event(double t_, double x_);
};

/// Inertial frame moving at velocity beta relative to the lab. Validity
/// (|beta| < 1) is enforced by every operation that boosts into the frame.
struct Frame {
    double beta{0.0};
};

enum class IntervalKind { Timelike, Spacelike, Lightlike };

struct Interval {
    IntervalKind kind{IntervalKind::Lightlike};
    double squared{0.0};  // invariant dt^2 - dx^2
};

/// Temporal relation of one event to another on a given frame's clock.
enum class Order { Before, After, Simultaneous };

/// Default absolute tolerance on frame-time differences when deciding
/// simultaneity. The boundary is measure-zero physics; the knob exists so
/// degenerate geometries are testable.
inline constexpr double kSimultaneityTol = 1e-12;

/// 1/sqrt(1 - beta^2). Throws std::invalid_argument unless |beta| < 1.
double lorentz_gamma(double beta);

/// Time coordinate of `e` in frame `f`: t' = gamma (t - beta x).
double boost_time(const Event& e, const Frame& f);

/// Position coordinate of `e` in frame `f`: x' = gamma (x - beta t).
double boost_position(const Event& e, const Frame& f);

/// Both coordinates of `e` in frame `f`.
Event boost_event(const Event& e, const Frame& f);

/// Invariant interval between two events. |squared| <= tol counts as
/// lightlike; otherwise the sign decides (positive timelike, negative
/// spacelike).
Interval classify_interval(const Event& a, const Event& b, double tol = 0.0);

/// Where does `other` sit relative to `subject` on frame `f`'s clock?
/// Before means `other` had already happened when `subject` occurs in `f`.
Order order_in_frame(const Event& subject, const Event& other, const Frame& f,
                     double tol = kSimultaneityTol);

/// For a spacelike pair, a frame velocity whose rest-frame order of the two
/// events is reversed with respect to the lab. The returned beta is the
/// simultaneity boundary beta* = dt/dx pushed a margin of the way toward
/// the nearest light-speed limit, so the result is strictly interior and
/// deterministic. Timelike or lightlike pairs return nullopt: their order
/// is frame-invariant. Throws std::invalid_argument if the events coincide.
std::optional<double> order_flip_boost(const Event& a, const Event& b,
                                       double margin = 0.1);

}  // namespace relnl
