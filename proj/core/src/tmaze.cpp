#include "memspike/tmaze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace memspike::sim {

namespace {

constexpr double kGeomEps = 1e-9;

double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

double point_segment_distance(double px, double py, const Arena::Segment& s, Vec2* closest) {
    const double vx = s[1].x - s[0].x;
    const double vy = s[1].y - s[0].y;
    const double wx = px - s[0].x;
    const double wy = py - s[0].y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double cx = s[0].x + t * vx;
    const double cy = s[0].y + t * vy;
    if (closest) *closest = {cx, cy};
    return std::hypot(px - cx, py - cy);
}

}  // namespace

Arena::Arena(const WorldParams& params) : params_(params) {
    const double hw = params.corridor_width / 2.0;
    const double ay = params.arm_base_y;
    corridor_ = {-hw, -1.0, hw, ay};
    crossbar_ = {-1.0, ay, 1.0, 1.0};

    const double ss = params.start_zone_side;
    start_ = {-ss / 2.0, -1.0, ss / 2.0, -1.0 + ss};

    const double rs = params.reward_zone_side;
    const double arm_mid = (ay + 1.0) / 2.0;
    r1_ = {-1.0, arm_mid - rs / 2.0, -1.0 + rs, arm_mid + rs / 2.0};
    r2_ = {1.0 - rs, arm_mid - rs / 2.0, 1.0, arm_mid + rs / 2.0};

    // Boundary of the T, counter-clockwise from the corridor's bottom-left.
    const std::vector<Vec2> poly{
        {-hw, -1.0}, {hw, -1.0}, {hw, ay}, {1.0, ay}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, ay}, {-hw, ay},
    };
    for (std::size_t i = 0; i < poly.size(); ++i)
        segments_.push_back({poly[i], poly[(i + 1) % poly.size()]});
}

bool Arena::inside(double x, double y) const {
    return corridor_.contains(x, y) || crossbar_.contains(x, y);
}

double Arena::boundary_distance(double x, double y) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) best = std::min(best, point_segment_distance(x, y, s, nullptr));
    return best;
}

Vec2 Arena::nearest_boundary_point(double x, double y) const {
    double best = std::numeric_limits<double>::infinity();
    Vec2 result{};
    for (const auto& s : segments_) {
        Vec2 candidate{};
        const double d = point_segment_distance(x, y, s, &candidate);
        if (d < best) {
            best = d;
            result = candidate;
        }
    }
    return result;
}

bool Arena::fits(double x, double y, double radius) const {
    return inside(x, y) && boundary_distance(x, y) >= radius - kGeomEps;
}

double Arena::ray_hit(double ox, double oy, double dx, double dy) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) {
        const double ex = s[1].x - s[0].x;
        const double ey = s[1].y - s[0].y;
        const double denom = dx * ey - dy * ex;
        if (std::abs(denom) < 1e-15) continue;  // parallel
        const double qx = s[0].x - ox;
        const double qy = s[0].y - oy;
        const double t = (qx * ey - qy * ex) / denom;   // along the ray
        const double u = (qx * dy - qy * dx) / denom;   // along the segment
        if (t >= 0.0 && u >= -1e-12 && u <= 1.0 + 1e-12) best = std::min(best, t);
    }
    return best;
}

bool Arena::in_start(double x, double y) const { return start_.contains(x, y); }
bool Arena::in_r1(double x, double y) const { return r1_.contains(x, y); }
bool Arena::in_r2(double x, double y) const { return r2_.contains(x, y); }

Pose Arena::start_pose() const {
    return {(start_.x0 + start_.x1) / 2.0, (start_.y0 + start_.y1) / 2.0, M_PI / 2.0};
}

SensorReading sense(const Arena& arena, const WorldParams& params, const Pose& pose,
                    rng::Stream& stream) {
    SensorReading reading;
    const double light_span = params.light_raw_max - params.light_raw_min;

    for (std::size_t i = 0; i < params.sensor_bearings_deg.size(); ++i) {
        const double bearing = pose.heading + params.sensor_bearings_deg[i] * M_PI / 180.0;
        const double sx = std::cos(bearing);
        const double sy = std::sin(bearing);
        const double tx = params.light_x - pose.x;
        const double ty = params.light_y - pose.y;
        const double d = std::hypot(tx, ty);
        double intensity;
        if (d < 1e-12) {
            intensity = 1.0;
        } else {
            const double cos_incidence = std::max(0.0, (sx * tx + sy * ty) / d);
            const double falloff =
                std::min(1.0, (params.light_ref_distance * params.light_ref_distance) / (d * d));
            intensity = cos_incidence * falloff;
        }
        double raw = params.light_raw_max - light_span * intensity;
        raw *= 1.0 + stream.uniform(-params.light_noise, params.light_noise);
        raw = std::clamp(raw, params.light_raw_min, params.light_raw_max);
        reading.values[i] = std::clamp((params.light_raw_max - raw) / light_span, 0.0, 1.0);
    }

    for (std::size_t i = 0; i < params.sensor_bearings_deg.size(); ++i) {
        const double bearing = pose.heading + params.sensor_bearings_deg[i] * M_PI / 180.0;
        const double hit = arena.ray_hit(pose.x, pose.y, std::cos(bearing), std::sin(bearing));
        const double surface = std::max(hit - params.robot_radius, 0.0);
        double raw = surface <= params.ir_range
                         ? params.ir_raw_max * (1.0 - surface / params.ir_range)
                         : 0.0;
        raw *= 1.0 + stream.uniform(-params.ir_noise, params.ir_noise);
        raw = std::clamp(raw, 0.0, params.ir_raw_max);
        reading.values[3 + i] = std::clamp(raw / params.ir_raw_max, 0.0, 1.0);
    }

    // Bump sensors cover the two front quarter-circles.
    if (arena.boundary_distance(pose.x, pose.y) <= params.robot_radius + params.bump_tolerance) {
        const Vec2 contact = arena.nearest_boundary_point(pose.x, pose.y);
        const double angle =
            wrap_angle(std::atan2(contact.y - pose.y, contact.x - pose.x) - pose.heading);
        if (angle >= 0.0 && angle <= M_PI / 2.0) reading.bump_left = true;
        if (angle <= 0.0 && angle >= -M_PI / 2.0) reading.bump_right = true;
    }
    return reading;
}

Pose act(const Arena& arena, const WorldParams& params, const Pose& pose, snn::Action action,
         rng::Stream& stream) {
    double left = params.step_displacement;
    double right = params.step_displacement;
    if (action == snn::Action::TurnLeft) left *= 0.5;
    if (action == snn::Action::TurnRight) right *= 0.5;
    if (stream.bernoulli(params.slip_prob)) {
        if (stream.bernoulli(0.5))
            left = 0.0;
        else
            right = 0.0;
    }

    const double ds = (left + right) / 2.0;
    const double dtheta = (right - left) / params.wheel_separation;
    double nx, ny;
    if (std::abs(dtheta) < 1e-12) {
        nx = pose.x + ds * std::cos(pose.heading);
        ny = pose.y + ds * std::sin(pose.heading);
    } else {
        const double radius = ds / dtheta;
        nx = pose.x + radius * (std::sin(pose.heading + dtheta) - std::sin(pose.heading));
        ny = pose.y - radius * (std::cos(pose.heading + dtheta) - std::cos(pose.heading));
    }
    const double heading = wrap_angle(pose.heading + dtheta);

    const double r = params.robot_radius;
    if (arena.fits(nx, ny, r)) return {nx, ny, heading};
    if (arena.fits(nx, pose.y, r)) return {nx, pose.y, heading};  // slide along a horizontal wall
    if (arena.fits(pose.x, ny, r)) return {pose.x, ny, heading};  // slide along a vertical wall
    return {pose.x, pose.y, heading};
}

Pose reverse_from_bump(const Arena& arena, const WorldParams& params, const Pose& pose) {
    const double dx = -std::cos(pose.heading);
    const double dy = -std::sin(pose.heading);
    Pose out = pose;
    double remaining = params.reverse_distance;
    while (remaining > 0.0) {
        const double step = std::min(params.step_displacement, remaining);
        const double nx = out.x + dx * step;
        const double ny = out.y + dy * step;
        if (!arena.fits(nx, ny, params.robot_radius)) break;
        out.x = nx;
        out.y = ny;
        remaining -= step;
    }
    return out;
}

TrialResult run_trial(const evo::Genome& genome, const TrialParams& params, std::uint64_t seed) {
    snn::Network network(genome, params.neuron, params.device);
    network.set_tally_enabled(params.stdp_tracing);
    network.reset();

    const Arena arena(params.world);
    rng::Stream stream(seed);
    Pose pose = arena.start_pose();

    TrialResult result;
    Phase phase = Phase::SeekR1;
    int timestep = 0;

    while (true) {
        int& used = phase == Phase::SeekR1 ? result.phase1_steps : result.phase2_steps;
        if (used >= params.world.phase_budget) break;  // budget exhausted for this phase

        const SensorReading reading = sense(arena, params.world, pose, stream);
        const snn::Action action = network.run_timestep(reading.values);
        const bool bump = reading.bump_left || reading.bump_right;
        if (bump) {
            pose = reverse_from_bump(arena, params.world, pose);
            result.penalties += params.world.bump_penalty;
            ++result.bumps;
        } else {
            pose = act(arena, params.world, pose, action, stream);
        }
        ++used;
        ++timestep;
        if (params.record_trajectory)
            result.trajectory.push_back(
                {timestep, pose.x, pose.y, pose.heading, action, phase, bump});

        if (phase == Phase::SeekR1) {
            if (arena.in_r1(pose.x, pose.y)) {
                result.r1_reached = true;
                phase = Phase::SeekR2;
                pose = arena.start_pose();  // network state carries over untouched
            }
        } else if (arena.in_r2(pose.x, pose.y)) {
            result.solved = true;
            break;
        }
    }

    const int budget = params.world.phase_budget;
    const int phase1_cost = result.r1_reached ? result.phase1_steps : budget;
    const int phase2_cost = result.solved ? result.phase2_steps : budget;
    result.fitness = static_cast<double>(phase1_cost + phase2_cost + result.penalties);
    if (params.stdp_tracing) result.tally = network.tally();
    return result;
}

}  // namespace memspike::sim
