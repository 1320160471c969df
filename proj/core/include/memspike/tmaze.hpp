#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "memspike/devices.hpp"
#include "memspike/genome.hpp"
#include "memspike/rng.hpp"
#include "memspike/snn.hpp"

namespace memspike::sim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// T-maze geometry and robot/sensor constants. The arena spans [-1,1]^2 with
// 1 unit = 1 m; the vertical corridor carries the start zone at its foot and
// the crossbar carries reward zones R1 (left end) and R2 (right end).
struct WorldParams {
    double corridor_width = 0.5;
    double arm_base_y = 0.5;  // crossbar spans [arm_base_y, 1]
    double start_zone_side = 0.3;
    double reward_zone_side = 0.3;
    double light_x = 0.5;
    double light_y = 1.0;

    double robot_radius = 0.055;
    double step_displacement = 0.01;  // full wheel travel per 64 ms timestep
    double wheel_separation = 0.11;

    std::array<double, 3> sensor_bearings_deg{-90.0, 0.0, 90.0};
    double ir_range = 0.05;
    double light_ref_distance = 0.1;  // fully-illuminated radius
    double light_noise = 0.10;
    double ir_noise = 0.02;
    double light_raw_min = 8.0;    // fully illuminated
    double light_raw_max = 500.0;  // no light
    double ir_raw_max = 1023.0;    // object at contact
    double bump_tolerance = 0.005;

    double slip_prob = 0.1;

    int phase_budget = 4000;  // timesteps per phase
    int bump_penalty = 10;
    double reverse_distance = 0.1;  // 10 cm
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians, counter-clockwise, 0 = +x
};

enum class Phase : std::uint8_t { SeekR1, SeekR2 };

// Wall geometry and zone queries for the T-shaped arena.
class Arena {
public:
    explicit Arena(const WorldParams& params);

    bool inside(double x, double y) const;
    double boundary_distance(double x, double y) const;
    Vec2 nearest_boundary_point(double x, double y) const;
    // True when a disc of the given radius fits entirely inside the walls.
    bool fits(double x, double y, double radius) const;
    // Distance from (ox, oy) along the unit direction (dx, dy) to the first
    // wall, or +infinity when the ray escapes (cannot happen from inside).
    double ray_hit(double ox, double oy, double dx, double dy) const;

    bool in_start(double x, double y) const;
    bool in_r1(double x, double y) const;
    bool in_r2(double x, double y) const;
    Pose start_pose() const;  // centre of the start zone, facing north

    using Segment = std::array<Vec2, 2>;
    const std::vector<Segment>& segments() const { return segments_; }

private:
    struct Rect {
        double x0, y0, x1, y1;
        bool contains(double x, double y) const {
            return x >= x0 && x <= x1 && y >= y0 && y <= y1;
        }
    };

    WorldParams params_;
    Rect corridor_;
    Rect crossbar_;
    Rect start_;
    Rect r1_;
    Rect r2_;
    std::vector<Segment> segments_;
};

struct SensorReading {
    // Scaled to [0,1], 1 = highly activated:
    // [light -90deg, light 0deg, light +90deg, IR -90deg, IR 0deg, IR +90deg]
    std::array<double, evo::kInputCount> values{};
    bool bump_left = false;
    bool bump_right = false;
};

// Light (inverse-square, cosine incidence) and IR (ray distance to wall)
// readings with multiplicative uniform noise, plus front bump-cone contacts.
SensorReading sense(const Arena& arena, const WorldParams& params, const Pose& pose,
                    rng::Stream& stream);

// One differential-drive timestep with wheel slip and sliding collision
// resolution. TurnLeft/TurnRight halve the left/right wheel respectively.
Pose act(const Arena& arena, const WorldParams& params, const Pose& pose, snn::Action action,
         rng::Stream& stream);

// Bump interrupt: back straight up by reverse_distance, truncated at walls.
Pose reverse_from_bump(const Arena& arena, const WorldParams& params, const Pose& pose);

struct TrialParams {
    WorldParams world;
    snn::NeuronParams neuron;
    dev::MemristorParams device;
    bool stdp_tracing = true;
    bool record_trajectory = false;
};

struct TrajectoryPoint {
    int timestep;
    double x;
    double y;
    double heading;
    snn::Action action;
    Phase phase;
    bool bump;
};

struct TrialResult {
    double fitness = 0.0;
    bool solved = false;
    bool r1_reached = false;
    int phase1_steps = 0;
    int phase2_steps = 0;
    int penalties = 0;
    int bumps = 0;
    std::optional<evo::StdpTally> tally;
    std::vector<TrajectoryPoint> trajectory;
};

// Two-phase T-maze trial. The network is reset once at the start; on R1 entry
// the robot is re-placed at the start pose with all network state carried
// over. Fitness = timesteps used by both phases (a failed phase consumes its
// full budget) plus bump penalties.
TrialResult run_trial(const evo::Genome& genome, const TrialParams& params, std::uint64_t seed);

}  // namespace memspike::sim
