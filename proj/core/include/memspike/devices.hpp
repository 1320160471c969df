#pragma once

#include <cstdint>
#include <vector>

namespace memspike::dev {

// Conductance profile family of a memristive synapse. Hp follows the
// titanium-dioxide two-resistor model (convex weight curve, most sensitive
// near full conductance); PeoPani is the polymer device recreated in the same
// terms (concave curve, most sensitive near minimum conductance).
enum class Profile : std::uint8_t { Hp, PeoPani };

enum class StdpDirection : std::uint8_t { Positive, Negative };

// Shared device constants. All weights produced by the charge map live in
// [0.01, 1.0]; beta steepens/compresses the profile and shrinks q_max.
struct MemristorParams {
    double r_on = 0.01;
    double r_off = 1.0;
    double q_min = 0.0098;
    int big_l = 1000;  // STDP events from fully resistive to fully conductive
};

// Charge<->weight map for one (profile, beta) pair with the scale factors
// precomputed. beta must be positive; initialisation draws keep it >= 1 but
// profile mutation may walk a PEO-PANI device slightly below that.
class MemristorModel {
public:
    MemristorModel(Profile profile, double beta, const MemristorParams& params = {});

    // Strictly increasing on [q_min, q_max]; w(q_min)=0.01, w(q_max)=1.0.
    // Throws std::domain_error outside the charge range.
    double weight_from_charge(double q) const;

    // Exact inverse of weight_from_charge on [0.01, 1.0].
    // Throws std::domain_error outside the weight range.
    double charge_from_weight(double w) const;

    // One STDP event: charge moves by delta_q in the given direction,
    // saturating silently at the endpoints.
    double step_charge(double q, StdpDirection direction) const;

    double q_min() const { return params_.q_min; }
    double q_max() const { return q_max_; }
    double delta_q() const { return delta_q_; }
    Profile profile() const { return profile_; }
    double beta() const { return beta_; }

private:
    double conductance(double q) const;

    Profile profile_;
    double beta_;
    MemristorParams params_;
    double q_max_;
    double sf1_;
    double sf2_;
    double delta_q_;
};

// Convenience wrappers around a throwaway model.
double memristor_weight_from_charge(double q, double beta, Profile profile,
                                    const MemristorParams& params = {});
double memristor_charge_from_weight(double w, double beta, Profile profile,
                                    const MemristorParams& params = {});
double memristor_q_max(double beta, const MemristorParams& params = {});
double memristor_delta_q(double beta, const MemristorParams& params = {});

// Analogue memristive synapse state; w is always the map applied to q.
struct MemristorState {
    double q = 0.0;
    double w = 0.0;

    static MemristorState at_weight(const MemristorModel& model, double w);
    void apply_stdp(const MemristorModel& model, StdpDirection direction);
};

constexpr double kRsmLowResistanceWeight = 0.9;   // LRS
constexpr double kRsmHighResistanceWeight = 0.1;  // HRS

// Bistable resistive switch. s_c counts consecutive STDP events; on reaching
// s_n the weight toggles between LRS and HRS and the counter clears. A step
// without an event decays the counter towards zero.
struct RsmState {
    int s_n = 2;
    int s_c = 0;
    double w = kRsmLowResistanceWeight;

    // Returns true when this step toggled the resistance state.
    bool step(bool event_occurred);
};

inline bool RsmState::step(bool event_occurred) {
    if (!event_occurred) {
        if (s_c > 0) --s_c;
        return false;
    }
    if (++s_c < s_n) return false;
    w = (w == kRsmLowResistanceWeight) ? kRsmHighResistanceWeight : kRsmLowResistanceWeight;
    s_c = 0;
    return true;
}

// Non-plastic connection; STDP never touches it.
struct ConstantState {
    double w = 0.0;
};

enum class SweepKind : std::uint8_t { Hp, PeoPani, Rsm };

struct SweepPoint {
    int event_index;
    double weight;
};

// Weight trajectory under a constant event drive: n_events positive STDP
// events from q_min for memristors, n_events consecutive STDP events from the
// LRS for an RSM. Row 0 is the initial state. device_param is beta for
// memristors and s_n for the RSM.
std::vector<SweepPoint> profile_sweep(SweepKind kind, double device_param, int n_events,
                                      const MemristorParams& params = {});

}  // namespace memspike::dev
