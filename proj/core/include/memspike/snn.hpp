#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "memspike/devices.hpp"
#include "memspike/genome.hpp"

namespace memspike::snn {

// Leaky integrate-and-fire constants plus the discrete STDP thresholds.
struct NeuronParams {
    double a = 0.3;        // constant drive
    double b = 0.05;       // leak
    double c = 0.0;        // reset potential
    double theta_y = 1.0;  // spike threshold (strict)
    int ls_on_spike = 3;   // last-spike value set when a neuron fires
    int theta_ls = 4;      // STDP threshold on ls_pre + ls_post (strict)
    int steps_per_timestep = 21;
    int high_threshold = 11;  // spikes in the window for a High output
};

enum class Action : std::uint8_t { Forward, TurnLeft, TurnRight };

std::string to_string(Action a);

// One membrane update: y' = y + (I + a - b y), floored at zero afterwards.
// The spike test (strict > theta_y) is the caller's job.
inline double lif_update(double y, double input, const NeuronParams& p) {
    const double next = y + input + p.a - p.b * y;
    return next < 0.0 ? 0.0 : next;
}

enum class StdpEvent : std::uint8_t { None, Positive, Negative };

// Discrete STDP detector on the two last-spike waveforms. An event needs the
// summed values to exceed theta_ls and the values to differ; the more recent
// (larger) side sets the direction, potentiating when the postsynaptic neuron
// fired after the presynaptic one.
inline StdpEvent detect_stdp_event(int ls_pre, int ls_post, int theta_ls) {
    if (ls_pre + ls_post <= theta_ls || ls_pre == ls_post) return StdpEvent::None;
    return ls_post > ls_pre ? StdpEvent::Positive : StdpEvent::Negative;
}

// Extra propagation delay between two hidden neurons: the number of neurons
// strictly between them in hidden-layer order (adjacent neurons add none).
inline int hidden_delay(int pre_index, int post_index) {
    const int gap = pre_index > post_index ? pre_index - post_index : post_index - pre_index;
    return gap > 1 ? gap - 1 : 0;
}

Action decode_action(int spikes_first, int spikes_second, int high_threshold);

// Executable network instantiated from a genome. State is confined to the
// instance; distinct instances may run concurrently.
class Network {
public:
    Network(const evo::Genome& genome, const NeuronParams& params,
            const dev::MemristorParams& device_params = {});

    // Back to the pre-trial state: membrane potentials at c, last-spike values
    // zero, delay queues and output windows empty, memristors at their genome
    // weight, RSMs in the LRS with cleared counters. Constants untouched.
    void reset();

    // 21 steps of processing for one sensor frame, returning the decoded action.
    Action run_timestep(const std::array<double, evo::kInputCount>& sensors);

    // Single processing step; run_timestep is a loop over these plus decoding.
    void run_step(const std::array<double, evo::kInputCount>& sensors);

    int neuron_count() const { return static_cast<int>(potential_.size()); }
    int hidden_count() const { return hidden_count_; }
    double potential(int id) const { return potential_[id]; }
    int last_spike(int id) const { return last_spike_[id]; }
    bool spiked_last_step(int id) const { return spiked_[id] != 0; }
    int window_count(int output_index) const { return window_[output_index]; }
    std::uint64_t global_step() const { return global_step_; }

    struct ConnectionView {
        int pre;
        int post;
        int delay;
        evo::SynapseKind kind;
        double weight;
        double charge;  // memristor kinds
        int s_n;        // RSM
        int s_c;        // RSM
    };
    int connection_count() const { return static_cast<int>(conns_.size()); }
    ConnectionView connection(int index) const;

    const evo::StdpTally& tally() const { return tally_; }
    void set_tally_enabled(bool enabled) { tally_enabled_ = enabled; }
    bool tally_enabled() const { return tally_enabled_; }

private:
    struct Conn {
        int pre;
        int post;
        int delay;
        double sign;  // presynaptic polarity
        evo::SynapseKind kind;
        double w;
        double q;
        double initial_w;
        double initial_q;
        int model;  // index into models_, memristor kinds only
        int s_n;
        int s_c;
    };

    void integrate_and_fire(const std::array<double, evo::kInputCount>& sensors);
    void apply_stdp();

    NeuronParams params_;
    int hidden_count_;
    std::vector<double> potential_;
    std::vector<int> last_spike_;
    std::vector<double> polarity_sign_;
    std::vector<std::uint8_t> spiked_;
    std::vector<Conn> conns_;
    std::vector<dev::MemristorModel> models_;
    std::vector<std::vector<int>> outgoing_;
    int wheel_size_;
    std::vector<double> wheel_;  // wheel_size_ x neuron_count, slot-major
    std::uint64_t global_step_ = 0;
    std::array<int, evo::kOutputCount> window_{};
    evo::StdpTally tally_;
    bool tally_enabled_ = true;
};

}  // namespace memspike::snn
