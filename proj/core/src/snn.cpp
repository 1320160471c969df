#include "memspike/snn.hpp"

#include <algorithm>
#include <stdexcept>

namespace memspike::snn {

using evo::SynapseKind;

std::string to_string(Action a) {
    switch (a) {
        case Action::Forward: return "forward";
        case Action::TurnLeft: return "turn_left";
        case Action::TurnRight: return "turn_right";
    }
    throw std::logic_error("bad action");
}

Action decode_action(int spikes_first, int spikes_second, int high_threshold) {
    const bool first_high = spikes_first >= high_threshold;
    const bool second_high = spikes_second >= high_threshold;
    if (first_high && !second_high) return Action::TurnLeft;
    if (!first_high && second_high) return Action::TurnRight;
    return Action::Forward;  // both high, or neither
}

Network::Network(const evo::Genome& genome, const NeuronParams& params,
                 const dev::MemristorParams& device_params)
    : params_(params), hidden_count_(genome.hidden_count()) {
    if (auto problem = evo::validate_genome(genome))
        throw std::invalid_argument("malformed genome: " + *problem);

    const int n = evo::kInputCount + evo::kOutputCount + hidden_count_;
    potential_.assign(n, params_.c);
    last_spike_.assign(n, 0);
    spiked_.assign(n, 0);
    polarity_sign_.assign(n, 1.0);
    for (int h = 0; h < hidden_count_; ++h)
        polarity_sign_[evo::hidden_id(h)] =
            genome.hidden[h].polarity == evo::Polarity::Inhibitory ? -1.0 : 1.0;

    int max_delay = 0;
    conns_.reserve(genome.connections.size());
    for (const auto& gene : genome.connections) {
        if (!gene.enabled) continue;
        Conn c{};
        c.pre = gene.pre;
        c.post = gene.post;
        c.delay = 0;
        if (evo::is_hidden_id(gene.pre) && evo::is_hidden_id(gene.post))
            c.delay = hidden_delay(evo::hidden_index(gene.pre), evo::hidden_index(gene.post));
        max_delay = std::max(max_delay, c.delay);
        c.sign = polarity_sign_[gene.pre];
        c.kind = gene.kind;
        c.model = -1;
        c.s_n = gene.s_n;
        c.s_c = 0;
        if (evo::is_memristor(gene.kind)) {
            models_.emplace_back(gene.profile, gene.beta, device_params);
            c.model = static_cast<int>(models_.size()) - 1;
            c.initial_q = models_.back().charge_from_weight(gene.weight);
            c.initial_w = models_.back().weight_from_charge(c.initial_q);
        } else if (gene.kind == SynapseKind::Rsm) {
            c.initial_w = dev::kRsmLowResistanceWeight;
            c.initial_q = 0.0;
        } else {
            c.initial_w = gene.weight;
            c.initial_q = 0.0;
        }
        c.w = c.initial_w;
        c.q = c.initial_q;
        conns_.push_back(c);
    }

    outgoing_.assign(n, {});
    for (int i = 0; i < static_cast<int>(conns_.size()); ++i)
        outgoing_[conns_[i].pre].push_back(i);

    wheel_size_ = max_delay + 2;
    wheel_.assign(static_cast<std::size_t>(wheel_size_) * n, 0.0);
    reset();
}

void Network::reset() {
    std::fill(potential_.begin(), potential_.end(), params_.c);
    std::fill(last_spike_.begin(), last_spike_.end(), 0);
    std::fill(spiked_.begin(), spiked_.end(), 0);
    std::fill(wheel_.begin(), wheel_.end(), 0.0);
    window_.fill(0);
    global_step_ = 0;
    tally_ = evo::StdpTally{};
    for (auto& c : conns_) {
        c.w = c.initial_w;
        c.q = c.initial_q;
        c.s_c = 0;
        if (c.kind == SynapseKind::Rsm) {
            if (c.s_n >= static_cast<int>(tally_.synapses_by_sn.size()))
                tally_.synapses_by_sn.resize(c.s_n + 1, 0);
            ++tally_.synapses_by_sn[c.s_n];
        }
    }
}

void Network::integrate_and_fire(const std::array<double, evo::kInputCount>& sensors) {
    const int n = neuron_count();
    const std::size_t slot = static_cast<std::size_t>(global_step_ % wheel_size_) * n;
    for (int i = 0; i < n; ++i) {
        const double input = i < evo::kInputCount ? sensors[i] : wheel_[slot + i];
        wheel_[slot + i] = 0.0;
        double y = lif_update(potential_[i], input, params_);
        if (y > params_.theta_y) {
            y = params_.c;
            last_spike_[i] = params_.ls_on_spike;
            spiked_[i] = 1;
        } else {
            spiked_[i] = 0;
        }
        potential_[i] = y;
    }

    for (int i = 0; i < n; ++i) {
        if (!spiked_[i]) continue;
        if (evo::is_output_id(i)) ++window_[i - evo::kInputCount];
        for (int ci : outgoing_[i]) {
            const Conn& c = conns_[ci];
            const std::uint64_t arrival = global_step_ + 1 + static_cast<std::uint64_t>(c.delay);
            wheel_[static_cast<std::size_t>(arrival % wheel_size_) * n + c.post] += c.sign * c.w;
        }
    }
}

void Network::apply_stdp() {
    for (auto& c : conns_) {
        if (c.kind == SynapseKind::Constant) continue;
        const StdpEvent event =
            detect_stdp_event(last_spike_[c.pre], last_spike_[c.post], params_.theta_ls);
        if (c.kind == SynapseKind::Rsm) {
            // Polarity-insensitive: only event/no-event reaches the device.
            dev::RsmState state{c.s_n, c.s_c, c.w};
            const bool switched = state.step(event != StdpEvent::None);
            c.s_c = state.s_c;
            c.w = state.w;
            if (switched && tally_enabled_) {
                ++tally_.switches;
                if (c.s_n >= static_cast<int>(tally_.switches_by_sn.size()))
                    tally_.switches_by_sn.resize(c.s_n + 1, 0);
                ++tally_.switches_by_sn[c.s_n];
            }
            continue;
        }
        if (event == StdpEvent::None) continue;
        const auto direction = event == StdpEvent::Positive ? dev::StdpDirection::Positive
                                                            : dev::StdpDirection::Negative;
        const auto& model = models_[c.model];
        c.q = model.step_charge(c.q, direction);
        c.w = model.weight_from_charge(c.q);
        if (tally_enabled_) {
            if (event == StdpEvent::Positive)
                ++tally_.positive;
            else
                ++tally_.negative;
        }
    }
}

void Network::run_step(const std::array<double, evo::kInputCount>& sensors) {
    integrate_and_fire(sensors);
    apply_stdp();
    for (auto& ls : last_spike_)
        if (ls > 0) --ls;
    ++global_step_;
}

Action Network::run_timestep(const std::array<double, evo::kInputCount>& sensors) {
    for (int step = 0; step < params_.steps_per_timestep; ++step) run_step(sensors);
    const Action action = decode_action(window_[0], window_[1], params_.high_threshold);
    window_.fill(0);
    return action;
}

Network::ConnectionView Network::connection(int index) const {
    const Conn& c = conns_[index];
    return {c.pre, c.post, c.delay, c.kind, c.w, c.q, c.s_n, c.s_c};
}

}  // namespace memspike::snn
