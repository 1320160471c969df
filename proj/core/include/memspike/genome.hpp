#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memspike/devices.hpp"

namespace memspike::evo {

// Experiment condition: which synapse family the whole population uses.
enum class Condition : std::uint8_t { Mem, Rsm, Hp, Peo, Const };

std::string to_string(Condition c);
Condition condition_from_string(const std::string& s);

enum class Polarity : std::uint8_t { Excitatory, Inhibitory };

// Synapse kind carried by a connection gene. Hp/Peo are the static benchmark
// memristors (beta fixed at 1); VariableMemristor carries an evolvable
// (profile, beta); Rsm carries an evolvable s_n; Constant is a plain weight.
enum class SynapseKind : std::uint8_t { Hp, Peo, VariableMemristor, Rsm, Constant };

std::string to_string(SynapseKind k);
SynapseKind synapse_kind_from_string(const std::string& s);

constexpr bool is_memristor(SynapseKind k) {
    return k == SynapseKind::Hp || k == SynapseKind::Peo || k == SynapseKind::VariableMemristor;
}

// Fixed input/output arity: six sensors in, two motor neurons out.
constexpr int kInputCount = 6;
constexpr int kOutputCount = 2;

// Node id scheme, stable under hidden-layer growth:
//   inputs  0..5
//   outputs 6..7
//   hidden  8, 9, ... (8 + index into the hidden vector)
constexpr int input_id(int i) { return i; }
constexpr int output_id(int o) { return kInputCount + o; }
constexpr int hidden_id(int h) { return kInputCount + kOutputCount + h; }
constexpr bool is_input_id(int id) { return id >= 0 && id < kInputCount; }
constexpr bool is_output_id(int id) { return id >= kInputCount && id < kInputCount + kOutputCount; }
constexpr bool is_hidden_id(int id) { return id >= kInputCount + kOutputCount; }
constexpr int hidden_index(int id) { return id - kInputCount - kOutputCount; }

struct NeuronGene {
    Polarity polarity = Polarity::Excitatory;
};

struct ConnectionGene {
    int pre = 0;
    int post = 0;
    SynapseKind kind = SynapseKind::Constant;
    dev::Profile profile = dev::Profile::Hp;  // memristor kinds only
    double beta = 1.0;                        // memristor kinds only
    int s_n = 2;                              // Rsm only
    double weight = 0.0;
    bool enabled = true;
};

// Per-genome self-adaptive rates, each multiplied by exp(N(0,1)) at every
// reproduction and clamped to (rate floor, 1].
struct SelfAdaptiveParams {
    double mu = 0.1;     // per-allele mutation rate
    double psi = 0.1;    // node add/remove probability
    double omega = 0.5;  // node-add bias (removal with 1-omega)
    double tau = 0.1;    // connection toggle rate per feasible slot
    double iota = 0.1;   // variable-synapse parameter mutation rate
};

// Per-trial STDP bookkeeping, stored with the genome after evaluation so the
// sampling pipeline never has to re-run trials.
struct StdpTally {
    std::int64_t positive = 0;
    std::int64_t negative = 0;
    std::int64_t switches = 0;
    // switch / synapse counts keyed by s_n (index 0 unused below s_n_min)
    std::vector<std::int64_t> switches_by_sn;
    std::vector<std::int64_t> synapses_by_sn;
};

struct EvalRecord {
    double fitness = 0.0;
    bool solved = false;
    bool r1_reached = false;
    int phase1_steps = 0;
    int phase2_steps = 0;
    int penalties = 0;
    std::uint64_t trial_seed = 0;
    std::optional<StdpTally> tally;
};

struct Genome {
    std::vector<NeuronGene> hidden;
    std::vector<ConnectionGene> connections;  // kept in feasible-slot order
    SelfAdaptiveParams rates;
    std::uint64_t birth_generation = 0;
    std::optional<EvalRecord> eval;

    int hidden_count() const { return static_cast<int>(hidden.size()); }
    bool evaluated() const { return eval.has_value(); }
    double fitness() const;  // throws std::logic_error when unevaluated
};

// Number of feasible connection slots for a given hidden-layer size:
// input->hidden, ordered hidden->hidden (no self), hidden->output.
constexpr std::int64_t feasible_slot_count(int hidden_count) {
    const std::int64_t h = hidden_count;
    return kInputCount * h + h * (h - 1) + kOutputCount * h;
}

// Visits every feasible (pre, post) slot in the canonical order used for
// connection storage, toggling, and serialization.
template <typename Fn>
void for_each_slot(int hidden_count, Fn&& fn) {
    for (int i = 0; i < kInputCount; ++i)
        for (int h = 0; h < hidden_count; ++h) fn(input_id(i), hidden_id(h));
    for (int a = 0; a < hidden_count; ++a)
        for (int b = 0; b < hidden_count; ++b)
            if (a != b) fn(hidden_id(a), hidden_id(b));
    for (int h = 0; h < hidden_count; ++h)
        for (int o = 0; o < kOutputCount; ++o) fn(hidden_id(h), output_id(o));
}

// Canonical ordering key of a slot; smaller key = earlier in for_each_slot.
std::int64_t slot_key(int pre, int post, int hidden_count);

// Structural checks: endpoints reference live neurons, layer pairing is legal,
// no duplicate (pre, post), connections sorted by slot key, >= 1 hidden neuron.
// Returns an explanation for the first violation, or nullopt when valid.
std::optional<std::string> validate_genome(const Genome& genome);

// Statistics helpers used by population sampling.
int connected_hidden_count(const Genome& genome);
double connectivity_percent(const Genome& genome);

}  // namespace memspike::evo
