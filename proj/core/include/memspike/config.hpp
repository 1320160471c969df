#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memspike/errors.hpp"
#include "memspike/evolution.hpp"
#include "memspike/snn.hpp"
#include "memspike/tmaze.hpp"

namespace memspike::exp {

// Everything a run needs, JSON-serialisable. Every parameter that the models
// consume appears here so a stamped resolved_config.json reproduces the run.
struct ExperimentConfig {
    evo::Condition condition = evo::Condition::Mem;
    int generations = 1000;
    int repeats = 30;
    int sample_interval = 20;
    std::uint64_t seed = 1;
    int parallel = 1;
    bool trace = false;  // re-run each repeat's best genome and log its trajectory
    std::string output_dir = "out";

    evo::GaParams ga;
    snn::NeuronParams neuron;
    dev::MemristorParams device;
    sim::WorldParams world;

    sim::TrialParams trial_params() const {
        return {world, neuron, device, /*stdp_tracing=*/true, /*record_trajectory=*/false};
    }

    // Value constraints (positive counts, ordered ranges...); ConfigError on violation.
    void validate() const;
};

// Full-key JSON document with sorted keys; byte-stable for a given config.
std::string config_to_json_string(const ExperimentConfig& config);

// Parse from JSON text. Unknown keys are always rejected; when
// require_complete is set, every key must be present (used by
// validate-config), otherwise missing keys fall back to defaults.
ExperimentConfig config_from_json_string(const std::string& text, bool require_complete = false);

ExperimentConfig load_config_file(const std::string& path, bool require_complete = false);
void save_config_file(const ExperimentConfig& config, const std::string& path);

// Dotted-path overrides ("world.slip_prob=0.2", "ga.population_size=30")
// applied on top of an existing config. Unknown paths raise ConfigError.
ExperimentConfig apply_overrides(const ExperimentConfig& config,
                                 const std::vector<std::string>& overrides);

}  // namespace memspike::exp
