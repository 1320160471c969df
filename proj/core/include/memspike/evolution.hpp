#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "memspike/genome.hpp"
#include "memspike/rng.hpp"

namespace memspike::evo {

// GA constants. Initial-rate ranges, device parameter ranges, and structural
// probabilities; everything here is config-overridable.
struct GaParams {
    int population_size = 100;
    int initial_hidden = 9;
    double mu_init_max = 0.25;
    double psi_init_max = 0.5;
    double omega_init_max = 1.0;
    double tau_init_max = 0.25;
    double iota_init_max = 0.25;
    double rate_floor = 1e-6;
    double weight_perturb_range = 0.1;  // constant connections only
    double beta_min = 1.0;
    double beta_max_hp = 101.0;
    double beta_max_peo = 100.0;
    double beta_delta = 19.9;  // 10% of the combined beta range (199)
    int sn_min = 2;
    int sn_max = 6;
    double connect_prob = 0.5;
    double excitatory_prob = 0.5;
    double mem_init_weight = 0.5;
};

// Multiplicative rate adaptation: value * exp(N(0,1)), clamped to (floor, 1].
double self_adapt(double value, rng::Stream& stream, double floor = 1e-6);

// The combined beta scale joins both profile families on one axis:
// HP occupies [1, 101] (combined = beta), PEO-PANI occupies (101, 201]
// (combined = 101 + beta). Crossing 101 switches profile with the overflow
// carried over; the outer walls reflect.
double combined_beta(dev::Profile profile, double beta, const GaParams& params = {});

struct BetaPoint {
    dev::Profile profile;
    double beta;
};
BetaPoint beta_from_combined(double combined, const GaParams& params = {});

// One variable-memristor mutation: +/- beta_delta on the combined scale.
BetaPoint mutate_beta(dev::Profile profile, double beta, rng::Stream& stream,
                      const GaParams& params = {});

// Fresh connection gene for a slot, synapse family fixed by the condition.
ConnectionGene make_connection(int pre, int post, Condition condition, const GaParams& params,
                               rng::Stream& stream);

// Unevaluated random genome: initial_hidden neurons, each feasible slot
// connected with connect_prob, self-adaptive rates drawn from their ranges.
Genome random_genome(Condition condition, const GaParams& params, rng::Stream& stream);

// Copy the parent, self-adapt all five rates, then mutate with the new rates:
// polarity flips (mu), weight perturbation (mu, constant connections only),
// variable-synapse parameters (iota), node add/remove (psi/omega), and
// per-slot connection toggling (tau). The offspring is unevaluated.
Genome mutate(const Genome& parent, Condition condition, const GaParams& params,
              rng::Stream& stream, std::uint64_t birth_generation);

struct Population {
    std::vector<Genome> genomes;
    std::uint64_t generation = 0;
};

// Fills in the eval record for one genome. `generation` and `index` identify
// the trial for seed derivation.
using Evaluator =
    std::function<EvalRecord(const Genome&, std::uint64_t generation, std::uint64_t index)>;

// Fitness-proportionate selection under minimisation: roulette on 1/f.
// Draws are independent and may repeat. Throws std::logic_error if any genome
// is unevaluated.
std::pair<int, int> select_parents(const Population& population, rng::Stream& stream);

// One steady-state generation: two parents, two evaluated offspring inserted,
// the two worst genomes removed (ties: older first, then lower index).
void evolve_generation(Population& population, Condition condition, const GaParams& params,
                       const Evaluator& evaluator, std::uint64_t master_seed,
                       std::uint64_t repeat, int parallelism = 1);

// population_size random genomes, each evaluated once.
Population init_population(Condition condition, const GaParams& params,
                           const Evaluator& evaluator, std::uint64_t master_seed,
                           std::uint64_t repeat, int parallelism = 1);

}  // namespace memspike::evo
