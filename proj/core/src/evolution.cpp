#include "memspike/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "memspike/parallel.hpp"

namespace memspike::evo {

double self_adapt(double value, rng::Stream& stream, double floor) {
    const double adapted = value * std::exp(stream.normal());
    return std::clamp(adapted, floor, 1.0);
}

double combined_beta(dev::Profile profile, double beta, const GaParams& params) {
    return profile == dev::Profile::Hp ? beta : params.beta_max_hp + beta;
}

BetaPoint beta_from_combined(double combined, const GaParams& params) {
    if (combined <= params.beta_max_hp) return {dev::Profile::Hp, combined};
    return {dev::Profile::PeoPani, combined - params.beta_max_hp};
}

BetaPoint mutate_beta(dev::Profile profile, double beta, rng::Stream& stream,
                      const GaParams& params) {
    const double delta = stream.bernoulli(0.5) ? params.beta_delta : -params.beta_delta;
    const double lo = params.beta_min;
    const double hi = params.beta_max_hp + params.beta_max_peo;
    double combined = combined_beta(profile, beta, params) + delta;
    while (combined < lo || combined > hi) {
        if (combined < lo) combined = 2.0 * lo - combined;
        if (combined > hi) combined = 2.0 * hi - combined;
    }
    return beta_from_combined(combined, params);
}

ConnectionGene make_connection(int pre, int post, Condition condition, const GaParams& params,
                               rng::Stream& stream) {
    ConnectionGene gene;
    gene.pre = pre;
    gene.post = post;
    gene.enabled = true;
    switch (condition) {
        case Condition::Const:
            gene.kind = SynapseKind::Constant;
            gene.weight = stream.uniform(0.0, 1.0);
            break;
        case Condition::Hp:
            gene.kind = SynapseKind::Hp;
            gene.profile = dev::Profile::Hp;
            gene.beta = 1.0;
            gene.weight = params.mem_init_weight;
            break;
        case Condition::Peo:
            gene.kind = SynapseKind::Peo;
            gene.profile = dev::Profile::PeoPani;
            gene.beta = 1.0;
            gene.weight = params.mem_init_weight;
            break;
        case Condition::Mem: {
            gene.kind = SynapseKind::VariableMemristor;
            gene.profile = stream.bernoulli(0.5) ? dev::Profile::Hp : dev::Profile::PeoPani;
            const double beta_max =
                gene.profile == dev::Profile::Hp ? params.beta_max_hp : params.beta_max_peo;
            gene.beta = stream.uniform(params.beta_min, beta_max);
            gene.weight = params.mem_init_weight;
            break;
        }
        case Condition::Rsm:
            gene.kind = SynapseKind::Rsm;
            gene.s_n = static_cast<int>(stream.uniform_int(params.sn_min, params.sn_max));
            gene.weight = dev::kRsmLowResistanceWeight;
            break;
    }
    return gene;
}

namespace {

Polarity draw_polarity(rng::Stream& stream, const GaParams& params) {
    return stream.bernoulli(params.excitatory_prob) ? Polarity::Excitatory : Polarity::Inhibitory;
}

void sort_connections(Genome& genome) {
    const int h = genome.hidden_count();
    std::sort(genome.connections.begin(), genome.connections.end(),
              [h](const ConnectionGene& a, const ConnectionGene& b) {
                  return slot_key(a.pre, a.post, h) < slot_key(b.pre, b.post, h);
              });
}

// Appends a hidden neuron; each feasible slot touching it is connected with
// probability connect_prob, visited in canonical slot order.
void add_hidden_neuron(Genome& genome, Condition condition, const GaParams& params,
                       rng::Stream& stream) {
    genome.hidden.push_back({draw_polarity(stream, params)});
    const int new_id = hidden_id(genome.hidden_count() - 1);
    for_each_slot(genome.hidden_count(), [&](int pre, int post) {
        if (pre != new_id && post != new_id) return;
        if (stream.bernoulli(params.connect_prob))
            genome.connections.push_back(make_connection(pre, post, condition, params, stream));
    });
    sort_connections(genome);
}

// Removes the hidden neuron at `index` together with its connections,
// renumbering the hidden ids above it.
void remove_hidden_neuron(Genome& genome, int index) {
    const int removed_id = hidden_id(index);
    genome.hidden.erase(genome.hidden.begin() + index);
    std::erase_if(genome.connections, [removed_id](const ConnectionGene& c) {
        return c.pre == removed_id || c.post == removed_id;
    });
    for (auto& c : genome.connections) {
        if (is_hidden_id(c.pre) && c.pre > removed_id) --c.pre;
        if (is_hidden_id(c.post) && c.post > removed_id) --c.post;
    }
    sort_connections(genome);
}

// Connection Selection: every feasible slot flips its occupancy with
// probability tau. Walks the sorted gene vector and the slot enumeration in
// lockstep so exactly one Bernoulli draw happens per slot.
void toggle_connections(Genome& genome, Condition condition, const GaParams& params,
                        double tau, rng::Stream& stream) {
    std::vector<ConnectionGene> kept;
    kept.reserve(genome.connections.size());
    std::size_t cursor = 0;
    for_each_slot(genome.hidden_count(), [&](int pre, int post) {
        const bool occupied = cursor < genome.connections.size() &&
                              genome.connections[cursor].pre == pre &&
                              genome.connections[cursor].post == post;
        const bool toggle = stream.bernoulli(tau);
        if (occupied) {
            if (!toggle) kept.push_back(genome.connections[cursor]);
            ++cursor;
        } else if (toggle) {
            kept.push_back(make_connection(pre, post, condition, params, stream));
        }
    });
    genome.connections = std::move(kept);
}

}  // namespace

Genome random_genome(Condition condition, const GaParams& params, rng::Stream& stream) {
    Genome genome;
    genome.hidden.reserve(params.initial_hidden);
    for (int i = 0; i < params.initial_hidden; ++i)
        genome.hidden.push_back({draw_polarity(stream, params)});
    for_each_slot(genome.hidden_count(), [&](int pre, int post) {
        if (stream.bernoulli(params.connect_prob))
            genome.connections.push_back(make_connection(pre, post, condition, params, stream));
    });
    auto& r = genome.rates;
    r.mu = std::max(params.rate_floor, stream.uniform(0.0, params.mu_init_max));
    r.psi = std::max(params.rate_floor, stream.uniform(0.0, params.psi_init_max));
    r.omega = std::max(params.rate_floor, stream.uniform(0.0, params.omega_init_max));
    r.tau = std::max(params.rate_floor, stream.uniform(0.0, params.tau_init_max));
    r.iota = std::max(params.rate_floor, stream.uniform(0.0, params.iota_init_max));
    return genome;
}

Genome mutate(const Genome& parent, Condition condition, const GaParams& params,
              rng::Stream& stream, std::uint64_t birth_generation) {
    Genome child = parent;
    child.eval.reset();
    child.birth_generation = birth_generation;

    auto& r = child.rates;
    r.mu = self_adapt(r.mu, stream, params.rate_floor);
    r.psi = self_adapt(r.psi, stream, params.rate_floor);
    r.omega = self_adapt(r.omega, stream, params.rate_floor);
    r.tau = self_adapt(r.tau, stream, params.rate_floor);
    r.iota = self_adapt(r.iota, stream, params.rate_floor);

    for (auto& neuron : child.hidden) {
        if (stream.bernoulli(r.mu))
            neuron.polarity = neuron.polarity == Polarity::Excitatory ? Polarity::Inhibitory
                                                                      : Polarity::Excitatory;
    }

    if (condition == Condition::Const) {
        for (auto& c : child.connections) {
            if (stream.bernoulli(r.mu)) {
                const double delta =
                    stream.uniform(-params.weight_perturb_range, params.weight_perturb_range);
                c.weight = std::clamp(c.weight + delta, 0.0, 1.0);
            }
        }
    }

    if (condition == Condition::Mem) {
        for (auto& c : child.connections) {
            if (stream.bernoulli(r.iota)) {
                const auto point = mutate_beta(c.profile, c.beta, stream, params);
                c.profile = point.profile;
                c.beta = point.beta;
            }
        }
    } else if (condition == Condition::Rsm) {
        for (auto& c : child.connections) {
            if (stream.bernoulli(r.iota)) {
                const int step = stream.bernoulli(0.5) ? 1 : -1;
                c.s_n = std::clamp(c.s_n + step, params.sn_min, params.sn_max);
            }
        }
    }

    if (stream.bernoulli(r.psi)) {
        if (stream.bernoulli(r.omega)) {
            add_hidden_neuron(child, condition, params, stream);
        } else if (child.hidden_count() > 1) {
            const int index = static_cast<int>(stream.uniform_int(0, child.hidden_count() - 1));
            remove_hidden_neuron(child, index);
        }
    }

    toggle_connections(child, condition, params, r.tau, stream);
    return child;
}

std::pair<int, int> select_parents(const Population& population, rng::Stream& stream) {
    if (population.genomes.empty()) throw std::logic_error("empty population");
    double total = 0.0;
    for (const auto& g : population.genomes) total += 1.0 / g.fitness();

    const auto draw = [&]() {
        const double target = stream.uniform() * total;
        double acc = 0.0;
        for (int i = 0; i < static_cast<int>(population.genomes.size()); ++i) {
            acc += 1.0 / population.genomes[i].fitness();
            if (acc > target) return i;
        }
        return static_cast<int>(population.genomes.size()) - 1;
    };
    const int first = draw();
    const int second = draw();
    return {first, second};
}

void evolve_generation(Population& population, Condition condition, const GaParams& params,
                       const Evaluator& evaluator, std::uint64_t master_seed,
                       std::uint64_t repeat, int parallelism) {
    const std::uint64_t next_generation = population.generation + 1;

    auto select_stream =
        rng::derive_stream(master_seed, repeat, rng::Role::Select, next_generation, 0);
    const auto parents = select_parents(population, select_stream);

    std::array<Genome, 2> offspring;
    const std::array<int, 2> parent_index{parents.first, parents.second};
    for (int k = 0; k < 2; ++k) {
        auto mutate_stream =
            rng::derive_stream(master_seed, repeat, rng::Role::Mutate, next_generation, k);
        offspring[k] = mutate(population.genomes[parent_index[k]], condition, params,
                              mutate_stream, next_generation);
    }
    util::parallel_for(2, parallelism, [&](std::int64_t k) {
        offspring[k].eval = evaluator(offspring[k], next_generation, static_cast<std::uint64_t>(k));
    });

    auto& genomes = population.genomes;
    genomes.push_back(std::move(offspring[0]));
    genomes.push_back(std::move(offspring[1]));

    // Delete the two worst; ties resolved towards older genomes, then lower index.
    for (int round = 0; round < 2; ++round) {
        int worst = 0;
        for (int i = 1; i < static_cast<int>(genomes.size()); ++i) {
            const double fi = genomes[i].fitness();
            const double fw = genomes[worst].fitness();
            if (fi > fw ||
                (fi == fw && genomes[i].birth_generation < genomes[worst].birth_generation))
                worst = i;
        }
        genomes.erase(genomes.begin() + worst);
    }
    population.generation = next_generation;
}

Population init_population(Condition condition, const GaParams& params,
                           const Evaluator& evaluator, std::uint64_t master_seed,
                           std::uint64_t repeat, int parallelism) {
    Population population;
    population.generation = 0;
    population.genomes.resize(params.population_size);
    for (int i = 0; i < params.population_size; ++i) {
        auto stream = rng::derive_stream(master_seed, repeat, rng::Role::InitGenome, 0,
                                         static_cast<std::uint64_t>(i));
        population.genomes[i] = random_genome(condition, params, stream);
    }
    util::parallel_for(params.population_size, parallelism, [&](std::int64_t i) {
        population.genomes[i].eval =
            evaluator(population.genomes[i], 0, static_cast<std::uint64_t>(i));
    });
    return population;
}

}  // namespace memspike::evo
