#include "memspike/genome.hpp"

#include <set>
#include <stdexcept>

namespace memspike::evo {

std::string to_string(Condition c) {
    switch (c) {
        case Condition::Mem: return "MEM";
        case Condition::Rsm: return "RSM";
        case Condition::Hp: return "HP";
        case Condition::Peo: return "PEO";
        case Condition::Const: return "CONST";
    }
    throw std::logic_error("bad condition");
}

Condition condition_from_string(const std::string& s) {
    if (s == "MEM") return Condition::Mem;
    if (s == "RSM") return Condition::Rsm;
    if (s == "HP") return Condition::Hp;
    if (s == "PEO") return Condition::Peo;
    if (s == "CONST") return Condition::Const;
    throw std::invalid_argument("unknown condition: " + s);
}

std::string to_string(SynapseKind k) {
    switch (k) {
        case SynapseKind::Hp: return "hp";
        case SynapseKind::Peo: return "peo_pani";
        case SynapseKind::VariableMemristor: return "variable_memristor";
        case SynapseKind::Rsm: return "rsm";
        case SynapseKind::Constant: return "constant";
    }
    throw std::logic_error("bad synapse kind");
}

SynapseKind synapse_kind_from_string(const std::string& s) {
    if (s == "hp") return SynapseKind::Hp;
    if (s == "peo_pani") return SynapseKind::Peo;
    if (s == "variable_memristor") return SynapseKind::VariableMemristor;
    if (s == "rsm") return SynapseKind::Rsm;
    if (s == "constant") return SynapseKind::Constant;
    throw std::invalid_argument("unknown synapse kind: " + s);
}

double Genome::fitness() const {
    if (!eval) throw std::logic_error("genome not evaluated");
    return eval->fitness;
}

std::int64_t slot_key(int pre, int post, int hidden_count) {
    const std::int64_t h = hidden_count;
    if (is_input_id(pre)) {
        return static_cast<std::int64_t>(pre) * h + hidden_index(post);
    }
    if (is_hidden_id(post)) {
        const std::int64_t a = hidden_index(pre);
        std::int64_t b = hidden_index(post);
        if (b > a) --b;  // skip the a==b hole
        return kInputCount * h + a * (h - 1) + b;
    }
    return kInputCount * h + h * (h - 1) +
           static_cast<std::int64_t>(hidden_index(pre)) * kOutputCount + (post - kInputCount);
}

namespace {

bool legal_endpoints(int pre, int post, int hidden_count) {
    const auto live_hidden = [hidden_count](int id) {
        return is_hidden_id(id) && hidden_index(id) < hidden_count;
    };
    if (pre == post) return false;
    if (is_input_id(pre) && live_hidden(post)) return true;
    if (live_hidden(pre) && live_hidden(post)) return true;
    if (live_hidden(pre) && is_output_id(post)) return true;
    return false;
}

}  // namespace

std::optional<std::string> validate_genome(const Genome& genome) {
    const int h = genome.hidden_count();
    if (h < 1) return "hidden layer is empty";
    std::set<std::pair<int, int>> seen;
    std::int64_t prev_key = -1;
    for (const auto& c : genome.connections) {
        if (!legal_endpoints(c.pre, c.post, h))
            return "illegal endpoints (" + std::to_string(c.pre) + ", " + std::to_string(c.post) + ")";
        if (!seen.emplace(c.pre, c.post).second)
            return "duplicate connection (" + std::to_string(c.pre) + ", " + std::to_string(c.post) + ")";
        const std::int64_t key = slot_key(c.pre, c.post, h);
        if (key <= prev_key) return "connections out of canonical order";
        prev_key = key;
    }
    return std::nullopt;
}

int connected_hidden_count(const Genome& genome) {
    std::vector<bool> touched(genome.hidden.size(), false);
    for (const auto& c : genome.connections) {
        if (!c.enabled) continue;
        if (is_hidden_id(c.pre)) touched[hidden_index(c.pre)] = true;
        if (is_hidden_id(c.post)) touched[hidden_index(c.post)] = true;
    }
    int n = 0;
    for (bool t : touched) n += t ? 1 : 0;
    return n;
}

double connectivity_percent(const Genome& genome) {
    const auto slots = feasible_slot_count(genome.hidden_count());
    if (slots == 0) return 0.0;
    std::int64_t enabled = 0;
    for (const auto& c : genome.connections) enabled += c.enabled ? 1 : 0;
    return 100.0 * static_cast<double>(enabled) / static_cast<double>(slots);
}

}  // namespace memspike::evo
