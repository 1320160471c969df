#include "memspike/devices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memspike::dev {

namespace {

double rsm_initial_weight() { return kRsmLowResistanceWeight; }

}  // namespace

MemristorModel::MemristorModel(Profile profile, double beta, const MemristorParams& params)
    : profile_(profile), beta_(beta), params_(params) {
    if (!(beta > 0.0)) throw std::domain_error("memristor beta must be positive");
    if (!(params_.r_on < params_.r_off) || !(params_.q_min > 0.0) || params_.big_l < 1)
        throw std::domain_error("invalid memristor parameters");

    // q_max makes the Hp memristance hit R_on, i.e. full conductance.
    q_max_ = (params_.r_on - params_.r_off) / (-params_.r_on * params_.r_off * beta_);
    if (!(q_max_ > params_.q_min)) throw std::domain_error("q_max must exceed q_min");

    const double g_qmin = conductance(params_.q_min);
    const double g_qmax = conductance(q_max_);
    sf1_ = 0.99 / (g_qmax - g_qmin);
    sf2_ = g_qmin * sf1_ - 0.01;
    delta_q_ = (q_max_ - params_.q_min) / static_cast<double>(params_.big_l);
}

double MemristorModel::conductance(double q) const {
    const double r_on = params_.r_on;
    const double r_off = params_.r_off;
    if (profile_ == Profile::Hp) {
        // M = -R_off R_on beta q + R_off, G = 1/M
        return 1.0 / (-r_off * r_on * beta_ * q + r_off);
    }
    // PEO-PANI: G = 1/(-R_off R_on beta q - R_on) + R_on
    return 1.0 / (-r_off * r_on * beta_ * q - r_on) + r_on;
}

double MemristorModel::weight_from_charge(double q) const {
    if (q < params_.q_min || q > q_max_)
        throw std::domain_error("charge outside [q_min, q_max]: " + std::to_string(q));
    return conductance(q) * sf1_ - sf2_;
}

double MemristorModel::charge_from_weight(double w) const {
    if (w < 0.01 || w > 1.0)
        throw std::domain_error("weight outside [0.01, 1.0]: " + std::to_string(w));
    const double r_on = params_.r_on;
    const double r_off = params_.r_off;
    const double g = (w + sf2_) / sf1_;
    if (profile_ == Profile::Hp) {
        return (1.0 / g - r_off) / (-r_off * r_on * beta_);
    }
    return (1.0 / (g - r_on) + r_on) / (-r_off * r_on * beta_);
}

double MemristorModel::step_charge(double q, StdpDirection direction) const {
    const double moved = direction == StdpDirection::Positive ? q + delta_q_ : q - delta_q_;
    return std::clamp(moved, params_.q_min, q_max_);
}

double memristor_weight_from_charge(double q, double beta, Profile profile,
                                    const MemristorParams& params) {
    return MemristorModel(profile, beta, params).weight_from_charge(q);
}

double memristor_charge_from_weight(double w, double beta, Profile profile,
                                    const MemristorParams& params) {
    return MemristorModel(profile, beta, params).charge_from_weight(w);
}

double memristor_q_max(double beta, const MemristorParams& params) {
    return MemristorModel(Profile::Hp, beta, params).q_max();
}

double memristor_delta_q(double beta, const MemristorParams& params) {
    return MemristorModel(Profile::Hp, beta, params).delta_q();
}

MemristorState MemristorState::at_weight(const MemristorModel& model, double w) {
    MemristorState state;
    state.q = model.charge_from_weight(w);
    state.w = model.weight_from_charge(state.q);
    return state;
}

void MemristorState::apply_stdp(const MemristorModel& model, StdpDirection direction) {
    q = model.step_charge(q, direction);
    w = model.weight_from_charge(q);
}

std::vector<SweepPoint> profile_sweep(SweepKind kind, double device_param, int n_events,
                                      const MemristorParams& params) {
    if (n_events < 1) throw std::domain_error("profile_sweep needs n_events >= 1");
    std::vector<SweepPoint> curve;
    curve.reserve(static_cast<std::size_t>(n_events) + 1);

    if (kind == SweepKind::Rsm) {
        RsmState state;
        state.s_n = static_cast<int>(device_param);
        state.w = rsm_initial_weight();
        curve.push_back({0, state.w});
        for (int i = 1; i <= n_events; ++i) {
            state.step(true);
            curve.push_back({i, state.w});
        }
        return curve;
    }

    const Profile profile = kind == SweepKind::Hp ? Profile::Hp : Profile::PeoPani;
    const MemristorModel model(profile, device_param, params);
    MemristorState state;
    state.q = model.q_min();
    state.w = model.weight_from_charge(state.q);
    curve.push_back({0, state.w});
    for (int i = 1; i <= n_events; ++i) {
        state.apply_stdp(model, StdpDirection::Positive);
        curve.push_back({i, state.w});
    }
    return curve;
}

}  // namespace memspike::dev
