#include "mollow/model.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "mollow/error.hpp"

namespace mollow {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 6> kKindNames{{
    {ModelKind::SourceOnly, "source_only"},
    {ModelKind::CascadedJC, "cascaded_jc"},
    {ModelKind::CascadedOMS, "cascaded_oms"},
    {ModelKind::CascadedJCThermal, "cascaded_jc_thermal"},
    {ModelKind::ClassicalJC, "classical_jc"},
    {ModelKind::ClassicalOMS, "classical_oms"},
}};

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::Parameter, std::string(name) + " must be finite and >= 0");
    }
}

}  // namespace

void ModelParams::validate() const {
    if (std::abs(mu1 + mu2 - 1.0) > 1e-12) {
        throw Error(ErrorKind::Parameter, "mu1 + mu2 must equal 1");
    }
    require_nonnegative(kappa, "kappa");
    require_nonnegative(gamma_s, "gamma_s");
    require_nonnegative(gamma, "gamma");
    require_nonnegative(gamma_m, "gamma_m");
    require_nonnegative(omega_drive, "omega_drive");
    require_nonnegative(mu1, "mu1");
    require_nonnegative(mu2, "mu2");
    require_nonnegative(g, "g");
    require_nonnegative(g_m, "g_m");
    require_nonnegative(omega_m, "omega_m");
    require_nonnegative(n_th, "n_th");
    for (double d : {delta, delta_s, atom_detuning()}) {
        if (!std::isfinite(d)) throw Error(ErrorKind::Parameter, "detunings must be finite");
    }
    if (n_cavity < 2 || n_mech < 2) {
        throw Error(ErrorKind::Parameter, "Fock truncations must be >= 2");
    }
}

std::string_view to_string(ModelKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    throw Error(ErrorKind::Configuration, "unknown model kind '" + std::string(name) + "'");
}

bool has_source(ModelKind kind) {
    return kind == ModelKind::SourceOnly || kind == ModelKind::CascadedJC ||
           kind == ModelKind::CascadedOMS || kind == ModelKind::CascadedJCThermal;
}

bool has_cavity(ModelKind kind) { return kind != ModelKind::SourceOnly; }

bool is_jc(ModelKind kind) {
    return kind == ModelKind::CascadedJC || kind == ModelKind::CascadedJCThermal ||
           kind == ModelKind::ClassicalJC;
}

bool is_oms(ModelKind kind) {
    return kind == ModelKind::CascadedOMS || kind == ModelKind::ClassicalOMS;
}

ModelLayout make_layout(ModelKind kind, const ModelParams& params) {
    ModelLayout layout;
    std::vector<int> dims;
    if (has_source(kind)) {
        layout.source_slot = dims.size();
        dims.push_back(2);
    }
    if (has_cavity(kind)) {
        layout.cavity_slot = dims.size();
        layout.cavity_dim = params.n_cavity;
        dims.push_back(params.n_cavity);
    }
    if (is_jc(kind)) {
        layout.matter_slot = dims.size();
        dims.push_back(2);
    } else if (is_oms(kind)) {
        layout.matter_slot = dims.size();
        layout.mech_dim = params.n_mech;
        dims.push_back(params.n_mech);
    }
    layout.space = HilbertSpace(std::move(dims));
    return layout;
}

}  // namespace mollow
