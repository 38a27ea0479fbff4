#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mollow/hilbert.hpp"

namespace mollow {

// All rates are in units of the target cavity decay kappa.
struct ModelParams {
    double kappa = 1.0;
    double gamma_s = 0.02;
    double gamma = 0.001;    // target atom decay (JC)
    double gamma_m = 0.001;  // mechanical decay (OMS)
    double omega_drive = 8.0;
    double mu1 = 0.5;
    double mu2 = 0.5;
    double delta = 0.0;      // omega_c - omega_L
    double delta_s = 0.0;    // omega_s - omega_L
    std::optional<double> delta_a;  // omega - omega_L; follows delta when unset
    double g = 0.0;
    double g_m = 0.0;
    double omega_m = 5.0;
    double n_th = 0.0;
    int n_cavity = 8;
    int n_mech = 12;

    double atom_detuning() const { return delta_a.value_or(delta); }

    // Throws ErrorKind::Parameter on a violated invariant.
    void validate() const;
};

enum class ModelKind {
    SourceOnly,
    CascadedJC,
    CascadedOMS,
    CascadedJCThermal,
    ClassicalJC,
    ClassicalOMS,
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

bool has_source(ModelKind kind);
bool has_cavity(ModelKind kind);
bool is_jc(ModelKind kind);
bool is_oms(ModelKind kind);

// Where each subsystem sits in the composite space. Slot order is always
// (source atom, target cavity, target matter), skipping absent subsystems.
struct ModelLayout {
    HilbertSpace space;
    std::optional<std::size_t> source_slot;
    std::optional<std::size_t> cavity_slot;
    std::optional<std::size_t> matter_slot;
    int cavity_dim = 0;
    int mech_dim = 0;  // 0 when there is no mechanical mode
};

ModelLayout make_layout(ModelKind kind, const ModelParams& params);

}  // namespace mollow
