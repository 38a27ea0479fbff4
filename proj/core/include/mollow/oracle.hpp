#pragma once

#include <initializer_list>

#include "mollow/model.hpp"

namespace mollow::oracle {

// Closed-form results for the cascaded JC target at g = 0 (the target atom
// decouples, so the same expressions hold for the OMS at g_m = 0).
struct OracleInput {
    double omega_drive = 8.0;
    double gamma_s = 0.02;
    double kappa = 1.0;
    double mu1 = 0.5;
    double mu2 = 0.5;
    double delta = 0.0;

    static OracleInput from(const ModelParams& params);
    void validate() const;
};

// Neumaier-compensated sum.
double compensated_sum(std::initializer_list<double> terms);

// Mean cavity photon number at arbitrary detuning.
double na_closed_form(const OracleInput& in);

// Mean cavity photon number at delta = 0.
double na_resonant(const OracleInput& in);

// Closed-form equal-time g2 at delta = 0. It carries no mu1 factors and does
// not agree with the numerical steady state; compare through
// DiscrepancyReport rather than trusting it.
double g2_resonant(const OracleInput& in);

struct DiscrepancyReport {
    double analytic = 0.0;
    double numeric = 0.0;
    double relative_error = 0.0;  // |analytic - numeric| / |numeric|
    bool within_tolerance = false;
};

DiscrepancyReport compare(double analytic, double numeric, double relative_tolerance);

}  // namespace mollow::oracle
