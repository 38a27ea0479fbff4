#include "mollow/oracle.hpp"

#include <cmath>
#include <limits>

#include "mollow/error.hpp"

namespace mollow::oracle {

OracleInput OracleInput::from(const ModelParams& p) {
    return OracleInput{p.omega_drive, p.gamma_s, p.kappa, p.mu1, p.mu2, p.delta};
}

void OracleInput::validate() const {
    if (!(gamma_s > 0.0) || !(kappa > 0.0)) {
        throw Error(ErrorKind::Parameter, "oracle: gamma_s and kappa must be > 0");
    }
    if (!(omega_drive >= 0.0) || !(mu1 >= 0.0) || !(mu2 >= 0.0)) {
        throw Error(ErrorKind::Parameter, "oracle: omega_drive, mu1, mu2 must be >= 0");
    }
    if (std::abs(mu1 + mu2 - 1.0) > 1e-12) {
        throw Error(ErrorKind::Parameter, "oracle: mu1 + mu2 must equal 1");
    }
}

double compensated_sum(std::initializer_list<double> terms) {
    double sum = 0.0;
    double c = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            c += (sum - s) + t;
        } else {
            c += (t - s) + sum;
        }
        sum = s;
    }
    return sum + c;
}

double na_closed_form(const OracleInput& in) {
    in.validate();
    const double W = in.omega_drive, gs = in.gamma_s, k = in.kappa, m1 = in.mu1, m2 = in.mu2;
    const double D = in.delta;
    const double W2 = W * W, W4 = W2 * W2;
    const double D2 = D * D, D4 = D2 * D2, D6 = D4 * D2;
    const double gs2 = gs * gs, gs3 = gs2 * gs, gs4 = gs3 * gs;
    const double k2 = k * k, k3 = k2 * k, k4 = k3 * k;

    const double b = compensated_sum({
        16.0 * D4,
        256.0 * W4 * m1 * m1,
        4.0 * D2 * compensated_sum({5.0 * gs2, 6.0 * gs * k, 2.0 * k2}),
        32.0 * W2 * m1 * compensated_sum({2.0 * gs2, 3.0 * gs * k, k2, -4.0 * D2}),
        (gs + k) * (gs + k) * compensated_sum({4.0 * gs2, 4.0 * gs * k, k2}),
    });

    const double a1 = compensated_sum({
        64.0 * k * D6,
        16.0 * D4 * compensated_sum({8.0 * m1 * W2 * (2.0 * gs - k), 6.0 * gs2 * k, 8.0 * gs * k2, 3.0 * k3}),
    });
    const double a2 = compensated_sum({
        32.0 * m1 * D2 * W2 *
            compensated_sum({16.0 * W2 * m1 * (gs + k), 8.0 * gs3, 23.0 * gs2 * k, 16.0 * gs * k2, 2.0 * k3}),
        4.0 * k * D2 * compensated_sum({9.0 * gs4, 28.0 * gs3 * k, 32.0 * gs2 * k2, 16.0 * gs * k3, 3.0 * k4}),
    });
    const double a3 = compensated_sum({
        8.0 * m1 * k * W2 * compensated_sum({4.0 * gs4, 16.0 * gs3 * k, 23.0 * gs2 * k2, 14.0 * gs * k3, 3.0 * k4}),
        k * (gs + k) * (gs + k) * (2.0 * gs + k) * compensated_sum({2.0 * gs3, 5.0 * gs2 * k, 4.0 * gs * k2, k3}),
        128.0 * W4 * k2 * m1 * m1 * (gs + k),
    });
    const double a = compensated_sum({a1, a2, a3});

    const double numerator = 16.0 * W2 * gs * m1 * m2 * a;
    const double denominator = b * (4.0 * D2 + k2) * (8.0 * m1 * W2 + gs2) *
                               compensated_sum({4.0 * D2, gs2, 2.0 * gs * k, k2});
    return numerator / denominator;
}

double na_resonant(const OracleInput& in) {
    in.validate();
    const double W = in.omega_drive, gs = in.gamma_s, k = in.kappa, m1 = in.mu1, m2 = in.mu2;
    const double W2 = W * W;
    const double gs2 = gs * gs, gs3 = gs2 * gs;
    const double k2 = k * k, k3 = k2 * k;
    const double numerator =
        16.0 * W2 * gs * m1 * m2 *
        compensated_sum({8.0 * m1 * W2 * k, 2.0 * gs3, 5.0 * gs2 * k, 4.0 * gs * k2, k3});
    const double denominator = k * (gs + k) * (8.0 * m1 * W2 + gs2) *
                               compensated_sum({16.0 * m1 * W2, 2.0 * gs2, 3.0 * gs * k, k2});
    return numerator / denominator;
}

double g2_resonant(const OracleInput& in) {
    in.validate();
    const double W = in.omega_drive, gs = in.gamma_s, k = in.kappa;
    const double W2 = W * W, W4 = W2 * W2;
    const double gs2 = gs * gs, gs3 = gs2 * gs;
    const double k2 = k * k, k3 = k2 * k;

    const double c1 = compensated_sum({8.0 * W2 * k * gs, 24.0 * W2 * k2}) *
                      compensated_sum({4.0 * gs3, 18.0 * gs2 * k, 29.0 * gs * k2, 17.0 * k3});
    const double quad = compensated_sum({gs2, 5.0 * gs * k, 6.0 * k2});
    const double c2 = compensated_sum({4.0 * gs3, 12.0 * gs2 * k, 11.0 * gs * k2, 3.0 * k3}) * quad * quad;
    const double d1_root = compensated_sum({8.0 * W2 * k, 2.0 * gs3, 5.0 * gs2 * k, 4.0 * gs * k2, k3});
    const double d1 = d1_root * d1_root;

    const double c = compensated_sum({c1, 192.0 * W4 * k2 * (gs + 2.0 * k) * c2});
    const double d = d1 * compensated_sum({16.0 * W2, 2.0 * gs2, 9.0 * gs * k, 9.0 * k2});

    const double numerator = c * compensated_sum({8.0 * W2 * gs, 8.0 * k * W2, gs3, k * gs2}) *
                             compensated_sum({16.0 * W2, 2.0 * gs2, 3.0 * gs * k, k2});
    const double denominator = d * compensated_sum({8.0 * W2, gs2, 3.0 * gs * k, 2.0 * k2}) * quad;
    return numerator / denominator;
}

DiscrepancyReport compare(double analytic, double numeric, double relative_tolerance) {
    DiscrepancyReport r;
    r.analytic = analytic;
    r.numeric = numeric;
    const double scale = std::abs(numeric);
    r.relative_error = scale > 0.0 ? std::abs(analytic - numeric) / scale
                                   : (analytic == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    r.within_tolerance = r.relative_error <= relative_tolerance;
    return r;
}

}  // namespace mollow::oracle
