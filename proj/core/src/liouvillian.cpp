#include "mollow/liouvillian.hpp"

#include <cmath>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

namespace {

const Complex kI(0.0, 1.0);

Liouvillian from_super(const HilbertSpace& space, const Operator& super) {
    return Liouvillian{space, super.matrix()};
}

// [X^dag, Y rho] + [rho Y^dag, X]
Operator cascade_pair(const Operator& x, const Operator& y) {
    const Operator xd = dagger(x);
    const Operator yd = dagger(y);
    return vectorize_left(xd * y) - vectorize_right(xd) * vectorize_left(y) +
           vectorize_right(yd * x) - vectorize_left(x) * vectorize_right(yd);
}

ModelLayout cascaded_jc_layout(const ModelParams& params) {
    return make_layout(ModelKind::CascadedJC, params);
}

Operator cavity_op(const ModelLayout& layout) {
    if (!layout.cavity_slot) throw Error(ErrorKind::Configuration, "model has no cavity");
    return embed(annihilation(layout.cavity_dim), layout.space, *layout.cavity_slot);
}

}  // namespace

Liouvillian& Liouvillian::operator+=(const Liouvillian& other) {
    if (!(space == other.space)) {
        throw Error(ErrorKind::Algebra, "Liouvillian sum over different spaces");
    }
    matrix = pruned(SparseMatrix(matrix + other.matrix));
    return *this;
}

double Liouvillian::max_abs() const {
    double m = 0.0;
    for (int k = 0; k < matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) m = std::max(m, std::abs(it.value()));
    }
    return m;
}

double Liouvillian::trace_annihilation_error() const {
    const int n = space.total_dim();
    double worst = 0.0;
    for (int k = 0; k < matrix.outerSize(); ++k) {
        Complex sum = 0.0;
        for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) {
            const auto row = static_cast<int>(it.row());
            if (row % (n + 1) == 0) sum += it.value();
        }
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

bool Liouvillian::is_trace_annihilating(double relative_tol) const {
    return trace_annihilation_error() <= relative_tol * std::max(1.0, max_abs());
}

Liouvillian zero_liouvillian(const HilbertSpace& space) {
    const int n2 = space.total_dim() * space.total_dim();
    return Liouvillian{space, SparseMatrix(n2, n2)};
}

Operator source_hamiltonian(const ModelParams& params) {
    const Operator s = lowering_two_level();
    const Operator sd = dagger(s);
    const double drive = std::sqrt(params.mu1) * params.omega_drive;
    return params.delta_s * (sd * s) + drive * (s + sd);
}

Operator jc_hamiltonian(const ModelParams& params) {
    return jc_hamiltonian(params, cascaded_jc_layout(params));
}

Operator jc_hamiltonian(const ModelParams& params, const ModelLayout& layout) {
    if (!layout.cavity_slot || !layout.matter_slot) {
        throw Error(ErrorKind::Configuration, "JC Hamiltonian needs cavity and atom slots");
    }
    const Operator a = cavity_op(layout);
    const Operator s = embed(lowering_two_level(), layout.space, *layout.matter_slot);
    const Operator ad = dagger(a);
    const Operator sd = dagger(s);
    return params.delta * (ad * a) + params.atom_detuning() * (sd * s) +
           params.g * (sd * a + s * ad);
}

Operator oms_hamiltonian(const ModelParams& params) {
    return oms_hamiltonian(params, make_layout(ModelKind::CascadedOMS, params));
}

Operator oms_hamiltonian(const ModelParams& params, const ModelLayout& layout) {
    if (!layout.cavity_slot || !layout.matter_slot || layout.mech_dim == 0) {
        throw Error(ErrorKind::Configuration, "OMS Hamiltonian needs cavity and mechanical slots");
    }
    const Operator a = cavity_op(layout);
    const Operator b = embed(annihilation(layout.mech_dim), layout.space, *layout.matter_slot);
    const Operator n = dagger(a) * a;
    const Operator bd = dagger(b);
    return params.delta * n + params.omega_m * (bd * b) + params.g_m * (n * (bd + b));
}

Operator model_hamiltonian(ModelKind kind, const ModelParams& params, const ModelLayout& layout) {
    Operator h = zero(layout.space);
    if (layout.source_slot) {
        h = h + embed(source_hamiltonian(params), layout.space, *layout.source_slot);
    }
    if (is_jc(kind)) h = h + jc_hamiltonian(params, layout);
    if (is_oms(kind)) h = h + oms_hamiltonian(params, layout);
    if (kind == ModelKind::ClassicalJC || kind == ModelKind::ClassicalOMS) {
        const Operator a = cavity_op(layout);
        h = h + params.omega_drive * (a + dagger(a));
    }
    return h;
}

std::vector<JumpChannel> jump_channels(ModelKind kind, const ModelParams& params,
                                       const ModelLayout& layout) {
    const double nth = params.n_th;
    std::vector<JumpChannel> channels;
    auto add_pair = [&](const Operator& op, double rate) {
        channels.push_back({op, rate * (nth + 1.0)});
        if (nth > 0.0) channels.push_back({dagger(op), rate * nth});
    };
    if (layout.source_slot) {
        add_pair(embed(lowering_two_level(), layout.space, *layout.source_slot), params.gamma_s);
    }
    if (layout.cavity_slot) add_pair(cavity_op(layout), params.kappa);
    if (is_jc(kind)) {
        add_pair(embed(lowering_two_level(), layout.space, *layout.matter_slot), params.gamma);
    } else if (is_oms(kind)) {
        add_pair(embed(annihilation(layout.mech_dim), layout.space, *layout.matter_slot), params.gamma_m);
    }
    return channels;
}

Liouvillian coherent_part(const Operator& hamiltonian) {
    const Operator super = (-kI) * (vectorize_left(hamiltonian) - vectorize_right(hamiltonian));
    return from_super(hamiltonian.space(), super);
}

Liouvillian dissipator(const Operator& jump, double rate) {
    if (!(rate >= 0.0)) {
        throw Error(ErrorKind::Parameter, "dissipator rate must be >= 0, got " + std::to_string(rate));
    }
    if (rate == 0.0) return zero_liouvillian(jump.space());
    const Operator jd = dagger(jump);
    const Operator number = jd * jump;
    const Operator super = vectorize_left(jump) * vectorize_right(jd) -
                           0.5 * vectorize_left(number) - 0.5 * vectorize_right(number);
    return from_super(jump.space(), rate * super);
}

Liouvillian cascaded_term(const ModelParams& params) {
    return cascaded_term(params, cascaded_jc_layout(params));
}

Liouvillian cascaded_term(const ModelParams& params, const ModelLayout& layout) {
    if (!layout.source_slot || !layout.cavity_slot) {
        throw Error(ErrorKind::Configuration, "cascaded term needs source and cavity slots");
    }
    const double c = std::sqrt(params.mu2 * params.gamma_s * params.kappa);
    Liouvillian out = zero_liouvillian(layout.space);
    if (c == 0.0) return out;
    const Operator s = embed(lowering_two_level(), layout.space, *layout.source_slot);
    const Operator a = cavity_op(layout);
    out += from_super(layout.space, (-(params.n_th + 1.0) * c) * cascade_pair(a, s));
    if (params.n_th > 0.0) {
        out += from_super(layout.space, (-params.n_th * c) * cascade_pair(dagger(a), dagger(s)));
    }
    return out;
}

void check_model_params(ModelKind kind, const ModelParams& params) {
    params.validate();
    if (!is_jc(kind) && params.g != 0.0) {
        throw Error(ErrorKind::Configuration,
                    std::string("atom-cavity coupling g given for model ") + std::string(to_string(kind)));
    }
    if (!is_oms(kind) && params.g_m != 0.0) {
        throw Error(ErrorKind::Configuration,
                    std::string("optomechanical coupling g_m given for model ") + std::string(to_string(kind)));
    }
    if (kind != ModelKind::CascadedJCThermal && params.n_th != 0.0) {
        throw Error(ErrorKind::Configuration,
                    std::string("n_th > 0 requires cascaded_jc_thermal, got ") + std::string(to_string(kind)));
    }
}

Liouvillian assemble(ModelKind kind, const ModelParams& params) {
    check_model_params(kind, params);
    const ModelLayout layout = make_layout(kind, params);
    Liouvillian total = coherent_part(model_hamiltonian(kind, params, layout));
    for (const auto& channel : jump_channels(kind, params, layout)) {
        total += dissipator(channel.op, channel.rate);
    }
    if (layout.source_slot && layout.cavity_slot) total += cascaded_term(params, layout);
    return total;
}

DenseMatrix master_equation_rhs(ModelKind kind, const ModelParams& params, const DenseMatrix& rho) {
    check_model_params(kind, params);
    const ModelLayout layout = make_layout(kind, params);
    const int n = layout.space.total_dim();
    if (rho.rows() != n || rho.cols() != n) {
        throw Error(ErrorKind::InvalidDimension, "master_equation_rhs: rho has wrong shape");
    }
    const DenseMatrix h = model_hamiltonian(kind, params, layout).dense();
    DenseMatrix out = kI * (rho * h - h * rho);
    for (const auto& ch : jump_channels(kind, params, layout)) {
        const DenseMatrix o = ch.op.dense();
        const DenseMatrix od = o.adjoint();
        out += ch.rate * 0.5 * (2.0 * o * rho * od - rho * od * o - od * o * rho);
    }
    if (layout.source_slot && layout.cavity_slot) {
        const double c = std::sqrt(params.mu2 * params.gamma_s * params.kappa);
        const DenseMatrix s = embed(lowering_two_level(), layout.space, *layout.source_slot).dense();
        const DenseMatrix a = cavity_op(layout).dense();
        const DenseMatrix sd = s.adjoint();
        const DenseMatrix ad = a.adjoint();
        auto comm = [](const DenseMatrix& x, const DenseMatrix& y) -> DenseMatrix { return x * y - y * x; };
        out -= (params.n_th + 1.0) * c * (comm(ad, s * rho) + comm(rho * sd, a));
        out -= params.n_th * c * (comm(a, sd * rho) + comm(rho * s, ad));
    }
    return out;
}

}  // namespace mollow
