#pragma once

#include <vector>

#include "mollow/hilbert.hpp"
#include "mollow/model.hpp"

namespace mollow {

// Superoperator on the column-stacked vectorization of operators on `space`.
struct Liouvillian {
    HilbertSpace space;
    SparseMatrix matrix;  // total_dim^2 x total_dim^2, units of kappa

    Liouvillian& operator+=(const Liouvillian& other);
    double max_abs() const;
    // max_k |sum_i L(i + N*i, k)|: how far vec(I)^T L is from zero.
    double trace_annihilation_error() const;
    bool is_trace_annihilating(double relative_tol = 1e-10) const;

    DenseVector apply(const DenseVector& vec_rho) const { return matrix * vec_rho; }
};

Liouvillian zero_liouvillian(const HilbertSpace& space);

struct JumpChannel {
    Operator op;
    double rate = 0.0;
};

// Delta_s s^dag s + sqrt(mu1) Omega (s + s^dag) on the 2-dim source space; Omega real.
Operator source_hamiltonian(const ModelParams& params);

// Delta a^dag a + Delta_a s^dag s + g (s^dag a + s a^dag), identity on the source.
Operator jc_hamiltonian(const ModelParams& params);
Operator jc_hamiltonian(const ModelParams& params, const ModelLayout& layout);

// Delta a^dag a + omega_m b^dag b + g_m a^dag a (b^dag + b).
Operator oms_hamiltonian(const ModelParams& params);
Operator oms_hamiltonian(const ModelParams& params, const ModelLayout& layout);

// Full Hamiltonian of the given model (classical kinds include Omega (a + a^dag)).
Operator model_hamiltonian(ModelKind kind, const ModelParams& params, const ModelLayout& layout);

// Every Lindblad channel of the model with its rate, thermal channels included.
std::vector<JumpChannel> jump_channels(ModelKind kind, const ModelParams& params,
                                       const ModelLayout& layout);

// -i [H, .]
Liouvillian coherent_part(const Operator& hamiltonian);

// rate * (O . O^dag - 1/2 {O^dag O, .}); throws ErrorKind::Parameter for rate < 0.
Liouvillian dissipator(const Operator& jump, double rate);

// Unidirectional source -> cavity feed:
//   -(n_th + 1) c {[a^dag, s rho] + [rho s^dag, a]} - n_th c {[a, s^dag rho] + [rho s, a^dag]}
// with c = sqrt(mu2 gamma_s kappa). Requires source and cavity slots.
Liouvillian cascaded_term(const ModelParams& params);
Liouvillian cascaded_term(const ModelParams& params, const ModelLayout& layout);

// Rejects parameter sets that belong to another model family.
void check_model_params(ModelKind kind, const ModelParams& params);

Liouvillian assemble(ModelKind kind, const ModelParams& params);

// Direct evaluation of d rho / dt with dense matrix products, without
// building the superoperator. Used to cross-check assemble().
DenseMatrix master_equation_rhs(ModelKind kind, const ModelParams& params, const DenseMatrix& rho);

}  // namespace mollow
