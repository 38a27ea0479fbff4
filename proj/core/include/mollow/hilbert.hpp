#pragma once

// Operator algebra on truncated tensor-product spaces.
//
// Conventions used everywhere in this library:
//  * Basis ordering: index 0 is the ground / vacuum state of every subsystem.
//  * Composite index: row-major over the listed subsystems, the first one
//    varying slowest, so embed() is kron(I, ..., op, ..., I) in list order.
//  * Vectorization: column stacking, vec(rho)[i + N*j] = rho(i, j). With it
//    vec(A rho B) = (B^T kron A) vec(rho), i.e.
//        vectorize_left(A)  = I kron A
//        vectorize_right(B) = B^T kron I

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace mollow {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// Entries with magnitude at or below this are never stored.
inline constexpr double kDropTolerance = 1e-14;

class HilbertSpace {
public:
    HilbertSpace() = default;
    HilbertSpace(std::vector<int> dims);
    HilbertSpace(std::initializer_list<int> dims) : HilbertSpace(std::vector<int>(dims)) {}

    const std::vector<int>& dims() const noexcept { return dims_; }
    int dim(std::size_t slot) const { return dims_.at(slot); }
    std::size_t num_subsystems() const noexcept { return dims_.size(); }
    int total_dim() const noexcept { return total_; }

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    std::vector<int> dims_;
    int total_ = 1;
};

// Complex sparse matrix tied to the space it acts on. Immutable once built.
class Operator {
public:
    Operator() = default;
    Operator(HilbertSpace space, SparseMatrix matrix);

    const HilbertSpace& space() const noexcept { return space_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }
    int dim() const noexcept { return space_.total_dim(); }

    DenseMatrix dense() const { return DenseMatrix(matrix_); }
    Complex coeff(int row, int col) const { return matrix_.coeff(row, col); }
    double max_abs() const;

private:
    HilbertSpace space_;
    SparseMatrix matrix_;
};

// Bosonic lowering operator truncated to `dim` Fock levels.
Operator annihilation(int dim);
// |g><e| with ground = 0, excited = 1.
Operator lowering_two_level();
Operator identity(const HilbertSpace& space);
Operator zero(const HilbertSpace& space);

// Lifts `op` into `space`, acting on subsystem `slot` and as identity elsewhere.
Operator embed(const Operator& op, const HilbertSpace& space, std::size_t slot);

Operator dagger(const Operator& op);
Operator add(const Operator& a, const Operator& b);
Operator scale(Complex factor, const Operator& op);
Operator matmul(const Operator& a, const Operator& b);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex factor, const Operator& op);
Operator operator*(double factor, const Operator& op);

// Superoperators on the column-stacked vectorization; both act on a space of
// dimension total_dim^2, described as HilbertSpace{N, N} (column index slowest).
Operator vectorize_left(const Operator& op);
Operator vectorize_right(const Operator& op);

// Sparse Kronecker product with the composite-index convention above.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

// Removes entries at or below kDropTolerance and compresses.
SparseMatrix pruned(SparseMatrix m);

DenseVector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const DenseVector& v, int dim);

}  // namespace mollow
