#include "mollow/hilbert.hpp"

#include <cmath>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

namespace {

using Triplet = Eigen::Triplet<Complex, int>;

void require_same_space(const Operator& a, const Operator& b, const char* what) {
    if (!(a.space() == b.space())) {
        throw Error(ErrorKind::Algebra, std::string(what) + ": operands act on different spaces");
    }
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw Error(ErrorKind::InvalidDimension, "HilbertSpace needs at least one subsystem");
    }
    total_ = 1;
    for (int d : dims_) {
        if (d < 1) {
            throw Error(ErrorKind::InvalidDimension,
                        "subsystem dimension must be >= 1, got " + std::to_string(d));
        }
        total_ *= d;
    }
}

Operator::Operator(HilbertSpace space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(pruned(std::move(matrix))) {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
        throw Error(ErrorKind::InvalidDimension,
                    "operator is " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + " but space has total_dim " +
                        std::to_string(space_.total_dim()));
    }
}

double Operator::max_abs() const {
    double m = 0.0;
    for (int k = 0; k < matrix_.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

SparseMatrix pruned(SparseMatrix m) {
    m.prune([](int, int, const Complex& v) { return std::abs(v) > kDropTolerance; });
    m.makeCompressed();
    return m;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    const int br = static_cast<int>(b.rows());
    const int bc = static_cast<int>(b.cols());
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
                    entries.emplace_back(static_cast<int>(ia.row()) * br + static_cast<int>(ib.row()),
                                         static_cast<int>(ia.col()) * bc + static_cast<int>(ib.col()),
                                         ia.value() * ib.value());
                }
            }
        }
    }
    SparseMatrix out(a.rows() * br, a.cols() * bc);
    out.setFromTriplets(entries.begin(), entries.end());
    return out;
}

Operator annihilation(int dim) {
    if (dim < 1) {
        throw Error(ErrorKind::InvalidDimension, "annihilation: dim must be >= 1, got " + std::to_string(dim));
    }
    std::vector<Triplet> entries;
    for (int n = 1; n < dim; ++n) {
        entries.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    }
    SparseMatrix m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return Operator(HilbertSpace{dim}, std::move(m));
}

Operator lowering_two_level() {
    SparseMatrix m(2, 2);
    m.insert(0, 1) = 1.0;
    return Operator(HilbertSpace{2}, std::move(m));
}

Operator identity(const HilbertSpace& space) {
    SparseMatrix m(space.total_dim(), space.total_dim());
    m.setIdentity();
    return Operator(space, std::move(m));
}

Operator zero(const HilbertSpace& space) {
    return Operator(space, SparseMatrix(space.total_dim(), space.total_dim()));
}

Operator embed(const Operator& op, const HilbertSpace& space, std::size_t slot) {
    if (slot >= space.num_subsystems()) {
        throw Error(ErrorKind::Embedding, "embed: slot " + std::to_string(slot) + " out of range");
    }
    if (op.dim() != space.dim(slot)) {
        throw Error(ErrorKind::Embedding, "embed: operator dimension " + std::to_string(op.dim()) +
                                              " does not match subsystem dimension " +
                                              std::to_string(space.dim(slot)));
    }
    int before = 1;
    int after = 1;
    for (std::size_t s = 0; s < space.num_subsystems(); ++s) {
        if (s < slot) before *= space.dim(s);
        if (s > slot) after *= space.dim(s);
    }
    SparseMatrix left(before, before);
    left.setIdentity();
    SparseMatrix right(after, after);
    right.setIdentity();
    return Operator(space, kron(kron(left, op.matrix()), right));
}

Operator dagger(const Operator& op) {
    return Operator(op.space(), SparseMatrix(op.matrix().adjoint()));
}

Operator add(const Operator& a, const Operator& b) {
    require_same_space(a, b, "add");
    return Operator(a.space(), SparseMatrix(a.matrix() + b.matrix()));
}

Operator scale(Complex factor, const Operator& op) {
    return Operator(op.space(), SparseMatrix(factor * op.matrix()));
}

Operator matmul(const Operator& a, const Operator& b) {
    require_same_space(a, b, "matmul");
    return Operator(a.space(), SparseMatrix(a.matrix() * b.matrix()));
}

Operator operator+(const Operator& a, const Operator& b) { return add(a, b); }
Operator operator-(const Operator& a, const Operator& b) { return add(a, scale(-1.0, b)); }
Operator operator*(const Operator& a, const Operator& b) { return matmul(a, b); }
Operator operator*(Complex factor, const Operator& op) { return scale(factor, op); }
Operator operator*(double factor, const Operator& op) { return scale(Complex(factor, 0.0), op); }

Operator vectorize_left(const Operator& op) {
    const int n = op.dim();
    SparseMatrix id(n, n);
    id.setIdentity();
    return Operator(HilbertSpace{n, n}, kron(id, op.matrix()));
}

Operator vectorize_right(const Operator& op) {
    const int n = op.dim();
    SparseMatrix id(n, n);
    id.setIdentity();
    return Operator(HilbertSpace{n, n}, kron(SparseMatrix(op.matrix().transpose()), id));
}

DenseVector vectorize(const DenseMatrix& rho) {
    return Eigen::Map<const DenseVector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const DenseVector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw Error(ErrorKind::InvalidDimension, "unvectorize: length does not match dim^2");
    }
    return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

}  // namespace mollow
