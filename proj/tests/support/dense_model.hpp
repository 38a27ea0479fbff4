#pragma once

// Test-only reference implementation. Everything is dense and built from
// explicit loops; nothing here calls the library's operator or superoperator
// code, so agreement with it is an independent check.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mollow/model.hpp"

namespace testsupport {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat dense_kron(const Mat& a, const Mat& b);
Mat dense_destroy(int n);
Mat dense_sigma();

struct DenseModel {
    std::vector<int> dims;
    Mat hamiltonian;
    std::vector<std::pair<double, Mat>> jumps;  // (rate, O)
    Mat a;                                      // cavity lowering
    Mat s;                                      // source lowering (empty when absent)
    double cascade = 0.0;                       // sqrt(mu2 gamma_s kappa)
    double n_th = 0.0;
    int total() const { return static_cast<int>(hamiltonian.rows()); }
};

DenseModel build(mollow::ModelKind kind, const mollow::ModelParams& p);

// d rho / dt evaluated term by term.
Mat rhs(const DenseModel& m, const Mat& rho);

// Dense superoperator assembled column by column from rhs() on basis matrices.
Mat superoperator(const DenseModel& m);

// Null vector of the dense superoperator via full-pivot LU on the bordered
// system, reshaped and normalized.
Mat dense_steady_state(const DenseModel& m);

// Number of singular values below rel_tol * largest.
int null_space_dimension(const Mat& superop, double rel_tol = 1e-10);

double photon_number(const DenseModel& m, const Mat& rho);
double g2(const DenseModel& m, const Mat& rho);

}  // namespace testsupport
