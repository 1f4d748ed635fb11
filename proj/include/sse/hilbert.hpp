#pragma once

// Small dense complex linear algebra on finite Hilbert spaces: state
// vectors, operators, density matrices, Bloch extraction. Dimensions are
// tiny (<= 13 in all shipped models), so everything is dense Eigen storage.
//
// Qubit basis convention used throughout: index 0 <-> |1> (excited),
// index 1 <-> |0> (ground). Hence sigma_z = diag(+1,-1) and the excited
// population is the (0,0) matrix entry of a density matrix, or (1+z)/2 in
// Bloch coordinates.

#include <Eigen/Dense>
#include <complex>

#include "sse/errors.hpp"

namespace sse {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Dense operator plus a hermiticity hint. The flag is a promise checked at
// construction time (max |A - A^dag| <= 1e-12), not re-derived on use.
struct LinearOperator {
    Eigen::MatrixXcd mat;
    bool hermitian = false;

    int dim() const { return static_cast<int>(mat.rows()); }
};

LinearOperator make_operator(Eigen::MatrixXcd mat, bool hermitian = false);

// <u|v>, conjugate-linear in the first slot.
Complex inner(const StateVector& u, const StateVector& v);

StateVector apply(const LinearOperator& a, const StateVector& v);

// <psi|A psi>; psi need not be normalized.
Complex expectation(const LinearOperator& a, const StateVector& psi);

// Throws ZeroNorm when ||v|| <= 1e-300.
StateVector normalize(const StateVector& v);

// |psi><psi| for a normalized psi.
DensityMatrix pure_density(const StateVector& psi);

struct BlochVector {
    double x, y, z;
};

// (Tr{sigma_x rho}, Tr{sigma_y rho}, Tr{sigma_z rho}); requires dim == 2.
BlochVector bloch_vector(const DensityMatrix& rho);

// Checks the "state" invariants: Hermitian within 1e-12, |Tr - 1| <= 1e-10,
// diagonal real parts >= -1e-10. Throws IntegrationFailure on violation.
void validate_state(const DensityMatrix& rho);

// Qubit operators in the basis convention above (integer entries, exact).
LinearOperator sigma_x();
LinearOperator sigma_y();
LinearOperator sigma_z();
LinearOperator sigma_plus();
LinearOperator sigma_minus();

// Excited and ground basis states.
StateVector qubit_excited();
StateVector qubit_ground();

// Truncated Fock space, index n <-> |n>, n = 0..n_max.
LinearOperator annihilation(int n_max);
LinearOperator number_operator(int n_max);
StateVector fock_state(int n, int n_max);

}  // namespace sse
