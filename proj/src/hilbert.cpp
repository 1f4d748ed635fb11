#include "sse/hilbert.hpp"

#include <cmath>

namespace sse {

namespace {
constexpr Complex kI{0.0, 1.0};
}

LinearOperator make_operator(Eigen::MatrixXcd mat, bool hermitian) {
    if (mat.rows() != mat.cols() || mat.rows() < 1) {
        throw InvalidParameter("operator must be square with dim >= 1");
    }
    if (hermitian) {
        const double dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
        if (dev > 1e-12) {
            throw InvalidParameter("hermitian-flagged operator deviates from A^dag by " +
                                   std::to_string(dev));
        }
    }
    return LinearOperator{std::move(mat), hermitian};
}

Complex inner(const StateVector& u, const StateVector& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("inner: dimension mismatch");
    }
    return u.dot(v);  // Eigen's dot conjugates the first argument
}

StateVector apply(const LinearOperator& a, const StateVector& v) {
    if (a.mat.cols() != v.size()) {
        throw DimensionMismatch("apply: dimension mismatch");
    }
    return a.mat * v;
}

Complex expectation(const LinearOperator& a, const StateVector& psi) {
    if (a.mat.cols() != psi.size()) {
        throw DimensionMismatch("expectation: dimension mismatch");
    }
    return psi.dot(a.mat * psi);
}

StateVector normalize(const StateVector& v) {
    const double n = v.norm();
    if (n <= 1e-300) {
        throw ZeroNorm("cannot normalize a vector with vanishing norm");
    }
    return v / n;
}

DensityMatrix pure_density(const StateVector& psi) {
    return psi * psi.adjoint();
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw DimensionMismatch("bloch_vector: density matrix must be 2x2");
    }
    return BlochVector{
        2.0 * rho(0, 1).real(),
        -2.0 * rho(0, 1).imag(),
        (rho(0, 0) - rho(1, 1)).real(),
    };
}

void validate_state(const DensityMatrix& rho) {
    const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-12) {
        throw IntegrationFailure("density matrix lost hermiticity: " + std::to_string(herm_dev));
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > 1e-10) {
        throw IntegrationFailure("density matrix trace drifted from 1");
    }
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        if (rho(i, i).real() < -1e-10) {
            throw IntegrationFailure("density matrix has negative population");
        }
    }
}

LinearOperator sigma_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return LinearOperator{std::move(m), true};
}

LinearOperator sigma_y() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, -kI, kI, 0;
    return LinearOperator{std::move(m), true};
}

LinearOperator sigma_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return LinearOperator{std::move(m), true};
}

LinearOperator sigma_plus() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = 1;  // |1><0|: raises ground (index 1) to excited (index 0)
    return LinearOperator{std::move(m), false};
}

LinearOperator sigma_minus() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(1, 0) = 1;  // |0><1|
    return LinearOperator{std::move(m), false};
}

StateVector qubit_excited() {
    StateVector v = StateVector::Zero(2);
    v(0) = 1;
    return v;
}

StateVector qubit_ground() {
    StateVector v = StateVector::Zero(2);
    v(1) = 1;
    return v;
}

LinearOperator annihilation(int n_max) {
    if (n_max < 1) {
        throw InvalidParameter("annihilation: n_max must be >= 1");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return LinearOperator{std::move(m), false};
}

LinearOperator number_operator(int n_max) {
    if (n_max < 1) {
        throw InvalidParameter("number_operator: n_max must be >= 1");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        m(n, n) = n;
    }
    return LinearOperator{std::move(m), true};
}

StateVector fock_state(int n, int n_max) {
    if (n < 0 || n > n_max) {
        throw InvalidParameter("fock_state: need 0 <= n <= n_max");
    }
    StateVector v = StateVector::Zero(n_max + 1);
    v(n) = 1;
    return v;
}

}  // namespace sse
