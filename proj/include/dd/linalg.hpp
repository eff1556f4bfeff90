#ifndef DD_LINALG_HPP
#define DD_LINALG_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <eigen3/Eigen/Dense>

namespace dd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Bipartition of a joint Hilbert space, system factor first in the Kronecker
// order: dim = system_dim * bath_dim.
struct SystemSplit {
  Eigen::Index system_dim = 2;
  Eigen::Index bath_dim = 2;
  Eigen::Index total() const { return system_dim * bath_dim; }
};

// Thrown when a matrix logarithm has an eigenphase too close to the +-pi
// branch cut for the principal branch to be trustworthy.
class BranchAmbiguityError : public std::runtime_error {
 public:
  explicit BranchAmbiguityError(double margin)
      : std::runtime_error(
            "matrix log branch ambiguity: eigenphase within " +
            std::to_string(margin) +
            " of +-pi; shrink the step (or total time) or fall back to "
            "bound/recurrence-based analysis"),
        margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

enum class PauliAxis { I = 0, X = 1, Y = 2, Z = 3 };

// 2x2 Pauli matrix for the given axis.
const CMatrix& pauli(PauliAxis axis);

// Largest singular value.
double op_norm(const CMatrix& a);

// e^{-i omega} for Hermitian omega, via eigendecomposition.
CMatrix exp_generator(const CMatrix& omega);

// Principal generator omega = i log(u) with eigenphases in (-pi, pi).
// Throws BranchAmbiguityError if any eigenphase is within branch_guard of
// the cut, and std::invalid_argument if u is not unitary.
CMatrix log_unitary(const CMatrix& u, double branch_guard = 1e-6);

// Like log_unitary, but first multiplies u by the scalar phase that rotates
// det(u) to 1, trying all dim-th roots and keeping the branch of minimum
// norm. Used where an operator is only defined up to a global phase.
CMatrix log_unitary_min_phase(const CMatrix& u, double branch_guard = 1e-6);

// tr_S: contracts the system factor, returns a bath_dim x bath_dim matrix.
CMatrix partial_trace_system(const CMatrix& m, const SystemSplit& split);

// tr_B: contracts the bath factor, returns a system_dim x system_dim matrix.
CMatrix partial_trace_bath(const CMatrix& m, const SystemSplit& split);

// Components M_alpha = (1/2) tr_S((sigma_alpha (x) I) M), indexed by
// PauliAxis, so that M = sum_alpha sigma_alpha (x) M_alpha. Requires
// system_dim == 2.
std::array<CMatrix, 4> pauli_decompose(const CMatrix& m, const SystemSplit& split);

// Kronecker product, system factor on the left.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// True when ||a - a^dag|| <= tol * max(1, ||a||).
bool is_hermitian(const CMatrix& a, double tol = 1e-12);

// True when ||u^dag u - 1|| <= tol.
bool is_unitary(const CMatrix& u, double tol = 1e-10);

}  // namespace dd

#endif
