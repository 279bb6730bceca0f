// SPDX-License-Identifier: Apache-2.0
//
// Linearized operators in truncated Fourier form: the per-mode equilibrium
// blocks M_j(b,Omega), the symplectic diagonalizer Q_j, the perturbed
// coefficients V_{k,n}(r) and L_{k,n}(r), column-wise assembly of the full
// linearization J M_r on the m-fold lattice, and its numerical spectrum.
#ifndef AVL_CORE_LINEAR_OPS_HPP
#define AVL_CORE_LINEAR_OPS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "core/contour.hpp"

namespace avl {
namespace lintheory {

// M_j(b,Omega) = (i j/|j|) [[-|j|(Omega+(1-b^2)/2)+1/2, -b^|j|/2],
//                           [ b^|j|/2,                  -|j|Omega-1/2]].
Eigen::Matrix2cd equilibrium_block(int j, double b, double omega);

// Q_j = (1-a_j^2)^{-1/2} [[1, -a_j], [-a_j, 1]] and its inverse (sign-flipped
// off-diagonal).  Elliptic regime only.
Eigen::Matrix2d q_block(int j, double b);
Eigen::Matrix2d q_block_inv(int j, double b);

// max-norm of Q_j^{-1} M_j Q_j - diag(-i Omega_{j,1}, -i Omega_{j,2}).
double diagonalization_residual(int j, double b, double omega);

// Consistency of the scalar-multiplier form with the frequencies:
// max over k of | (j v_k + (-1)^k sgn(j)/2 + (-1)^{k+1} sgn(j) r_j) - Omega_{j,k} |.
double multiplier_identity_residual(int j, double b, double omega);

// V_{k,n}(r)(theta) = int log(A_{k,n}) d/deta [ R_n(eta)/R_k(theta) sin(eta-theta) ] deta.
MeanField perturbed_V(const BoundaryState& st, int k, int n);

// L_{k,n}(r) rho (theta) = int rho(eta) log(A_{k,n}(theta,eta)) deta.
MeanField perturbed_L_apply(const BoundaryState& st, int k, int n, const FourierScalar& rho);

// Dense matrix of J M_r on the m-fold lattice |j| <= N, both components.
// Basis ordering: (j, comp) lexicographic over signed lattice modes.
struct TruncatedOperator {
    int mfold = 0;
    int max_mode = 0;
    std::vector<int> modes;   // signed lattice modes in storage order
    Eigen::MatrixXcd mat;     // dimension 2*modes.size()

    int index_of(int j, int comp) const;  // comp in {1,2}
    Eigen::Matrix2cd block(int j) const;  // assumes block-diagonal structure
};

TruncatedOperator assemble_linearized(const BoundaryState& st, int N);

std::vector<std::complex<double>> spectrum(const TruncatedOperator& op);

} // namespace lintheory
} // namespace avl

#endif
