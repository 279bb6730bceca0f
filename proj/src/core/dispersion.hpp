// SPDX-License-Identifier: Apache-2.0
//
// Closed-form spectral data of the equilibrium annulus b < |z| < 1 rotating
// at angular velocity Omega: threshold polynomial, discriminants, eigenvalue
// frequencies, eigenvector coefficients, bifurcation values, and
// finite-difference transversality margins over the modulus b.
#ifndef AVL_CORE_DISPERSION_HPP
#define AVL_CORE_DISPERSION_HPP

#include <utility>
#include <vector>

namespace avl {

struct PatchParams {
    double b = 0.5;
    double omega = 1.0;
    int mfold = 4;
    int max_mode = 32;  // N
    int grid_size = 128;  // M

    void validate() const;  // throws std::invalid_argument naming the field
};

// Disjoint finite sets of positive mode indices, all multiples of mfold.
struct TangentialSets {
    int mfold = 3;
    std::vector<int> s1, s2;

    void validate() const;
    int dim() const { return static_cast<int>(s1.size() + s2.size()); }
    bool in_s(int k, int j) const;  // |j| listed in S_k
};

namespace dispersion {

// b^m + 1 - m (1 - b^2)/2.  Negative exactly where the m-fold pair of
// bifurcation velocities exists.
double f_poly(int m, double b);

// Delta_j(b) = b^{2|j|} - ((1-b^2)/2 |j| - 1)^2; even in j.
double delta(int j, double b);

// Unique zero of b -> f_poly(n, b) in (0,1), bisection to 1e-14.
double root_b_n(int n);

// Smallest n >= 3 with root_b_n(n) > b_star; rejects b_star within 1e-12 of
// a threshold root.
int m_star(double b_star);

// Eigenvalue frequency (elliptic regime only; throws RegimeError otherwise):
// Omega_{j,k}(b) = sgn(j) [ (Omega + (1-b^2)/4)|j| + (-1)^{k+1}/2 sqrt(-Delta_j) ].
double omega_jk(int j, int k, double b, double omega);

// a_j(b) = b^|j| / ((1-b^2)/2 |j| - 1 + sqrt(-Delta_j(b))); even in j.
double a_j(int j, double b);

// r_j(b) = ((1-b^2)/2 |j| - 1)/2 * (sqrt(1 - b^{2|j|}((1-b^2)/2 |j| - 1)^{-2}) - 1).
double asymptotic_r_j(int j, double b);

// Pair (Omega_m^-, Omega_m^+) = (1-b^2)/4 -+ sqrt(-Delta_m)/(2m); requires
// f_poly(m, b) <= 0 (equality returns the double value).
std::pair<double, double> omega_pm(int m, double b);

// Threshold velocity above which j -> Omega_{j,2}(b) is increasing.
double omega_star(int m, double b_star);

// ((Omega_{j,1})_{j in S1}, (Omega_{j,2})_{j in S2}).
std::vector<double> equilibrium_vector(const TangentialSets& sets, double b, double omega);

// min over a b-grid of |Omega_{j,k} - Omega_{j',k}| / |j - j'|.
double separation_margin(int j, int jp, int k, double b_lo, double b_hi, double omega);

enum class RussmannKind { Freq, Transport, First, SecondSame, SecondCross };

// inf over a dense b-grid of max_{q' <= q0} |d^q'/db^q' (combination)|,
// normalized by <l> (<l,j,j0> for SecondCross).  Derivatives are order-4
// central differences on the closed-form curves; q0 is capped at 3.
// Kinds needing one component take the minimum over admissible k in {1,2}.
double russmann_margin(const std::vector<int>& l, int j, int j0, RussmannKind kind,
                       const TangentialSets& sets, double b_lo, double b_hi,
                       double omega, int q0);

} // namespace dispersion
} // namespace avl

#endif
