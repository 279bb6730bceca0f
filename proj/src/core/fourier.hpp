// SPDX-License-Identifier: Apache-2.0
//
// Periodic spectral substrate: real scalar fields on T stored as complex
// Fourier coefficients restricted to an m-fold lattice, plus the transforms
// and Fourier-multiplier operators everything else is built from.
//
// Conventions: all integrals over T are normalized averages,
// int f = (1/2pi) \int_0^{2pi} f, so coeff(j) = int f(theta) e^{-ij theta}
// and every grid quadrature weight is 1/M.
#ifndef AVL_CORE_FOURIER_HPP
#define AVL_CORE_FOURIER_HPP

#include <complex>
#include <string>
#include <vector>

namespace avl {

using cplx = std::complex<double>;

// Equispaced angles theta_i = 2 pi i / M.  M must be a positive multiple of
// the fold count m so the symmetry theta -> theta + 2pi/m maps nodes to
// nodes.  The fast transform kicks in when M is a power of two; otherwise a
// direct DFT is used.
struct Grid {
    int size = 0;   // M
    int mfold = 1;  // m

    Grid(int M, int m);
    std::vector<double> nodes() const;
};

// One real periodic function with zero mean, coefficients on the m-fold
// lattice, |j| <= max_mode.  Invariants enforced on every write:
//   reality          coeff(-j) == conj(coeff(j))
//   m-fold support   coeff(j) != 0  =>  j in mZ
//   zero mean        coeff(0) == 0
class FourierScalar {
public:
    FourierScalar() = default;
    FourierScalar(int mfold, int max_mode);

    int mfold() const { return mfold_; }
    int max_mode() const { return nmax_; }

    cplx coeff(int j) const;
    // Stores v at +j and conj(v) at -j.  Rejects writes that would violate
    // an invariant.
    void set_coeff(int j, cplx v);

    FourierScalar& operator+=(const FourierScalar& o);
    FourierScalar& operator*=(double a);

    bool is_zero(double tol = 0.0) const;

    // Lines "j,re,im" for j >= 0, floats with 17 significant digits.
    std::string to_csv() const;

private:
    int mfold_ = 1;
    int nmax_ = 0;
    std::vector<cplx> c_;  // index j + nmax_
};

struct PairField {
    FourierScalar r1, r2;

    PairField() = default;
    PairField(int mfold, int max_mode) : r1(mfold, max_mode), r2(mfold, max_mode) {}
    const FourierScalar& comp(int k) const { return k == 1 ? r1 : r2; }
    FourierScalar& comp(int k) { return k == 1 ? r1 : r2; }
};

// Discrete analysis of M real samples: coeff(j) = (1/M) sum_i f_i e^{-ij theta_i}
// for lattice modes |j| <= max_mode; off-lattice and mean content is
// projected away.  Rejects non-finite samples.
FourierScalar analyze(const Grid& grid, const std::vector<double>& samples, int max_mode);

// Pointwise synthesis sum_j coeff(j) e^{ij theta_i}; requires max_mode <= M/2.
std::vector<double> synthesize(const FourierScalar& f, const Grid& grid);

// Keeps modes |j| <= N, zeroes the rest.
FourierScalar project(const FourierScalar& f, int N);

// ( sum_j <j>^{2s} |coeff(j)|^2 )^{1/2},  <j> = max(1, |j|).
double sobolev_norm(const FourierScalar& f, double s);

// K_x * f with K_x(theta) = log|1 - x e^{i theta}|:  coeff(j) -> -x^|j|/(2|j|).
// Requires x in (0,1].
FourierScalar log_kernel_convolve(const FourierScalar& f, double x);

// coeff(j) -> -i sgn(j) coeff(j).
FourierScalar hilbert(const FourierScalar& f);

// coeff(j) -> i j coeff(j).
FourierScalar d_theta(const FourierScalar& f);

// ---- full-spectrum helpers (no lattice restriction); used by the kernel
// quadratures, which mix lattice fields with cos/sin factors. ----

// Complex spectrum c_p, p = 0..M-1 in standard DFT order, average-normalized:
// c_p = (1/M) sum_i v_i e^{-ip theta_i}.
std::vector<cplx> spectrum_forward(const std::vector<cplx>& values);
std::vector<cplx> spectrum_inverse(const std::vector<cplx>& spectrum);

// Applies the multiplier -x^{|p|}/(2|p|) (0 at p = 0) on the full spectrum
// of complex grid values; signed mode of slot p is p <= M/2 ? p : p - M.
std::vector<cplx> log_kernel_apply_grid(const std::vector<cplx>& values, double x);

// Spectral d/dtheta on complex grid values (Nyquist slot zeroed).
std::vector<cplx> d_theta_grid(const std::vector<cplx>& values);

} // namespace avl

#endif
