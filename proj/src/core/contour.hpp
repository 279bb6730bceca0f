// SPDX-License-Identifier: Apache-2.0
//
// Nonlinear evolution of the two patch interfaces
//   R_k(theta) = sqrt(b_k^2 + 2 r_k(theta)),  b_1 = 1, b_2 = b,
// in the frame rotating at Omega: kernels, integral right-hand sides,
// stream function on the boundary, conserved quantities, and RK4 stepping.
//
// Same-boundary integrals split the chord kernel as
//   A_{k,k}(theta,eta) = 2 b_k |sin((eta-theta)/2)| v_k(theta,eta)
// with v_k smooth; the log|2 sin| factor is applied exactly in Fourier
// (multiplier -1/(2|p|)) and the smooth remainder by the trapezoid rule.
#ifndef AVL_CORE_CONTOUR_HPP
#define AVL_CORE_CONTOUR_HPP

#include <functional>
#include <vector>

#include "core/dispersion.hpp"
#include "core/fourier.hpp"

namespace avl {

struct BoundaryState {
    PairField r;
    PatchParams params;
    double time = 0.0;

    // Throws GeometryError when a radicand drops below zero or the ordering
    // margin min R1 - max R2 >= 1e-3 (1-b) fails at grid resolution.
    void check_geometry() const;
};

struct ConservedReport {
    double area1 = 0.0, area2 = 0.0;  // means of r1, r2 (identically 0 by type)
    double impulse = 0.0;
    double energy = 0.0;
    double hamiltonian = 0.0;
};

// Scalar boundary field that may carry a constant part (the zero-mean
// FourierScalar cannot): value(theta) = mean + osc(theta).
struct MeanField {
    double mean = 0.0;
    FourierScalar osc;
};

namespace contour {

// Chord length |R_k(theta) e^{i theta} - R_n(eta) e^{i eta}|.
double kernel_A(const BoundaryState& st, int k, int n, double theta, double eta);

// F_{k,n}[r](theta) = int log(A_{k,n}) d2/(dtheta deta)[R_k(theta) R_n(eta) sin(eta-theta)] deta,
// dealiased back to |j| <= N.
FourierScalar rhs_F(const BoundaryState& st, int k, int n);

// d/dt r_k = -Omega d_theta r_k + (-1)^{k+1} F_{k,k} + (-1)^k F_{k,3-k}.
PairField rhs_full(const BoundaryState& st);

// Monitor for the area-conservation differential form: max over components
// of |grid mean of the raw rhs| before the zero-mean projection.
double rhs_mean_defect(const BoundaryState& st);

// Stream function on interface k via the two boundary integrals.
MeanField stream_on_boundary(const BoundaryState& st, int k);

// J(r) = (1/4) int (1+2r_1)^2 - (1/4) int (b^2+2r_2)^2   (average convention).
double impulse(const BoundaryState& st);

// Kinetic energy, reduced twice by Stokes to boundary integrals with the
// kernel (conj dz)^2 (log|dz|^2 - 3/2) / 16 and the same singular splitting.
double energy(const BoundaryState& st);

// H = -(E + Omega J)/2.
double hamiltonian(const BoundaryState& st);

// Largest |Omega_{j,k}(b)| over the truncated lattice; the CFL guard is
// dt * this <= 1.
double max_linear_frequency(const PatchParams& p);

BoundaryState step_rk4(const BoundaryState& st, double dt);

struct SimulationSample {
    double t = 0.0;
    PairField r;
    ConservedReport conserved;
};

// Classical RK4 run; invokes on_sample at t=0, every sample_every steps, and
// at the end.  A geometry failure propagates as GeometryError carrying the
// time; samples already emitted stand.
void simulate(const BoundaryState& initial, double dt, int steps, int sample_every,
              const std::function<void(const SimulationSample&)>& on_sample);

} // namespace contour
} // namespace avl

#endif
