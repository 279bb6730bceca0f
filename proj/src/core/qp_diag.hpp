// SPDX-License-Identifier: Apache-2.0
//
// Quasi-periodic diagnostics: the linear-level initial data built on the
// per-mode eigenvectors, windowed frequency extraction from coefficient
// time series, and the end-to-end comparison against Omega_{j,k}(b).
#ifndef AVL_CORE_QP_DIAG_HPP
#define AVL_CORE_QP_DIAG_HPP

#include <complex>
#include <vector>

#include "core/contour.hpp"

namespace avl {

struct QPInitSpec {
    TangentialSets sets;
    std::vector<double> amps1, amps2;  // one positive amplitude per mode of S1, S2
    double b = 0.5;
    double omega = 1.0;

    void validate() const;
};

struct FrequencyReading {
    int j = 0, k = 0;
    double omega_ref = 0.0;
    double omega_extracted = 0.0;  // absolute value of the extracted rotation rate
    double rel_err = 0.0;
    double peak_sharpness = 0.0;
};

struct FrequencyReport {
    std::vector<FrequencyReading> readings;
    double tolerance = 0.0;  // tol(eps) = 5 eps + 2 pi/(10 T)
};

namespace qp {

// r(0,theta) = sum_{j in S1} a_{j,1}/sqrt(1-a_j^2) (1, -a_j) cos(j theta)
//            + sum_{j in S2} a_{j,2}/sqrt(1-a_j^2) (-a_j, 1) cos(j theta).
PairField linear_qp_initial_data(const QPInitSpec& spec, int max_mode);

struct ExtractedTone {
    double omega = 0.0;      // signed, under the e^{-i omega t} convention
    double sharpness = 0.0;  // peak magnitude over median magnitude
};

// Dominant rotation rate of a complex series by Hann-windowed spectrum with
// zero padding and three-point parabolic interpolation on log magnitude.
// Requires >= 1024 samples; throws AmbiguousSignalError when the peak
// sharpness falls below the frozen threshold.
ExtractedTone extract_frequency(const std::vector<std::complex<double>>& series, double dt);

// Simulates from the linear initial data, projects each tracked mode pair by
// Q_j^{-1}, extracts per-branch frequencies and compares to Omega_{j,k}(b).
FrequencyReport diagnose(const QPInitSpec& spec, double dt, int steps);

// Frozen extraction constants.
double sharpness_threshold();

} // namespace qp
} // namespace avl

#endif
