// SPDX-License-Identifier: Apache-2.0
#include "core/qp_diag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/linear_ops.hpp"

namespace avl {

void QPInitSpec::validate() const {
    sets.validate();
    if (amps1.size() != sets.s1.size() || amps2.size() != sets.s2.size())
        throw std::invalid_argument("amps must list one amplitude per tangential mode");
    for (double a : amps1)
        if (!(a > 0.0)) throw std::invalid_argument("amplitudes must be positive");
    for (double a : amps2)
        if (!(a > 0.0)) throw std::invalid_argument("amplitudes must be positive");
    if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("b out of range (0,1)");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
}

namespace qp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSharpnessMin = 25.0;
constexpr int kMinSamples = 1024;
constexpr int kPadFactor = 8;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

double sharpness_threshold() { return kSharpnessMin; }

PairField linear_qp_initial_data(const QPInitSpec& spec, int max_mode) {
    spec.validate();
    PairField r(spec.sets.mfold, max_mode);
    auto add_mode = [&](int j, double amp, int branch) {
        if (j > max_mode) throw std::invalid_argument("max_mode too small for tangential mode");
        const double aj = dispersion::a_j(j, spec.b);
        const double scale = amp / std::sqrt(1.0 - aj * aj);
        // eigenvectors (1, -a_j) for branch 1 and (-a_j, 1) for branch 2
        const double c1 = (branch == 1) ? scale : -aj * scale;
        const double c2 = (branch == 1) ? -aj * scale : scale;
        r.r1.set_coeff(j, r.r1.coeff(j) + cplx(0.5 * c1, 0.0));
        r.r2.set_coeff(j, r.r2.coeff(j) + cplx(0.5 * c2, 0.0));
    };
    for (size_t i = 0; i < spec.sets.s1.size(); ++i) add_mode(spec.sets.s1[i], spec.amps1[i], 1);
    for (size_t i = 0; i < spec.sets.s2.size(); ++i) add_mode(spec.sets.s2[i], spec.amps2[i], 2);
    return r;
}

ExtractedTone extract_frequency(const std::vector<std::complex<double>>& series, double dt) {
    const int n = static_cast<int>(series.size());
    if (n < kMinSamples) throw std::invalid_argument("extract_frequency: need >= 1024 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("extract_frequency: dt must be > 0");

    const int nfft = next_pow2(kPadFactor * n);
    std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(kTwoPi * i / n));  // periodic Hann
        buf[i] = series[i] * w;
    }
    std::vector<cplx> sp = spectrum_forward(buf);

    std::vector<double> mag(nfft);
    int pmax = 0;
    for (int p = 0; p < nfft; ++p) {
        mag[p] = std::abs(sp[p]);
        if (mag[p] > mag[pmax]) pmax = p;
    }
    std::vector<double> sorted = mag;
    std::nth_element(sorted.begin(), sorted.begin() + nfft / 2, sorted.end());
    const double median = sorted[nfft / 2];

    ExtractedTone tone;
    tone.sharpness = (median > 0.0) ? mag[pmax] / median : std::numeric_limits<double>::infinity();
    if (!(tone.sharpness >= kSharpnessMin))
        throw AmbiguousSignalError("no dominant spectral peak (sharpness below threshold)");

    const double lm = std::log(std::max(mag[(pmax - 1 + nfft) % nfft], 1e-300));
    const double l0 = std::log(std::max(mag[pmax], 1e-300));
    const double lp = std::log(std::max(mag[(pmax + 1) % nfft], 1e-300));
    double delta = 0.0;
    const double denom = lm - 2.0 * l0 + lp;
    if (denom < 0.0) delta = 0.5 * (lm - lp) / denom;
    delta = std::clamp(delta, -0.5, 0.5);

    // signed bin index p; the forward transform puts e^{-i omega t} at
    // p = -omega n dt / 2pi, so flip the sign to report omega
    double p_signed = pmax + delta;
    if (p_signed > nfft / 2.0) p_signed -= nfft;
    tone.omega = -kTwoPi * p_signed / (nfft * dt);
    return tone;
}

FrequencyReport diagnose(const QPInitSpec& spec, double dt, int steps) {
    spec.validate();
    if (steps < kMinSamples) throw std::invalid_argument("diagnose: steps must be >= 1024");

    double eps = 0.0;
    for (double a : spec.amps1) eps += a;
    for (double a : spec.amps2) eps += a;
    if (!(eps <= 1e-2)) throw std::invalid_argument("diagnose: total amplitude must be <= 1e-2");

    int max_tangential = spec.sets.mfold;
    for (int j : spec.sets.s1) max_tangential = std::max(max_tangential, j);
    for (int j : spec.sets.s2) max_tangential = std::max(max_tangential, j);

    PatchParams p;
    p.b = spec.b;
    p.omega = spec.omega;
    p.mfold = spec.sets.mfold;
    p.max_mode = 2 * max_tangential;
    // prefer a power of two; 4N itself is a lattice multiple when it is not
    p.grid_size = next_pow2(4 * p.max_mode);
    if (p.grid_size % p.mfold != 0) p.grid_size = 4 * p.max_mode;
    p.validate();

    BoundaryState st;
    st.params = p;
    st.r = linear_qp_initial_data(spec, p.max_mode);

    struct Track {
        int j, k;
        Eigen::Matrix2d qinv;
        std::vector<cplx> series;
    };
    std::vector<Track> tracks;
    for (int j : spec.sets.s1) tracks.push_back({j, 1, lintheory::q_block_inv(j, spec.b), {}});
    for (int j : spec.sets.s2) tracks.push_back({j, 2, lintheory::q_block_inv(j, spec.b), {}});

    contour::simulate(st, dt, steps, 1, [&](const contour::SimulationSample& s) {
        for (auto& tr : tracks) {
            const cplx c1 = s.r.r1.coeff(tr.j);
            const cplx c2 = s.r.r2.coeff(tr.j);
            const cplx d = (tr.k == 1) ? tr.qinv(0, 0) * c1 + tr.qinv(0, 1) * c2
                                       : tr.qinv(1, 0) * c1 + tr.qinv(1, 1) * c2;
            tr.series.push_back(d);
        }
    });

    const double T = dt * steps;
    FrequencyReport report;
    report.tolerance = 5.0 * eps + kTwoPi / (10.0 * T);
    for (auto& tr : tracks) {
        ExtractedTone tone = extract_frequency(tr.series, dt);
        FrequencyReading rd;
        rd.j = tr.j;
        rd.k = tr.k;
        rd.omega_ref = dispersion::omega_jk(tr.j, tr.k, spec.b, spec.omega);
        rd.omega_extracted = std::abs(tone.omega);
        rd.rel_err = std::abs(rd.omega_extracted - rd.omega_ref) / std::abs(rd.omega_ref);
        rd.peak_sharpness = tone.sharpness;
        report.readings.push_back(rd);
    }
    return report;
}

} // namespace qp
} // namespace avl
