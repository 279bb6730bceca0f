// SPDX-License-Identifier: Apache-2.0
#include "core/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace avl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey, sign = -1 forward.
void fft_pow2(std::vector<cplx>& a, int sign) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / len;
        const cplx wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cplx> dft_direct(const std::vector<cplx>& a, int sign) {
    const int n = static_cast<int>(a.size());
    std::vector<cplx> out(n);
    for (int p = 0; p < n; ++p) {
        cplx acc(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            const double ang = sign * kTwoPi * p * i / n;
            acc += a[i] * cplx(std::cos(ang), std::sin(ang));
        }
        out[p] = acc;
    }
    return out;
}

int signed_mode(int p, int M) { return p <= M / 2 ? p : p - M; }

} // namespace

Grid::Grid(int M, int m) : size(M), mfold(m) {
    if (m < 1) throw std::invalid_argument("grid: mfold must be >= 1");
    if (M < 4) throw std::invalid_argument("grid: size must be >= 4");
    if (M % m != 0) throw std::invalid_argument("grid: size must be a multiple of mfold");
}

std::vector<double> Grid::nodes() const {
    std::vector<double> th(size);
    for (int i = 0; i < size; ++i) th[i] = kTwoPi * i / size;
    return th;
}

FourierScalar::FourierScalar(int mfold, int max_mode) : mfold_(mfold), nmax_(max_mode) {
    if (mfold < 1) throw std::invalid_argument("fourier: mfold must be >= 1");
    if (max_mode < 0) throw std::invalid_argument("fourier: max_mode must be >= 0");
    c_.assign(2 * max_mode + 1, cplx(0.0, 0.0));
}

cplx FourierScalar::coeff(int j) const {
    if (std::abs(j) > nmax_) return cplx(0.0, 0.0);
    return c_[j + nmax_];
}

void FourierScalar::set_coeff(int j, cplx v) {
    if (std::abs(j) > nmax_) throw std::invalid_argument("fourier: mode out of range");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("fourier: non-finite coefficient");
    if (v != cplx(0.0, 0.0)) {
        if (j == 0) throw std::invalid_argument("fourier: zero-mean invariant (coeff(0) must stay 0)");
        if (j % mfold_ != 0) throw std::invalid_argument("fourier: mode off the m-fold lattice");
    }
    if (j == 0) {
        c_[nmax_] = cplx(0.0, 0.0);
        return;
    }
    c_[j + nmax_] = v;
    c_[-j + nmax_] = std::conj(v);
}

FourierScalar& FourierScalar::operator+=(const FourierScalar& o) {
    for (int j = 1; j <= nmax_; ++j) {
        cplx s = coeff(j) + o.coeff(j);
        if (s != cplx(0.0, 0.0) && j % mfold_ != 0)
            throw std::invalid_argument("fourier: mode off the m-fold lattice");
        c_[j + nmax_] = s;
        c_[-j + nmax_] = std::conj(s);
    }
    return *this;
}

FourierScalar& FourierScalar::operator*=(double a) {
    for (auto& v : c_) v *= a;
    c_[nmax_] = cplx(0.0, 0.0);
    return *this;
}

bool FourierScalar::is_zero(double tol) const {
    for (const auto& v : c_)
        if (std::abs(v) > tol) return false;
    return true;
}

std::string FourierScalar::to_csv() const {
    std::string out = "j,re,im\n";
    char buf[128];
    for (int j = 0; j <= nmax_; ++j) {
        cplx v = coeff(j);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", j, v.real(), v.imag());
        out += buf;
    }
    return out;
}

std::vector<cplx> spectrum_forward(const std::vector<cplx>& values) {
    const int M = static_cast<int>(values.size());
    std::vector<cplx> a = values;
    if (is_pow2(M)) {
        fft_pow2(a, -1);
    } else {
        a = dft_direct(values, -1);
    }
    for (auto& v : a) v /= static_cast<double>(M);
    return a;
}

std::vector<cplx> spectrum_inverse(const std::vector<cplx>& spectrum) {
    const int M = static_cast<int>(spectrum.size());
    std::vector<cplx> a = spectrum;
    if (is_pow2(M)) {
        fft_pow2(a, +1);
    } else {
        a = dft_direct(spectrum, +1);
    }
    return a;
}

std::vector<cplx> log_kernel_apply_grid(const std::vector<cplx>& values, double x) {
    if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("log kernel: x must lie in (0,1]");
    const int M = static_cast<int>(values.size());
    std::vector<cplx> sp = spectrum_forward(values);
    for (int p = 0; p < M; ++p) {
        const int j = signed_mode(p, M);
        sp[p] *= (j == 0) ? 0.0 : -std::pow(x, std::abs(j)) / (2.0 * std::abs(j));
    }
    return spectrum_inverse(sp);
}

std::vector<cplx> d_theta_grid(const std::vector<cplx>& values) {
    const int M = static_cast<int>(values.size());
    std::vector<cplx> sp = spectrum_forward(values);
    for (int p = 0; p < M; ++p) {
        const int j = signed_mode(p, M);
        sp[p] *= (2 * j == M) ? cplx(0.0, 0.0) : cplx(0.0, static_cast<double>(j));
    }
    return spectrum_inverse(sp);
}

FourierScalar analyze(const Grid& grid, const std::vector<double>& samples, int max_mode) {
    const int M = grid.size;
    if (static_cast<int>(samples.size()) != M)
        throw std::invalid_argument("analyze: sample count must equal grid size");
    if (max_mode > (M - 1) / 2)
        throw std::invalid_argument("analyze: max_mode exceeds grid Nyquist range");
    for (double v : samples)
        if (!std::isfinite(v)) throw std::invalid_argument("analyze: non-finite sample");

    std::vector<cplx> cv(samples.begin(), samples.end());
    std::vector<cplx> sp = spectrum_forward(cv);
    FourierScalar f(grid.mfold, max_mode);
    for (int j = grid.mfold; j <= max_mode; j += grid.mfold)
        f.set_coeff(j, sp[j]);
    return f;
}

std::vector<double> synthesize(const FourierScalar& f, const Grid& grid) {
    const int M = grid.size;
    if (f.max_mode() > M / 2) throw std::invalid_argument("synthesize: aliasing (max_mode > M/2)");
    std::vector<cplx> sp(M, cplx(0.0, 0.0));
    for (int j = 1; j <= f.max_mode(); ++j) {
        sp[j % M] += f.coeff(j);
        sp[(M - j % M) % M] += f.coeff(-j);
    }
    std::vector<cplx> vals = spectrum_inverse(sp);
    std::vector<double> out(M);
    for (int i = 0; i < M; ++i) out[i] = vals[i].real();
    return out;
}

FourierScalar project(const FourierScalar& f, int N) {
    if (N < 0) throw std::invalid_argument("project: N must be >= 0");
    FourierScalar out(f.mfold(), N);
    for (int j = 1; j <= N; ++j)
        if (std::abs(f.coeff(j)) != 0.0) out.set_coeff(j, f.coeff(j));
    return out;
}

double sobolev_norm(const FourierScalar& f, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("sobolev_norm: s must be finite");
    double acc = 0.0;
    for (int j = 1; j <= f.max_mode(); ++j) {
        const double w = std::pow(static_cast<double>(j), 2.0 * s);
        acc += 2.0 * w * std::norm(f.coeff(j));
    }
    return std::sqrt(acc);
}

FourierScalar log_kernel_convolve(const FourierScalar& f, double x) {
    if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("log kernel: x must lie in (0,1]");
    FourierScalar out(f.mfold(), f.max_mode());
    for (int j = 1; j <= f.max_mode(); ++j) {
        cplx c = f.coeff(j);
        if (c != cplx(0.0, 0.0)) out.set_coeff(j, -std::pow(x, j) / (2.0 * j) * c);
    }
    return out;
}

FourierScalar hilbert(const FourierScalar& f) {
    FourierScalar out(f.mfold(), f.max_mode());
    for (int j = 1; j <= f.max_mode(); ++j) {
        cplx c = f.coeff(j);
        if (c != cplx(0.0, 0.0)) out.set_coeff(j, cplx(0.0, -1.0) * c);
    }
    return out;
}

FourierScalar d_theta(const FourierScalar& f) {
    FourierScalar out(f.mfold(), f.max_mode());
    for (int j = 1; j <= f.max_mode(); ++j) {
        cplx c = f.coeff(j);
        if (c != cplx(0.0, 0.0)) out.set_coeff(j, cplx(0.0, static_cast<double>(j)) * c);
    }
    return out;
}

} // namespace avl
