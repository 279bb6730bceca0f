// SPDX-License-Identifier: Apache-2.0
#include "core/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/errors.hpp"

namespace avl {
namespace contour {

namespace {

constexpr double kOrderingMarginFactor = 1e-3;

double b_of(const BoundaryState& st, int k) { return k == 1 ? 1.0 : st.params.b; }

// Grid-sampled geometry of one interface.
struct Boundary {
    std::vector<double> R, Rp;        // radius and its theta-derivative
    std::vector<double> x, y, xp, yp; // w = R e^{i theta} = x + i y and derivatives
    std::vector<cplx> w, wp;          // complex samples of w and dw/dtheta
};

struct Geometry {
    Grid grid;
    std::vector<double> theta;
    Boundary bd[2];  // index k-1
};

Geometry build_geometry(const BoundaryState& st) {
    const PatchParams& p = st.params;
    Geometry g{Grid(p.grid_size, p.mfold), {}, {}};
    g.theta = g.grid.nodes();
    const int M = p.grid_size;
    for (int k = 1; k <= 2; ++k) {
        Boundary& bd = g.bd[k - 1];
        const double bk = b_of(st, k);
        std::vector<double> rv = synthesize(st.r.comp(k), g.grid);
        bd.R.resize(M);
        for (int i = 0; i < M; ++i) {
            const double rad = bk * bk + 2.0 * rv[i];
            if (!(rad > 0.0))
                throw GeometryError("interface radius radicand nonpositive", st.time);
            bd.R[i] = std::sqrt(rad);
        }
        std::vector<cplx> Rc(bd.R.begin(), bd.R.end());
        std::vector<cplx> dR = d_theta_grid(Rc);
        bd.Rp.resize(M);
        for (int i = 0; i < M; ++i) bd.Rp[i] = dR[i].real();
        bd.x.resize(M); bd.y.resize(M); bd.xp.resize(M); bd.yp.resize(M);
        bd.w.resize(M); bd.wp.resize(M);
        for (int i = 0; i < M; ++i) {
            const double c = std::cos(g.theta[i]), s = std::sin(g.theta[i]);
            bd.x[i] = bd.R[i] * c;
            bd.y[i] = bd.R[i] * s;
            bd.xp[i] = bd.Rp[i] * c - bd.R[i] * s;
            bd.yp[i] = bd.Rp[i] * s + bd.R[i] * c;
            bd.w[i] = cplx(bd.x[i], bd.y[i]);
            bd.wp[i] = cplx(bd.xp[i], bd.yp[i]);
        }
    }
    // ordering guard: interfaces stay apart by a fixed fraction of the gap
    const double margin = kOrderingMarginFactor * (1.0 - p.b);
    const double minR1 = *std::min_element(g.bd[0].R.begin(), g.bd[0].R.end());
    const double maxR2 = *std::max_element(g.bd[1].R.begin(), g.bd[1].R.end());
    if (!(minR1 - maxR2 >= margin))
        throw GeometryError("interfaces violate the ordering margin", st.time);
    return g;
}

// Smooth cofactor of the same-boundary chord,
//   v_k(theta_i, eta_j) = sqrt(((R_i - R_j)/(2 b_k sin((eta-theta)/2)))^2 + R_i R_j / b_k^2),
// with the diagonal filled by the difference-quotient limit.
double v_smooth(const Boundary& bd, double bk, int i, int j, double half_sin) {
    if (i == j)
        return std::sqrt(bd.Rp[i] * bd.Rp[i] + bd.R[i] * bd.R[i]) / bk;
    const double dq = (bd.R[i] - bd.R[j]) / (2.0 * bk * half_sin);
    return std::sqrt(dq * dq + bd.R[i] * bd.R[j] / (bk * bk));
}

std::vector<cplx> to_cplx(const std::vector<double>& v) {
    return std::vector<cplx>(v.begin(), v.end());
}

std::vector<double> re(const std::vector<cplx>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
    return out;
}

// log|1-e^{ix}| multiplier on a real grid function.
std::vector<double> k1_conv(const std::vector<double>& g) {
    return re(log_kernel_apply_grid(to_cplx(g), 1.0));
}

// Zero-pads complex grid values to twice the length (spectral interpolation).
std::vector<cplx> pad2(const std::vector<cplx>& v) {
    const int M = static_cast<int>(v.size());
    std::vector<cplx> sp = spectrum_forward(v);
    std::vector<cplx> sp2(2 * M, cplx(0.0, 0.0));
    for (int p = 0; p < M; ++p) {
        const int j = p <= M / 2 ? p : p - M;
        sp2[(j + 2 * M) % (2 * M)] += sp[p];
    }
    return spectrum_inverse(sp2);
}

double trapezoid_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

// internal entry for BoundaryState::check_geometry
void validate_state_geometry(const BoundaryState& st) { build_geometry(st); }

double kernel_A(const BoundaryState& st, int k, int n, double theta, double eta) {
    auto radius = [&](int kk, double th) {
        const double bk = b_of(st, kk);
        double rv = 0.0;
        const FourierScalar& f = st.r.comp(kk);
        for (int j = 1; j <= f.max_mode(); ++j)
            rv += 2.0 * (f.coeff(j) * std::exp(cplx(0.0, j * th))).real();
        const double rad = bk * bk + 2.0 * rv;
        if (!(rad > 0.0)) throw GeometryError("interface radius radicand nonpositive", st.time);
        return std::sqrt(rad);
    };
    const cplx zk = radius(k, theta) * std::exp(cplx(0.0, theta));
    const cplx zn = radius(n, eta) * std::exp(cplx(0.0, eta));
    return std::abs(zk - zn);
}

namespace {

// Integrand table for F_{k,n}: W(theta,eta) = x_k'(theta) y_n'(eta) - y_k'(theta) x_n'(eta).
std::vector<double> rhs_F_grid(const Geometry& g, const BoundaryState& st, int k, int n) {
    const int M = st.params.grid_size;
    const Boundary& bk = g.bd[k - 1];
    const Boundary& bn = g.bd[n - 1];
    std::vector<double> out(M, 0.0);
    if (k == n) {
        const double bkv = b_of(st, k);
        // exact Fourier part: x'(K1*y') - y'(K1*x')
        std::vector<double> Ky = k1_conv(bk.yp);
        std::vector<double> Kx = k1_conv(bk.xp);
        for (int i = 0; i < M; ++i) out[i] = bk.xp[i] * Ky[i] - bk.yp[i] * Kx[i];
        // smooth remainder: mean_eta log(b_k v_k) W; the diagonal weight W vanishes
        for (int i = 0; i < M; ++i) {
            double acc = 0.0;
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                const double hs = std::sin(0.5 * (g.theta[j] - g.theta[i]));
                const double W = bk.xp[i] * bk.yp[j] - bk.yp[i] * bk.xp[j];
                acc += std::log(bkv * v_smooth(bk, bkv, i, j, hs)) * W;
            }
            out[i] += acc / M;
        }
    } else {
        for (int i = 0; i < M; ++i) {
            double acc = 0.0;
            for (int j = 0; j < M; ++j) {
                const double A = std::abs(bk.w[i] - bn.w[j]);
                const double W = bk.xp[i] * bn.yp[j] - bk.yp[i] * bn.xp[j];
                acc += std::log(A) * W;
            }
            out[i] = acc / M;
        }
    }
    return out;
}

} // namespace

FourierScalar rhs_F(const BoundaryState& st, int k, int n) {
    Geometry g = build_geometry(st);
    Grid grid(st.params.grid_size, st.params.mfold);
    return analyze(grid, rhs_F_grid(g, st, k, n), st.params.max_mode);
}

PairField rhs_full(const BoundaryState& st) {
    Geometry g = build_geometry(st);
    Grid grid(st.params.grid_size, st.params.mfold);
    const int M = st.params.grid_size;

    std::vector<double> F11 = rhs_F_grid(g, st, 1, 1);
    std::vector<double> F12 = rhs_F_grid(g, st, 1, 2);
    std::vector<double> F21 = rhs_F_grid(g, st, 2, 1);
    std::vector<double> F22 = rhs_F_grid(g, st, 2, 2);

    PairField out(st.params.mfold, st.params.max_mode);
    for (int k = 1; k <= 2; ++k) {
        std::vector<double> transport =
            re(d_theta_grid(to_cplx(synthesize(st.r.comp(k), grid))));
        std::vector<double> rhs(M);
        for (int i = 0; i < M; ++i) {
            const double fkk = (k == 1) ? F11[i] : F22[i];
            const double fkx = (k == 1) ? F12[i] : F21[i];
            const double sgn = (k == 1) ? 1.0 : -1.0;
            rhs[i] = -st.params.omega * transport[i] + sgn * fkk - sgn * fkx;
        }
        out.comp(k) = analyze(grid, rhs, st.params.max_mode);
    }
    return out;
}

double rhs_mean_defect(const BoundaryState& st) {
    Geometry g = build_geometry(st);
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
        std::vector<double> fkk = rhs_F_grid(g, st, k, k);
        std::vector<double> fkx = rhs_F_grid(g, st, k, 3 - k);
        // the transport term -Omega d_theta r_k is spectrally mean-free
        const double mean = trapezoid_mean(fkk) - trapezoid_mean(fkx);
        worst = std::max(worst, std::abs(mean));
    }
    return worst;
}

MeanField stream_on_boundary(const BoundaryState& st, int k) {
    Geometry g = build_geometry(st);
    const int M = st.params.grid_size;
    const cplx quarter_i = cplx(0.0, -0.25);  // 1/(4i)

    std::vector<cplx> psi(M, cplx(0.0, 0.0));
    for (int n = 1; n <= 2; ++n) {
        const double sgn = (n == 1) ? 1.0 : -1.0;
        const Boundary& bn = g.bd[n - 1];
        const Boundary& bkk = g.bd[k - 1];
        std::vector<cplx> term(M, cplx(0.0, 0.0));
        if (n == k) {
            const double bkv = b_of(st, n);
            // singular part on the doubled grid: products of three boundary
            // fields, so pad to 2M to keep the multiplier application exact
            std::vector<cplx> w2 = pad2(bn.w), wp2 = pad2(bn.wp);
            const int M2 = 2 * M;
            std::vector<cplx> cb(M2), cbwp(M2);
            for (int i = 0; i < M2; ++i) {
                cb[i] = std::conj(w2[i]);
                cbwp[i] = cb[i] * wp2[i];
            }
            std::vector<cplx> Kcbwp = log_kernel_apply_grid(cbwp, 1.0);
            std::vector<cplx> Kwp = log_kernel_apply_grid(wp2, 1.0);
            for (int i = 0; i < M; ++i)
                term[i] = 2.0 * (Kcbwp[2 * i] - cb[2 * i] * Kwp[2 * i]);
            // smooth remainder; diagonal integrand vanishes with the chord
            for (int i = 0; i < M; ++i) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < M; ++j) {
                    if (j == i) continue;
                    const double hs = std::sin(0.5 * (g.theta[j] - g.theta[i]));
                    const double v = v_smooth(bn, bkv, i, j, hs);
                    acc += (std::conj(bn.w[j]) - std::conj(bn.w[i])) *
                           (2.0 * std::log(bkv * v) - 1.0) * bn.wp[j];
                }
                term[i] += acc / static_cast<double>(M);
            }
        } else {
            for (int i = 0; i < M; ++i) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < M; ++j) {
                    const double A2 = std::norm(bn.w[j] - bkk.w[i]);
                    acc += (std::conj(bn.w[j]) - std::conj(bkk.w[i])) *
                           (std::log(A2) - 1.0) * bn.wp[j];
                }
                term[i] = acc / static_cast<double>(M);
            }
        }
        for (int i = 0; i < M; ++i) psi[i] += sgn * quarter_i * term[i];
    }

    std::vector<double> vals = re(psi);
    MeanField out;
    out.mean = trapezoid_mean(vals);
    Grid grid(st.params.grid_size, st.params.mfold);
    std::vector<double> osc(vals);
    for (double& v : osc) v -= out.mean;
    out.osc = analyze(grid, osc, st.params.max_mode);
    return out;
}

double impulse(const BoundaryState& st) {
    Grid grid(st.params.grid_size, st.params.mfold);
    std::vector<double> r1 = synthesize(st.r.r1, grid);
    std::vector<double> r2 = synthesize(st.r.r2, grid);
    const double b = st.params.b;
    double s1 = 0.0, s2 = 0.0;
    for (size_t i = 0; i < r1.size(); ++i) {
        const double a1 = 1.0 + 2.0 * r1[i];
        const double a2 = b * b + 2.0 * r2[i];
        s1 += a1 * a1;
        s2 += a2 * a2;
    }
    const double M = static_cast<double>(r1.size());
    return 0.25 * (s1 - s2) / M;
}

double energy(const BoundaryState& st) {
    Geometry g = build_geometry(st);
    const int M = st.params.grid_size;

    cplx E(0.0, 0.0);
    for (int k = 1; k <= 2; ++k) {
        for (int n = 1; n <= 2; ++n) {
            const double sgn = ((k + n) % 2 == 0) ? 1.0 : -1.0;
            const Boundary& bk = g.bd[k - 1];
            const Boundary& bn = g.bd[n - 1];
            cplx I(0.0, 0.0);
            if (k == n) {
                const double bkv = b_of(st, k);
                // exact Fourier part of the double integral, doubled grid for
                // the cubic products conj(w)^2 w'
                std::vector<cplx> w2 = pad2(bk.w), wp2 = pad2(bk.wp);
                const int M2 = 2 * M;
                std::vector<cplx> cb(M2), cbwp(M2), cb2wp(M2);
                for (int i = 0; i < M2; ++i) {
                    cb[i] = std::conj(w2[i]);
                    cbwp[i] = cb[i] * wp2[i];
                    cb2wp[i] = cb[i] * cbwp[i];
                }
                std::vector<cplx> K_cb2wp = log_kernel_apply_grid(cb2wp, 1.0);
                std::vector<cplx> K_cbwp = log_kernel_apply_grid(cbwp, 1.0);
                std::vector<cplx> K_wp = log_kernel_apply_grid(wp2, 1.0);
                cplx sing(0.0, 0.0);
                for (int i = 0; i < M2; ++i)
                    sing += wp2[i] * (K_cb2wp[i] - 2.0 * cb[i] * K_cbwp[i] + cb[i] * cb[i] * K_wp[i]);
                I += 2.0 * sing / static_cast<double>(M2);
                // smooth part on the original grid; diagonal vanishes
                cplx smooth(0.0, 0.0);
                for (int i = 0; i < M; ++i) {
                    for (int j = 0; j < M; ++j) {
                        if (j == i) continue;
                        const double hs = std::sin(0.5 * (g.theta[j] - g.theta[i]));
                        const double v = v_smooth(bk, bkv, i, j, hs);
                        const cplx d = std::conj(bk.w[j]) - std::conj(bk.w[i]);
                        smooth += d * d * (2.0 * std::log(bkv * v) - 1.5) * bk.wp[i] * bk.wp[j];
                    }
                }
                I += smooth / static_cast<double>(M) / static_cast<double>(M);
            } else {
                for (int i = 0; i < M; ++i) {
                    for (int j = 0; j < M; ++j) {
                        const cplx d = std::conj(bn.w[j]) - std::conj(bk.w[i]);
                        const double A2 = std::norm(bk.w[i] - bn.w[j]);
                        I += d * d * (std::log(A2) - 1.5) * bk.wp[i] * bn.wp[j];
                    }
                }
                I /= static_cast<double>(M) * static_cast<double>(M);
            }
            E += sgn * I;
        }
    }
    return E.real() / 16.0;
}

double hamiltonian(const BoundaryState& st) {
    return -0.5 * (energy(st) + st.params.omega * impulse(st));
}

double max_linear_frequency(const PatchParams& p) {
    double w = 0.0;
    for (int j = p.mfold; j <= p.max_mode; j += p.mfold)
        for (int k = 1; k <= 2; ++k)
            w = std::max(w, std::abs(dispersion::omega_jk(j, k, p.b, p.omega)));
    return w;
}

namespace {

PairField axpy(const PairField& a, double c, const PairField& b) {
    PairField out = a;
    for (int k = 1; k <= 2; ++k) {
        FourierScalar scaled = b.comp(k);
        scaled *= c;
        out.comp(k) += scaled;
    }
    return out;
}

} // namespace

BoundaryState step_rk4(const BoundaryState& st, double dt) {
    if (!(dt != 0.0)) throw std::invalid_argument("dt must be nonzero");
    BoundaryState tmp = st;
    PairField k1 = rhs_full(st);
    tmp.r = axpy(st.r, 0.5 * dt, k1);
    PairField k2 = rhs_full(tmp);
    tmp.r = axpy(st.r, 0.5 * dt, k2);
    PairField k3 = rhs_full(tmp);
    tmp.r = axpy(st.r, dt, k3);
    PairField k4 = rhs_full(tmp);

    BoundaryState out = st;
    out.r = axpy(st.r, dt / 6.0, k1);
    out.r = axpy(out.r, dt / 3.0, k2);
    out.r = axpy(out.r, dt / 3.0, k3);
    out.r = axpy(out.r, dt / 6.0, k4);
    out.time = st.time + dt;
    return out;
}

void simulate(const BoundaryState& initial, double dt, int steps, int sample_every,
              const std::function<void(const SimulationSample&)>& on_sample) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (sample_every < 1) throw std::invalid_argument("sample-every must be >= 1");
    if (dt * max_linear_frequency(initial.params) > 1.0)
        throw std::invalid_argument("dt violates the CFL guard dt*max|Omega_jk| <= 1");

    auto emit = [&](const BoundaryState& st) {
        SimulationSample s;
        s.t = st.time;
        s.r = st.r;
        s.conserved.area1 = st.r.r1.coeff(0).real();
        s.conserved.area2 = st.r.r2.coeff(0).real();
        s.conserved.impulse = impulse(st);
        s.conserved.energy = energy(st);
        s.conserved.hamiltonian = hamiltonian(st);
        on_sample(s);
    };

    BoundaryState st = initial;
    emit(st);
    for (int n = 1; n <= steps; ++n) {
        st = step_rk4(st, dt);
        if (n % sample_every == 0 || n == steps) emit(st);
    }
}

} // namespace contour

void BoundaryState::check_geometry() const { contour::validate_state_geometry(*this); }

} // namespace avl
