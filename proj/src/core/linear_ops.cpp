// SPDX-License-Identifier: Apache-2.0
#include "core/linear_ops.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace avl {
namespace lintheory {

using cd = std::complex<double>;

Eigen::Matrix2cd equilibrium_block(int j, double b, double omega) {
    if (j == 0) throw std::invalid_argument("equilibrium_block: j must be nonzero");
    const double aj = std::abs(j);
    const double bj = std::pow(b, aj);
    const cd pref = cd(0.0, j > 0 ? 1.0 : -1.0);
    Eigen::Matrix2cd m;
    m << pref * (-aj * (omega + 0.5 * (1.0 - b * b)) + 0.5), pref * (-0.5 * bj),
         pref * (0.5 * bj),                                  pref * (-aj * omega - 0.5);
    return m;
}

Eigen::Matrix2d q_block(int j, double b) {
    const double a = dispersion::a_j(j, b);
    if (!(a >= 0.0) || !(a < 1.0)) throw RegimeError("q_block: a_j outside [0,1)");
    const double s = 1.0 / std::sqrt(1.0 - a * a);
    Eigen::Matrix2d q;
    q << s, -a * s, -a * s, s;
    return q;
}

Eigen::Matrix2d q_block_inv(int j, double b) {
    const double a = dispersion::a_j(j, b);
    if (!(a >= 0.0) || !(a < 1.0)) throw RegimeError("q_block_inv: a_j outside [0,1)");
    const double s = 1.0 / std::sqrt(1.0 - a * a);
    Eigen::Matrix2d q;
    q << s, a * s, a * s, s;
    return q;
}

double diagonalization_residual(int j, double b, double omega) {
    const Eigen::Matrix2cd mj = equilibrium_block(j, b, omega);
    const Eigen::Matrix2d q = q_block(j, b);
    const Eigen::Matrix2d qi = q_block_inv(j, b);
    Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
    diag(0, 0) = cd(0.0, -dispersion::omega_jk(j, 1, b, omega));
    diag(1, 1) = cd(0.0, -dispersion::omega_jk(j, 2, b, omega));
    const Eigen::Matrix2cd res = qi.cast<cd>() * mj * q.cast<cd>() - diag;
    return res.cwiseAbs().maxCoeff();
}

double multiplier_identity_residual(int j, double b, double omega) {
    if (j == 0) throw std::invalid_argument("multiplier residual: j must be nonzero");
    const double sgn = j > 0 ? 1.0 : -1.0;
    const double rj = dispersion::asymptotic_r_j(j, b);
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
        const double vk = omega + (2 - k) * 0.5 * (1.0 - b * b);
        const double pm = (k == 1) ? 1.0 : -1.0;
        const double lhs = j * vk - pm * 0.5 * sgn + pm * sgn * rj;
        const double ref = dispersion::omega_jk(j, k, b, omega);
        worst = std::max(worst, std::abs(lhs - ref));
    }
    return worst;
}

namespace {

// Shared quadrature: int log(A_{k,n}(theta,eta)) g(eta) deta for a complex
// grid function g, with the sin-splitting on the same boundary.  Geometry is
// resampled here; callers batch via the grid-level helpers below when speed
// matters (assembly reuses this path, column count is small).
struct BoundaryGeom {
    std::vector<double> theta, R, Rp;
    std::vector<cplx> w;
};

BoundaryGeom boundary_geom(const BoundaryState& st, int k) {
    Grid grid(st.params.grid_size, st.params.mfold);
    BoundaryGeom g;
    g.theta = grid.nodes();
    const double bk = (k == 1) ? 1.0 : st.params.b;
    std::vector<double> rv = synthesize(st.r.comp(k), grid);
    const int M = st.params.grid_size;
    g.R.resize(M);
    for (int i = 0; i < M; ++i) {
        const double rad = bk * bk + 2.0 * rv[i];
        if (!(rad > 0.0)) throw GeometryError("interface radius radicand nonpositive", st.time);
        g.R[i] = std::sqrt(rad);
    }
    std::vector<cplx> Rc(g.R.begin(), g.R.end());
    std::vector<cplx> dR = d_theta_grid(Rc);
    g.Rp.resize(M);
    g.w.resize(M);
    for (int i = 0; i < M; ++i) {
        g.Rp[i] = dR[i].real();
        g.w[i] = g.R[i] * std::exp(cplx(0.0, g.theta[i]));
    }
    return g;
}

double v_smooth_of(const BoundaryGeom& g, double bk, int i, int j) {
    if (i == j) return std::sqrt(g.Rp[i] * g.Rp[i] + g.R[i] * g.R[i]) / bk;
    const double hs = std::sin(0.5 * (g.theta[j] - g.theta[i]));
    const double dq = (g.R[i] - g.R[j]) / (2.0 * bk * hs);
    return std::sqrt(dq * dq + g.R[i] * g.R[j] / (bk * bk));
}

// Applies rho(eta) -> int log(A_{k,n}) rho(eta) deta on grid values.
std::vector<cplx> log_chord_apply(const BoundaryState& st, int k, int n,
                                  const std::vector<cplx>& rho) {
    const int M = st.params.grid_size;
    BoundaryGeom gk = boundary_geom(st, k);
    std::vector<cplx> out(M, cplx(0.0, 0.0));
    if (k == n) {
        const double bk = (k == 1) ? 1.0 : st.params.b;
        out = log_kernel_apply_grid(rho, 1.0);
        for (int i = 0; i < M; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = 0; j < M; ++j)
                acc += std::log(bk * v_smooth_of(gk, bk, i, j)) * rho[j];
            out[i] += acc / static_cast<double>(M);
        }
    } else {
        BoundaryGeom gn = boundary_geom(st, n);
        for (int i = 0; i < M; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = 0; j < M; ++j)
                acc += std::log(std::abs(gk.w[i] - gn.w[j])) * rho[j];
            out[i] = acc / static_cast<double>(M);
        }
    }
    return out;
}

MeanField mean_field_from(const BoundaryState& st, const std::vector<double>& vals) {
    Grid grid(st.params.grid_size, st.params.mfold);
    MeanField mf;
    double s = 0.0;
    for (double v : vals) s += v;
    mf.mean = s / static_cast<double>(vals.size());
    std::vector<double> osc(vals);
    for (double& v : osc) v -= mf.mean;
    mf.osc = analyze(grid, osc, st.params.max_mode);
    return mf;
}

} // namespace

MeanField perturbed_V(const BoundaryState& st, int k, int n) {
    const int M = st.params.grid_size;
    BoundaryGeom gk = boundary_geom(st, k);
    BoundaryGeom gn = boundary_geom(st, n);
    // d/deta [R_n(eta) sin(eta-theta)] = cos(theta) y_n'(eta) - sin(theta) x_n'(eta)
    std::vector<cplx> xn(M), yn(M);
    for (int i = 0; i < M; ++i) {
        xn[i] = gn.w[i].real();
        yn[i] = gn.w[i].imag();
    }
    std::vector<cplx> xpn = d_theta_grid(xn), ypn = d_theta_grid(yn);
    std::vector<cplx> Ly = log_chord_apply(st, k, n, ypn);
    std::vector<cplx> Lx = log_chord_apply(st, k, n, xpn);
    std::vector<double> vals(M);
    for (int i = 0; i < M; ++i) {
        const double c = std::cos(gk.theta[i]), s = std::sin(gk.theta[i]);
        vals[i] = (c * Ly[i].real() - s * Lx[i].real()) / gk.R[i];
    }
    return mean_field_from(st, vals);
}

MeanField perturbed_L_apply(const BoundaryState& st, int k, int n, const FourierScalar& rho) {
    Grid grid(st.params.grid_size, st.params.mfold);
    std::vector<double> rv = synthesize(rho, grid);
    std::vector<cplx> rc(rv.begin(), rv.end());
    std::vector<cplx> out = log_chord_apply(st, k, n, rc);
    std::vector<double> vals(out.size());
    for (size_t i = 0; i < out.size(); ++i) vals[i] = out[i].real();
    return mean_field_from(st, vals);
}

int TruncatedOperator::index_of(int j, int comp) const {
    for (size_t i = 0; i < modes.size(); ++i)
        if (modes[i] == j) return 2 * static_cast<int>(i) + (comp - 1);
    throw std::invalid_argument("mode not in operator basis");
}

Eigen::Matrix2cd TruncatedOperator::block(int j) const {
    Eigen::Matrix2cd b;
    const int i1 = index_of(j, 1), i2 = index_of(j, 2);
    b << mat(i1, i1), mat(i1, i2), mat(i2, i1), mat(i2, i2);
    return b;
}

TruncatedOperator assemble_linearized(const BoundaryState& st, int N) {
    if (N > st.params.max_mode)
        throw std::invalid_argument("assemble: N exceeds the state truncation");
    const int m = st.params.mfold;
    const int M = st.params.grid_size;
    Grid grid(M, m);
    const std::vector<double> theta = grid.nodes();

    TruncatedOperator op;
    op.mfold = m;
    op.max_mode = N;
    for (int j = -N; j <= N; ++j)
        if (j != 0 && j % m == 0) op.modes.push_back(j);
    const int dim = 2 * static_cast<int>(op.modes.size());
    op.mat = Eigen::MatrixXcd::Zero(dim, dim);

    // V_k(r) = Omega + (-1)^k [V_{k,k} - V_{k,3-k}] on the grid
    std::vector<double> Vk[2];
    for (int k = 1; k <= 2; ++k) {
        MeanField vkk = perturbed_V(st, k, k);
        MeanField vkx = perturbed_V(st, k, 3 - k);
        std::vector<double> a = synthesize(vkk.osc, grid);
        std::vector<double> b = synthesize(vkx.osc, grid);
        Vk[k - 1].resize(M);
        const double sgn = (k == 1) ? -1.0 : 1.0;
        for (int i = 0; i < M; ++i)
            Vk[k - 1][i] = st.params.omega + sgn * ((vkk.mean + a[i]) - (vkx.mean + b[i]));
    }

    // column for basis mode e_j in component c, as complex grid values
    auto column = [&](int j, int c) {
        std::vector<cplx> e(M);
        for (int i = 0; i < M; ++i) e[i] = std::exp(cplx(0.0, j * theta[i]));
        // row 1:  d_theta [ (-V1 - L11) rho1 + L12 rho2 ]
        // row 2: -d_theta [ L21 rho1 + (V2 - L22) rho2 ]
        std::vector<cplx> row1(M, cplx(0, 0)), row2(M, cplx(0, 0));
        if (c == 1) {
            std::vector<cplx> l11 = log_chord_apply(st, 1, 1, e);
            std::vector<cplx> l21 = log_chord_apply(st, 2, 1, e);
            for (int i = 0; i < M; ++i) {
                row1[i] = -Vk[0][i] * e[i] - l11[i];
                row2[i] = l21[i];
            }
        } else {
            std::vector<cplx> l12 = log_chord_apply(st, 1, 2, e);
            std::vector<cplx> l22 = log_chord_apply(st, 2, 2, e);
            for (int i = 0; i < M; ++i) {
                row1[i] = l12[i];
                row2[i] = Vk[1][i] * e[i] - l22[i];
            }
        }
        row1 = d_theta_grid(row1);
        row2 = d_theta_grid(row2);
        for (int i = 0; i < M; ++i) row2[i] = -row2[i];
        return std::make_pair(spectrum_forward(row1), spectrum_forward(row2));
    };

    for (int jcol : op.modes) {
        for (int c = 1; c <= 2; ++c) {
            auto [s1, s2] = column(jcol, c);
            const int col = op.index_of(jcol, c);
            for (int jrow : op.modes) {
                const int p = (jrow % M + M) % M;
                op.mat(op.index_of(jrow, 1), col) = s1[p];
                op.mat(op.index_of(jrow, 2), col) = s2[p];
            }
        }
    }
    return op;
}

std::vector<cd> spectrum(const TruncatedOperator& op) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.mat, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectrum: eigensolver failed to converge");
    std::vector<cd> ev(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + solver.eigenvalues().size());
    return ev;
}

} // namespace lintheory
} // namespace avl
