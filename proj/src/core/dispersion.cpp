// SPDX-License-Identifier: Apache-2.0
#include "core/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"

namespace avl {

void PatchParams::validate() const {
    if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("b out of range (0,1)");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (mfold < 3) throw std::invalid_argument("mfold must be >= 3");
    if (max_mode < mfold) throw std::invalid_argument("nmax must be >= mfold");
    if (grid_size < 4 * max_mode) throw std::invalid_argument("gridsize must be >= 4*nmax");
    if (grid_size % mfold != 0) throw std::invalid_argument("gridsize must be a multiple of mfold");
}

void TangentialSets::validate() const {
    if (mfold < 3) throw std::invalid_argument("mfold must be >= 3");
    std::set<int> seen;
    for (int pass = 0; pass < 2; ++pass) {
        for (int j : (pass == 0 ? s1 : s2)) {
            if (j <= 0) throw std::invalid_argument("tangential sets: modes must be positive");
            if (j % mfold != 0) throw std::invalid_argument("tangential sets: modes must be multiples of mfold");
            if (!seen.insert(j).second)
                throw std::invalid_argument("tangential sets: S1 and S2 must be disjoint");
        }
    }
}

bool TangentialSets::in_s(int k, int j) const {
    const auto& s = (k == 1) ? s1 : s2;
    const int a = std::abs(j);
    return std::find(s.begin(), s.end(), a) != s.end();
}

namespace dispersion {

namespace {

// (1-b^2)/2 |j| - 1, the recurring half-trace offset.
double tau(int j, double b) { return 0.5 * (1.0 - b * b) * std::abs(j) - 1.0; }

} // namespace

double f_poly(int m, double b) {
    if (m < 2) throw std::invalid_argument("f_poly: m must be >= 2");
    return std::pow(b, m) + 1.0 - 0.5 * m * (1.0 - b * b);
}

double delta(int j, double b) {
    if (j == 0) throw std::invalid_argument("delta: j must be nonzero");
    const double t = tau(j, b);
    return std::pow(b, 2 * std::abs(j)) - t * t;
}

double root_b_n(int n) {
    if (n < 3) throw std::invalid_argument("root_b_n: n must be >= 3");
    double lo = 1e-6, hi = 1.0 - 1e-6;
    // f(0+) = 1 - n/2 < 0 < 2 = f(1-); f strictly increasing in b.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f_poly(n, mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

int m_star(double b_star) {
    if (!(b_star >= 0.0) || !(b_star < 1.0)) throw std::invalid_argument("b_star out of range [0,1)");
    for (int n = 3;; ++n) {
        const double bn = root_b_n(n);
        if (std::abs(bn - b_star) < 1e-12)
            throw RegimeError("m_star: b_star coincides with threshold root b_" + std::to_string(n));
        if (bn > b_star) return n;
        if (n > 4096) throw std::invalid_argument("m_star: b_star too close to 1");
    }
}

double omega_jk(int j, int k, double b, double omega) {
    if (j == 0) throw std::invalid_argument("omega_jk: j must be nonzero");
    if (k != 1 && k != 2) throw std::invalid_argument("omega_jk: k must be 1 or 2");
    const double D = delta(j, b);
    if (!(D < 0.0))
        throw RegimeError("omega_jk: Delta_j(b) >= 0 (hyperbolic or degenerate mode j=" +
                          std::to_string(j) + ")");
    const double sgn = j > 0 ? 1.0 : -1.0;
    const double half = 0.5 * std::sqrt(-D);
    return sgn * ((omega + 0.25 * (1.0 - b * b)) * std::abs(j) + (k == 1 ? half : -half));
}

double a_j(int j, double b) {
    if (j == 0) throw std::invalid_argument("a_j: j must be nonzero");
    const double D = delta(j, b);
    if (!(D < 0.0))
        throw RegimeError("a_j: Delta_j(b) >= 0 (outside elliptic regime, j=" + std::to_string(j) + ")");
    const double t = tau(j, b);
    return std::pow(b, std::abs(j)) / (t + std::sqrt(-D));
}

double asymptotic_r_j(int j, double b) {
    if (j == 0) throw std::invalid_argument("r_j: j must be nonzero");
    const double D = delta(j, b);
    if (!(D < 0.0))
        throw RegimeError("r_j: Delta_j(b) >= 0 (outside elliptic regime, j=" + std::to_string(j) + ")");
    const double t = tau(j, b);
    const double x = std::pow(b, 2 * std::abs(j)) / (t * t);
    return 0.5 * t * (std::sqrt(1.0 - x) - 1.0);
}

std::pair<double, double> omega_pm(int m, double b) {
    if (m < 3) throw std::invalid_argument("omega_pm: m must be >= 3");
    const double f = f_poly(m, b);
    if (f > 0.0) throw RegimeError("omega_pm: f_poly(m,b) > 0, no bifurcation pair");
    const double t = tau(m, b);
    const double disc = std::max(0.0, t * t - std::pow(b, 2 * m));
    const double half = std::sqrt(disc) / (2.0 * m);
    const double mid = 0.25 * (1.0 - b * b);
    return {mid - half, mid + half};
}

double omega_star(int m, double b_star) {
    if (!(b_star > 0.0) || !(b_star < 1.0))
        throw std::invalid_argument("omega_star: b_star out of range (0,1)");
    if (m < m_star(b_star)) throw std::invalid_argument("omega_star: m below m_star(b_star)");
    const double t = tau(m, b_star);
    const double S = std::sqrt(1.0 - std::pow(b_star, 2 * m) / (t * t));
    // min of b^m log b on [0, b_star] sits at min(b_star, e^{-1/m}).
    const double bmin = std::min(b_star, std::exp(-1.0 / m));
    const double inner = std::pow(bmin, m) * std::log(bmin);
    return (0.5 * (1.0 - b_star * b_star) * (1.0 - S) - inner) / (2.0 * S);
}

std::vector<double> equilibrium_vector(const TangentialSets& sets, double b, double omega) {
    sets.validate();
    std::vector<double> out;
    out.reserve(sets.dim());
    for (int j : sets.s1) out.push_back(omega_jk(j, 1, b, omega));
    for (int j : sets.s2) out.push_back(omega_jk(j, 2, b, omega));
    return out;
}

namespace {

constexpr int kGridPoints = 2001;
constexpr double kGridInset = 1e-6;

std::vector<double> b_grid(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("b range: lo must be <= hi");
    if (lo == hi) return {lo};
    std::vector<double> g(kGridPoints);
    const double a = lo + kGridInset, c = hi - kGridInset;
    for (int i = 0; i < kGridPoints; ++i)
        g[i] = a + (c - a) * i / (kGridPoints - 1);
    return g;
}

} // namespace

double separation_margin(int j, int jp, int k, double b_lo, double b_hi, double omega) {
    if (j == jp) throw std::invalid_argument("separation_margin: j and j' must differ");
    double m = std::numeric_limits<double>::infinity();
    for (double b : b_grid(b_lo, b_hi)) {
        const double d = std::abs(omega_jk(j, k, b, omega) - omega_jk(jp, k, b, omega));
        m = std::min(m, d / std::abs(j - jp));
    }
    return m;
}

namespace {

// Order-4 central finite-difference of f at x, derivative order q in [0,3].
template <typename F>
double fd_derivative(const F& f, double x, int q) {
    switch (q) {
        case 0:
            return f(x);
        case 1: {
            const double h = 1e-3;
            return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
        }
        case 2: {
            const double h = 3e-3;
            return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
                   (12 * h * h);
        }
        case 3: {
            const double h = 1e-2;
            return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) -
                    8 * f(x - 2 * h) + f(x - 3 * h)) / (8 * h * h * h);
        }
        default:
            throw std::invalid_argument("fd_derivative: q0 capped at 3");
    }
}

double l1_norm(const std::vector<int>& l) {
    double s = 0.0;
    for (int v : l) s += std::abs(v);
    return s;
}

double angled(double v) { return std::max(1.0, v); }

double vk_of(int k, double b, double omega) {
    return omega + (2 - k) * 0.5 * (1.0 - b * b);
}

} // namespace

double russmann_margin(const std::vector<int>& l, int j, int j0, RussmannKind kind,
                       const TangentialSets& sets, double b_lo, double b_hi,
                       double omega, int q0) {
    sets.validate();
    if (static_cast<int>(l.size()) != sets.dim())
        throw std::invalid_argument("russmann_margin: l dimension must equal |S1|+|S2|");
    if (q0 < 0 || q0 > 3) throw std::invalid_argument("russmann_margin: q0 must lie in [0,3]");
    const bool l_zero = l1_norm(l) == 0.0;
    const int m = sets.mfold;

    auto omega_dot_l = [&](double b) {
        std::vector<double> w = equilibrium_vector(sets, b, omega);
        double s = 0.0;
        for (size_t i = 0; i < w.size(); ++i) s += w[i] * l[i];
        return s;
    };

    // Component choices per kind; empty marks an index-constraint violation.
    std::vector<int> ks;
    switch (kind) {
        case RussmannKind::Freq:
            if (l_zero) throw std::invalid_argument("russmann_margin: kind=freq needs l != 0");
            break;
        case RussmannKind::Transport:
            if (l_zero && j == 0) throw std::invalid_argument("russmann_margin: (l,j) = (0,0)");
            if (j % m != 0) throw std::invalid_argument("russmann_margin: j off the lattice");
            ks = {1, 2};
            break;
        case RussmannKind::First:
            if (j == 0 || j % m != 0) throw std::invalid_argument("russmann_margin: j off the lattice");
            for (int k : {1, 2})
                if (!sets.in_s(k, j)) ks.push_back(k);
            if (ks.empty()) throw std::invalid_argument("russmann_margin: j tangential for both components");
            break;
        case RussmannKind::SecondSame:
            if (j == 0 || j0 == 0 || j % m != 0 || j0 % m != 0)
                throw std::invalid_argument("russmann_margin: modes off the lattice");
            if (l_zero && j == j0) throw std::invalid_argument("russmann_margin: (l,j) = (0,j0)");
            for (int k : {1, 2})
                if (!sets.in_s(k, j) && !sets.in_s(k, j0)) ks.push_back(k);
            if (ks.empty()) throw std::invalid_argument("russmann_margin: modes tangential for both components");
            break;
        case RussmannKind::SecondCross:
            if (j == 0 || j0 == 0 || j % m != 0 || j0 % m != 0)
                throw std::invalid_argument("russmann_margin: modes off the lattice");
            if (sets.in_s(1, j) || sets.in_s(2, j0))
                throw std::invalid_argument("russmann_margin: tangential mode in cross condition");
            break;
    }

    auto combination = [&](int k) {
        return [&, k](double b) {
            switch (kind) {
                case RussmannKind::Freq:
                    return omega_dot_l(b);
                case RussmannKind::Transport:
                    return omega_dot_l(b) + j * vk_of(k, b, omega);
                case RussmannKind::First:
                    return omega_dot_l(b) + omega_jk(j, k, b, omega);
                case RussmannKind::SecondSame:
                    return omega_dot_l(b) + omega_jk(j, k, b, omega) - omega_jk(j0, k, b, omega);
                case RussmannKind::SecondCross:
                default:
                    return omega_dot_l(b) + omega_jk(j, 1, b, omega) - omega_jk(j0, 2, b, omega);
            }
        };
    };

    double weight = angled(l1_norm(l));
    if (kind == RussmannKind::SecondCross)
        weight = std::max({1.0, l1_norm(l), std::abs((double)j), std::abs((double)j0)});

    if (ks.empty()) ks = {1};
    double margin = std::numeric_limits<double>::infinity();
    for (int k : ks) {
        auto f = combination(k);
        double inf_b = std::numeric_limits<double>::infinity();
        for (double b : b_grid(b_lo, b_hi)) {
            double best = 0.0;
            for (int q = 0; q <= q0; ++q) best = std::max(best, std::abs(fd_derivative(f, b, q)));
            inf_b = std::min(inf_b, best);
        }
        margin = std::min(margin, inf_b / weight);
    }
    return margin;
}

} // namespace dispersion
} // namespace avl
