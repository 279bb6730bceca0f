// SPDX-License-Identifier: Apache-2.0
#include "core/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/parallel.hpp"

namespace avl {

void DiophantineParams::validate() const {
    if (!(gamma > 0.0) || gamma > 1.0) throw std::invalid_argument("gamma out of range (0,1]");
    if (!(upsilon > 0.0) || !(upsilon < 1.0)) throw std::invalid_argument("upsilon out of range (0,1)");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (!(tau1 > d)) throw std::invalid_argument("tau1 must exceed d");
    if (!(tau2 > tau1)) throw std::invalid_argument("tau2 must exceed tau1");
    if (q0 < 0) throw std::invalid_argument("q0 must be >= 0");
    if (n_cut < 1) throw std::invalid_argument("ncut must be >= 1");
}

FrequencyContext::FrequencyContext(const TangentialSets& sets, double b, double omega, int j_max)
    : sets_(sets), b_(b), omega_rot_(omega), j_max_(j_max) {
    sets_.validate();
    if (j_max < sets.mfold) throw std::invalid_argument("frequency context: j_max below mfold");
    omega_vec_ = dispersion::equilibrium_vector(sets_, b, omega);
    mu1_.assign(j_max + 1, 0.0);
    mu2_.assign(j_max + 1, 0.0);
    for (int j = sets.mfold; j <= j_max; j += sets.mfold) {
        mu1_[j] = dispersion::omega_jk(j, 1, b, omega);
        mu2_[j] = dispersion::omega_jk(j, 2, b, omega);
    }
}

double FrequencyContext::omega_dot(const std::vector<int>& l) const {
    if (l.size() != omega_vec_.size())
        throw std::invalid_argument("frequency context: l dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < l.size(); ++i) s -= omega_vec_[i] * l[i];
    return s;
}

double FrequencyContext::mu(int j, int k) const {
    const int a = std::abs(j);
    if (a > j_max_ || a % sets_.mfold != 0 || j == 0)
        throw std::invalid_argument("frequency context: mode outside the table");
    const double v = (k == 1) ? mu1_[a] : mu2_[a];
    return j > 0 ? v : -v;
}

double FrequencyContext::ck(int k) const {
    return omega_rot_ + (2 - k) * 0.5 * (1.0 - b_ * b_);
}

bool FrequencyContext::tangential(int j, int k) const {
    return j == 0 || sets_.in_s(k, j);
}

namespace melnikov {

namespace {

double l1(const std::vector<int>& l) {
    double s = 0.0;
    for (int v : l) s += std::abs(v);
    return s;
}

double angled(double x) { return std::max(1.0, x); }

bool l_is_zero(const std::vector<int>& l) {
    return std::all_of(l.begin(), l.end(), [](int v) { return v == 0; });
}

} // namespace

bool check_transport(const FrequencyContext& ctx, const DiophantineParams& dio,
                     const std::vector<int>& l, int j, int k) {
    if (j % ctx.sets().mfold != 0) throw std::invalid_argument("check_transport: j off the lattice");
    if (j == 0 && l_is_zero(l)) throw std::invalid_argument("check_transport: (l,j) = (0,0)");
    const double lhs = std::abs(ctx.omega_dot(l) + j * ctx.ck(k));
    const double rhs = 4.0 * std::pow(dio.gamma, dio.upsilon) * angled(std::abs((double)j)) /
                       std::pow(angled(l1(l)), dio.tau1);
    return lhs > rhs;
}

bool check_first(const FrequencyContext& ctx, const DiophantineParams& dio,
                 const std::vector<int>& l, int j, int k) {
    if (j == 0 || j % ctx.sets().mfold != 0 || ctx.tangential(j, k))
        throw std::invalid_argument("check_first: j must lie in mZ minus bar S_0k");
    const double lhs = std::abs(ctx.omega_dot(l) + ctx.mu(j, k));
    const double rhs = dio.gamma * angled(std::abs((double)j)) / std::pow(angled(l1(l)), dio.tau1);
    return lhs > rhs;
}

bool check_second_same(const FrequencyContext& ctx, const DiophantineParams& dio,
                       const std::vector<int>& l, int j, int j0, int k) {
    if (j == 0 || j0 == 0 || j % ctx.sets().mfold != 0 || j0 % ctx.sets().mfold != 0 ||
        ctx.tangential(j, k) || ctx.tangential(j0, k))
        throw std::invalid_argument("check_second_same: modes must lie in mZ minus bar S_0k");
    if (j == j0 && l_is_zero(l)) throw std::invalid_argument("check_second_same: (l,j) = (0,j0)");
    const double lhs = std::abs(ctx.omega_dot(l) + ctx.mu(j, k) - ctx.mu(j0, k));
    const double rhs = 2.0 * dio.gamma * angled(std::abs((double)(j - j0))) /
                       std::pow(angled(l1(l)), dio.tau2);
    return lhs > rhs;
}

bool check_second_cross(const FrequencyContext& ctx, const DiophantineParams& dio,
                        const std::vector<int>& l, int j, int j0) {
    if (j == 0 || j0 == 0 || j % ctx.sets().mfold != 0 || j0 % ctx.sets().mfold != 0 ||
        ctx.tangential(j, 1) || ctx.tangential(j0, 2))
        throw std::invalid_argument("check_second_cross: modes must avoid the tangential sets");
    const double iso =
        std::max({1.0, l1(l), std::abs((double)j), std::abs((double)j0)});
    const double lhs = std::abs(ctx.omega_dot(l) + ctx.mu(j, 1) - ctx.mu(j0, 2));
    const double rhs = 2.0 * dio.gamma / std::pow(iso, dio.tau2);
    return lhs > rhs;
}

namespace {

// Enumerates l in Z^d with |l_i| <= n_cut in a fixed odometer order.
class LVectors {
public:
    LVectors(int d, int n_cut) : d_(d), n_(n_cut), l_(d, -n_cut), done_(d == 0) {}
    bool next(std::vector<int>& out) {
        if (done_) return false;
        out = l_;
        int i = 0;
        while (i < d_ && l_[i] == n_) l_[i++] = -n_;
        if (i == d_) done_ = true; else ++l_[i];
        return true;
    }

private:
    int d_, n_;
    std::vector<int> l_;
    bool done_;
};

struct GridOutcome {
    bool excluded = false;
    std::string kind;
    std::vector<int> l;
    int j = 0, j0 = 0;
};

GridOutcome scan_point(const FrequencyContext& ctx, const DiophantineParams& dio, int j_cut) {
    const int m = ctx.sets().mfold;
    const double om = ctx.rotation();
    auto lattice = [&](int cap) {
        std::vector<int> js;
        for (int j = -cap; j <= cap; ++j)
            if (j != 0 && j % m == 0) js.push_back(j);
        return js;
    };
    const std::vector<int> modes = lattice(j_cut);
    const std::vector<int> cross_modes = lattice(dio.n_cut);

    GridOutcome out;
    auto fail = [&](const char* kind, const std::vector<int>& l, int j, int j0) {
        out.excluded = true;
        out.kind = kind;
        out.l = l;
        out.j = j;
        out.j0 = j0;
        return out;
    };

    std::vector<int> l;
    LVectors gen(dio.d, dio.n_cut);
    while (gen.next(l)) {
        const double lz = l1(l);
        const double wl = std::abs(ctx.omega_dot(l));
        // transport (includes the j = 0 frequency condition)
        {
            const double thr = 4.0 * std::pow(dio.gamma, dio.upsilon);
            // failure needs |j|(Omega - thr) <= |omega.l| + thr since c_k >= Omega
            const double jcap = (om > thr) ? (wl + thr) / (om - thr) : (double)j_cut;
            for (int k = 1; k <= 2; ++k) {
                if (lz != 0.0 && !check_transport(ctx, dio, l, 0, k))
                    return fail("transport", l, 0, 0);
                for (int j : modes) {
                    if (std::abs(j) > jcap + 1) continue;
                    if (!check_transport(ctx, dio, l, j, k)) return fail("transport", l, j, 0);
                }
            }
        }
        // first Melnikov; |mu_{j,k}| >= Omega |j| prunes large |j|
        {
            const double jcap = (om > dio.gamma) ? (wl + dio.gamma) / (om - dio.gamma) : (double)j_cut;
            for (int k = 1; k <= 2; ++k)
                for (int j : modes) {
                    if (ctx.tangential(j, k)) continue;
                    if (std::abs(j) > jcap + 1) continue;
                    if (!check_first(ctx, dio, l, j, k)) return fail("first", l, j, 0);
                }
        }
        // second Melnikov, same component
        for (int k = 1; k <= 2; ++k) {
            for (int j : modes) {
                if (ctx.tangential(j, k)) continue;
                for (int j0 : modes) {
                    if (ctx.tangential(j0, k)) continue;
                    if (j == j0 && lz == 0.0) continue;
                    if (std::abs(ctx.mu(j, k) - ctx.mu(j0, k)) >
                        wl + 2.0 * dio.gamma * angled(std::abs((double)(j - j0))))
                        continue;
                    if (!check_second_same(ctx, dio, l, j, j0, k))
                        return fail("second_same", l, j, j0);
                }
            }
        }
        // second Melnikov, cross components, isotropic cutoff
        for (int j : cross_modes) {
            if (ctx.tangential(j, 1)) continue;
            for (int j0 : cross_modes) {
                if (ctx.tangential(j0, 2)) continue;
                if (std::max({lz, std::abs((double)j), std::abs((double)j0)}) > dio.n_cut)
                    continue;
                if (!check_second_cross(ctx, dio, l, j, j0))
                    return fail("second_cross", l, j, j0);
            }
        }
    }
    return out;
}

} // namespace

MeasureResult excluded_measure(const DiophantineParams& dio, const TangentialSets& sets,
                               double omega, double b_lo, double b_hi, int grid_pts,
                               int j_cut, bool shuffle) {
    dio.validate();
    sets.validate();
    if (dio.d != sets.dim()) throw std::invalid_argument("d must equal |S1|+|S2|");
    if (grid_pts < 1) throw std::invalid_argument("grid must be >= 1");
    if (!(b_lo <= b_hi)) throw std::invalid_argument("b-range: lo must be <= hi");
    if (j_cut < sets.mfold) throw std::invalid_argument("jcut must be >= mfold");

    std::vector<double> bs(grid_pts);
    for (int i = 0; i < grid_pts; ++i)
        bs[i] = (grid_pts == 1) ? b_lo : b_lo + (b_hi - b_lo) * i / (grid_pts - 1.0);

    std::vector<int> order(grid_pts);
    for (int i = 0; i < grid_pts; ++i) order[i] = i;
    if (shuffle) {
        // fixed-stride permutation: spreads expensive low-b points across chunks
        std::vector<int> perm;
        perm.reserve(grid_pts);
        const int stride = std::max(1, grid_pts / 7);
        for (int s = 0; s < stride; ++s)
            for (int i = s; i < grid_pts; i += stride) perm.push_back(i);
        order = perm;
    }

    MeasureResult res;
    res.rows.resize(grid_pts);
    parallel_for(grid_pts, [&](int t) {
        const int i = order[t];
        FrequencyContext ctx(sets, bs[i], omega, std::max(j_cut, dio.n_cut));
        GridOutcome oc = scan_point(ctx, dio, j_cut);
        MeasureRow row;
        row.b = bs[i];
        row.excluded = oc.excluded;
        row.first_fail_kind = oc.kind;
        row.l = oc.l;
        row.j = oc.j;
        row.j0 = oc.j0;
        res.rows[i] = row;
    });
    int n_excl = 0;
    for (const auto& row : res.rows) {
        if (row.excluded) {
            ++n_excl;
            ++res.breakdown[row.first_fail_kind];
        }
    }
    res.fraction = static_cast<double>(n_excl) / grid_pts;
    return res;
}

} // namespace melnikov
} // namespace avl
