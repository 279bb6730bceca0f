// SPDX-License-Identifier: Apache-2.0
//
// Finite checkers for the non-resonance conditions defining the admissible
// modulus set, evaluated on the unperturbed frequency curves with
// omega = -omega_Eq(b), c_k = v_k(b), mu_{j,k} = Omega_{j,k}(b), plus a
// grid-measure estimator of the excluded set over b.
#ifndef AVL_CORE_MELNIKOV_HPP
#define AVL_CORE_MELNIKOV_HPP

#include <map>
#include <string>
#include <vector>

#include "core/dispersion.hpp"

namespace avl {

struct DiophantineParams {
    double gamma = 1e-3;   // in (0,1]
    double upsilon = 0.2;  // in (0,1); 1/(q0+3) by default
    double tau1 = 0.0;     // tau2 > tau1 > d
    double tau2 = 0.0;
    int d = 0;             // frequency dimension |S1|+|S2|
    int q0 = 2;
    int n_cut = 10;        // |l|_inf cap, and <l,j,j0> cap for the cross condition

    void validate() const;
};

// Frozen evaluation point: all frequency data of one (b, Omega, sets) triple
// with mode tables up to j_max.
class FrequencyContext {
public:
    FrequencyContext(const TangentialSets& sets, double b, double omega, int j_max);

    double b() const { return b_; }
    double rotation() const { return omega_rot_; }
    const TangentialSets& sets() const { return sets_; }
    int j_max() const { return j_max_; }

    // -omega_Eq(b) . l
    double omega_dot(const std::vector<int>& l) const;
    // Omega_{j,k}(b), |j| <= j_max
    double mu(int j, int k) const;
    // v_k(b)
    double ck(int k) const;
    // true when |j| appears in S_k (j = 0 counts: it lies in bar S_{0,k})
    bool tangential(int j, int k) const;

private:
    TangentialSets sets_;
    double b_, omega_rot_;
    int j_max_;
    std::vector<double> omega_vec_;  // omega_Eq(b)
    std::vector<double> mu1_, mu2_;  // Omega_{j,k}(b) for j = 1..j_max
};

namespace melnikov {

// |omega.l + j c_k| > 4 gamma^upsilon <j> / <l>^tau1,  (l,j) != (0,0), j in mZ.
bool check_transport(const FrequencyContext& ctx, const DiophantineParams& dio,
                     const std::vector<int>& l, int j, int k);

// |omega.l + mu_{j,k}| > gamma <j> / <l>^tau1,  j in mZ \ bar S_{0,k}.
bool check_first(const FrequencyContext& ctx, const DiophantineParams& dio,
                 const std::vector<int>& l, int j, int k);

// |omega.l + mu_{j,k} - mu_{j0,k}| > 2 gamma <j-j0> / <l>^tau2,
// j, j0 in mZ \ bar S_{0,k}, (l,j) != (0,j0).
bool check_second_same(const FrequencyContext& ctx, const DiophantineParams& dio,
                       const std::vector<int>& l, int j, int j0, int k);

// |omega.l + mu_{j,1} - mu_{j0,2}| > 2 gamma / <l,j,j0>^tau2,
// j in mZ \ bar S_{0,1}, j0 in mZ \ bar S_{0,2}.
bool check_second_cross(const FrequencyContext& ctx, const DiophantineParams& dio,
                        const std::vector<int>& l, int j, int j0);

struct MeasureRow {
    double b = 0.0;
    bool excluded = false;
    std::string first_fail_kind;  // empty when admissible
    std::vector<int> l;
    int j = 0, j0 = 0;
};

struct MeasureResult {
    double fraction = 0.0;                // excluded grid fraction
    std::map<std::string, int> breakdown; // first-failure counts per condition
    std::vector<MeasureRow> rows;         // one per grid point
};

// Scans grid_pts moduli in [b_lo, b_hi]; a point is excluded when any
// enumerated condition fails.  Enumeration: |l|_inf <= n_cut, |j|,|j0| <= j_cut
// on the lattice, <l,j,j0> <= n_cut for the cross condition; indices that
// provably cannot fail are pruned by the measured frequency bounds.
// shuffle permutes the work order for load balance only; results and row
// order are independent of it.
MeasureResult excluded_measure(const DiophantineParams& dio, const TangentialSets& sets,
                               double omega, double b_lo, double b_hi, int grid_pts,
                               int j_cut, bool shuffle = false);

} // namespace melnikov
} // namespace avl

#endif
