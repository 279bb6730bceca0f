// SPDX-License-Identifier: Apache-2.0
#include "core/runners.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/linear_ops.hpp"
#include "core/melnikov.hpp"
#include "core/qp_diag.hpp"

namespace avl {

namespace {

class Config {
public:
    Config(const KeyValues& kv, std::set<std::string> known) : kv_(kv), known_(std::move(known)) {
        for (const auto& [k, v] : kv_) {
            (void)v;
            if (!known_.count(k)) throw std::invalid_argument("unknown key: " + k);
        }
    }

    bool has(const std::string& k) const { return kv_.count(k) > 0; }

    std::string str(const std::string& k, const std::string& dflt) {
        resolved_[k] = has(k) ? kv_.at(k) : dflt;
        return resolved_[k];
    }

    double num(const std::string& k, double dflt, double lo, double hi, bool open_lo = false,
               bool open_hi = false) {
        double v = dflt;
        if (has(k)) {
            try {
                size_t pos = 0;
                v = std::stod(kv_.at(k), &pos);
                if (pos != kv_.at(k).size()) throw std::invalid_argument(k);
            } catch (...) {
                throw std::invalid_argument("key " + k + ": not a number");
            }
        }
        const bool lo_ok = open_lo ? (v > lo) : (v >= lo);
        const bool hi_ok = open_hi ? (v < hi) : (v <= hi);
        if (!lo_ok || !hi_ok) throw std::invalid_argument("key " + k + ": out of range");
        resolved_[k] = fmt17(v);
        return v;
    }

    int integer(const std::string& k, int dflt, int lo, int hi) {
        int v = dflt;
        if (has(k)) {
            try {
                size_t pos = 0;
                v = std::stoi(kv_.at(k), &pos);
                if (pos != kv_.at(k).size()) throw std::invalid_argument(k);
            } catch (...) {
                throw std::invalid_argument("key " + k + ": not an integer");
            }
        }
        if (v < lo || v > hi) throw std::invalid_argument("key " + k + ": out of range");
        resolved_[k] = std::to_string(v);
        return v;
    }

    std::vector<int> int_list(const std::string& k, const std::string& dflt) {
        std::vector<int> out;
        std::stringstream ss(str(k, dflt));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                out.push_back(std::stoi(item));
            } catch (...) {
                throw std::invalid_argument("key " + k + ": bad integer list");
            }
        }
        return out;
    }

    std::vector<double> num_list(const std::string& k, const std::string& dflt) {
        std::vector<double> out;
        std::stringstream ss(str(k, dflt));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                out.push_back(std::stod(item));
            } catch (...) {
                throw std::invalid_argument("key " + k + ": bad number list");
            }
        }
        return out;
    }

    // overrides the recorded value for keys resolved by the runner itself
    void note(const std::string& k, double v) { resolved_[k] = fmt17(v); }

    // "lo:hi" (also accepts "lo,hi")
    std::pair<double, double> range(const std::string& k, const std::string& dflt) {
        std::string s = str(k, dflt);
        std::replace(s.begin(), s.end(), ':', ',');
        std::stringstream ss(s);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw std::invalid_argument("key " + k + ": expected lo:hi");
        try {
            return {std::stod(a), std::stod(b)};
        } catch (...) {
            throw std::invalid_argument("key " + k + ": expected lo:hi");
        }
    }

    const KeyValues& resolved() const { return resolved_; }

private:
    KeyValues kv_;
    std::set<std::string> known_;
    KeyValues resolved_;
};

std::string sibling_path(const std::string& out, const std::string& suffix) {
    const auto dot = out.rfind(".csv");
    if (dot != std::string::npos && dot == out.size() - 4)
        return out.substr(0, dot) + suffix + ".csv";
    return out + suffix + ".csv";
}

} // namespace

std::string tolerances_json() {
    std::ostringstream js;
    js << "{"
       << "\"root_bisect_tol\":1e-14,"
       << "\"b_grid_points\":2001,"
       << "\"b_grid_inset\":1e-06,"
       << "\"fd_steps\":[0.001,0.003,0.01],"
       << "\"q0_cap\":3,"
       << "\"ordering_margin_factor\":0.001,"
       << "\"cfl_guard\":1.0,"
       << "\"dealias_rule\":\"M>=4N\","
       << "\"qp_tolerance_model\":\"5*eps+2*pi/(10*T)\","
       << "\"peak_sharpness_min\":" << fmt17(qp::sharpness_threshold()) << ","
       << "\"min_samples\":1024"
       << "}";
    return js.str();
}

RunArtifacts run_dispersion(const KeyValues& kv) {
    Config cfg(kv, {"b", "omega", "mfold", "jmax", "nroot", "out"});
    const double b = cfg.num("b", 0.5, 0.0, 1.0, true, true);
    const double omega = cfg.num("omega", 1.0, 0.0, 1e6, true);
    const int m = cfg.integer("mfold", 4, 3, 4096);
    const int jmax = cfg.integer("jmax", 4 * m, m, 100000);
    const int nroot = cfg.integer("nroot", m + 8, 3, 4096);
    const std::string out = cfg.str("out", "dispersion.csv");

    CsvWriter w(out, "quantity,j,k,b,Omega,value");
    auto emit = [&](const std::string& q, int j, int k, double v) {
        w.row({q, std::to_string(j), std::to_string(k), fmt17(b), fmt17(omega), fmt17(v)});
    };
    emit("f_poly", m, 0, dispersion::f_poly(m, b));
    for (int n = 3; n <= nroot; ++n) emit("root_b_n", n, 0, dispersion::root_b_n(n));
    // rows that exist only away from degeneracies are simply skipped there
    try {
        const int ms = dispersion::m_star(b);
        emit("m_star", 0, 0, ms);
        if (m >= ms) emit("omega_star", m, 0, dispersion::omega_star(m, b));
    } catch (const RegimeError&) {
    }
    for (int j = m; j <= jmax; j += m) {
        emit("delta", j, 0, dispersion::delta(j, b));
        for (int k = 1; k <= 2; ++k) emit("omega_jk", j, k, dispersion::omega_jk(j, k, b, omega));
        emit("a_j", j, 0, dispersion::a_j(j, b));
        emit("r_j", j, 0, dispersion::asymptotic_r_j(j, b));
    }
    if (dispersion::f_poly(m, b) <= 0.0) {
        auto [lo, hi] = dispersion::omega_pm(m, b);
        emit("omega_pm_minus", m, 0, lo);
        emit("omega_pm_plus", m, 0, hi);
    }

    RunArtifacts art;
    art.files = {out};
    art.inputs = cfg.resolved();
    return art;
}

namespace {

BoundaryState state_from_modes(const PatchParams& p, const std::vector<int>& modes,
                               const std::vector<double>& amps, const std::vector<int>& comps) {
    if (modes.size() != amps.size())
        throw std::invalid_argument("key amplitudes: length must match modes");
    if (!comps.empty() && comps.size() != modes.size())
        throw std::invalid_argument("key components: length must match modes");
    BoundaryState st;
    st.params = p;
    st.r = PairField(p.mfold, p.max_mode);
    for (size_t i = 0; i < modes.size(); ++i) {
        const int j = modes[i];
        const int c = comps.empty() ? 1 : comps[i];
        if (c != 1 && c != 2) throw std::invalid_argument("key components: entries must be 1 or 2");
        if (j <= 0 || j % p.mfold != 0 || j > p.max_mode)
            throw std::invalid_argument("key modes: must be positive lattice modes <= nmax");
        auto& f = st.r.comp(c);
        f.set_coeff(j, f.coeff(j) + cplx(0.5 * amps[i], 0.0));  // a cos(j theta)
    }
    return st;
}

} // namespace

RunArtifacts run_simulate(const KeyValues& kv) {
    Config cfg(kv, {"b", "omega", "mfold", "modes", "amplitudes", "components", "dt", "steps",
                    "sample-every", "gridsize", "out"});
    PatchParams p;
    p.b = cfg.num("b", 0.5, 0.0, 1.0, true, true);
    p.omega = cfg.num("omega", 1.0, 0.0, 1e6, true);
    p.mfold = cfg.integer("mfold", 4, 3, 1024);
    p.grid_size = cfg.integer("gridsize", 128, 8, 1 << 16);
    p.max_mode = p.grid_size / 4;
    const std::vector<int> modes = cfg.int_list("modes", std::to_string(p.mfold));
    const std::vector<double> amps = cfg.num_list("amplitudes", "0.001");
    const std::vector<int> comps = cfg.int_list("components", "");
    const int steps = cfg.integer("steps", 100, 1, 100000000);
    const int sample_every = cfg.integer("sample-every", 1, 1, 100000000);
    const std::string out = cfg.str("out", "simulate.csv");
    p.validate();

    BoundaryState st = state_from_modes(p, modes, amps, comps);
    double dt = cfg.num("dt", 0.0, 0.0, 1e6);
    if (dt == 0.0) {
        dt = 0.9 / contour::max_linear_frequency(p);
        cfg.note("dt", dt);
    }

    CsvWriter coeffs(out, "t,j,k,re,im");
    CsvWriter cons(sibling_path(out, "_conserved"), "t,area1,area2,J,E,H");
    RunArtifacts art;
    art.files = {coeffs.path(), cons.path()};

    try {
        contour::simulate(st, dt, steps, sample_every, [&](const contour::SimulationSample& s) {
            for (int k = 1; k <= 2; ++k) {
                const FourierScalar& f = s.r.comp(k);
                for (int j = 0; j <= f.max_mode(); ++j) {
                    const cplx v = f.coeff(j);
                    coeffs.row({fmt17(s.t), std::to_string(j), std::to_string(k), fmt17(v.real()),
                                fmt17(v.imag())});
                }
            }
            cons.row({fmt17(s.t), fmt17(s.conserved.area1), fmt17(s.conserved.area2),
                      fmt17(s.conserved.impulse), fmt17(s.conserved.energy),
                      fmt17(s.conserved.hamiltonian)});
        });
    } catch (const GeometryError& e) {
        coeffs.comment("aborted t=" + fmt17(e.time()));
        cons.comment("aborted t=" + fmt17(e.time()));
        art.inputs = cfg.resolved();
        throw;
    }
    art.inputs = cfg.resolved();
    return art;
}

RunArtifacts run_spectrum(const KeyValues& kv) {
    Config cfg(kv, {"b", "omega", "mfold", "N", "state", "gridsize", "out"});
    PatchParams p;
    p.b = cfg.num("b", 0.5, 0.0, 1.0, true, true);
    p.omega = cfg.num("omega", 1.0, 0.0, 1e6, true);
    p.mfold = cfg.integer("mfold", 4, 3, 1024);
    p.max_mode = cfg.integer("N", 3 * p.mfold, p.mfold, 4096);
    int gs_default = std::max(64, 4 * p.max_mode);
    gs_default += (p.mfold - gs_default % p.mfold) % p.mfold;
    p.grid_size = cfg.integer("gridsize", gs_default, 8, 1 << 16);
    const std::string state_path = cfg.str("state", "");
    const std::string out = cfg.str("out", "spectrum.csv");
    p.validate();

    BoundaryState st;
    st.params = p;
    st.r = PairField(p.mfold, p.max_mode);
    if (!state_path.empty()) {
        std::ifstream in(state_path);
        if (!in) throw std::invalid_argument("key state: cannot open file");
        std::string line;
        if (!std::getline(in, line) || line != "k,j,re,im")
            throw std::invalid_argument("key state: expected header k,j,re,im");
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::stringstream ss(line);
            std::string kf, jf, ref, imf;
            if (!std::getline(ss, kf, ',') || !std::getline(ss, jf, ',') ||
                !std::getline(ss, ref, ',') || !std::getline(ss, imf, ','))
                throw std::invalid_argument("key state: malformed row");
            const int k = std::stoi(kf), j = std::stoi(jf);
            if (k != 1 && k != 2) throw std::invalid_argument("key state: k must be 1 or 2");
            if (j > 0) st.r.comp(k).set_coeff(j, cplx(std::stod(ref), std::stod(imf)));
        }
    }

    lintheory::TruncatedOperator op = lintheory::assemble_linearized(st, p.max_mode);
    std::vector<std::complex<double>> ev = lintheory::spectrum(op);
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });

    CsvWriter w(out, "re,im,closest_j,closest_k,abs_error");
    for (const auto& lam : ev) {
        double best = std::numeric_limits<double>::infinity();
        int bj = 0, bk = 0;
        for (int j : op.modes) {
            for (int k = 1; k <= 2; ++k) {
                const std::complex<double> ref(0.0, -dispersion::omega_jk(j, k, p.b, p.omega));
                const double d = std::abs(lam - ref);
                if (d < best) {
                    best = d;
                    bj = j;
                    bk = k;
                }
            }
        }
        w.row({fmt17(lam.real()), fmt17(lam.imag()), std::to_string(bj), std::to_string(bk),
               fmt17(best)});
    }

    RunArtifacts art;
    art.files = {out};
    art.inputs = cfg.resolved();
    return art;
}

RunArtifacts run_melnikov_measure(const KeyValues& kv) {
    Config cfg(kv, {"gamma", "tau1", "tau2", "upsilon", "ncut", "jcut", "b-range", "grid", "mfold",
                    "s1", "s2", "omega", "q0", "shuffle", "out"});
    TangentialSets sets;
    sets.mfold = cfg.integer("mfold", 3, 3, 1024);
    sets.s1 = cfg.int_list("s1", std::to_string(sets.mfold));
    sets.s2 = cfg.int_list("s2", "");
    sets.validate();

    DiophantineParams dio;
    dio.d = sets.dim();
    dio.q0 = cfg.integer("q0", 2, 0, 3);
    dio.gamma = cfg.num("gamma", 1e-3, 0.0, 1.0, true);
    dio.upsilon = cfg.num("upsilon", 1.0 / (dio.q0 + 3), 0.0, 1.0, true, true);
    dio.tau1 = cfg.num("tau1", dio.d * dio.q0 + 1.0, 0.0, 1e6, true);
    dio.tau2 = cfg.num("tau2", 2.0 * dio.d * dio.q0 + 2.0, 0.0, 1e6, true);
    dio.n_cut = cfg.integer("ncut", 10, 1, 10000);
    const int jcut = cfg.integer("jcut", 10 * sets.mfold, sets.mfold, 100000);
    const double omega = cfg.num("omega", 1.0, 0.0, 1e6, true);
    auto [b_lo, b_hi] = cfg.range("b-range", "0.1:0.4");
    const int grid = cfg.integer("grid", 101, 1, 1000000);
    // load-balance shuffle only; per-point results and output order are fixed
    const int shuffle = cfg.integer("shuffle", 0, 0, 1);
    const std::string out = cfg.str("out", "melnikov.csv");
    dio.validate();

    melnikov::MeasureResult res =
        melnikov::excluded_measure(dio, sets, omega, b_lo, b_hi, grid, jcut, shuffle != 0);

    CsvWriter w(out, "b,excluded,first_fail_kind,l,j,j0");
    for (const auto& row : res.rows) {
        std::string ls;
        for (size_t i = 0; i < row.l.size(); ++i)
            ls += (i ? ";" : "") + std::to_string(row.l[i]);
        w.row({fmt17(row.b), row.excluded ? "1" : "0", row.first_fail_kind, ls,
               std::to_string(row.j), std::to_string(row.j0)});
    }

    RunArtifacts art;
    art.files = {out};
    art.inputs = cfg.resolved();
    art.inputs["excluded_fraction"] = fmt17(res.fraction);
    return art;
}

RunArtifacts run_diagnose(const KeyValues& kv) {
    Config cfg(kv, {"b", "omega", "mfold", "s1", "s2", "amps", "dt", "steps", "out"});
    QPInitSpec spec;
    spec.b = cfg.num("b", 0.5, 0.0, 1.0, true, true);
    spec.omega = cfg.num("omega", 1.0, 0.0, 1e6, true);
    spec.sets.mfold = cfg.integer("mfold", 4, 3, 1024);
    spec.sets.s1 = cfg.int_list("s1", std::to_string(spec.sets.mfold));
    spec.sets.s2 = cfg.int_list("s2", "");
    std::vector<double> amps = cfg.num_list("amps", "0.001");
    if (amps.size() != spec.sets.s1.size() + spec.sets.s2.size())
        throw std::invalid_argument("key amps: one amplitude per tangential mode");
    spec.amps1.assign(amps.begin(), amps.begin() + spec.sets.s1.size());
    spec.amps2.assign(amps.begin() + spec.sets.s1.size(), amps.end());
    const double dt = cfg.num("dt", 0.03125, 0.0, 1e6, true);
    const int steps = cfg.integer("steps", 1280, 1, 100000000);
    const std::string out = cfg.str("out", "diagnose.csv");

    FrequencyReport report = qp::diagnose(spec, dt, steps);

    CsvWriter w(out, "j,k,omega_ref,omega_extracted,rel_err,peak_sharpness");
    for (const auto& rd : report.readings)
        w.row({std::to_string(rd.j), std::to_string(rd.k), fmt17(rd.omega_ref),
               fmt17(rd.omega_extracted), fmt17(rd.rel_err), fmt17(rd.peak_sharpness)});

    RunArtifacts art;
    art.files = {out};
    art.inputs = cfg.resolved();
    art.inputs["tolerance"] = fmt17(report.tolerance);
    return art;
}

RunArtifacts run_subcommand(const std::string& name, const KeyValues& cfg) {
    if (name == "dispersion") return run_dispersion(cfg);
    if (name == "simulate") return run_simulate(cfg);
    if (name == "spectrum") return run_spectrum(cfg);
    if (name == "melnikov-measure") return run_melnikov_measure(cfg);
    if (name == "diagnose") return run_diagnose(cfg);
    throw std::invalid_argument("unknown subcommand: " + name);
}

} // namespace avl
