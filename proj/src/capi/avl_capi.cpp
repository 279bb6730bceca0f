// SPDX-License-Identifier: Apache-2.0
#include "avl/avl.h"

#include <chrono>
#include <exception>
#include <sstream>
#include <string>

#include "core/csv.hpp"
#include "core/dispersion.hpp"
#include "core/errors.hpp"
#include "core/runners.hpp"

namespace {

thread_local std::string g_last_error;

avl_status classify(const std::exception_ptr& ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const avl::GeometryError& e) {
        g_last_error = e.what();
        return AVL_ERR_GEOMETRY;
    } catch (const avl::RegimeError& e) {
        g_last_error = e.what();
        return AVL_ERR_REGIME;
    } catch (const avl::AmbiguousSignalError& e) {
        g_last_error = e.what();
        return AVL_ERR_AMBIGUOUS;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return AVL_ERR_USAGE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AVL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return AVL_ERR_INTERNAL;
    }
}

template <typename F>
avl_status guarded(F&& f) {
    try {
        f();
        return AVL_OK;
    } catch (...) {
        return classify(std::current_exception());
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

struct avl_run {
    std::string subcommand;
    avl::KeyValues config;
    avl::RunArtifacts artifacts;
    std::string manifest;
    bool executed = false;
};

extern "C" {

const char* avl_version(void) { return "0.1.0"; }

const char* avl_last_error(void) { return g_last_error.c_str(); }

const char* avl_tolerances_json(void) {
    thread_local std::string s;
    s = avl::tolerances_json();
    return s.c_str();
}

avl_status avl_f_poly(int mfold, double b, double* out) {
    return guarded([&] { *out = avl::dispersion::f_poly(mfold, b); });
}

avl_status avl_delta(int j, double b, double* out) {
    return guarded([&] { *out = avl::dispersion::delta(j, b); });
}

avl_status avl_root_b_n(int n, double* out) {
    return guarded([&] { *out = avl::dispersion::root_b_n(n); });
}

avl_status avl_m_star(double b_star, int* out) {
    return guarded([&] { *out = avl::dispersion::m_star(b_star); });
}

avl_status avl_omega_jk(int j, int k, double b, double omega, double* out) {
    return guarded([&] { *out = avl::dispersion::omega_jk(j, k, b, omega); });
}

avl_status avl_a_j(int j, double b, double* out) {
    return guarded([&] { *out = avl::dispersion::a_j(j, b); });
}

avl_status avl_r_j(int j, double b, double* out) {
    return guarded([&] { *out = avl::dispersion::asymptotic_r_j(j, b); });
}

avl_status avl_omega_pm(int mfold, double b, double* out_minus, double* out_plus) {
    return guarded([&] {
        auto [lo, hi] = avl::dispersion::omega_pm(mfold, b);
        *out_minus = lo;
        *out_plus = hi;
    });
}

avl_status avl_omega_star(int mfold, double b_star, double* out) {
    return guarded([&] { *out = avl::dispersion::omega_star(mfold, b_star); });
}

avl_run* avl_run_new(const char* subcommand) {
    if (!subcommand) return nullptr;
    auto* run = new avl_run;
    run->subcommand = subcommand;
    return run;
}

void avl_run_free(avl_run* run) { delete run; }

avl_status avl_run_set(avl_run* run, const char* key, const char* value) {
    if (!run || !key || !value) {
        g_last_error = "null argument";
        return AVL_ERR_USAGE;
    }
    run->config[key] = value;
    return AVL_OK;
}

avl_status avl_run_execute(avl_run* run) {
    if (!run) {
        g_last_error = "null run handle";
        return AVL_ERR_USAGE;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const avl_status st = guarded([&] {
        run->artifacts = avl::run_subcommand(run->subcommand, run->config);
        run->executed = true;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (st == AVL_OK) {
        std::ostringstream js;
        js << "{\"subcommand\":\"" << json_escape(run->subcommand) << "\",";
        js << "\"library_version\":\"" << avl_version() << "\",";
        js << "\"wall_time_s\":" << avl::fmt17(wall) << ",";
        js << "\"inputs\":{";
        bool first = true;
        for (const auto& [k, v] : run->artifacts.inputs) {
            if (!first) js << ",";
            first = false;
            js << "\"" << json_escape(k) << "\":\"" << json_escape(v) << "\"";
        }
        js << "},\"artifacts\":[";
        for (size_t i = 0; i < run->artifacts.files.size(); ++i) {
            if (i) js << ",";
            js << "\"" << json_escape(run->artifacts.files[i]) << "\"";
        }
        js << "],\"tolerances\":" << avl::tolerances_json() << "}";
        run->manifest = js.str();

        // manifest lands next to the first artifact
        if (!run->artifacts.files.empty()) {
            std::string base = run->artifacts.files.front();
            const auto dot = base.rfind(".csv");
            if (dot != std::string::npos && dot == base.size() - 4) base = base.substr(0, dot);
            std::ofstream mf(base + "_manifest.json", std::ios::binary);
            if (mf) mf << run->manifest << "\n";
        }
    }
    return st;
}

const char* avl_run_manifest_json(const avl_run* run) {
    if (!run || !run->executed) return "";
    return run->manifest.c_str();
}

int avl_run_artifact_count(const avl_run* run) {
    if (!run || !run->executed) return 0;
    return static_cast<int>(run->artifacts.files.size());
}

const char* avl_run_artifact_path(const avl_run* run, int index) {
    if (!run || !run->executed) return "";
    if (index < 0 || index >= static_cast<int>(run->artifacts.files.size())) return "";
    return run->artifacts.files[index].c_str();
}

} // extern "C"
