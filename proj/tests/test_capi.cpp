// SPDX-License-Identifier: Apache-2.0
//
// Exercises the public shared-library surface end to end: scalar entry
// points, error-code mapping, runner handles, artifacts, and determinism.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "avl/avl.h"
#include "doctest.h"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE_BEGIN("capi");

TEST_CASE("scalar entry points and error codes") {
    double v = 0.0;
    CHECK(avl_f_poly(3, 0.5, &v) == AVL_OK);
    CHECK(v == 0.0);
    CHECK(avl_root_b_n(4, &v) == AVL_OK);
    CHECK(std::abs(v - std::sqrt(std::sqrt(2.0) - 1.0)) < 1e-12);
    int mstar = 0;
    CHECK(avl_m_star(0.6, &mstar) == AVL_OK);
    CHECK(mstar == 4);

    CHECK(avl_omega_jk(4, 1, 0.5, 1.0, &v) == AVL_OK);
    CHECK(std::abs(v - 4.9980391854123045) < 1e-13);

    // regime errors surface as AVL_ERR_REGIME with a message
    CHECK(avl_omega_jk(2, 1, 0.5, 1.0, &v) == AVL_ERR_REGIME);
    CHECK(std::string(avl_last_error()).size() > 0);
    CHECK(avl_m_star(0.5, &mstar) == AVL_ERR_REGIME);
    // usage errors
    CHECK(avl_omega_jk(0, 1, 0.5, 1.0, &v) == AVL_ERR_USAGE);
    CHECK(avl_f_poly(1, 0.5, &v) == AVL_ERR_USAGE);

    double lo = 0, hi = 0;
    CHECK(avl_omega_pm(4, 0.5, &lo, &hi) == AVL_OK);
    CHECK(lo < hi);
    CHECK(avl_omega_pm(3, 0.7, &lo, &hi) == AVL_ERR_REGIME);

    CHECK(avl_omega_star(4, 0.6, &v) == AVL_OK);
    CHECK(v > 0.0);
    double aj = 0, rj = 0, dl = 0;
    CHECK(avl_a_j(4, 0.5, &aj) == AVL_OK);
    CHECK(avl_r_j(4, 0.5, &rj) == AVL_OK);
    CHECK(avl_delta(2, 0.3, &dl) == AVL_OK);
    CHECK(std::abs(dl) < 1e-14);
    CHECK(std::string(avl_version()).size() > 0);
    CHECK(std::string(avl_tolerances_json()).find("peak_sharpness_min") != std::string::npos);
}

TEST_CASE("dispersion run writes the documented CSV") {
    avl_run* run = avl_run_new("dispersion");
    REQUIRE(run != nullptr);
    CHECK(avl_run_set(run, "b", "0.5") == AVL_OK);
    CHECK(avl_run_set(run, "omega", "1.0") == AVL_OK);
    CHECK(avl_run_set(run, "mfold", "4") == AVL_OK);
    CHECK(avl_run_set(run, "out", "capi_dispersion.csv") == AVL_OK);
    REQUIRE(avl_run_execute(run) == AVL_OK);
    REQUIRE(avl_run_artifact_count(run) == 1);
    const std::string csv = slurp(avl_run_artifact_path(run, 0));
    CHECK(csv.rfind("quantity,j,k,b,Omega,value\n", 0) == 0);
    CHECK(csv.find("omega_jk,4,1,") != std::string::npos);
    const std::string manifest = avl_run_manifest_json(run);
    CHECK(manifest.find("\"subcommand\":\"dispersion\"") != std::string::npos);
    CHECK(manifest.find("\"tolerances\"") != std::string::npos);
    avl_run_free(run);
    CHECK(slurp("capi_dispersion_manifest.json").find("wall_time_s") != std::string::npos);
}

TEST_CASE("range violations name the offending key") {
    avl_run* run = avl_run_new("simulate");
    avl_run_set(run, "b", "1.5");
    CHECK(avl_run_execute(run) == AVL_ERR_USAGE);
    CHECK(std::string(avl_last_error()).find("b") != std::string::npos);
    avl_run_free(run);

    avl_run* bad = avl_run_new("dispersion");
    avl_run_set(bad, "nonsense", "1");
    CHECK(avl_run_execute(bad) == AVL_ERR_USAGE);
    CHECK(std::string(avl_last_error()).find("nonsense") != std::string::npos);
    avl_run_free(bad);
}

TEST_CASE("simulate run: artifacts, determinism, geometry abort") {
    auto configure = [](const char* out) {
        avl_run* r = avl_run_new("simulate");
        avl_run_set(r, "b", "0.5");
        avl_run_set(r, "mfold", "4");
        avl_run_set(r, "modes", "4");
        avl_run_set(r, "amplitudes", "0.001");
        avl_run_set(r, "dt", "0.04");
        avl_run_set(r, "steps", "10");
        avl_run_set(r, "gridsize", "64");
        avl_run_set(r, "out", out);
        return r;
    };
    avl_run* a = configure("capi_sim_a.csv");
    avl_run* b = configure("capi_sim_b.csv");
    REQUIRE(avl_run_execute(a) == AVL_OK);
    REQUIRE(avl_run_execute(b) == AVL_OK);
    CHECK(avl_run_artifact_count(a) == 2);
    CHECK(slurp("capi_sim_a.csv") == slurp("capi_sim_b.csv"));
    CHECK(slurp("capi_sim_a_conserved.csv") == slurp("capi_sim_b_conserved.csv"));
    CHECK(slurp("capi_sim_a.csv").rfind("t,j,k,re,im\n", 0) == 0);
    CHECK(slurp("capi_sim_a_conserved.csv").rfind("t,area1,area2,J,E,H\n", 0) == 0);
    avl_run_free(a);
    avl_run_free(b);

    // geometry failure: exit category 2 and a trailer on the partial CSV
    avl_run* g = avl_run_new("simulate");
    avl_run_set(g, "b", "0.5");
    avl_run_set(g, "mfold", "4");
    avl_run_set(g, "modes", "4");
    avl_run_set(g, "amplitudes", "0.4");
    avl_run_set(g, "dt", "0.04");
    avl_run_set(g, "steps", "5");
    avl_run_set(g, "gridsize", "64");
    avl_run_set(g, "out", "capi_sim_abort.csv");
    CHECK(avl_run_execute(g) == AVL_ERR_GEOMETRY);
    CHECK(slurp("capi_sim_abort.csv").find("# aborted t=") != std::string::npos);
    avl_run_free(g);
}

TEST_CASE("spectrum run matches closed-form eigenvalues") {
    avl_run* r = avl_run_new("spectrum");
    avl_run_set(r, "b", "0.5");
    avl_run_set(r, "mfold", "4");
    avl_run_set(r, "N", "12");
    avl_run_set(r, "out", "capi_spectrum.csv");
    REQUIRE(avl_run_execute(r) == AVL_OK);
    const std::string csv = slurp("capi_spectrum.csv");
    CHECK(csv.rfind("re,im,closest_j,closest_k,abs_error\n", 0) == 0);
    // every data row should report a tiny matching error
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    int rows = 0;
    while (std::getline(ss, line)) {
        const auto last = line.rfind(',');
        CHECK(std::stod(line.substr(last + 1)) < 1e-9);
        ++rows;
    }
    CHECK(rows == 12);
    avl_run_free(r);
}

TEST_CASE("spectrum accepts a state file") {
    {
        std::ofstream st("capi_state.csv", std::ios::binary);
        st << "k,j,re,im\n";
        st << "1,4,0.001,0\n";
        st << "2,8,-0.0005,0.0002\n";
    }
    avl_run* r = avl_run_new("spectrum");
    avl_run_set(r, "b", "0.5");
    avl_run_set(r, "mfold", "4");
    avl_run_set(r, "N", "12");
    avl_run_set(r, "state", "capi_state.csv");
    avl_run_set(r, "out", "capi_spectrum_state.csv");
    REQUIRE(avl_run_execute(r) == AVL_OK);
    // perturbed eigenvalues remain near the equilibrium ones
    std::stringstream ss(slurp("capi_spectrum_state.csv"));
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) {
        const auto last = line.rfind(',');
        CHECK(std::stod(line.substr(last + 1)) < 1e-2);
    }
    avl_run_free(r);
}

TEST_CASE("diagnose run emits the frequency report") {
    avl_run* r = avl_run_new("diagnose");
    avl_run_set(r, "b", "0.5");
    avl_run_set(r, "omega", "1");
    avl_run_set(r, "mfold", "4");
    avl_run_set(r, "s1", "4");
    avl_run_set(r, "amps", "0.001");
    avl_run_set(r, "dt", "0.03125");
    avl_run_set(r, "steps", "1280");
    avl_run_set(r, "out", "capi_diagnose.csv");
    REQUIRE(avl_run_execute(r) == AVL_OK);
    const std::string csv = slurp("capi_diagnose.csv");
    CHECK(csv.rfind("j,k,omega_ref,omega_extracted,rel_err,peak_sharpness\n", 0) == 0);
    CHECK(csv.find("4,1,") != std::string::npos);
    avl_run_free(r);
}

TEST_CASE("melnikov-measure and diagnose runs are reachable") {
    avl_run* m = avl_run_new("melnikov-measure");
    avl_run_set(m, "gamma", "0.001");
    avl_run_set(m, "mfold", "3");
    avl_run_set(m, "s1", "3");
    avl_run_set(m, "s2", "6");
    avl_run_set(m, "b-range", "0.1:0.4");
    avl_run_set(m, "grid", "11");
    avl_run_set(m, "ncut", "6");
    avl_run_set(m, "jcut", "12");
    avl_run_set(m, "upsilon", "0.6");
    avl_run_set(m, "out", "capi_melnikov.csv");
    REQUIRE(avl_run_execute(m) == AVL_OK);
    CHECK(slurp("capi_melnikov.csv").rfind("b,excluded,first_fail_kind,l,j,j0\n", 0) == 0);
    avl_run_free(m);
}

TEST_SUITE_END();
