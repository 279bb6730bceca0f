// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Parses flags and an optional flat key=value
// config file (flags override the file), then drives everything through the
// public C API in avl/avl.h.
//
// Exit codes: 0 success, 1 usage, 2 geometry, 3 regime, 4 ambiguous signal,
// 5 internal.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "avl/avl.h"

namespace {

struct SubcommandSpec {
    const char* name;
    std::vector<const char*> keys;
};

const SubcommandSpec kSubcommands[] = {
    {"dispersion", {"b", "omega", "mfold", "jmax", "nroot", "out", "config"}},
    {"simulate",
     {"b", "omega", "mfold", "modes", "amplitudes", "components", "dt", "steps", "sample-every",
      "gridsize", "out", "config"}},
    {"spectrum", {"b", "omega", "mfold", "N", "state", "gridsize", "out", "config"}},
    {"melnikov-measure",
     {"gamma", "tau1", "tau2", "upsilon", "ncut", "jcut", "b-range", "grid", "mfold", "s1", "s2",
      "omega", "q0", "shuffle", "out", "config"}},
    {"diagnose", {"b", "omega", "mfold", "s1", "s2", "amps", "dt", "steps", "out", "config"}},
};

void usage(std::FILE* to) {
    std::fprintf(to, "usage: avl <subcommand> [--key value ...] [--config file]\n\n");
    std::fprintf(to, "subcommands and flags:\n");
    for (const auto& sc : kSubcommands) {
        std::fprintf(to, "  %-17s", sc.name);
        for (const char* k : sc.keys) std::fprintf(to, " --%s", k);
        std::fprintf(to, "\n");
    }
    std::fprintf(to,
                 "\nconfig files are flat `key = value` lines; flags override file values.\n"
                 "AVL_THREADS caps worker threads (0 = auto).\n");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool known_key(const SubcommandSpec& sc, const std::string& key) {
    return std::any_of(sc.keys.begin(), sc.keys.end(),
                       [&](const char* k) { return key == k; });
}

int fail_usage(const std::string& msg) {
    std::fprintf(stderr, "avl: %s\n", msg.c_str());
    return AVL_ERR_USAGE;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(stderr);
        return AVL_ERR_USAGE;
    }
    const std::string name = argv[1];
    if (name == "--help" || name == "-h" || name == "help") {
        usage(stdout);
        return 0;
    }
    if (name == "--version") {
        std::printf("avl %s\n", avl_version());
        return 0;
    }

    const SubcommandSpec* sc = nullptr;
    for (const auto& cand : kSubcommands)
        if (name == cand.name) sc = &cand;
    if (!sc) return fail_usage("unknown subcommand: " + name);

    // flags: --key value
    std::map<std::string, std::string> flags;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0) return fail_usage("expected --flag, got: " + arg);
        const std::string key = arg.substr(2);
        if (!known_key(*sc, key)) return fail_usage("unknown flag for " + name + ": --" + key);
        if (i + 1 >= argc) return fail_usage("flag --" + key + " needs a value");
        flags[key] = argv[++i];
    }

    // config file first, flags override
    std::map<std::string, std::string> merged;
    if (flags.count("config")) {
        std::ifstream in(flags["config"]);
        if (!in) return fail_usage("cannot open config file: " + flags["config"]);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                return fail_usage("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (!known_key(*sc, key) || key == "config")
                return fail_usage("config: unknown key: " + key);
            merged[key] = value;
        }
        flags.erase("config");
    }
    for (const auto& [k, v] : flags) merged[k] = v;

    avl_run* run = avl_run_new(name.c_str());
    if (!run) return AVL_ERR_INTERNAL;
    for (const auto& [k, v] : merged) {
        if (avl_run_set(run, k.c_str(), v.c_str()) != AVL_OK) {
            std::fprintf(stderr, "avl: %s\n", avl_last_error());
            avl_run_free(run);
            return AVL_ERR_USAGE;
        }
    }

    const avl_status st = avl_run_execute(run);
    if (st != AVL_OK) {
        std::fprintf(stderr, "avl: %s: %s\n", name.c_str(), avl_last_error());
        avl_run_free(run);
        return st;
    }
    for (int i = 0; i < avl_run_artifact_count(run); ++i)
        std::printf("wrote %s\n", avl_run_artifact_path(run, i));
    avl_run_free(run);
    return 0;
}
