// SPDX-License-Identifier: Apache-2.0
//
// Subcommand runners: validated key/value configuration in, CSV artifacts
// out.  Shared by the C API and exercised directly by the tests.
#ifndef AVL_CORE_RUNNERS_HPP
#define AVL_CORE_RUNNERS_HPP

#include <map>
#include <string>
#include <vector>

namespace avl {

using KeyValues = std::map<std::string, std::string>;

struct RunArtifacts {
    std::vector<std::string> files;   // CSV paths written
    KeyValues inputs;                 // resolved configuration (defaults filled in)
};

// Frozen numeric constants of the library, rendered as JSON.
std::string tolerances_json();

// Each runner validates, computes, and writes; unknown or out-of-range keys
// raise std::invalid_argument naming the key.  Module failures raise the
// error types in errors.hpp.
RunArtifacts run_dispersion(const KeyValues& cfg);
RunArtifacts run_simulate(const KeyValues& cfg);
RunArtifacts run_spectrum(const KeyValues& cfg);
RunArtifacts run_melnikov_measure(const KeyValues& cfg);
RunArtifacts run_diagnose(const KeyValues& cfg);

// Dispatch on subcommand name.
RunArtifacts run_subcommand(const std::string& name, const KeyValues& cfg);

} // namespace avl

#endif
