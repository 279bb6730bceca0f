// SPDX-License-Identifier: Apache-2.0
#ifndef AVL_CORE_ERRORS_HPP
#define AVL_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace avl {

// Interface geometry broke down (radicand nonpositive, interfaces touching).
// Carries the simulation time at which it happened when raised mid-run.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what, double time = 0.0)
        : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

// Spectral quantity requested outside the elliptic regime (Delta_j >= 0,
// a_j out of range, degenerate modulus, no bifurcation).
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Frequency extraction found no usable spectral peak.
class AmbiguousSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace avl

#endif
