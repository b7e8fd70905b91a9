#pragma once

#include <cstddef>
#include <vector>

namespace intfield {

/// Multi-component field and its time derivative on a 1D node set.
/// Layout: value of component a at node n is stored at n * components + a.
struct FieldSlice {
    std::size_t components = 1;
    std::vector<double> phi;
    std::vector<double> pi;

    FieldSlice() = default;
    FieldSlice(std::size_t nodes, std::size_t comps)
        : components(comps), phi(nodes * comps, 0.0), pi(nodes * comps, 0.0) {}

    [[nodiscard]] std::size_t nodes() const { return components ? phi.size() / components : 0; }
    double& field(std::size_t n, std::size_t a) { return phi[n * components + a]; }
    [[nodiscard]] double field(std::size_t n, std::size_t a) const { return phi[n * components + a]; }
    double& velocity(std::size_t n, std::size_t a) { return pi[n * components + a]; }
    [[nodiscard]] double velocity(std::size_t n, std::size_t a) const { return pi[n * components + a]; }
};

}  // namespace intfield
