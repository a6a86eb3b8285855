#pragma once

#include "rbfimex/nodegen.hpp"
#include "rbfimex/poisson.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

namespace rbfimex {

/// How Neumann rows choose their stencil.
enum class NeumannStencil {
    /// The node plus its nearest interior nodes. Plain nearest-node stencils on
    /// the boundary are dominated by neighbouring boundary nodes and leave the
    /// system with negative spurious eigenvalues that stall BiCGSTAB.
    InteriorNeighbors,
    /// The same nearest-node stencil as every other row.
    NearestNodes,
};

NeumannStencil parse_neumann_stencil(std::string_view text);
std::string_view to_string(NeumannStencil s);

/// Everything a run needs. Defaults reproduce the Gaussian-source benchmark:
/// unit disk, alpha = 1000 at (0.5, 0.5), degree 2 implicit / degree 4 explicit.
struct RunConfig {
    DomainSpec domain;
    SourceParams source;
    int m_lo = 2;
    int m_hi = 4;
    int phs_exponent = 3;
    double tolerance = 1e-10;
    std::size_t max_iterations = 0;  // 0 selects 10 * node count
    NeumannMode neumann_mode = NeumannMode::GradientConsistent;
    NeumannStencil neumann_stencil = NeumannStencil::InteriorNeighbors;
    std::size_t sample_count = 400;
    std::size_t sample_k = 9;
    double sample_power = 2.0;
    std::filesystem::path output_dir = "out";

    /// Throws ConfigError; checks m_hi > m_lo before delegating to the modules.
    void validate() const;

    std::size_t effective_max_iterations(std::size_t node_count) const {
        return max_iterations != 0 ? max_iterations : 10 * node_count;
    }
};

/// Applies one `key = value` setting. Throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat `key = value` file; `#` starts a comment.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Parses `key = value` text (used by load_config).
RunConfig parse_config(std::string_view text, RunConfig base = {}, const std::string& source = "<config>");

/// The config rendered back as `key = value` lines, in a fixed order.
std::string to_config_text(const RunConfig& cfg);

}  // namespace rbfimex
