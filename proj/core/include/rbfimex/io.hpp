#pragma once

#include "rbfimex/imex.hpp"
#include "rbfimex/linsys.hpp"
#include "rbfimex/nodegen.hpp"
#include "rbfimex/rbffd.hpp"
#include "rbfimex/sampling.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rbfimex::io {

// All CSVs carry a header row and write floats with 17 significant digits,
// so a write/read cycle reproduces every double exactly.

/// `x,y,kind,nx,ny`; kind 0 interior, 1 Neumann, 2 Dirichlet; nx,ny empty for interior.
void write_nodes(std::ostream& os, const NodeSet& nodes);
void write_nodes(const std::filesystem::path& path, const NodeSet& nodes);
NodeSet read_nodes(std::istream& is, const std::string& source_name = "<stream>");
NodeSet read_nodes(const std::filesystem::path& path);

/// `x,y,kind,u_im`, the implicit solve output.
void write_implicit(const std::filesystem::path& path, const NodeSet& nodes, std::span<const double> u_im);
/// Reads the u_im column and checks positions and kinds against `nodes`.
std::vector<double> read_implicit(const std::filesystem::path& path, const NodeSet& nodes);

/// `x,y,kind,u_im,eps_an,eps_imex` (boundary eps_imex is 0).
void write_solution(std::ostream& os, const NodeSet& nodes, const IndicatorField& field);
void write_solution(const std::filesystem::path& path, const NodeSet& nodes, const IndicatorField& field);

struct SolutionTable {
    NodeSet nodes;  // positions and kinds only; normals are not stored in this file
    IndicatorField field;
};
SolutionTable read_solution(const std::filesystem::path& path);

/// `t,x,y,u_im_norm,eps_an_norm,eps_imex_norm`.
void write_line(std::ostream& os, const LineSample& line);
void write_line(const std::filesystem::path& path, const LineSample& line);

/// `node,neighbor_rank,neighbor_index,weight`.
void write_weights(const std::filesystem::path& path, const OperatorWeights& weights);

/// Matrix Market coordinate real general, 1-based indices.
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& matrix);

/// Formats with 17 significant digits.
std::string format_double(double v);

}  // namespace rbfimex::io
