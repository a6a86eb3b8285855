#include "rbfimex/io.hpp"

#include "rbfimex/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace rbfimex::io {

std::string format_double(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return {buf, static_cast<std::size_t>(len)};
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open input file " + path.string());
    return is;
}

int kind_code(NodeKind k) { return static_cast<int>(k); }

// Line-oriented reader for the fixed-header CSVs above.
class CsvReader {
public:
    CsvReader(std::istream& is, std::string source, std::string_view header, std::size_t fields)
        : is_(is), source_(std::move(source)), fields_(fields) {
        std::string line;
        if (!std::getline(is_, line)) fail("empty file, expected header '" + std::string(header) + "'");
        ++line_no_;
        strip_cr(line);
        if (line != header) fail("expected header '" + std::string(header) + "', got '" + line + "'");
    }

    // Splits the next non-empty line; false at end of input.
    bool next(std::vector<std::string_view>& out) {
        while (std::getline(is_, line_)) {
            ++line_no_;
            strip_cr(line_);
            if (line_.empty()) continue;
            out.clear();
            std::size_t start = 0;
            for (;;) {
                const auto comma = line_.find(',', start);
                out.emplace_back(std::string_view(line_).substr(start, comma - start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (out.size() != fields_)
                fail("expected " + std::to_string(fields_) + " fields, got " + std::to_string(out.size()));
            return true;
        }
        return false;
    }

    double number(std::string_view text, const char* column) const {
        double v = 0.0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || ptr != end || text.empty())
            fail(std::string("invalid number '") + std::string(text) + "' in column " + column);
        return v;
    }

    NodeKind kind(std::string_view text) const {
        if (text == "0") return NodeKind::Interior;
        if (text == "1") return NodeKind::NeumannBoundary;
        if (text == "2") return NodeKind::DirichletBoundary;
        fail("invalid node kind '" + std::string(text) + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(source_ + ":" + std::to_string(line_no_) + ": " + msg);
    }

private:
    static void strip_cr(std::string& s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    }

    std::istream& is_;
    std::string source_;
    std::size_t fields_;
    std::size_t line_no_ = 0;
    std::string line_;
};

// Verifies that a per-node file lists the same nodes, in order, as `nodes`.
void check_node(const CsvReader& csv, const NodeSet& nodes, std::size_t i, const Vec2& p, NodeKind k) {
    if (i >= nodes.size()) csv.fail("more rows than nodes (" + std::to_string(nodes.size()) + ")");
    if (nodes.positions[i] != p || nodes.kinds[i] != k) csv.fail("row does not match node " + std::to_string(i));
}

}  // namespace

void write_nodes(std::ostream& os, const NodeSet& nodes) {
    os << "x,y,kind,nx,ny\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec2& p = nodes.positions[i];
        os << format_double(p.x()) << ',' << format_double(p.y()) << ',' << kind_code(nodes.kinds[i]) << ',';
        if (is_boundary(nodes.kinds[i]))
            os << format_double(nodes.normals[i].x()) << ',' << format_double(nodes.normals[i].y());
        else
            os << ',';
        os << '\n';
    }
}

void write_nodes(const std::filesystem::path& path, const NodeSet& nodes) {
    auto os = open_out(path);
    write_nodes(os, nodes);
}

NodeSet read_nodes(std::istream& is, const std::string& source_name) {
    CsvReader csv(is, source_name, "x,y,kind,nx,ny", 5);
    NodeSet nodes;
    std::vector<std::string_view> f;
    while (csv.next(f)) {
        const Vec2 p(csv.number(f[0], "x"), csv.number(f[1], "y"));
        const NodeKind k = csv.kind(f[2]);
        if (is_boundary(k)) {
            const Vec2 n(csv.number(f[3], "nx"), csv.number(f[4], "ny"));
            nodes.push_back(p, k, n);
        } else {
            if (!f[3].empty() || !f[4].empty()) csv.fail("interior node must not carry a normal");
            nodes.push_back(p, k);
        }
    }
    if (nodes.empty()) csv.fail("no nodes");
    return nodes;
}

NodeSet read_nodes(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_nodes(is, path.string());
}

void write_implicit(const std::filesystem::path& path, const NodeSet& nodes, std::span<const double> u_im) {
    auto os = open_out(path);
    os << "x,y,kind,u_im\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec2& p = nodes.positions[i];
        os << format_double(p.x()) << ',' << format_double(p.y()) << ',' << kind_code(nodes.kinds[i]) << ','
           << format_double(u_im[i]) << '\n';
    }
}

std::vector<double> read_implicit(const std::filesystem::path& path, const NodeSet& nodes) {
    auto is = open_in(path);
    CsvReader csv(is, path.string(), "x,y,kind,u_im", 4);
    std::vector<double> u;
    u.reserve(nodes.size());
    std::vector<std::string_view> f;
    while (csv.next(f)) {
        check_node(csv, nodes, u.size(), {csv.number(f[0], "x"), csv.number(f[1], "y")}, csv.kind(f[2]));
        u.push_back(csv.number(f[3], "u_im"));
    }
    if (u.size() != nodes.size())
        csv.fail("expected " + std::to_string(nodes.size()) + " rows, got " + std::to_string(u.size()));
    return u;
}

void write_solution(std::ostream& os, const NodeSet& nodes, const IndicatorField& field) {
    os << "x,y,kind,u_im,eps_an,eps_imex\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec2& p = nodes.positions[i];
        os << format_double(p.x()) << ',' << format_double(p.y()) << ',' << kind_code(nodes.kinds[i]) << ','
           << format_double(field.u_im[i]) << ',' << format_double(field.eps_an[i]) << ','
           << format_double(field.eps_imex[i]) << '\n';
    }
}

void write_solution(const std::filesystem::path& path, const NodeSet& nodes, const IndicatorField& field) {
    auto os = open_out(path);
    write_solution(os, nodes, field);
}

SolutionTable read_solution(const std::filesystem::path& path) {
    auto is = open_in(path);
    CsvReader csv(is, path.string(), "x,y,kind,u_im,eps_an,eps_imex", 6);
    SolutionTable table;
    std::vector<std::string_view> f;
    while (csv.next(f)) {
        const Vec2 p(csv.number(f[0], "x"), csv.number(f[1], "y"));
        const NodeKind k = csv.kind(f[2]);
        // Normals are not part of this file and stay zero.
        table.nodes.push_back(p, k);
        table.field.u_im.push_back(csv.number(f[3], "u_im"));
        table.field.eps_an.push_back(csv.number(f[4], "eps_an"));
        table.field.eps_imex.push_back(csv.number(f[5], "eps_imex"));
    }
    if (table.nodes.empty()) csv.fail("no rows");
    return table;
}

void write_line(std::ostream& os, const LineSample& line) {
    os << "t,x,y,u_im_norm,eps_an_norm,eps_imex_norm\n";
    for (std::size_t i = 0; i < line.t.size(); ++i) {
        os << format_double(line.t[i]) << ',' << format_double(line.positions[i].x()) << ','
           << format_double(line.positions[i].y()) << ',' << format_double(line.u_im_norm[i]) << ','
           << format_double(line.eps_an_norm[i]) << ',' << format_double(line.eps_imex_norm[i]) << '\n';
    }
}

void write_line(const std::filesystem::path& path, const LineSample& line) {
    auto os = open_out(path);
    write_line(os, line);
}

void write_weights(const std::filesystem::path& path, const OperatorWeights& weights) {
    auto os = open_out(path);
    os << "node,neighbor_rank,neighbor_index,weight\n";
    for (std::size_t r = 0; r < weights.row_count(); ++r) {
        const auto nb = weights.neighbors_of(r);
        const auto w = weights.weights_of(r);
        for (std::size_t j = 0; j < weights.stencil_size; ++j)
            os << weights.rows[r] << ',' << j << ',' << nb[j] << ',' << format_double(w[j]) << '\n';
    }
}

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& matrix) {
    auto os = open_out(path);
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << matrix.rows << ' ' << matrix.rows << ' ' << matrix.nonzeros() << '\n';
    for (std::size_t r = 0; r < matrix.rows; ++r)
        for (std::size_t k = matrix.row_offsets[r]; k < matrix.row_offsets[r + 1]; ++k)
            os << r + 1 << ' ' << matrix.columns[k] + 1 << ' ' << format_double(matrix.values[k]) << '\n';
}

}  // namespace rbfimex::io
