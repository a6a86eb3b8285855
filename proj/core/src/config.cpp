#include "rbfimex/config.hpp"

#include "rbfimex/errors.hpp"
#include "rbfimex/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rbfimex {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
    T v{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end || value.empty())
        throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
    return v;
}

}  // namespace

NeumannStencil parse_neumann_stencil(std::string_view text) {
    if (text == "interior") return NeumannStencil::InteriorNeighbors;
    if (text == "nearest") return NeumannStencil::NearestNodes;
    throw ConfigError("unknown neumann stencil '" + std::string(text) + "' (expected interior|nearest)");
}

std::string_view to_string(NeumannStencil s) {
    return s == NeumannStencil::InteriorNeighbors ? "interior" : "nearest";
}

void RunConfig::validate() const {
    if (m_lo < 0) throw ConfigError("m_lo must be non-negative");
    if (m_hi <= m_lo)
        throw ConfigError("m_hi (" + std::to_string(m_hi) + ") must exceed m_lo (" + std::to_string(m_lo) + ")");
    domain.validate();
    source.validate();
    if (phs_exponent < 3 || phs_exponent % 2 == 0) throw ConfigError("phs_exponent must be odd and >= 3");
    if (!(tolerance > 0.0)) throw ConfigError("tol must be positive");
    if (sample_count < 2) throw ConfigError("sample_count must be >= 2");
    if (sample_k < 1) throw ConfigError("sample_k must be >= 1");
    if (!(sample_power > 0.0)) throw ConfigError("sample_power must be positive");
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "center_x") cfg.domain.center.x() = parse_number<double>(key, value);
    else if (key == "center_y") cfg.domain.center.y() = parse_number<double>(key, value);
    else if (key == "radius") cfg.domain.radius = parse_number<double>(key, value);
    else if (key == "h") cfg.domain.spacing = parse_number<double>(key, value);
    else if (key == "seed") cfg.domain.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "fill_candidates") cfg.domain.fill_candidates = parse_number<int>(key, value);
    else if (key == "alpha") cfg.source.alpha = parse_number<double>(key, value);
    else if (key == "source_x") cfg.source.position.x() = parse_number<double>(key, value);
    else if (key == "source_y") cfg.source.position.y() = parse_number<double>(key, value);
    else if (key == "m_lo") cfg.m_lo = parse_number<int>(key, value);
    else if (key == "m_hi") cfg.m_hi = parse_number<int>(key, value);
    else if (key == "phs_exponent") cfg.phs_exponent = parse_number<int>(key, value);
    else if (key == "tol") cfg.tolerance = parse_number<double>(key, value);
    else if (key == "max_iter") cfg.max_iterations = parse_number<std::size_t>(key, value);
    else if (key == "neumann_mode") cfg.neumann_mode = parse_neumann_mode(value);
    else if (key == "neumann_stencil") cfg.neumann_stencil = parse_neumann_stencil(value);
    else if (key == "sample_count") cfg.sample_count = parse_number<std::size_t>(key, value);
    else if (key == "sample_k") cfg.sample_k = parse_number<std::size_t>(key, value);
    else if (key == "sample_power") cfg.sample_power = parse_number<double>(key, value);
    else if (key == "out") cfg.output_dir = std::string(value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, RunConfig base, const std::string& source) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        try {
            apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), std::move(base), path.string());
}

std::string to_config_text(const RunConfig& cfg) {
    using io::format_double;
    std::ostringstream os;
    os << "center_x = " << format_double(cfg.domain.center.x()) << '\n'
       << "center_y = " << format_double(cfg.domain.center.y()) << '\n'
       << "radius = " << format_double(cfg.domain.radius) << '\n'
       << "h = " << format_double(cfg.domain.spacing) << '\n'
       << "seed = " << cfg.domain.seed << '\n'
       << "fill_candidates = " << cfg.domain.fill_candidates << '\n'
       << "alpha = " << format_double(cfg.source.alpha) << '\n'
       << "source_x = " << format_double(cfg.source.position.x()) << '\n'
       << "source_y = " << format_double(cfg.source.position.y()) << '\n'
       << "m_lo = " << cfg.m_lo << '\n'
       << "m_hi = " << cfg.m_hi << '\n'
       << "phs_exponent = " << cfg.phs_exponent << '\n'
       << "tol = " << format_double(cfg.tolerance) << '\n'
       << "max_iter = " << cfg.max_iterations << '\n'
       << "neumann_mode = " << to_string(cfg.neumann_mode) << '\n'
       << "neumann_stencil = " << to_string(cfg.neumann_stencil) << '\n'
       << "sample_count = " << cfg.sample_count << '\n'
       << "sample_k = " << cfg.sample_k << '\n'
       << "sample_power = " << format_double(cfg.sample_power) << '\n'
       << "out = " << cfg.output_dir.string() << '\n';
    return os.str();
}

}  // namespace rbfimex
