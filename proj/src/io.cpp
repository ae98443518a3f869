#include "hadamax/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "hadamax/error.hpp"

namespace hadamax {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t lineno) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
        if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
            parse_fail(lineno, "expected a non-negative integer");
        }
        out.push_back(v);
        i = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

}  // namespace

std::string format_matrix(const SignMatrix& h) {
    std::string out = std::to_string(h.order()) + "\n";
    out.reserve(out.size() + h.order() * (h.order() + 1));
    for (std::size_t i = 0; i < h.order(); ++i) {
        for (std::size_t j = 0; j < h.order(); ++j) out.push_back(h.at(i, j) > 0 ? '+' : '-');
        out.push_back('\n');
    }
    return out;
}

SignMatrix parse_matrix(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) parse_fail(1, "missing order");
    const auto header = parse_numbers(lines[0], 1);
    if (header.size() != 1 || header[0] == 0) parse_fail(1, "expected a positive order");
    const std::size_t n = header[0];
    if (lines.size() != n + 1) parse_fail(lines.size(), "expected " + std::to_string(n) + " rows");
    SignMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = lines[i + 1];
        if (row.size() != n) parse_fail(i + 2, "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == '-') {
                h.set(i, j, -1);
            } else if (row[j] != '+') {
                parse_fail(i + 2, "entries must be '+' or '-'");
            }
        }
    }
    return h;
}

SchemePartition parse_partition(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.size() != 5) parse_fail(lines.size(), "expected a header and four index lines");
    const auto header = parse_numbers(lines[0], 1);
    if (header.size() != 3) parse_fail(1, "expected \"q m e\"");
    SchemePartition p;
    p.q = header[0];
    p.m = static_cast<std::uint32_t>(header[1]);
    p.e = static_cast<std::uint32_t>(header[2]);
    if (p.e == 0) parse_fail(1, "e must be positive");
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::uint64_t v : parse_numbers(lines[i + 1], i + 2)) {
            if (v >= p.e) parse_fail(i + 2, "index " + std::to_string(v) + " is not below e");
            p.h[i].push_back(static_cast<std::uint32_t>(v));
        }
    }
    return p;
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const ExcessReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["excess"] = r.excess;
    if (r.bound) {
        j["k"] = r.bound->k;
        j["t"] = r.bound->t;
        j["s"] = r.bound->s;
        j["bound"] = r.bound->bound;
        j["alt_t"] = r.bound->alt_t;
        j["alt_bound"] = r.bound->alt_bound;
    } else {
        for (const char* key : {"k", "t", "s", "bound", "alt_t", "alt_bound"}) j[key] = nullptr;
    }
    nlohmann::json sums = nlohmann::json::object();
    for (const auto& [value, count] : r.row_sums) sums[std::to_string(value)] = count;
    j["row_sums"] = sums;
    j["classification"] = to_string(r.classification);
    j["attains_bound"] = r.attains_bound();
    if (r.biregular) {
        j["k1"] = r.biregular->k1;
        j["k2"] = r.biregular->k2;
        j["m1"] = r.biregular->m1;
        j["m2"] = r.biregular->m2;
        j["frequencies_consistent"] = r.biregular->frequencies_consistent;
    }
    return j;
}

nlohmann::json to_json(const SchemeReport& r) {
    nlohmann::json j;
    j["structure_ok"] = r.structure.ok();
    j["is_scheme"] = r.is_scheme;
    j["symmetric"] = r.symmetric;
    j["commutative"] = r.commutative;
    j["table1_match"] = r.table1.match;
    j["tau"] = r.tau == 0 ? nlohmann::json(nullptr) : nlohmann::json(r.tau);
    j["taus"] = r.table1.taus;
    j["multiplier"] = r.multiplier;
    j["class_sizes"] = r.class_sizes;
    j["dual_sizes"] = r.table1.dual_sizes;
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& row : r.table1.eigenmatrix) {
        nlohmann::json jr = nlohmann::json::array();
        for (Complex z : row) jr.push_back(complex_json(z));
        eig.push_back(jr);
    }
    j["eigenmatrix"] = eig;
    if (r.table1.first_failure) {
        const auto& c = *r.table1.first_failure;
        j["first_failure"] = {{"row", c.row},
                              {"col", c.col},
                              {"expected", complex_json(c.expected)},
                              {"observed", complex_json(c.observed)},
                              {"witness_index", c.witness}};
    }
    return j;
}

nlohmann::json to_json(const ParamChoice& c) {
    nlohmann::json j;
    j["family"] = to_string(c.family);
    j["m"] = c.m;
    j["ell"] = c.ell;
    if (c.family == Family::Scheme) {
        j["tau"] = c.tau;
        j["s0_classes"] = c.h0;
        j["s1_classes"] = c.h1;
    } else {
        j["h"] = c.h;
        j["h0"] = c.h0;
        if (!c.h1.empty()) j["h1"] = c.h1;
    }
    if (c.decomposition) {
        j["epsilon"] = c.decomposition->epsilon;
        j["delta"] = c.decomposition->delta;
    }
    return j;
}

nlohmann::json to_json(const SchemePartition& p) {
    return {{"q", p.q}, {"m", p.m}, {"e", p.e}, {"multiplier", p.multiplier},
            {"h1", p.h[0]}, {"h2", p.h[1]}, {"h3", p.h[2]}, {"h4", p.h[3]}};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::ParseError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out.flush()) throw Error(Errc::ParseError, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace hadamax
