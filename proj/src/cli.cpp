#include "hadamax/cli.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hadamax/association_schemes.hpp"
#include "hadamax/hadamard.hpp"
#include "hadamax/intersection_sets.hpp"
#include "hadamax/io.hpp"

namespace hadamax::cli {

namespace {

using nlohmann::json;

enum class Route { Q3, Q1, Regular };

Route parse_route(const std::string& name) {
    if (name == "q3" || name == "e8") return Route::Q3;
    if (name == "q1" || name == "e4" || name == "e4-odd" || name == "e4-even") return Route::Q1;
    if (name == "regular" || name == "scheme") return Route::Regular;
    throw Error(Errc::BadForm, "unknown family '" + name + "'");
}

/// The family whose form q must have; E4 resolves by the parity of m.
Family family_for(Route route, std::uint64_t q) {
    switch (route) {
        case Route::Q3: return Family::E8;
        case Route::Regular: return Family::Scheme;
        case Route::Q1: return family_m(Family::E4Even, q) ? Family::E4Even : Family::E4Odd;
    }
    return Family::E8;
}

struct Target {
    Family family;
    std::uint64_t q;
    std::uint32_t m;
    FieldPtr ext;
};

Target resolve(Route route, std::optional<std::uint64_t> q, std::optional<std::uint32_t> m) {
    if (q.has_value() == m.has_value()) throw Error(Errc::BadForm, "give exactly one of --q and --m");
    if (m) {
        if (*m == 0) throw Error(Errc::BadForm, "m must be positive");
        const Family probe = route == Route::Q1 ? (*m % 2 ? Family::E4Odd : Family::E4Even) : family_for(route, 0);
        q = family_q(probe, *m);
    }
    const auto pp = prime_power(*q);
    if (!pp) throw Error(Errc::NotPrimePower, std::to_string(*q) + " is not a prime power");
    const Family family = family_for(route, *q);
    const auto fm = family_m(family, *q);
    if (!fm) throw Error(Errc::BadForm, std::to_string(*q) + " does not have the family's form");
    return {family, *q, *fm, FieldContext::build(pp->first, 2 * pp->second)};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void emit_text(std::ostream& out, const ExcessReport& r) {
    out << "n: " << r.n << "\nexcess: " << r.excess << "\nbound: ";
    if (r.bound) {
        out << r.bound->bound;
    } else {
        out << "none";
    }
    out << "\nclassification: " << to_string(r.classification) << "\nrow_sums:";
    for (const auto& [v, c] : r.row_sums) out << ' ' << v << 'x' << c;
    out << '\n';
}

std::filesystem::path prepare_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::filesystem::create_directories(p);
    return p;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
    std::string family;
    std::optional<std::uint32_t> m;
    std::optional<std::uint64_t> q;
    std::optional<std::uint64_t> ell;
    std::optional<std::uint32_t> h;
    std::string partition;
    std::string out_dir;
    std::string format = "text";
};

std::optional<ParamChoice> override_params(const FieldContext& ext, Family family, const ConstructArgs& a) {
    if (!a.ell && !a.h) return std::nullopt;
    if (!a.ell) throw Error(Errc::BadEll, "--h needs --ell");
    for (const auto& c : admissible_params(ext, family)) {
        if (c.ell == *a.ell && (!a.h || c.h == *a.h)) return c;
    }
    throw Error(Errc::BadEll, "(l, h) is not admissible for this field");
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
    const Route route = parse_route(a.family);
    const Target t = resolve(route, a.q, a.m);
    TransformResult result;
    json extra = json::object();
    if (route == Route::Regular) {
        if (a.ell || a.h) throw Error(Errc::BadForm, "--ell/--h do not apply to the regular family");
        if (a.partition.empty()) throw Error(Errc::BadForm, "--partition is required for the regular family");
        SchemePartition part = parse_partition(read_file(a.partition));
        if (part.q != t.q || part.m != t.m) throw Error(Errc::BadForm, "partition does not match q and m");
        const auto report = align_partition(*t.ext, part);
        if (!report.passes()) {
            emit(out, json{{"error", "SchemeInvalid"}, {"scheme", to_json(report)}});
            return kVerifyFailed;
        }
        extra["partition"] = to_json(part);
        result = transform_regular(*t.ext, part);
    } else {
        const auto params = override_params(*t.ext, t.family, a);
        result = route == Route::Q3 ? transform_biregular_q3(*t.ext, params) : transform_biregular_q1(*t.ext, params);
    }

    json j{{"family", to_string(t.family)}, {"q", t.q}, {"m", t.m}, {"params", to_json(result.params)},
           {"report", to_json(result.report)}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    if (!a.out_dir.empty()) {
        const auto dir = prepare_dir(a.out_dir);
        write_file_atomic(dir / "base.txt", format_matrix(result.base));
        write_file_atomic(dir / "matrix.txt", format_matrix(result.matrix));
        write_file_atomic(dir / "report.json", j.dump(2) + "\n");
    }
    if (a.format == "json") {
        emit(out, j);
    } else {
        out << "family: " << to_string(t.family) << "\nq: " << t.q << "\nm: " << t.m << "\nell: " << result.params.ell
            << '\n';
        emit_text(out, result.report);
    }
    return result.report.attains_bound() ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& path, const std::string& format, std::ostream& out) {
    const SignMatrix h = parse_matrix(read_file(path));
    if (const auto bad = first_violation(h)) {
        json j{{"hadamard", false}, {"n", h.order()}, {"violation", {bad->first, bad->second}}};
        if (format == "json") {
            emit(out, j);
        } else {
            out << "not Hadamard: rows " << bad->first << " and " << bad->second << " are not orthogonal\n";
        }
        return kVerifyFailed;
    }
    const auto report = excess_report(h);
    if (format == "json") {
        json j = to_json(report);
        j["hadamard"] = true;
        emit(out, j);
    } else {
        out << "hadamard: yes\n";
        emit_text(out, report);
    }
    return kOk;
}

// ---------------------------------------------------------------- search-params

int cmd_search_params(const std::string& family, std::optional<std::uint64_t> q, std::optional<std::uint32_t> m,
                      const std::string& partition, std::ostream& out) {
    const Route route = parse_route(family);
    const Target t = resolve(route, q, m);
    json list = json::array();
    if (route == Route::Regular) {
        if (partition.empty()) throw Error(Errc::BadForm, "--partition is required for the regular family");
        SchemePartition part = parse_partition(read_file(partition));
        if (part.q != t.q || part.m != t.m) throw Error(Errc::BadForm, "partition does not match q and m");
        const auto report = align_partition(*t.ext, part);
        const auto labels = class_labels(*t.ext, part);
        for (int tau : report.table1.taus) {
            if (auto c = find_scheme_params(*t.ext, labels, t.m, tau)) list.push_back(to_json(*c));
        }
    } else {
        for (const auto& c : admissible_params(*t.ext, t.family)) list.push_back(to_json(c));
    }
    emit(out, json{{"family", to_string(t.family)}, {"q", t.q}, {"m", t.m}, {"params", list}});
    return list.empty() ? kVerifyFailed : kOk;
}

// ---------------------------------------------------------------- scheme

struct SchemeArgs {
    bool verify = false;
    bool search = false;
    std::string partition;
    std::optional<std::uint32_t> m;
    std::optional<std::uint32_t> e;
    std::uint64_t budget = 1'000'000;
    bool exhaustive = false;
    bool no_align = false;
    std::string out_dir;
    std::string format = "json";
};

int cmd_scheme_verify(const SchemeArgs& a, std::ostream& out) {
    if (a.partition.empty()) throw Error(Errc::BadForm, "--partition is required");
    SchemePartition part = parse_partition(read_file(a.partition));
    const auto ext = scheme_field(part);
    const SchemeOptions opts{a.exhaustive, true};
    const SchemeReport report = a.no_align ? verify_scheme(*ext, part, opts) : align_partition(*ext, part, opts);
    json j{{"partition", to_json(part)}, {"report", to_json(report)}, {"passes", report.passes()}};
    if (report.passes()) {
        const auto sets = two_intersection_from_scheme(*ext, part, report.tau);
        j["two_intersection"] = {{"params", to_json(sets.params)},
                                 {"size0", sets.d0.size()},
                                 {"size1", sets.d1.size()},
                                 {"values_first", sets.first.values()},
                                 {"values_second", sets.second.values()}};
    }
    if (!a.out_dir.empty()) write_file_atomic(prepare_dir(a.out_dir) / "scheme_report.json", j.dump(2) + "\n");
    if (a.format == "json") {
        emit(out, j);
    } else {
        out << "scheme: " << (report.is_scheme ? "yes" : "no") << "\ntable1: " << (report.table1.match ? "yes" : "no")
            << "\nmultiplier: " << report.multiplier << "\ntau: " << report.tau << '\n';
        if (const auto& c = report.table1.first_failure) {
            out << "first failing cell: Y" << c->row << " X" << c->col << " expected " << c->expected << " observed "
                << c->observed << '\n';
        }
    }
    return report.passes() ? kOk : kVerifyFailed;
}

int cmd_scheme_search(const SchemeArgs& a, std::ostream& out) {
    if (!a.m || !a.e) throw Error(Errc::BadForm, "--search needs --m and --e");
    const std::uint64_t q = 2ull * *a.m * *a.m - 1;
    const auto pp = prime_power(q);
    if (!pp) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
    const auto ext = FieldContext::build(pp->first, 2 * pp->second);
    json found = json::array();
    std::string text;
    SearchOptions opts;
    opts.budget = a.budget;
    opts.on_found = [&](const SchemePartition& p) {
        found.push_back(to_json(p));
        if (a.format != "json") {
            out << format_partition(p) << '\n';
            out.flush();
        }
        text += format_partition(p) + "\n";
    };
    scheme_search(*ext, *a.m, *a.e, opts);
    if (!a.out_dir.empty()) write_file_atomic(prepare_dir(a.out_dir) / "partitions.txt", text);
    if (a.format == "json") emit(out, json{{"m", *a.m}, {"e", *a.e}, {"found", found}});
    return kOk;
}

}  // namespace

ExitCode exit_code_for(Errc code) noexcept {
    switch (code) {
        case Errc::BudgetExceeded: return kBudget;
        case Errc::NotHadamard:
        case Errc::InvariantBreach:
        case Errc::SchemeInvalid:
        case Errc::ProfileMismatch:
        case Errc::NoMatch:
        case Errc::NotFound: return kVerifyFailed;
        default: return kInputError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximum-excess Hadamard matrices from quadratic residues and cyclotomy"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a base matrix, sign it, and report its excess");
    construct->set_help_flag("--help", "Print this help message and exit");  // frees the name h
    construct->add_option("--family", ca.family, "q3|e8, q1|e4, regular|scheme")->required();
    auto* cm = construct->add_option("--m", ca.m, "Family parameter m");
    construct->add_option("--q", ca.q, "Prime power q")->excludes(cm);
    construct->add_option("--ell", ca.ell, "Override l");
    construct->add_option("--h", ca.h, "Override h (with --ell)");
    construct->add_option("--partition", ca.partition, "Partition file (regular family)");
    construct->add_option("--out", ca.out_dir, "Directory for base.txt, matrix.txt, report.json");
    construct->add_option("--format", ca.format, "text|json")->check(CLI::IsMember({"text", "json"}));

    std::string verify_path;
    std::string verify_format = "text";
    auto* verify = app.add_subcommand("verify", "Check a matrix file and report its excess");
    verify->add_option("matrix", verify_path, "Matrix text file")->required();
    verify->add_option("--format", verify_format, "text|json")->check(CLI::IsMember({"text", "json"}));

    std::string sp_family;
    std::optional<std::uint64_t> sp_q;
    std::optional<std::uint32_t> sp_m;
    std::string sp_partition;
    auto* sp = app.add_subcommand("search-params", "List admissible (l, h) as JSON");
    sp->add_option("--family", sp_family, "q3|e8, q1|e4, regular|scheme")->required();
    auto* spm = sp->add_option("--m", sp_m, "Family parameter m");
    sp->add_option("--q", sp_q, "Prime power q")->excludes(spm);
    sp->add_option("--partition", sp_partition, "Partition file (regular family)");

    SchemeArgs sa;
    auto* scheme = app.add_subcommand("scheme", "Verify a cyclotomic partition or search for one");
    auto* sv = scheme->add_flag("--verify", sa.verify, "Verify --partition");
    scheme->add_flag("--search", sa.search, "Search shift-paired partitions")->excludes(sv);
    scheme->add_option("--partition", sa.partition, "Partition file");
    scheme->add_option("--m", sa.m, "m for --search");
    scheme->add_option("--e", sa.e, "Class modulus for --search");
    scheme->add_option("--budget", sa.budget, "Candidate budget for --search");
    scheme->add_flag("--exhaustive", sa.exhaustive, "Intersection numbers at every element");
    scheme->add_flag("--no-align", sa.no_align, "Read the lists literally");
    scheme->add_option("--out", sa.out_dir, "Directory for the report or found partitions");
    scheme->add_option("--format", sa.format, "text|json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*construct) return cmd_construct(ca, out);
        if (*verify) return cmd_verify(verify_path, verify_format, out);
        if (*sp) return cmd_search_params(sp_family, sp_q, sp_m, sp_partition, out);
        if (*scheme) {
            if (sa.verify) return cmd_scheme_verify(sa, out);
            if (sa.search) return cmd_scheme_search(sa, out);
            err << "scheme: give --verify or --search\n";
            return kInputError;
        }
    } catch (const Error& e) {
        err << e.what() << '\n';
        const ExitCode code = exit_code_for(e.code());
        if (code == kVerifyFailed) emit(out, json{{"error", to_string(e.code())}, {"message", e.what()}});
        return code;
    } catch (const std::filesystem::filesystem_error& e) {
        err << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace hadamax::cli
