// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hadamax/association_schemes.hpp"
#include "hadamax/character_sums.hpp"
#include "hadamax/error.hpp"
#include "hadamax/hadamard.hpp"
#include "hadamax/io.hpp"
#include "test_support.hpp"

using namespace hadamax;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Failures collected by one criterion.
struct Tally {
    std::vector<std::string> failures;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

/// Bound-attaining outputs of criteria 1-3, reused by the property suite.
std::vector<SignMatrix> g_outputs;
std::vector<SchemePartition> g_schemes;

FieldPtr square_field(std::uint64_t q) {
    const auto pp = prime_power(q);
    if (!pp) throw Error(Errc::NotPrimePower, std::to_string(q));
    return FieldContext::build(pp->first, 2 * pp->second);
}

bool sums_within(const ExcessReport& r, std::initializer_list<std::int64_t> allowed) {
    for (const auto& [v, c] : r.row_sums) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
    }
    return true;
}

void criterion1(Tally& t) {
    for (std::uint32_t m : {1u, 2u, 4u, 7u}) {
        const auto t0 = Clock::now();
        const std::uint64_t q = family_q(Family::E8, m);
        const auto r = transform_biregular_q3(*square_field(q));
        const double secs = seconds_since(t0);
        const std::int64_t n = 4 * (std::int64_t{m} * m + m + 1);
        const std::int64_t k = 2 * m;
        const std::string tag = "m=" + std::to_string(m) + " q=" + std::to_string(q);
        t.require(r.report.n == n, tag + " order");
        t.require(sums_within(r.report, {k - 2, k + 2}), tag + " row sums");
        t.require(r.report.excess == n * (2 * m + 1) && r.report.attains_bound(), tag + " excess");
        t.require(r.report.biregular && r.report.biregular->frequencies_consistent, tag + " frequencies");
        t.require(secs < 5.0, tag + " runtime");
        t.notes << tag << ": n=" << n << " E=" << r.report.excess << " (" << secs << " s); ";
        g_outputs.push_back(r.matrix);
    }
}

void criterion2(Tally& t) {
    for (std::uint32_t m = 1; m <= 5; ++m) {
        const auto t0 = Clock::now();
        const std::uint64_t q = family_q(m % 2 ? Family::E4Odd : Family::E4Even, m);
        const auto r = transform_biregular_q1(*square_field(q));
        const double secs = seconds_since(t0);
        const std::int64_t n = 4 * (std::int64_t{m} * m + m + 1);
        const std::int64_t k = 2 * m;
        const std::string tag = "m=" + std::to_string(m) + " q=" + std::to_string(q);
        t.require(r.report.n == n, tag + " order");
        t.require(m % 2 ? sums_within(r.report, {k - 2, k + 2}) : sums_within(r.report, {k, k + 4}), tag + " row sums");
        t.require(r.report.excess == n * (2 * m + 1) && r.report.attains_bound(), tag + " excess");
        t.require(r.report.biregular && r.report.biregular->frequencies_consistent, tag + " frequencies");
        t.require(secs < 5.0, tag + " runtime");
        t.notes << tag << ": n=" << n << " E=" << r.report.excess << " (" << secs << " s); ";
        g_outputs.push_back(r.matrix);
    }
}

void criterion3(Tally& t) {
    for (const char* file : {"m3.scheme", "m5.scheme"}) {
        const auto t0 = Clock::now();
        SchemePartition part = parse_partition(read_file(std::filesystem::path(HADAMAX_DATA_DIR) / file));
        const auto ext = scheme_field(part);
        const auto scheme = align_partition(*ext, part);
        const std::string tag = "m=" + std::to_string(part.m);
        t.require(scheme.structure.ok(), tag + " structure");
        t.require(scheme.is_scheme, tag + " intersection numbers");
        t.require(scheme.table1.match, tag + " Table 1 cells");
        if (!scheme.passes()) continue;
        const auto r = transform_regular(*ext, part);
        const double secs = seconds_since(t0);
        const std::int64_t n = 4 * std::int64_t{part.m} * part.m;
        const std::int64_t k = 2 * part.m;
        t.require(r.report.n == n, tag + " order");
        t.require(r.report.classification == RowSumClass::Regular && sums_within(r.report, {k}), tag + " row sums");
        t.require(r.report.excess == n * k && r.report.attains_bound(), tag + " excess");
        t.require(secs < 60.0, tag + " runtime");
        t.notes << tag << ": multiplier " << part.multiplier << " tau " << scheme.tau << " n=" << n
                << " E=" << r.report.excess << " (" << secs << " s); ";
        g_outputs.push_back(r.matrix);
        g_schemes.push_back(part);
    }
}

void criterion4(Tally& t) {
    hadamax::testing::CounterStream rng(4);
    for (std::uint64_t q : {5u, 11u, 13u, 25u, 27u}) {
        const auto ext = square_field(q);
        const bool e8 = family_m(Family::E8, q).has_value();
        const Family family = e8 ? Family::E8 : (family_m(Family::E4Odd, q) ? Family::E4Odd : Family::E4Even);
        const std::uint32_t e = e8 ? 8 : 4;
        SizeFormulaOracle oracle(*ext, e);
        std::size_t pairs = 0;
        for (const auto& c : admissible_params(*ext, family)) {
            ++pairs;
            t.require(oracle.check(c.ell, c.h0).holds(), "q=" + std::to_string(q) + " l=" + std::to_string(c.ell));
            if (!c.h1.empty()) {
                t.require(oracle.check(c.ell, c.h1).holds(), "q=" + std::to_string(q) + " l=" + std::to_string(c.ell));
            }
        }
        t.require(pairs > 0, "q=" + std::to_string(q) + " has admissible pairs");
        for (int i = 0; i < 20; ++i) {
            std::uint64_t ell = 0;
            do {
                ell = 1 + rng.below(ext->group_order() - 1);
            } while (ell % (q + 1) == 0);
            const FieldElement s = ext->subfield().element_at(static_cast<std::uint32_t>(rng.below(q)));
            t.require(check_lemma31_32(*ext, e, ell, s), "lemmas q=" + std::to_string(q) + " l=" + std::to_string(ell));
        }
        t.notes << "q=" << q << ": " << pairs << " pairs; ";
    }
}

void criterion5(Tally& t) {
    std::size_t gauss = 0;
    for (std::uint64_t q = 3; q <= 200; ++q) {
        const auto pp = prime_power(q);
        if (!pp || pp->first == 2) continue;
        const auto fq = FieldContext::build(pp->first, pp->second);
        t.require(approx_equal(gauss_sum(*fq, 2), quadratic_gauss_closed_form(pp->first, pp->second)),
                  "quadratic Gauss sum q=" + std::to_string(q));
        ++gauss;
    }
    for (std::uint64_t q : {11u, 27u, 83u}) {
        const auto d = decompose_gauss(*square_field(q), GaussFamily::Order8);
        t.require(d.residual < kTolerance, "decomposition q=" + std::to_string(q));
    }
    for (std::uint32_t p : {5u, 11u, 7u}) {
        const auto base = FieldContext::build(p, 1);
        const auto ext = FieldContext::build(p, 2);
        for (std::uint32_t e = 2; e < p; ++e) {
            if ((p - 1) % e != 0) continue;
            t.require(check_davenport_hasse(*base, *ext, e, 2).holds(),
                      "lifting q=" + std::to_string(p) + " e=" + std::to_string(e));
        }
    }
    for (std::uint64_t q : {5u, 13u, 17u, 25u, 29u}) {
        const auto pp = prime_power(q);
        const auto fq = FieldContext::build(pp->first, pp->second);
        const Complex j = jacobi_sum(*fq, {2, 1}, {4, 1});
        const auto a = static_cast<std::int64_t>(std::llround(j.real()));
        const auto b = static_cast<std::int64_t>(std::llround(j.imag()));
        const std::string tag = "Jacobi q=" + std::to_string(q);
        t.require(approx_equal(j, Complex(static_cast<double>(a), static_cast<double>(b))), tag + " integral");
        t.require(a * a + b * b == static_cast<std::int64_t>(q), tag + " a^2+b^2");
        t.require(a % 2 != 0 && std::gcd(a, b) == 1, tag + " proper with a odd");
    }
    t.notes << gauss << " quadratic Gauss sums; ";
}

void criterion6(Tally& t) {
    hadamax::testing::CounterStream rng(6);
    std::vector<SignMatrix> bases{construct_q3(*FieldContext::build(11, 1)), construct_q3(*FieldContext::build(3, 3)),
                                  construct_q1(*FieldContext::build(5, 1)), construct_q1(*FieldContext::build(13, 1)),
                                  construct_q1(*FieldContext::build(17, 1), Q1Variant::Negated2)};
    for (const auto& h : bases) {
        const auto n = h.order();
        for (int trial = 0; trial < 100; ++trial) {
            DiagonalSigning r = DiagonalSigning::identity(n);
            DiagonalSigning c = DiagonalSigning::identity(n);
            for (auto& s : r.signs) s = rng.below(2) ? -1 : 1;
            for (auto& s : c.signs) s = rng.below(2) ? -1 : 1;
            const auto out = apply_signing(h, r, c);
            t.require(is_hadamard(out), "signing n=" + std::to_string(n));
            std::int64_t sq = 0;
            for (std::int64_t v : row_sums(out)) sq += v * v;
            t.require(sq == static_cast<std::int64_t>(n * n), "row-sum squares n=" + std::to_string(n));
        }
    }
    t.require(!g_outputs.empty(), "constructed outputs available");
    for (const auto& h : g_outputs) {
        std::int64_t sq = 0;
        for (std::int64_t v : row_sums(h)) sq += v * v;
        t.require(sq == static_cast<std::int64_t>(h.order() * h.order()), "output row-sum squares");
        t.require(excess_report(h.transpose()).attains_bound(), "transpose n=" + std::to_string(h.order()));
    }
    t.require(!g_schemes.empty(), "verified schemes available");
    for (const auto& part : g_schemes) {
        const auto ext = scheme_field(part);
        const auto labels = class_labels(*ext, part);
        const auto values = character_table(*ext, labels);
        bool rows_ok = true;
        for (std::size_t a = 1; a < values.size(); ++a) {
            Complex s{0, 0};
            for (std::uint32_t i = 1; i < 5; ++i) s += values[a][i];
            rows_ok = rows_ok && approx_equal(s, -1.0);
        }
        t.require(rows_ok, "eigenmatrix rows m=" + std::to_string(part.m));
        const auto rows = empirical_eigenmatrix(values);
        t.require(bannai_muzychuk_check(rows, {{0}, {1, 3}, {2, 4}}), "fusion m=" + std::to_string(part.m));
    }
    t.notes << bases.size() << " orders x 100 signings; " << g_outputs.size() << " transposes; " << g_schemes.size()
            << " schemes; ";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Tally&)>>> criteria{
        {"order-8 family, q = 4m^2+4m+3, m in {1,2,4,7}", criterion1},
        {"order-4 family, q = 2m^2+2m+1, m in 1..5", criterion2},
        {"regular matrices from the m = 3 and m = 5 partitions", criterion3},
        {"size formulas and lemma identities", criterion4},
        {"closed forms for Gauss and Jacobi sums", criterion5},
        {"property suite", criterion6},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        const auto t0 = Clock::now();
        try {
            criteria[i].second(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = t.failures.empty();
        failed += !ok;
        std::printf("criterion %zu: %s  %s  [%.2f s]\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first, seconds_since(t0));
        std::printf("    %s\n", t.notes.str().c_str());
        for (std::size_t f = 0; f < t.failures.size() && f < 10; ++f) std::printf("    failed: %s\n", t.failures[f].c_str());
    }
    return failed == 0 ? 0 : 1;
}
