#include "hadamax/association_schemes.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "hadamax/error.hpp"
#include "hadamax/kernels.hpp"

namespace hadamax {

namespace {

constexpr std::uint32_t kClasses = 5;

/// Residue -> label 1..4, or 0 where the lists leave a gap.
std::vector<std::uint8_t> residue_labels(const SchemePartition& part, bool* ok) {
    std::vector<std::uint8_t> out(part.e, 0);
    bool good = part.e > 0;
    for (std::uint32_t i = 0; i < 4; ++i) {
        for (std::uint32_t j : part.h[i]) {
            if (j >= part.e || out[(std::uint64_t{j} * part.multiplier) % part.e] != 0) {
                good = false;
                continue;
            }
            out[(std::uint64_t{j} * part.multiplier) % part.e] = static_cast<std::uint8_t>(i + 1);
        }
    }
    good = good && std::gcd(part.multiplier, part.e) == 1 &&
           std::none_of(out.begin(), out.end(), [](std::uint8_t v) { return v == 0; });
    if (ok) *ok = good;
    return out;
}

FieldElement qth_power(const FieldContext& ext, FieldElement x) {
    if (x.is_zero()) return x;
    const std::uint64_t q = ext.subfield().order();
    return FieldElement{static_cast<std::uint32_t>((std::uint64_t{x.log} * q) % ext.group_order())};
}

std::vector<Complex> column_values(std::uint32_t m, Complex g, std::uint32_t col) {
    std::vector<Complex> out;
    for (std::uint32_t row = 1; row < kClasses; ++row) out.push_back(table1_entry(m, g, row, col));
    return out;
}

bool in_values(Complex v, const std::vector<Complex>& allowed) {
    return std::any_of(allowed.begin(), allowed.end(), [&](Complex a) { return approx_equal(a, v); });
}

Complex quadratic_gauss(const FieldContext& ext) {
    const FieldContext& fq = ext.subfield();
    return quadratic_gauss_closed_form(fq.characteristic(), fq.degree());
}

}  // namespace

FieldPtr scheme_field(const SchemePartition& part) {
    const auto pp = prime_power(part.q);
    if (!pp || part.m % 2 == 0 || part.q != 2ull * part.m * part.m - 1) {
        throw Error(Errc::BadForm, "q must be a prime power 2m^2-1 with m odd");
    }
    return FieldContext::build(pp->first, 2 * pp->second);
}

std::vector<std::uint8_t> class_labels(const FieldContext& ext, const SchemePartition& part) {
    bool ok = false;
    const auto res = residue_labels(part, &ok);
    if (!ok) throw Error(Errc::BadForm, "H_1..H_4 do not partition the residues mod e");
    if (ext.group_order() % part.e != 0) throw Error(Errc::BadE, "e does not divide q^2-1");
    std::vector<std::uint8_t> out(ext.order(), 0);
    for (std::uint32_t k = 0; k < ext.group_order(); ++k) out[k + 1] = res[k % part.e];
    return out;
}

StructureReport verify_structure(const FieldContext& ext, const SchemePartition& part) {
    StructureReport r;
    const std::uint64_t q = ext.subfield().order();
    if (part.m % 2 == 0 || q != 2ull * part.m * part.m - 1 || q != part.q) {
        throw Error(Errc::BadForm, "q must be 2m^2-1 with m odd");
    }
    const std::uint64_t big = 4ull * part.m * part.m;
    if (ext.group_order() % big != 0) throw Error(Errc::BadForm, "4m^2 does not divide q^2-1");
    residue_labels(part, &r.partition_ok);
    if (!r.partition_ok || ext.group_order() % part.e != 0) {
        r.partition_ok = false;
        return r;
    }
    const auto labels = class_labels(ext, part);
    const auto shift = static_cast<std::int64_t>(2ull * part.m * part.m);
    r.shift_ok = true;
    r.coset_union_ok = true;
    for (std::uint32_t k = 0; k < ext.group_order(); ++k) {
        const FieldElement x{k};
        const std::uint8_t lab = labels[ext.index_of(x)];
        const std::uint8_t shifted = labels[ext.index_of(ext.mul(ext.omega_pow(shift), x))];
        if ((lab == 3 && shifted != 1) || (lab == 4 && shifted != 2)) r.shift_ok = false;
        if (labels[ext.index_of(ext.mul(ext.omega_pow(static_cast<std::int64_t>(big)), x))] != lab) {
            r.coset_union_ok = false;
        }
    }
    return r;
}

CharacterTable character_table(const FieldContext& ext, std::span<const std::uint8_t> labels, bool parallel) {
    const kernels::Labelling lab{&ext, labels, kClasses};
    const auto counts = parallel ? kernels::parallel::class_trace_counts(lab) : kernels::serial::class_trace_counts(lab);
    const std::uint32_t p = ext.characteristic();
    std::vector<Complex> zeta(p);
    for (std::uint32_t t = 0; t < p; ++t) zeta[t] = root_of_unity(t, p);
    CharacterTable out(ext.order());
    for (std::size_t a = 0; a < ext.order(); ++a) {
        for (std::uint32_t i = 0; i < kClasses; ++i) {
            Complex v{0, 0};
            const std::uint32_t* c = counts.data() + (a * kClasses + i) * p;
            for (std::uint32_t t = 0; t < p; ++t) v += static_cast<double>(c[t]) * zeta[t];
            out[a][i] = v;
        }
    }
    return out;
}

Complex table1_entry(std::uint32_t m, Complex g, std::uint32_t row, std::uint32_t col) {
    const double md = m;
    if (col == 0) return 1.0;
    if (row == 0) {
        const double base = md * (md * md - 1);
        return col % 2 == 1 ? base * (md - 1) : base * (md + 1);
    }
    // Rows 3 and 4 are rows 1 and 2 with G replaced by -G.
    const Complex gs = row >= 3 ? -g : g;
    const bool odd_row = row % 2 == 1;
    const double sign = col <= 2 ? -1.0 : 1.0;  // X_3, X_4 flip the G term of X_1, X_2
    if (odd_row) {
        if (col % 2 == 1) return (md * md + md - 1) / 2 + sign * (md / 2) * gs;
        return (-md * md - md) / 2 + sign * ((md + 1) / 2) * gs;
    }
    if (col % 2 == 1) return (-md * md + md) / 2 + sign * ((md - 1) / 2) * gs;
    return (md * md - md - 1) / 2 - sign * (md / 2) * gs;
}

Table1Result eigenmatrix_vs_table1(const FieldContext& ext, const SchemePartition& part,
                                   std::span<const std::uint8_t> labels, const CharacterTable& values) {
    Table1Result out;
    const Complex g = quadratic_gauss(ext);
    const std::uint32_t m = part.m;
    std::optional<Table1Cell> first_fail_plus;
    std::optional<Table1Cell> first_fail_minus;

    for (int tau : {1, -1}) {
        std::optional<Table1Cell> fail;
        auto note = [&](std::uint32_t row, std::uint32_t col, std::uint32_t a) {
            const bool earlier = !fail || std::pair{row, col} < std::pair{fail->row, fail->col};
            if (earlier) fail = Table1Cell{row, col, table1_entry(m, g, row, col), values[a][col], a};
        };
        std::array<std::array<Complex, 5>, 5> rows{};
        std::array<std::size_t, 5> sizes{};
        std::array<bool, 5> seen{};
        rows[0] = values[0];
        sizes[0] = 1;
        seen[0] = true;
        for (std::uint32_t col = 0; col < kClasses; ++col) {
            if (!approx_equal(values[0][col], table1_entry(m, g, 0, col))) note(0, col, 0);
        }
        const FieldElement shift = ext.omega_pow(static_cast<std::int64_t>(m) * m * tau);
        for (std::uint32_t a = 1; a < ext.order(); ++a) {
            const std::uint32_t row = labels[ext.index_of(qth_power(ext, ext.mul(shift, ext.element_at(a))))];
            ++sizes[row];
            if (!seen[row]) {
                rows[row] = values[a];
                seen[row] = true;
            }
            for (std::uint32_t col = 0; col < kClasses; ++col) {
                if (!approx_equal(values[a][col], table1_entry(m, g, row, col))) note(row, col, a);
            }
        }
        if (!fail) {
            out.taus.push_back(tau);
            if (!out.match) {
                out.match = true;
                out.eigenmatrix = rows;
                out.dual_sizes = sizes;
            }
        } else if (tau == 1) {
            first_fail_plus = fail;
            out.eigenmatrix = rows;
            out.dual_sizes = sizes;
        } else {
            first_fail_minus = fail;
        }
    }
    if (!out.match) out.first_failure = first_fail_plus ? first_fail_plus : first_fail_minus;
    return out;
}

SchemeReport verify_scheme(const FieldContext& ext, const SchemePartition& part, const SchemeOptions& opts) {
    SchemeReport r;
    r.multiplier = part.multiplier;
    r.structure = verify_structure(ext, part);
    if (!r.structure.partition_ok) return r;
    const auto labels = class_labels(ext, part);
    for (std::uint8_t l : labels) ++r.class_sizes[l];

    std::vector<FieldElement> zs;
    if (opts.exhaustive) {
        for (std::uint32_t i = 0; i < ext.order(); ++i) zs.push_back(ext.element_at(i));
    } else {
        zs.push_back(ext.zero());
        for (std::uint32_t j = 0; j < part.e; ++j) zs.push_back(ext.omega_pow(j));
    }
    const kernels::Labelling lab{&ext, labels, kClasses};
    const auto conv = opts.parallel ? kernels::parallel::class_convolution(lab, zs)
                                    : kernels::serial::class_convolution(lab, zs);
    constexpr std::size_t block = kClasses * kClasses;
    r.intersection_numbers.assign(kClasses * block, 0);
    std::array<bool, kClasses> seen{};
    r.is_scheme = true;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const std::uint8_t cls = labels[ext.index_of(zs[k])];
        const auto* got = conv.data() + k * block;
        auto* slot = r.intersection_numbers.data() + cls * block;
        if (!seen[cls]) {
            std::copy(got, got + block, slot);
            seen[cls] = true;
        } else if (!std::equal(got, got + block, slot)) {
            r.is_scheme = false;
        }
    }
    r.commutative = true;
    for (std::uint32_t k = 0; k < kClasses; ++k) {
        for (std::uint32_t i = 0; i < kClasses; ++i) {
            for (std::uint32_t j = 0; j < kClasses; ++j) {
                const auto* p = r.intersection_numbers.data() + k * block;
                if (p[i * kClasses + j] != p[j * kClasses + i]) r.commutative = false;
            }
        }
    }
    r.symmetric = true;
    for (std::uint32_t i = 1; i < ext.order(); ++i) {
        if (labels[i] != labels[ext.index_of(ext.neg(ext.element_at(i)))]) r.symmetric = false;
    }
    const auto values = character_table(ext, labels, opts.parallel);
    r.table1 = eigenmatrix_vs_table1(ext, part, labels, values);
    r.tau = r.table1.match ? r.table1.taus.front() : 0;
    return r;
}

std::vector<std::array<Complex, 5>> empirical_eigenmatrix(const CharacterTable& values) {
    std::vector<std::array<Complex, 5>> rows;
    for (const auto& v : values) {
        const bool known = std::any_of(rows.begin(), rows.end(), [&](const auto& r) {
            for (std::uint32_t i = 0; i < kClasses; ++i) {
                if (!approx_equal(r[i], v[i])) return false;
            }
            return true;
        });
        if (!known) rows.push_back(v);
    }
    return rows;
}

bool bannai_muzychuk_check(std::span<const std::array<Complex, 5>> eigenmatrix,
                           const std::vector<std::vector<std::uint32_t>>& grouping) {
    std::vector<int> owner(kClasses, -1);
    for (std::size_t b = 0; b < grouping.size(); ++b) {
        for (std::uint32_t c : grouping[b]) {
            if (c >= kClasses || owner[c] != -1) throw Error(Errc::BadForm, "grouping is not a partition of classes");
            owner[c] = static_cast<int>(b);
        }
    }
    if (std::count(owner.begin(), owner.end(), -1) != 0) throw Error(Errc::BadForm, "grouping misses a class");
    if (grouping[owner[0]].size() != 1) throw Error(Errc::BadForm, "class 0 must form its own block");
    if (eigenmatrix.empty()) return false;

    std::vector<std::vector<Complex>> fused;
    for (const auto& row : eigenmatrix) {
        std::vector<Complex> sums(grouping.size(), Complex{0, 0});
        for (std::uint32_t c = 0; c < kClasses; ++c) sums[owner[c]] += row[c];
        fused.push_back(std::move(sums));
    }
    auto same = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!approx_equal(a[i], b[i])) return false;
        }
        return true;
    };
    std::vector<std::vector<Complex>> distinct;
    for (const auto& f : fused) {
        if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& d) { return same(d, f); })) {
            distinct.push_back(f);
        }
    }
    const bool row0_alone =
        std::none_of(fused.begin() + 1, fused.end(), [&](const auto& f) { return same(f, fused.front()); });
    return row0_alone && distinct.size() == grouping.size();
}

SchemePartition apply_multiplier(const SchemePartition& part) {
    SchemePartition out = part;
    for (auto& list : out.h) {
        for (auto& j : list) j = static_cast<std::uint32_t>((std::uint64_t{j} * part.multiplier) % part.e);
        std::sort(list.begin(), list.end());
    }
    out.multiplier = 1;
    return out;
}

SchemeReport align_partition(const FieldContext& ext, SchemePartition& part, const SchemeOptions& opts) {
    std::optional<SchemeReport> fallback;
    SchemePartition trial = part;
    for (std::uint32_t u = 1; u < std::max<std::uint32_t>(part.e, 2); ++u) {
        if (std::gcd(u, part.e) != 1) continue;
        trial.multiplier = u;
        auto report = verify_scheme(ext, trial, opts);
        if (report.passes()) {
            part.multiplier = u;
            return report;
        }
        if (!fallback || (!fallback->is_scheme && report.is_scheme)) fallback = std::move(report);
    }
    return *fallback;
}

SchemeIntersectionSets two_intersection_from_scheme(const FieldContext& ext, const SchemePartition& part, int tau) {
    const auto labels = class_labels(ext, part);
    auto params = find_scheme_params(ext, labels, part.m, tau);
    if (!params) throw Error(Errc::NotFound, "no l with w^l in X_2 u X_4 and the required log");
    const std::uint8_t lab = labels[ext.index_of(ext.omega_pow(static_cast<std::int64_t>(params->ell)))];
    if (lab == 2) {
        params->h0 = {1, 4};
        params->h1 = {1, 2};
    } else {
        params->h0 = {2, 3};
        params->h1 = {3, 4};
    }
    auto member_of = [&](const std::vector<std::uint32_t>& s) {
        return [&labels, &ext, &s](FieldElement x) {
            const std::uint32_t l = labels[ext.index_of(x)];
            return std::find(s.begin(), s.end(), l) != s.end();
        };
    };
    SchemeIntersectionSets out;
    out.d0 = build_dl_set(ext, params->ell, member_of(params->h0));
    out.d1 = build_dl_set(ext, params->ell, member_of(params->h1));
    const auto pd = paired_design(ext.subfield());
    out.first = paired_profile(out.d0, out.d1, pd.first);
    out.second = paired_profile(out.d0, out.d1, pd.second);
    out.params = *params;

    const auto promise = family_promise(Family::Scheme, part.m);
    auto within = [](const IntersectionSet& s, const std::vector<std::uint32_t>& allowed) {
        for (std::uint32_t v : s.values()) {
            if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
        }
        return true;
    };
    if (out.d0.size() != promise.size0 || out.d1.size() != promise.size1 || !within(out.first, promise.first_values) ||
        !within(out.second, promise.second_values)) {
        throw Error(Errc::ProfileMismatch, "scheme sets miss the promised sizes or profile values");
    }
    return out;
}

std::vector<SchemePartition> scheme_search(const FieldContext& ext, std::uint32_t m, std::uint32_t e,
                                           const SearchOptions& opts) {
    if (opts.budget == 0) throw Error(Errc::BudgetExceeded, "budget is zero");
    const std::uint64_t q = ext.subfield().order();
    if (m % 2 == 0 || q != 2ull * m * m - 1) throw Error(Errc::BadForm, "q must be 2m^2-1 with m odd");
    if (e == 0 || (4ull * m * m) % e != 0) throw Error(Errc::BadE, "e must divide 4m^2");

    const std::uint32_t shift = static_cast<std::uint32_t>((2ull * m * m) % e);
    const std::uint32_t half = e / 2;
    const std::uint64_t class_size = ext.group_order() / e;
    const std::uint64_t x1 = std::uint64_t{m} * (m * m - 1) * (m - 1);
    if (shift == 0 || shift != half || x1 % class_size != 0 || half > 30) return {};
    const auto n13 = static_cast<int>(x1 / class_size);

    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (1u << half); ++mask) {
        if (std::popcount(mask) == n13) masks.push_back(mask);
    }
    const std::uint64_t total = static_cast<std::uint64_t>(masks.size()) << half;
    if (total > opts.budget) {
        throw Error(Errc::BudgetExceeded, std::to_string(total) + " candidates exceed budget " +
                                              std::to_string(opts.budget));
    }

    auto build = [&](std::uint64_t index) {
        const std::uint32_t mask = masks[index >> half];
        const auto orient = static_cast<std::uint32_t>(index & ((std::uint64_t{1} << half) - 1));
        SchemePartition part{q, m, e, {}, 1};
        for (std::uint32_t pr = 0; pr < half; ++pr) {
            std::uint32_t a = pr;
            std::uint32_t b = pr + half;
            if ((orient >> pr) & 1u) std::swap(a, b);
            const std::size_t base = ((mask >> pr) & 1u) ? 0 : 1;
            part.h[base].push_back(a);
            part.h[base + 2].push_back(b);
        }
        for (auto& list : part.h) std::sort(list.begin(), list.end());
        return part;
    };

    const auto periods = gauss_periods(ext, e);
    const Complex g = quadratic_gauss(ext);
    std::array<std::vector<Complex>, 5> allowed;
    for (std::uint32_t col = 1; col < kClasses; ++col) allowed[col] = column_values(m, g, col);

    std::vector<std::uint8_t> pass(total, 0);
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 256) if (opts.parallel)
    for (std::int64_t idx = 0; idx < count; ++idx) {
        const auto part = build(static_cast<std::uint64_t>(idx));
        bool ok = true;
        for (std::uint32_t i = 0; i < 4 && ok; ++i) {
            for (std::uint32_t k = 0; k < e && ok; ++k) {
                Complex v{0, 0};
                for (std::uint32_t j : part.h[i]) v += periods[(j + k) % e];
                ok = in_values(v, allowed[i + 1]);
            }
        }
        pass[idx] = ok;
    }

    std::vector<SchemePartition> found;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (!pass[idx]) continue;
        auto part = build(idx);
        if (verify_scheme(ext, part, SchemeOptions{false, opts.parallel}).passes()) found.push_back(std::move(part));
    }
    std::sort(found.begin(), found.end());
    if (opts.on_found) {
        for (const auto& p : found) opts.on_found(p);
    }
    return found;
}

std::string format_partition(const SchemePartition& part) {
    std::ostringstream os;
    os << part.q << ' ' << part.m << ' ' << part.e << '\n';
    for (const auto& list : part.h) {
        for (std::size_t i = 0; i < list.size(); ++i) os << (i ? " " : "") << list[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace hadamax
