#include "hadamax/hadamard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hadamax/error.hpp"

namespace hadamax {

// ---------------------------------------------------------------- SignMatrix

SignMatrix::SignMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), words_(n * stride_, 0) {}

SignMatrix SignMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    SignMatrix out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw Error(Errc::LengthMismatch, "matrix is not square");
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[i][j] != 1 && rows[i][j] != -1) throw Error(Errc::BadForm, "entries must be +1 or -1");
            out.set(i, j, rows[i][j]);
        }
    }
    return out;
}

void SignMatrix::set(std::size_t i, std::size_t j, int value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    auto& w = words_[i * stride_ + j / 64];
    w = value < 0 ? (w | mask) : (w & ~mask);
}

void SignMatrix::negate_row(std::size_t i) noexcept {
    for (std::size_t j = 0; j < n_; ++j) words_[i * stride_ + j / 64] ^= std::uint64_t{1} << (j % 64);
}

void SignMatrix::negate_col(std::size_t j) noexcept {
    for (std::size_t i = 0; i < n_; ++i) words_[i * stride_ + j / 64] ^= std::uint64_t{1} << (j % 64);
}

SignMatrix SignMatrix::transpose() const {
    SignMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (bit(i, j)) out.set(j, i, -1);
        }
    }
    return out;
}

bool SignMatrix::symmetric() const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (bit(i, j) != bit(j, i)) return false;
        }
    }
    return true;
}

std::int64_t SignMatrix::excess() const noexcept {
    std::int64_t neg = 0;
    for (std::uint64_t w : words_) neg += std::popcount(w);
    return static_cast<std::int64_t>(n_ * n_) - 2 * neg;
}

std::size_t DiagonalSigning::negated() const noexcept {
    return static_cast<std::size_t>(std::count(signs.begin(), signs.end(), std::int8_t{-1}));
}

SignMatrix apply_signing(const SignMatrix& h, const DiagonalSigning& rows, const DiagonalSigning& cols) {
    if (rows.signs.size() != h.order() || cols.signs.size() != h.order()) {
        throw Error(Errc::LengthMismatch, "signing length differs from matrix order");
    }
    SignMatrix out = h;
    for (std::size_t i = 0; i < h.order(); ++i) {
        if (rows.signs[i] < 0) out.negate_row(i);
        if (cols.signs[i] < 0) out.negate_col(i);
    }
    return out;
}

// ---------------------------------------------------------------- checks

std::optional<std::pair<std::size_t, std::size_t>> first_violation(const SignMatrix& h, bool parallel) {
    return parallel ? kernels::parallel::first_nonorthogonal(h.view()) : kernels::serial::first_nonorthogonal(h.view());
}

bool is_hadamard(const SignMatrix& h, bool parallel) { return !first_violation(h, parallel).has_value(); }

std::vector<std::int64_t> row_sums(const SignMatrix& h, bool parallel) {
    return parallel ? kernels::parallel::row_sums(h.view()) : kernels::serial::row_sums(h.view());
}

namespace {

ExcessBound bound_for_t(std::int64_t n, std::int64_t t) {
    ExcessBound b;
    b.t = t;
    b.s = n * ((t + 4) * (t + 4) - n) / (8 * t + 16);
    b.bound = n * (t + 4) - 4 * b.s;
    return b;
}

}  // namespace

std::optional<ExcessBound> excess_bound(std::int64_t n) {
    if (n < 4) return std::nullopt;
    auto k = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (k * k > n) --k;
    while ((k + 1) * (k + 1) <= n) ++k;
    if (k % 2 == 1) --k;
    const std::int64_t t = std::abs(n - k * k) < std::abs(n - (k + 2) * (k + 2)) ? k : k - 2;
    const std::int64_t alt = t == k ? k - 2 : k;
    ExcessBound out = bound_for_t(n, t);
    const ExcessBound other = bound_for_t(n, alt);
    out.k = k;
    out.alt_t = alt;
    out.alt_s = other.s;
    out.alt_bound = other.bound;
    return out;
}

const char* to_string(RowSumClass c) noexcept {
    switch (c) {
        case RowSumClass::Regular: return "regular";
        case RowSumClass::Biregular: return "biregular";
        case RowSumClass::Irregular: return "irregular";
    }
    return "irregular";
}

ExcessReport excess_report(const SignMatrix& h, bool parallel) {
    if (const auto bad = first_violation(h, parallel)) {
        throw Error(Errc::NotHadamard,
                    "rows " + std::to_string(bad->first) + " and " + std::to_string(bad->second) + " are not orthogonal");
    }
    ExcessReport r;
    r.n = static_cast<std::int64_t>(h.order());
    for (std::int64_t v : row_sums(h, parallel)) {
        r.excess += v;
        ++r.row_sums[v];
    }
    r.bound = excess_bound(r.n);
    if (r.row_sums.size() == 1) {
        r.classification = RowSumClass::Regular;
    } else if (r.row_sums.size() == 2) {
        r.classification = RowSumClass::Biregular;
        BiregularInfo b;
        b.k1 = r.row_sums.begin()->first;
        b.m1 = r.row_sums.begin()->second;
        b.k2 = r.row_sums.rbegin()->first;
        b.m2 = r.row_sums.rbegin()->second;
        const std::int64_t den = b.k1 * b.k1 - b.k2 * b.k2;
        const std::int64_t num = r.n * r.n - r.n * b.k2 * b.k2;
        b.frequencies_consistent = den != 0 ? (num % den == 0 && num / den == b.m1) : b.k1 * b.k1 == r.n;
        r.biregular = b;
    }
    return r;
}

// ---------------------------------------------------------------- constructions

namespace {

bool is_square(FieldElement x) { return !x.is_zero() && x.log % 2 == 0; }

/// M_ij for the quadratic character: 1, -1, or 0 on the diagonal.
int residue_sign(const FieldContext& fq, std::uint32_t i, std::uint32_t j) {
    const FieldElement d = fq.sub(fq.element_at(j), fq.element_at(i));
    if (d.is_zero()) return 0;
    return is_square(d) ? 1 : -1;
}

void require_odd_residue(const FieldContext& fq, std::uint64_t r) {
    if (fq.order() % 4 != r) {
        throw Error(Errc::WrongResidue, "q = " + std::to_string(fq.order()) + " is not " + std::to_string(r) + " mod 4");
    }
}

}  // namespace

SignMatrix construct_q3(const FieldContext& fq) {
    require_odd_residue(fq, 3);
    const auto q = static_cast<std::uint32_t>(fq.order());
    SignMatrix h(q + 1);
    h.set(0, 0, -1);
    for (std::uint32_t i = 0; i < q; ++i) {
        for (std::uint32_t j = 0; j < q; ++j) {
            if (residue_sign(fq, i, j) < 0) h.set(1 + i, 1 + j, -1);
        }
    }
    return h;
}

SignMatrix construct_q1(const FieldContext& fq, Q1Variant variant) {
    require_odd_residue(fq, 1);
    const auto q = static_cast<std::uint32_t>(fq.order());
    SignMatrix h(2 * q + 2);
    h.set(0, 1, -1);
    h.set(1, 0, -1);
    h.set(1, 1, -1);
    for (std::uint32_t x = 0; x < q; ++x) {
        h.set(1, 2 + q + x, -1);
        h.set(2 + q + x, 1, -1);
    }
    for (std::uint32_t i = 0; i < q; ++i) {
        for (std::uint32_t j = 0; j < q; ++j) {
            const int m = residue_sign(fq, i, j);
            h.set(2 + i, 2 + j, m + 1 > 0 ? 1 : -1);             // M + I
            h.set(2 + i, 2 + q + j, m - 1 >= 0 ? 1 : -1);        // M - I
            h.set(2 + q + i, 2 + j, m - 1 >= 0 ? 1 : -1);        // M - I
            h.set(2 + q + i, 2 + q + j, -m - 1 >= 0 ? 1 : -1);   // -M - I
        }
    }
    if (variant == Q1Variant::Negated2) {
        h.negate_row(1);
        h.negate_col(1);
    }
    return h;
}

// ---------------------------------------------------------------- transforms

namespace {

bool contains(const std::vector<std::uint32_t>& values, std::uint32_t v) {
    return std::find(values.begin(), values.end(), v) != values.end();
}

TransformResult finish(SignMatrix base, DiagonalSigning rows, DiagonalSigning cols, ParamChoice params,
                       const std::vector<std::int64_t>& allowed_sums) {
    TransformResult out;
    out.matrix = apply_signing(base, rows, cols);
    out.base = std::move(base);
    out.row_signs = std::move(rows);
    out.col_signs = std::move(cols);
    out.params = std::move(params);
    out.report = excess_report(out.matrix);
    for (const auto& [value, count] : out.report.row_sums) {
        if (std::find(allowed_sums.begin(), allowed_sums.end(), value) == allowed_sums.end()) {
            throw Error(Errc::InvariantBreach, "row sum " + std::to_string(value) + " outside the promised values");
        }
    }
    if (!out.report.attains_bound()) throw Error(Errc::InvariantBreach, "excess below the bound");
    return out;
}

ParamChoice pick_params(const FieldContext& ext, Family family, const std::optional<ParamChoice>& given) {
    if (!given) return find_params(ext, family);
    if (given->family != family) throw Error(Errc::BadForm, "parameter choice belongs to another family");
    if (!params_satisfy_conditions(ext, *given)) throw Error(Errc::NotFound, "supplied (l, h) is not admissible");
    return *given;
}

}  // namespace

TransformResult transform_biregular_q3(const FieldContext& ext, const std::optional<ParamChoice>& params) {
    const FieldContext& fq = ext.subfield();
    const auto m = family_m(Family::E8, fq.order());
    if (!m) throw Error(Errc::BadForm, "q is not 4m^2+4m+3");
    const ParamChoice choice = pick_params(ext, Family::E8, params);
    const PointSet d = build_dlh(ext, choice.ell, 8, choice.h0);
    const auto profile = intersection_profile(d, paley_design(fq));

    const std::uint32_t mm = *m;
    const std::uint32_t s = mm * mm;
    const auto q = static_cast<std::size_t>(fq.order());
    auto rows = DiagonalSigning::identity(q + 1);
    auto cols = DiagonalSigning::identity(q + 1);
    for (std::uint32_t x : d.members()) cols.signs[1 + x] = -1;
    for (std::size_t x = 0; x < q; ++x) {
        if (contains({s + mm + 1, s + mm + 2}, profile.per_block[x])) rows.signs[1 + x] = -1;
    }
    const std::int64_t k = 2 * static_cast<std::int64_t>(mm);
    return finish(construct_q3(fq), std::move(rows), std::move(cols), choice, {k - 2, k + 2});
}

TransformResult transform_biregular_q1(const FieldContext& ext, const std::optional<ParamChoice>& params) {
    const FieldContext& fq = ext.subfield();
    auto m = family_m(Family::E4Odd, fq.order());
    Family family = Family::E4Odd;
    if (!m) {
        m = family_m(Family::E4Even, fq.order());
        family = Family::E4Even;
    }
    if (!m) throw Error(Errc::BadForm, "q is not 2m^2+2m+1");
    const ParamChoice choice = pick_params(ext, family, params);
    const PointSet d0 = build_dlh(ext, choice.ell, 4, choice.h0);
    const PointSet d1 = build_dlh(ext, choice.ell, 4, choice.h1);
    const auto pd = paired_design(fq);
    const auto alpha = paired_profile(d0, d1, pd.first);
    const auto beta = paired_profile(d0, d1, pd.second);

    const std::uint32_t mm = *m;
    const std::uint32_t s = mm * mm;
    const bool odd = family == Family::E4Odd;
    const std::vector<std::uint32_t> neg_alpha = odd ? std::vector<std::uint32_t>{s + mm, s + mm + 1}
                                                     : std::vector<std::uint32_t>{s + mm + 1, s + mm + 2};
    const std::vector<std::uint32_t> neg_beta = odd ? std::vector<std::uint32_t>{s + mm - 1, s + mm}
                                                    : std::vector<std::uint32_t>{s + mm, s + mm + 1};
    const auto q = static_cast<std::size_t>(fq.order());
    auto rows = DiagonalSigning::identity(2 * q + 2);
    auto cols = DiagonalSigning::identity(2 * q + 2);
    for (std::uint32_t p : alpha.members.members()) cols.signs[2 + p] = -1;
    for (std::size_t x = 0; x < q; ++x) {
        if (contains(neg_alpha, alpha.per_block[x])) rows.signs[2 + x] = -1;
        if (contains(neg_beta, beta.per_block[x])) rows.signs[2 + q + x] = -1;
    }
    const std::int64_t k = 2 * static_cast<std::int64_t>(mm);
    const std::vector<std::int64_t> sums = odd ? std::vector<std::int64_t>{k - 2, k + 2} : std::vector<std::int64_t>{k, k + 4};
    return finish(construct_q1(fq), std::move(rows), std::move(cols), choice, sums);
}

TransformResult transform_regular(const FieldContext& ext, const SchemePartition& part) {
    const auto report = verify_scheme(ext, part);
    if (!report.passes()) throw Error(Errc::SchemeInvalid, "partition fails the scheme checks");
    const auto sets = two_intersection_from_scheme(ext, part, report.tau);
    const FieldContext& fq = ext.subfield();
    const auto q = static_cast<std::size_t>(fq.order());
    const std::uint32_t s = part.m * part.m;

    auto rows = DiagonalSigning::identity(2 * q + 2);
    auto cols = DiagonalSigning::identity(2 * q + 2);
    for (std::uint32_t p : sets.first.members.members()) cols.signs[2 + p] = -1;
    if (sets.d1.size() == s) rows.signs[1] = -1;
    for (std::size_t x = 0; x < q; ++x) {
        if (sets.first.per_block[x] == s) rows.signs[2 + x] = -1;
        if (sets.second.per_block[x] == s) rows.signs[2 + q + x] = -1;
    }
    const std::int64_t k = 2 * static_cast<std::int64_t>(part.m);
    return finish(construct_q1(fq, Q1Variant::Negated2), std::move(rows), std::move(cols), sets.params, {k});
}

}  // namespace hadamax
