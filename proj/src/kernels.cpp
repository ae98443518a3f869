#include "hadamax/kernels.hpp"

#include <bit>

#include <omp.h>

namespace hadamax::kernels {

std::int64_t row_dot(const BitRows& rows, std::size_t i, std::size_t j) {
    const auto a = rows.row(i);
    const auto b = rows.row(j);
    std::int64_t differ = 0;
    for (std::size_t w = 0; w < rows.stride; ++w) differ += std::popcount(a[w] ^ b[w]);
    return static_cast<std::int64_t>(rows.n) - 2 * differ;
}

namespace {

std::int64_t row_sum(const BitRows& rows, std::size_t i) {
    std::int64_t neg = 0;
    for (std::uint64_t w : rows.row(i)) neg += std::popcount(w);
    return static_cast<std::int64_t>(rows.n) - 2 * neg;
}

/// First j > i whose dot product with row i is nonzero, or n.
std::size_t first_partner(const BitRows& rows, std::size_t i) {
    for (std::size_t j = i + 1; j < rows.n; ++j) {
        if (row_dot(rows, i, j) != 0) return j;
    }
    return rows.n;
}

void convolve_one(const Labelling& lab, FieldElement z, std::uint32_t* out) {
    const FieldContext& ctx = *lab.ctx;
    const std::uint32_t r = lab.classes;
    for (std::uint32_t iu = 0; iu < ctx.order(); ++iu) {
        const FieldElement u = ctx.element_at(iu);
        const std::uint32_t iv = ctx.index_of(ctx.sub(z, u));
        ++out[lab.labels[iu] * r + lab.labels[iv]];
    }
}

void trace_counts_one(const Labelling& lab, std::uint32_t ia, std::uint32_t* out) {
    const FieldContext& ctx = *lab.ctx;
    const std::uint32_t p = ctx.characteristic();
    const FieldElement a = ctx.element_at(ia);
    for (std::uint32_t ix = 0; ix < ctx.order(); ++ix) {
        const std::uint32_t t = ctx.absolute_trace(ctx.mul(a, ctx.element_at(ix)));
        ++out[lab.labels[ix] * p + t];
    }
}

}  // namespace

namespace serial {

std::optional<std::pair<std::size_t, std::size_t>> first_nonorthogonal(const BitRows& rows) {
    for (std::size_t i = 0; i < rows.n; ++i) {
        const std::size_t j = first_partner(rows, i);
        if (j < rows.n) return std::pair{i, j};
    }
    return std::nullopt;
}

std::vector<std::int64_t> row_sums(const BitRows& rows) {
    std::vector<std::int64_t> out(rows.n);
    for (std::size_t i = 0; i < rows.n; ++i) out[i] = row_sum(rows, i);
    return out;
}

std::vector<std::uint32_t> class_convolution(const Labelling& lab, std::span<const FieldElement> zs) {
    const std::size_t block = std::size_t{lab.classes} * lab.classes;
    std::vector<std::uint32_t> out(zs.size() * block, 0);
    for (std::size_t k = 0; k < zs.size(); ++k) convolve_one(lab, zs[k], out.data() + k * block);
    return out;
}

TraceCounts class_trace_counts(const Labelling& lab) {
    const std::size_t q = lab.ctx->order();
    const std::size_t block = std::size_t{lab.classes} * lab.ctx->characteristic();
    TraceCounts out(q * block, 0);
    for (std::size_t a = 0; a < q; ++a) trace_counts_one(lab, static_cast<std::uint32_t>(a), out.data() + a * block);
    return out;
}

}  // namespace serial

namespace parallel {

int thread_count() { return omp_get_max_threads(); }

std::optional<std::pair<std::size_t, std::size_t>> first_nonorthogonal(const BitRows& rows) {
    const auto n = static_cast<std::int64_t>(rows.n);
    std::int64_t best_i = n;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : best_i)
    for (std::int64_t i = 0; i < n; ++i) {
        if (i < best_i && first_partner(rows, static_cast<std::size_t>(i)) < rows.n) best_i = i;
    }
    if (best_i == n) return std::nullopt;
    const auto i = static_cast<std::size_t>(best_i);
    return std::pair{i, first_partner(rows, i)};
}

std::vector<std::int64_t> row_sums(const BitRows& rows) {
    std::vector<std::int64_t> out(rows.n);
    const auto n = static_cast<std::int64_t>(rows.n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = row_sum(rows, static_cast<std::size_t>(i));
    return out;
}

std::vector<std::uint32_t> class_convolution(const Labelling& lab, std::span<const FieldElement> zs) {
    const std::size_t block = std::size_t{lab.classes} * lab.classes;
    std::vector<std::uint32_t> out(zs.size() * block, 0);
    const auto count = static_cast<std::int64_t>(zs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < count; ++k) convolve_one(lab, zs[k], out.data() + k * block);
    return out;
}

TraceCounts class_trace_counts(const Labelling& lab) {
    const auto q = static_cast<std::int64_t>(lab.ctx->order());
    const std::size_t block = std::size_t{lab.classes} * lab.ctx->characteristic();
    TraceCounts out(static_cast<std::size_t>(q) * block, 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t a = 0; a < q; ++a) {
        trace_counts_one(lab, static_cast<std::uint32_t>(a), out.data() + static_cast<std::size_t>(a) * block);
    }
    return out;
}

}  // namespace parallel

}  // namespace hadamax::kernels
