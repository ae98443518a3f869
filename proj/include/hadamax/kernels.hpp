#pragma once

// Hot loops shared by verification code.  Each kernel exists twice: a plain
// serial reference and an OpenMP version that must return identical results
// (tests compare them).  Both are deterministic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hadamax/field.hpp"

namespace hadamax::kernels {

/// Read-only view of bit-packed +-1 rows.  Bit set means entry -1; padding
/// bits beyond n are zero.
struct BitRows {
    std::size_t n = 0;
    std::size_t stride = 0;  // words per row
    std::span<const std::uint64_t> words;

    std::span<const std::uint64_t> row(std::size_t i) const { return words.subspan(i * stride, stride); }
};

/// Integer dot product of rows i and j.
std::int64_t row_dot(const BitRows& rows, std::size_t i, std::size_t j);

/// Class labelling of a field: labels[index_of(x)] in [0, classes).
struct Labelling {
    const FieldContext* ctx = nullptr;
    std::span<const std::uint8_t> labels;
    std::uint32_t classes = 0;
};

/// Additive-character sums split by trace value: for every a (canonical index)
/// and class i, counts[(a * classes + i) * p + t] = #{x in X_i : Tr(a x) = t}.
/// The eigenvalue psi(a X_i) is sum_t counts * zeta_p^t.
using TraceCounts = std::vector<std::uint32_t>;

namespace serial {

/// Lexicographically least (i, j), i < j, with nonzero dot product.
std::optional<std::pair<std::size_t, std::size_t>> first_nonorthogonal(const BitRows& rows);
std::vector<std::int64_t> row_sums(const BitRows& rows);

/// For each z: out[k * classes^2 + i * classes + j] = #{u in X_i : z - u in X_j}.
std::vector<std::uint32_t> class_convolution(const Labelling& lab, std::span<const FieldElement> zs);

TraceCounts class_trace_counts(const Labelling& lab);

}  // namespace serial

namespace parallel {

std::optional<std::pair<std::size_t, std::size_t>> first_nonorthogonal(const BitRows& rows);
std::vector<std::int64_t> row_sums(const BitRows& rows);
std::vector<std::uint32_t> class_convolution(const Labelling& lab, std::span<const FieldElement> zs);
TraceCounts class_trace_counts(const Labelling& lab);

/// Worker threads OpenMP will use.
int thread_count();

}  // namespace parallel

}  // namespace hadamax::kernels
