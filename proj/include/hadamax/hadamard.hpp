#pragma once

// +-1 matrices, Hadamard and excess checks, the three quadratic-residue base
// matrices and the row/column signings that raise their excess to the bound.
//
// Base matrices index F_q by the canonical order of the field context.
//   q = 3 mod 4, order q+1:  index 0, then x at 1 + index_of(x).
//   q = 1 mod 4, order 2q+2: indices 0 and 1, then (d, x) at 2 + d*q + index_of(x).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hadamax/association_schemes.hpp"
#include "hadamax/field.hpp"
#include "hadamax/intersection_sets.hpp"
#include "hadamax/kernels.hpp"

namespace hadamax {

class SignMatrix {
public:
    SignMatrix() = default;
    /// All entries +1.
    explicit SignMatrix(std::size_t n);
    static SignMatrix from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t order() const noexcept { return n_; }
    int at(std::size_t i, std::size_t j) const noexcept { return bit(i, j) ? -1 : 1; }
    void set(std::size_t i, std::size_t j, int value) noexcept;
    void negate_row(std::size_t i) noexcept;
    void negate_col(std::size_t j) noexcept;
    SignMatrix transpose() const;
    bool symmetric() const noexcept;
    /// Sum of all entries.
    std::int64_t excess() const noexcept;
    kernels::BitRows view() const noexcept { return {n_, stride_, words_}; }

    bool operator==(const SignMatrix&) const = default;

private:
    bool bit(std::size_t i, std::size_t j) const noexcept { return (words_[i * stride_ + j / 64] >> (j % 64)) & 1u; }

    std::size_t n_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

/// A (1,-1)-diagonal matrix.
struct DiagonalSigning {
    std::vector<std::int8_t> signs;

    static DiagonalSigning identity(std::size_t n) { return {std::vector<std::int8_t>(n, 1)}; }
    std::size_t negated() const noexcept;
};

/// diag(rows) * h * diag(cols).  Throws LengthMismatch.
SignMatrix apply_signing(const SignMatrix& h, const DiagonalSigning& rows, const DiagonalSigning& cols);

/// Lexicographically least pair of distinct rows that are not orthogonal.
std::optional<std::pair<std::size_t, std::size_t>> first_violation(const SignMatrix& h, bool parallel = true);
bool is_hadamard(const SignMatrix& h, bool parallel = true);
std::vector<std::int64_t> row_sums(const SignMatrix& h, bool parallel = true);

/// Excess bound parameters for order n >= 4.
struct ExcessBound {
    std::int64_t k = 0;  // largest even k with k^2 <= n
    std::int64_t t = 0;
    std::int64_t s = 0;
    std::int64_t bound = 0;
    /// The same formula evaluated with the other choice of t.
    std::int64_t alt_t = 0;
    std::int64_t alt_s = 0;
    std::int64_t alt_bound = 0;
};
/// nullopt for n < 4.
std::optional<ExcessBound> excess_bound(std::int64_t n);

enum class RowSumClass { Regular, Biregular, Irregular };
const char* to_string(RowSumClass c) noexcept;

struct BiregularInfo {
    std::int64_t k1 = 0;  // k1 < k2
    std::int64_t k2 = 0;
    std::int64_t m1 = 0;  // rows with sum k1
    std::int64_t m2 = 0;
    /// m1 equals (n^2 - n k2^2) / (k1^2 - k2^2).
    bool frequencies_consistent = false;
};

struct ExcessReport {
    std::int64_t n = 0;
    std::int64_t excess = 0;
    std::optional<ExcessBound> bound;
    std::map<std::int64_t, std::int64_t> row_sums;  // value -> rows
    RowSumClass classification = RowSumClass::Irregular;
    std::optional<BiregularInfo> biregular;

    bool attains_bound() const { return bound && excess == bound->bound; }
};

/// Throws NotHadamard.
ExcessReport excess_report(const SignMatrix& h, bool parallel = true);

/// Paley-type matrix [[-1, 1^T], [1, M]], M_ij = 1 iff j - i is 0 or a square.
/// Throws WrongResidue unless q = 3 mod 4.
SignMatrix construct_q3(const FieldContext& fq);

enum class Q1Variant { Plain, Negated2 };

/// Symmetric matrix of order 2q+2 built from M1 = M+I, M2 = M-I, M3 = -M-I.
/// Negated2 also negates row 1 and column 1.  Throws WrongResidue unless q = 1 mod 4.
SignMatrix construct_q1(const FieldContext& fq, Q1Variant variant = Q1Variant::Plain);

struct TransformResult {
    SignMatrix base;
    SignMatrix matrix;
    DiagonalSigning row_signs;
    DiagonalSigning col_signs;
    ExcessReport report;
    ParamChoice params;
};

/// q = 4m^2+4m+3 with ext = GF(q^2).  Uses find_params(E8) unless a choice is
/// supplied.  Throws BadForm, NotFound, InvariantBreach.
TransformResult transform_biregular_q3(const FieldContext& ext, const std::optional<ParamChoice>& params = std::nullopt);

/// q = 2m^2+2m+1 with ext = GF(q^2); odd and even m use their own signing.
TransformResult transform_biregular_q1(const FieldContext& ext, const std::optional<ParamChoice>& params = std::nullopt);

/// q = 2m^2-1 with ext = GF(q^2) and a partition that passes every scheme
/// check with its multiplier as given.  Throws SchemeInvalid, NotFound,
/// ProfileMismatch, InvariantBreach.
TransformResult transform_regular(const FieldContext& ext, const SchemePartition& part);

}  // namespace hadamax
