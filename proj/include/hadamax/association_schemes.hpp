#pragma once

// Four-class translation schemes on F_{q^2}, q = 2m^2 - 1, given as unions of
// cyclotomic classes C_j^{(e,q^2)}, and the two-intersection sets they induce.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hadamax/character_sums.hpp"
#include "hadamax/field.hpp"
#include "hadamax/intersection_sets.hpp"

namespace hadamax {

struct SchemePartition {
    std::uint64_t q = 0;
    std::uint32_t m = 0;
    std::uint32_t e = 0;
    /// H_1..H_4 as residue lists mod e.
    std::array<std::vector<std::uint32_t>, 4> h;
    /// Residue j of H_i stands for the class C_{j * multiplier mod e} of our
    /// primitive element.  1 reads the lists literally.
    std::uint32_t multiplier = 1;

    auto operator<=>(const SchemePartition&) const = default;
};

/// labels[index_of(x)] = i with x in X_i (0 only for x = 0).
std::vector<std::uint8_t> class_labels(const FieldContext& ext, const SchemePartition& part);

/// The field GF(q^2) matching a partition.  Throws BadForm when q is not a
/// prime power of the form 2m^2-1 with m odd.
FieldPtr scheme_field(const SchemePartition& part);

struct StructureReport {
    bool partition_ok = false;   // H_1..H_4 partition [0, e)
    bool shift_ok = false;       // X_1 = w^{2m^2} X_3 and X_2 = w^{2m^2} X_4
    bool coset_union_ok = false; // each X_i is a union of cosets of C_0^{(4m^2,q^2)}
    bool ok() const { return partition_ok && shift_ok && coset_union_ok; }
};

StructureReport verify_structure(const FieldContext& ext, const SchemePartition& part);

/// psi(a X_i) for every a (canonical index), i = 0..4.
using CharacterTable = std::vector<std::array<Complex, 5>>;

CharacterTable character_table(const FieldContext& ext, std::span<const std::uint8_t> labels, bool parallel = true);

struct Table1Cell {
    std::uint32_t row = 0;  // Y_row
    std::uint32_t col = 0;  // X_col
    Complex expected;
    Complex observed;
    std::uint32_t witness = 0;  // canonical index of a
};

struct Table1Result {
    bool match = false;
    /// Every tau in {+1, -1} for which all 25 cells match.
    std::vector<int> taus;
    /// Rows Y_0..Y_4 evaluated with the first matching tau (or tau = +1).
    std::array<std::array<Complex, 5>, 5> eigenmatrix{};
    std::array<std::size_t, 5> dual_sizes{};
    /// First cell that failed for tau = +1 (then -1) when nothing matched.
    std::optional<Table1Cell> first_failure;
};

/// The closed-form entry of the expected eigenmatrix; g = G_q(eta).
Complex table1_entry(std::uint32_t m, Complex g, std::uint32_t row, std::uint32_t col);

/// Compare every psi(a X_i) against the closed forms under Y_i = w^{-m^2 tau} X_i^q.
Table1Result eigenmatrix_vs_table1(const FieldContext& ext, const SchemePartition& part,
                                   std::span<const std::uint8_t> labels, const CharacterTable& values);

struct SchemeOptions {
    /// Check intersection numbers at every z rather than one z per class.
    bool exhaustive = false;
    bool parallel = true;
};

struct SchemeReport {
    StructureReport structure;
    bool is_scheme = false;
    bool symmetric = false;    // -X_i = X_i
    bool commutative = false;  // p_ij^k = p_ji^k
    std::array<std::size_t, 5> class_sizes{};
    /// p[k][i][j], flattened k*25 + i*5 + j.
    std::vector<std::uint32_t> intersection_numbers;
    Table1Result table1;
    int tau = 0;  // first matching tau or 0
    std::uint32_t multiplier = 1;

    bool passes() const { return structure.ok() && is_scheme && table1.match; }
};

/// Structure, intersection numbers and the eigenmatrix comparison.
SchemeReport verify_scheme(const FieldContext& ext, const SchemePartition& part, const SchemeOptions& opts = {});

/// Distinct rows of psi(a X_i) over all a; row 0 is a = 0.  For a scheme this
/// is the first eigenmatrix up to row order.
std::vector<std::array<Complex, 5>> empirical_eigenmatrix(const CharacterTable& values);

/// Fusion test: `grouping` partitions the class indices {0..4} with {0} alone.
/// True iff the block row sums split the rows into exactly |grouping| classes
/// with row 0 alone.
bool bannai_muzychuk_check(std::span<const std::array<Complex, 5>> eigenmatrix,
                           const std::vector<std::vector<std::uint32_t>>& grouping);

/// Scan units u mod e in ascending order for the first multiplier under which
/// the partition passes every check, and store it in `part`.  Without one,
/// returns the report of the first multiplier that gave a scheme (else u = 1)
/// and leaves `part` unchanged.
SchemeReport align_partition(const FieldContext& ext, SchemePartition& part, const SchemeOptions& opts = {});

/// Same partition with the multiplier folded into the lists.
SchemePartition apply_multiplier(const SchemePartition& part);

struct SchemeIntersectionSets {
    ParamChoice params;
    PointSet d0;
    PointSet d1;
    IntersectionSet first;   // against the first paired design
    IntersectionSet second;  // against the second paired design
};

/// D_{l,S_0}, D_{l,S_1} for the least admissible l under `tau`.  The
/// returned params list the class labels of S_0 and S_1 in h0 and h1.
/// Throws NotFound (no l) or ProfileMismatch (sizes or profiles off).
SchemeIntersectionSets two_intersection_from_scheme(const FieldContext& ext, const SchemePartition& part, int tau);

struct SearchOptions {
    std::uint64_t budget = 1'000'000;
    bool parallel = true;
    /// Called for every verified partition in output order.
    std::function<void(const SchemePartition&)> on_found;
};

/// Partitions whose lists pair i with i + 2m^2 (mod e) between H_1/H_3 and
/// H_2/H_4, filtered by class sizes, a Gauss-period pretest, then full
/// verification.  Sorted lexicographically.  Throws BudgetExceeded when more
/// than `budget` size-feasible candidates exist.
std::vector<SchemePartition> scheme_search(const FieldContext& ext, std::uint32_t m, std::uint32_t e,
                                           const SearchOptions& opts = {});

/// Text form: "q m e" then one line per H_i.
std::string format_partition(const SchemePartition& part);

}  // namespace hadamax
