#pragma once

// Block designs built from quadratic residues, the sets
//   D_{l,H} = { x in F_q : 1 + x w^l lies in a union of cyclotomic classes of F_{q^2} },
// their intersection profiles, parameter searches, and character-sum oracles
// for their sizes.
//
// Points of F_q are numbered by the canonical index of the subfield context
// (0 for zero, i for w_q^(i-1)); points of {0,1} x F_q by d * q + index.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hadamax/character_sums.hpp"
#include "hadamax/field.hpp"

namespace hadamax {

/// Dense subset of {0, ..., universe-1}.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

    std::size_t universe() const noexcept { return universe_; }
    bool contains(std::size_t i) const noexcept { return (bits_[i / 64] >> (i % 64)) & 1u; }
    void insert(std::size_t i) noexcept { bits_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t size() const noexcept;
    std::size_t intersection_size(const PointSet& other) const noexcept;
    std::vector<std::uint32_t> members() const;

    bool operator==(const PointSet&) const = default;

private:
    std::vector<std::uint64_t> bits_;
    std::size_t universe_ = 0;
};

struct BlockDesign {
    std::size_t points = 0;
    std::vector<PointSet> blocks;

    bool incident(std::size_t point, std::size_t block) const { return blocks[block].contains(point); }
    std::size_t replication(std::size_t point) const;
};

/// Blocks (C_0 u {0}) + s for s in F_q, block index = canonical index of s.
/// Requires q = 3 mod 4 (WrongResidue).
BlockDesign paley_design(const FieldContext& fq);

/// The two designs on {0,1} x F_q with incidence (N_i + J)/2:
/// B1 block s = {0} x ((C_0 u {0}) + s)  u  {1} x (C_0 + s),
/// B2 block s = {0} x (C_0 + s)          u  {1} x (N + s),   N = nonsquares.
/// Requires q = 1 mod 4.
struct PairedDesign {
    BlockDesign first;
    BlockDesign second;
};
PairedDesign paired_design(const FieldContext& fq);

struct IntersectionSet {
    PointSet members;
    /// |B_b cap D| for every block b.
    std::vector<std::uint32_t> per_block;
    /// value -> number of blocks meeting D in exactly that many points.
    std::map<std::uint32_t, std::uint32_t> profile;
    /// value -> blocks meeting D in exactly that many points.
    std::map<std::uint32_t, std::vector<std::uint32_t>> duals;

    std::vector<std::uint32_t> values() const;
};

IntersectionSet intersection_profile(const PointSet& d, const BlockDesign& design);

/// Combined profile of D0 x {0} u D1 x {1} against a paired design, as an
/// IntersectionSet over 2q points.
IntersectionSet paired_profile(const PointSet& d0, const PointSet& d1, const BlockDesign& design);

/// { x in F_q : 1 + x w^l satisfies `in_target` }, indexed by the subfield.
PointSet build_dl_set(const FieldContext& ext, std::uint64_t ell, const std::function<bool(FieldElement)>& in_target);

/// D_{l,H} with H a set of residues mod e.  Checks e | q^2-1,
/// e/gcd(e,q+1) = 2 and (q+1) does not divide l.
PointSet build_dlh(const FieldContext& ext, std::uint64_t ell, std::uint32_t e, std::span<const std::uint32_t> h_set);

enum class Family { E8, E4Odd, E4Even, Scheme };

const char* to_string(Family f) noexcept;

struct ParamChoice {
    Family family = Family::E8;
    std::uint32_t m = 0;
    std::uint64_t ell = 0;
    /// h' for E8, h for E4, unused for Scheme.
    std::uint32_t h = 0;
    std::optional<GaussDecomposition> decomposition;
    /// Scheme family only.
    int tau = 0;
    std::uint32_t e = 0;
    /// Residue sets for the one (E8) or two (E4) sets D_{l,H}.
    std::vector<std::uint32_t> h0;
    std::vector<std::uint32_t> h1;
};

/// m with q = 4m^2+4m+3 (E8), 2m^2+2m+1 (E4), 2m^2-1 (Scheme); nullopt otherwise.
std::optional<std::uint32_t> family_m(Family family, std::uint64_t q);
/// Prime power q of the family for the given m.
std::uint64_t family_q(Family family, std::uint32_t m);

/// Every admissible (l, h) for E8 or E4, ascending l then h.
/// For E4 the odd/even variant follows from m.
std::vector<ParamChoice> admissible_params(const FieldContext& ext, Family family);

/// Smallest admissible l with its smallest h.  Throws NotFound.
ParamChoice find_params(const FieldContext& ext, Family family);

/// Re-check the exact congruences of a choice independently of the search.
bool params_satisfy_conditions(const FieldContext& ext, const ParamChoice& choice);

/// Scheme family: least l with w^l in X2 u X4 and log(w^{lq} - w^l) = tau m^2 (mod 4m^2).
/// `labels` maps canonical indices of `ext` to classes 0..4.
std::optional<ParamChoice> find_scheme_params(const FieldContext& ext, std::span<const std::uint8_t> labels,
                                              std::uint32_t m, int tau);

/// Expected sizes and promised intersection values for each family.
struct FamilyPromise {
    std::uint32_t size0 = 0;
    std::uint32_t size1 = 0;  // second set, E4 and Scheme only
    std::vector<std::uint32_t> first_values;
    std::vector<std::uint32_t> second_values;  // E4 and Scheme only
};
FamilyPromise family_promise(Family family, std::uint32_t m);

/// Result of comparing the character-sum expressions with exact counts.
struct SizeFormulaCheck {
    std::uint32_t size = 0;
    double size_gauss = 0;      // Gauss-sum expression for |D|
    double size_periods = 0;    // Gauss-period expression for |D|
    std::uint32_t mismatches = 0;  // s values where an N_s expression disagreed
    double worst_residual = 0;  // max distance of any expression from its count
    bool holds() const { return mismatches == 0 && worst_residual < 1e-6; }
};

/// Gauss sums and periods of one (field, e) pair reused across many (l, H).
class SizeFormulaOracle {
public:
    SizeFormulaOracle(const FieldContext& ext, std::uint32_t e);

    SizeFormulaCheck check(std::uint64_t ell, std::span<const std::uint32_t> h_set) const;

private:
    const FieldContext& ext_;
    std::uint32_t e_;
    Complex gq_;
    std::vector<Complex> gauss_;    // G_{q^2}(chi_e^i), i in [0, e)
    std::vector<Complex> periods_;  // Gauss periods of order e in F_{q^2}
};

/// One-shot convenience wrapper.
bool check_size_formulas(const FieldContext& ext, std::uint64_t ell, std::uint32_t e,
                         std::span<const std::uint32_t> h_set);

}  // namespace hadamax
