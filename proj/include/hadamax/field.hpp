#pragma once

// Table-driven arithmetic in GF(p^f).
//
// Nonzero elements are stored as discrete logarithms relative to a fixed
// primitive element; addition goes through a Zech logarithm table.  When the
// degree is even the context also carries GF(p^{f/2}) together with an explicit
// isomorphism onto the Frobenius-fixed subfield.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hadamax {

/// Log representation: `log` is in [0, q-1) or the sentinel for zero.
struct FieldElement {
    static constexpr std::uint32_t kZeroLog = 0xFFFFFFFFu;

    std::uint32_t log = kZeroLog;

    constexpr bool is_zero() const noexcept { return log == kZeroLog; }
    constexpr auto operator<=>(const FieldElement&) const = default;
};

struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t f = 0;
    /// Monic irreducible modulus, constant term first, length f+1.
    std::vector<std::uint32_t> modulus;

    std::uint64_t order() const noexcept;
};

bool is_prime(std::uint64_t n) noexcept;

/// (p, f) with n = p^f, or nullopt when n is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n) noexcept;

/// Distinct prime divisors in ascending order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) noexcept;

/// Rabin irreducibility test over GF(p); coefficients constant term first.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

/// Explicit field isomorphism from a small field onto the subfield of the
/// same order inside a larger one.  Holds only index tables, so it outlives
/// neither context.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(const FieldContext& small, const FieldContext& big);

    FieldElement to_big(FieldElement x) const noexcept;
    /// Throws NoSubfield when x does not lie in the image.
    FieldElement to_small(FieldElement x) const;
    bool in_image(FieldElement x) const noexcept;

    /// (Q-1)/(q-1): the image of the small field's multiplicative group is
    /// exactly the set of big-field logs divisible by this.
    std::uint64_t step() const noexcept { return step_; }

private:
    std::uint64_t step_ = 0;
    std::vector<std::uint32_t> small_to_big_;
    std::vector<std::uint32_t> big_to_small_;  // indexed by big_log / step
};

class FieldContext {
public:
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

    /// Deterministic construction: lexicographically least monic irreducible
    /// modulus and lexicographically least primitive element, both compared
    /// on coefficient lists written constant term first.
    static FieldPtr build(std::uint32_t p, std::uint32_t f);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::uint32_t characteristic() const noexcept { return spec_.p; }
    std::uint32_t degree() const noexcept { return spec_.f; }
    std::uint64_t order() const noexcept { return q_; }
    std::uint32_t group_order() const noexcept { return n_; }

    FieldElement zero() const noexcept { return {}; }
    FieldElement one() const noexcept { return {0}; }
    FieldElement minus_one() const noexcept { return {minus_one_log_}; }
    /// omega^k for any integer k.
    FieldElement omega_pow(std::int64_t k) const noexcept;

    FieldElement add(FieldElement a, FieldElement b) const noexcept;
    FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }
    FieldElement neg(FieldElement a) const noexcept;
    FieldElement mul(FieldElement a, FieldElement b) const noexcept;
    FieldElement div(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement pow(FieldElement a, std::int64_t k) const;
    /// x -> x^p
    FieldElement frobenius(FieldElement a) const noexcept;

    /// Throws ZeroHasNoLog.
    std::uint32_t discrete_log(FieldElement x) const;

    /// Tr_{q/p}(x) as an integer in [0, p).
    std::uint32_t absolute_trace(FieldElement x) const noexcept;

    std::vector<std::uint32_t> coefficients(FieldElement x) const;
    FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;
    /// Prime-field constant c (reduced mod p).
    FieldElement from_int(std::int64_t c) const;

    /// Canonical enumeration [0, omega^0, omega^1, ...]: index 0 is zero,
    /// index i >= 1 is omega^(i-1).
    std::uint32_t index_of(FieldElement x) const noexcept { return x.is_zero() ? 0 : x.log + 1; }
    FieldElement element_at(std::uint32_t index) const noexcept {
        return index == 0 ? FieldElement{} : FieldElement{index - 1};
    }

    // --- subfield of half degree (even f only) ---
    bool has_subfield() const noexcept { return subfield_ != nullptr; }
    /// Throws NoSubfield.
    const FieldContext& subfield() const;
    FieldPtr subfield_ptr() const noexcept { return subfield_; }
    /// Throws NoSubfield.
    const SubfieldEmbedding& subfield_map() const;
    /// Image of GF(p^{f/2}) in canonical order of the subfield context.
    std::vector<FieldElement> subfield_elements() const;

    /// Tr_{q^2/q}(x) = x + x^q, returned as an element of subfield().
    FieldElement rel_trace(FieldElement x) const;

private:
    FieldContext() = default;

    std::uint32_t code_of(FieldElement x) const noexcept { return x.is_zero() ? 0 : exp_[x.log]; }
    FieldElement from_code(std::uint32_t code) const noexcept;

    FieldSpec spec_;
    std::uint64_t q_ = 0;
    std::uint32_t n_ = 0;
    std::uint32_t minus_one_log_ = 0;
    std::vector<std::uint32_t> exp_;    // log -> coefficient code (sum c_i p^i)
    std::vector<std::uint32_t> log_;    // code -> log (code 0 unused)
    std::vector<std::uint32_t> zech_;   // i -> log(1 + omega^i) or kZeroLog
    std::vector<std::uint32_t> trace_;  // log -> Tr_{q/p}
    FieldPtr subfield_;
    std::optional<SubfieldEmbedding> subfield_map_;

    friend class SubfieldEmbedding;
};

/// Norm_{Q/q}(x) = x^((Q-1)/(q-1)) where q is the order of `small`.
FieldElement norm_to_subfield(const FieldContext& big, const FieldContext& small, FieldElement x);

}  // namespace hadamax
