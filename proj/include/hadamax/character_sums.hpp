#pragma once

// Additive and multiplicative characters, Gauss/Jacobi sums, Gauss periods,
// and numeric cross-checks of the closed forms used by the constructions.
//
// Multiplicative characters are normalised by chi_e(omega) = zeta_e, where
// omega is the context's primitive element.  All complex comparisons use
// kTolerance; integer-valued conclusions never depend on these sums.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hadamax/field.hpp"

namespace hadamax {

using Complex = std::complex<double>;

inline constexpr double kTolerance = 1e-6;

/// zeta_m^k.
Complex root_of_unity(std::int64_t k, std::uint64_t m);

inline bool approx_equal(Complex a, Complex b, double tol = kTolerance) { return std::abs(a - b) < tol; }

/// chi = chi_e^power.  Trivial when power is divisible by order.
struct CharSpec {
    std::uint32_t order = 1;
    std::int64_t power = 1;

    bool trivial() const noexcept;
};

/// psi(x) = zeta_p^{Tr_{q/p}(x)}.
Complex additive_char(const FieldContext& ctx, FieldElement x);

/// Exponent k in [0, e) with chi_e(x) = zeta_e^k.  Throws BadOrder when e does
/// not divide q-1 and ZeroArgument for x = 0.
std::uint32_t mult_char(const FieldContext& ctx, std::uint32_t e, FieldElement x);

/// chi(x) with chi(0) = 1 for trivial chi and 0 otherwise.
Complex mult_char_value(const FieldContext& ctx, const CharSpec& chi, FieldElement x);

/// G_q(chi_e^power).
Complex gauss_sum(const FieldContext& ctx, std::uint32_t e, std::int64_t power = 1);

/// Quadratic Gauss sum evaluated from the closed form in terms of (p, s).
Complex quadratic_gauss_closed_form(std::uint32_t p, std::uint32_t s);

/// eta_i = sum over C_i^{(e,q)} of psi.
Complex gauss_period(const FieldContext& ctx, std::uint32_t e, std::uint32_t i);
std::vector<Complex> gauss_periods(const FieldContext& ctx, std::uint32_t e);

/// J(chi1, chi2) = sum_x chi1(x) chi2(1 - x).
Complex jacobi_sum(const FieldContext& ctx, const CharSpec& chi1, const CharSpec& chi2);

enum class GaussFamily { Order8, Order4 };
enum class GaussForm { Order8, Order4Odd, Order4Even };

struct GaussDecomposition {
    int epsilon = 1;
    int delta = 1;
    GaussForm form = GaussForm::Order8;
    std::uint32_t m = 0;
    /// Numerically computed quantity that was matched against the templates.
    Complex computed;
    /// Closed form evaluated at (epsilon, delta).
    Complex reconstructed;
    double residual = 0.0;
};

/// For the order-8 family (q = 4m^2+4m+3): G_{q^2}(chi_8) = G_q(eta)(eps(2m+1) + delta sqrt(-2)).
/// For the order-4 family (q = 2m^2+2m+1): G_q(eta) G_{q^2}(chi_4)/q equals
/// eps m + delta(m+1)i (m odd) or eps(m+1) + delta m i (m even).
/// `ext` must be GF(q^2).  Throws BadForm or NoMatch.
GaussDecomposition decompose_gauss(const FieldContext& ext, GaussFamily family);

struct IdentityCheck {
    Complex lhs;
    Complex rhs;

    bool holds(double tol = kTolerance) const { return approx_equal(lhs, rhs, tol); }
};

/// Davenport-Hasse lifting: G_{q^d}(chi' o Norm) against (-1)^{d-1} G_q(chi')^d
/// for chi' = chi_e of `base`.  `ext` must have degree d * degree(base).
IdentityCheck check_davenport_hasse(const FieldContext& base, const FieldContext& ext, std::uint32_t e,
                                    std::uint32_t d);

/// Requirements shared by the D_{l,H} machinery: e | q^2-1, e/gcd(e,q+1) = 2,
/// and (q+1) does not divide l.  Throws BadE / BadEll / NoSubfield.
void require_dlh_preconditions(const FieldContext& ext, std::uint32_t e, std::uint64_t ell);

/// sum_{x in F_q} chi_e(1 + omega^l x) against its Gauss-sum closed form.
IdentityCheck check_lemma31(const FieldContext& ext, std::uint32_t e, std::uint64_t ell);

/// sum_{x != s} chi_e(1 + omega^l x) eta(x - s) against its closed form.
/// `s` is an element of ext.subfield().
IdentityCheck check_lemma32(const FieldContext& ext, std::uint32_t e, std::uint64_t ell, FieldElement s);

/// Both lemmas at once.
bool check_lemma31_32(const FieldContext& ext, std::uint32_t e, std::uint64_t ell, FieldElement s);

}  // namespace hadamax
