#include "hadamax/character_sums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hadamax/error.hpp"

namespace hadamax {

namespace {

std::uint32_t reduce(std::int64_t k, std::uint64_t m) {
    const auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = k % mm;
    if (r < 0) r += mm;
    return static_cast<std::uint32_t>(r);
}

void require_divides_group(const FieldContext& ctx, std::uint32_t e) {
    if (e == 0 || ctx.group_order() % e != 0) {
        throw Error(Errc::BadOrder, "character order " + std::to_string(e) + " does not divide q-1");
    }
}

/// Roots of unity zeta_m^0..zeta_m^{m-1}.
std::vector<Complex> root_table(std::uint64_t m) {
    std::vector<Complex> t(m);
    for (std::uint64_t k = 0; k < m; ++k) t[k] = root_of_unity(static_cast<std::int64_t>(k), m);
    return t;
}

struct Half {
    std::uint64_t q;
    const FieldContext& small;
    const SubfieldEmbedding& map;
};

Half half_of(const FieldContext& ext) {
    const auto& small = ext.subfield();
    return {small.order(), small, ext.subfield_map()};
}

/// eta on F_q (embedded) via the subfield context: 0 at 0.
int quadratic_on_subfield(const Half& h, FieldElement big_x) {
    const FieldElement x = h.map.to_small(big_x);
    if (x.is_zero()) return 0;
    if (h.q % 2 == 0) return 1;
    return (x.log % 2 == 0) ? 1 : -1;
}

}  // namespace

Complex root_of_unity(std::int64_t k, std::uint64_t m) {
    const std::uint32_t r = reduce(k, m);
    if (r == 0) return {1.0, 0.0};
    if (2 * static_cast<std::uint64_t>(r) == m) return {-1.0, 0.0};
    if (4 * static_cast<std::uint64_t>(r) == m) return {0.0, 1.0};
    if (4 * static_cast<std::uint64_t>(r) == 3 * m) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * r / static_cast<double>(m));
}

bool CharSpec::trivial() const noexcept { return order == 0 || power % static_cast<std::int64_t>(order) == 0; }

Complex additive_char(const FieldContext& ctx, FieldElement x) {
    return root_of_unity(ctx.absolute_trace(x), ctx.characteristic());
}

std::uint32_t mult_char(const FieldContext& ctx, std::uint32_t e, FieldElement x) {
    require_divides_group(ctx, e);
    if (x.is_zero()) throw Error(Errc::ZeroArgument, "multiplicative character at zero");
    return x.log % e;
}

Complex mult_char_value(const FieldContext& ctx, const CharSpec& chi, FieldElement x) {
    require_divides_group(ctx, chi.order);
    if (x.is_zero()) return chi.trivial() ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    return root_of_unity(static_cast<std::int64_t>(x.log % chi.order) * chi.power, chi.order);
}

Complex gauss_sum(const FieldContext& ctx, std::uint32_t e, std::int64_t power) {
    require_divides_group(ctx, e);
    const auto zeta_e = root_table(e);
    const auto zeta_p = root_table(ctx.characteristic());
    const std::uint32_t pw = reduce(power, e);
    Complex sum{0.0, 0.0};
    for (std::uint32_t i = 0; i < ctx.group_order(); ++i) {
        const std::uint32_t k = static_cast<std::uint32_t>(std::uint64_t{i % e} * pw % e);
        sum += zeta_e[k] * zeta_p[ctx.absolute_trace(FieldElement{i})];
    }
    return sum;
}

Complex quadratic_gauss_closed_form(std::uint32_t p, std::uint32_t s) {
    if (p % 2 == 0 || s == 0) throw Error(Errc::BadForm, "quadratic Gauss sum needs odd q");
    const double root_q = std::sqrt(static_cast<double>(ipow(p, s)));
    const double sign = (s % 2 == 1) ? 1.0 : -1.0;  // (-1)^{s-1}
    if (p % 4 == 1) return {sign * root_q, 0.0};
    return sign * root_of_unity(s, 4) * root_q;
}

Complex gauss_period(const FieldContext& ctx, std::uint32_t e, std::uint32_t i) {
    require_divides_group(ctx, e);
    Complex sum{0.0, 0.0};
    for (std::uint32_t k = i % e; k < ctx.group_order(); k += e) sum += additive_char(ctx, FieldElement{k});
    return sum;
}

std::vector<Complex> gauss_periods(const FieldContext& ctx, std::uint32_t e) {
    require_divides_group(ctx, e);
    const auto zeta_p = root_table(ctx.characteristic());
    std::vector<Complex> periods(e, Complex{0.0, 0.0});
    for (std::uint32_t k = 0; k < ctx.group_order(); ++k) {
        periods[k % e] += zeta_p[ctx.absolute_trace(FieldElement{k})];
    }
    return periods;
}

Complex jacobi_sum(const FieldContext& ctx, const CharSpec& chi1, const CharSpec& chi2) {
    Complex sum{0.0, 0.0};
    const FieldElement one = ctx.one();
    for (std::uint32_t idx = 0; idx < ctx.order(); ++idx) {
        const FieldElement x = ctx.element_at(idx);
        sum += mult_char_value(ctx, chi1, x) * mult_char_value(ctx, chi2, ctx.sub(one, x));
    }
    return sum;
}

GaussDecomposition decompose_gauss(const FieldContext& ext, GaussFamily family) {
    const auto h = half_of(ext);
    const std::uint64_t q = h.q;

    GaussDecomposition out;
    std::vector<std::pair<std::array<int, 2>, Complex>> candidates;
    const Complex gq = gauss_sum(h.small, 2, 1);

    if (family == GaussFamily::Order8) {
        std::uint32_t m = 0;
        while (4ull * m * m + 4ull * m + 3 < q) ++m;
        if (4ull * m * m + 4ull * m + 3 != q || q % 8 != 3) {
            throw Error(Errc::BadForm, std::to_string(q) + " is not of the form 4m^2+4m+3");
        }
        out.m = m;
        out.form = GaussForm::Order8;
        out.computed = gauss_sum(ext, 8, 1);
        for (int eps : {1, -1}) {
            for (int del : {1, -1}) {
                const Complex tmpl = gq * Complex(eps * (2.0 * m + 1.0), del * std::sqrt(2.0));
                candidates.push_back({{eps, del}, tmpl});
            }
        }
    } else {
        std::uint32_t m = 0;
        while (2ull * m * m + 2ull * m + 1 < q) ++m;
        if (2ull * m * m + 2ull * m + 1 != q || m == 0) {
            throw Error(Errc::BadForm, std::to_string(q) + " is not of the form 2m^2+2m+1");
        }
        out.m = m;
        out.form = (m % 2 == 1) ? GaussForm::Order4Odd : GaussForm::Order4Even;
        out.computed = gq * gauss_sum(ext, 4, 1) / static_cast<double>(q);
        const double re = (m % 2 == 1) ? m : m + 1.0;
        const double im = (m % 2 == 1) ? m + 1.0 : m;
        for (int eps : {1, -1}) {
            for (int del : {1, -1}) candidates.push_back({{eps, del}, Complex(eps * re, del * im)});
        }
    }

    bool found = false;
    for (const auto& [signs, value] : candidates) {
        const double r = std::abs(value - out.computed);
        if (r < kTolerance) {
            if (found) throw Error(Errc::InvariantBreach, "two sign choices match");
            found = true;
            out.epsilon = signs[0];
            out.delta = signs[1];
            out.reconstructed = value;
            out.residual = r;
        }
    }
    if (!found) throw Error(Errc::NoMatch, "no sign choice reproduces the Gauss sum for q=" + std::to_string(q));
    return out;
}

IdentityCheck check_davenport_hasse(const FieldContext& base, const FieldContext& ext, std::uint32_t e,
                                    std::uint32_t d) {
    if (base.characteristic() != ext.characteristic() || ext.degree() != d * base.degree() || d < 2) {
        throw Error(Errc::BadForm, "extension degree mismatch");
    }
    require_divides_group(base, e);
    if (e < 2) throw Error(Errc::BadOrder, "lifting needs a nontrivial character");

    const SubfieldEmbedding emb(base, ext);
    const auto zeta_e = root_table(e);
    const auto zeta_p = root_table(ext.characteristic());
    Complex lifted{0.0, 0.0};
    for (std::uint32_t i = 0; i < ext.group_order(); ++i) {
        const FieldElement alpha{i};
        const FieldElement norm = emb.to_small(norm_to_subfield(ext, base, alpha));
        lifted += zeta_e[norm.log % e] * zeta_p[ext.absolute_trace(alpha)];
    }
    const Complex g = gauss_sum(base, e, 1);
    const Complex predicted = ((d % 2 == 1) ? 1.0 : -1.0) * std::pow(g, static_cast<int>(d));
    return {lifted, predicted};
}

void require_dlh_preconditions(const FieldContext& ext, std::uint32_t e, std::uint64_t ell) {
    const std::uint64_t q = ext.subfield().order();
    if (e == 0 || (q * q - 1) % e != 0) throw Error(Errc::BadE, "e must divide q^2-1");
    if (e / std::gcd(std::uint64_t{e}, q + 1) != 2) throw Error(Errc::BadE, "e/gcd(e,q+1) must equal 2");
    if (ell % (q + 1) == 0) throw Error(Errc::BadEll, "q+1 divides l");
}

IdentityCheck check_lemma31(const FieldContext& ext, std::uint32_t e, std::uint64_t ell) {
    require_dlh_preconditions(ext, e, ell);
    const auto h = half_of(ext);
    const auto li = static_cast<std::int64_t>(ell);
    const auto qi = static_cast<std::int64_t>(h.q);
    const FieldElement w_l = ext.omega_pow(li);

    Complex lhs{0.0, 0.0};
    for (FieldElement x : ext.subfield_elements()) {
        lhs += root_of_unity(ext.add(ext.one(), ext.mul(w_l, x)).log, e);
    }

    const FieldElement c = ext.sub(ext.omega_pow(li * qi), w_l);
    const Complex chi_minus_one = root_of_unity(ext.minus_one().log, e);
    const Complex rhs = chi_minus_one * gauss_sum(ext, e, 1) * gauss_sum(h.small, 2, 1) /
                        static_cast<double>(h.q) * root_of_unity(-li * qi, e) * root_of_unity(c.log, e);
    return {lhs, rhs};
}

IdentityCheck check_lemma32(const FieldContext& ext, std::uint32_t e, std::uint64_t ell, FieldElement s) {
    require_dlh_preconditions(ext, e, ell);
    const auto h = half_of(ext);
    const auto li = static_cast<std::int64_t>(ell);
    const auto qi = static_cast<std::int64_t>(h.q);
    const FieldElement w_l = ext.omega_pow(li);
    const FieldElement s_big = h.map.to_big(s);

    Complex lhs{0.0, 0.0};
    for (FieldElement x : ext.subfield_elements()) {
        if (x == s_big) continue;
        const int eta = quadratic_on_subfield(h, ext.sub(x, s_big));
        lhs += static_cast<double>(eta) * root_of_unity(ext.add(ext.one(), ext.mul(w_l, x)).log, e);
    }

    const FieldElement w_lq = ext.omega_pow(li * qi);
    const FieldElement c = ext.sub(w_lq, w_l);
    const FieldElement u = ext.add(ext.one(), ext.mul(w_lq, s_big));
    const Complex rhs = gauss_sum(ext, e, 1) * gauss_sum(h.small, 2, 1) / static_cast<double>(h.q) *
                            root_of_unity(-static_cast<std::int64_t>(u.log), e) * root_of_unity(c.log, e) -
                        root_of_unity(w_l.log, e);
    return {lhs, rhs};
}

bool check_lemma31_32(const FieldContext& ext, std::uint32_t e, std::uint64_t ell, FieldElement s) {
    return check_lemma31(ext, e, ell).holds() && check_lemma32(ext, e, ell, s).holds();
}

}  // namespace hadamax
