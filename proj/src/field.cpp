#include "hadamax/field.hpp"

#include <algorithm>
#include <string>

#include "hadamax/error.hpp"

namespace hadamax {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime; Fermat.
    std::uint64_t result = 1, base = a % p;
    for (std::uint32_t e = p - 2; e != 0; e >>= 1) {
        if (e & 1u) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t c = a.back() * lead_inv % p;
        for (std::size_t k = 0; k <= dm; ++k) {
            a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + (p - c) * m[k]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), m, p);
    while (e != 0) {
        if (e & 1u) result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

/// Coefficients c_0..c_{len-1} of the t-th vector in lexicographic order,
/// c_0 being the most significant position.
Poly lex_vector(std::uint64_t t, std::uint32_t len, std::uint32_t p) {
    Poly c(len, 0);
    for (std::uint32_t k = len; k-- > 0;) {
        c[k] = static_cast<std::uint32_t>(t % p);
        t /= p;
    }
    return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
    std::uint64_t code = 0;
    for (std::size_t k = c.size(); k-- > 0;) code = code * p + c[k];
    return static_cast<std::uint32_t>(code);
}

}  // namespace

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::NotPrimePower: return "NotPrimePower";
        case Errc::TooLarge: return "TooLarge";
        case Errc::InvariantBreach: return "InvariantBreach";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::ZeroHasNoLog: return "ZeroHasNoLog";
        case Errc::ZeroArgument: return "ZeroArgument";
        case Errc::NoSubfield: return "NoSubfield";
        case Errc::BadOrder: return "BadOrder";
        case Errc::NoMatch: return "NoMatch";
        case Errc::WrongResidue: return "WrongResidue";
        case Errc::BadForm: return "BadForm";
        case Errc::BadE: return "BadE";
        case Errc::BadEll: return "BadEll";
        case Errc::BadH: return "BadH";
        case Errc::NotFound: return "NotFound";
        case Errc::NotHadamard: return "NotHadamard";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::SchemeInvalid: return "SchemeInvalid";
        case Errc::ProfileMismatch: return "ProfileMismatch";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::uint64_t FieldSpec::order() const noexcept { return ipow(p, f); }

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n) noexcept {
    if (n < 2) return std::nullopt;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return std::pair{static_cast<std::uint32_t>(n), 1u};
    std::uint32_t f = 0;
    while (n % p == 0) {
        n /= p;
        ++f;
    }
    if (n != 1) return std::nullopt;
    return std::pair{static_cast<std::uint32_t>(p), f};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) noexcept {
    std::uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
    Poly m(poly.begin(), poly.end());
    trim(m);
    if (m.size() < 2) return false;
    const auto f = static_cast<std::uint32_t>(m.size() - 1);
    if (f == 1) return true;
    const Poly x{0, 1};
    // x^(p^k) mod m by repeated p-th powers.
    auto frob_power = [&](std::uint32_t k) {
        Poly r = x;
        for (std::uint32_t i = 0; i < k; ++i) r = poly_powmod(r, p, m, p);
        return r;
    };
    if (poly_sub(frob_power(f), x, p) != Poly{}) return false;
    for (std::uint64_t r : prime_factors(f)) {
        Poly g = poly_gcd(m, poly_sub(frob_power(f / static_cast<std::uint32_t>(r)), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

FieldPtr FieldContext::build(std::uint32_t p, std::uint32_t f) {
    if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (f == 0) throw Error(Errc::BadForm, "extension degree must be at least 1");
    // Guard against overflow before computing p^f.
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
        q *= p;
        if (q > kMaxOrder) {
            throw Error(Errc::TooLarge, std::to_string(p) + "^" + std::to_string(f) + " exceeds 2^24");
        }
    }

    std::shared_ptr<FieldContext> ctx(new FieldContext());
    ctx->q_ = q;
    ctx->n_ = static_cast<std::uint32_t>(q - 1);
    ctx->spec_.p = p;
    ctx->spec_.f = f;

    // Least monic irreducible modulus.
    Poly modulus;
    for (std::uint64_t t = 0; t < q; ++t) {
        Poly cand = lex_vector(t, f, p);
        cand.push_back(1);
        if (is_irreducible(cand, p)) {
            modulus = std::move(cand);
            break;
        }
    }
    if (modulus.empty()) throw Error(Errc::InvariantBreach, "no irreducible polynomial found");
    ctx->spec_.modulus = modulus;

    // Least primitive element.
    const std::uint64_t group = q - 1;
    const auto factors = prime_factors(group);
    Poly omega;
    for (std::uint64_t t = 1; t < q && omega.empty(); ++t) {
        Poly cand = lex_vector(t, f, p);
        trim(cand);
        if (cand.empty()) continue;
        bool primitive = true;
        for (std::uint64_t r : factors) {
            if (poly_powmod(cand, group / r, modulus, p) == Poly{1}) {
                primitive = false;
                break;
            }
        }
        if (primitive) omega = std::move(cand);
    }
    if (omega.empty()) throw Error(Errc::InvariantBreach, "no primitive element found");

    const std::uint32_t n = ctx->n_;
    ctx->exp_.resize(n);
    ctx->log_.assign(q, FieldElement::kZeroLog);
    Poly cur{1};
    for (std::uint32_t i = 0; i < n; ++i) {
        Poly padded = cur;
        padded.resize(f, 0);
        const std::uint32_t code = encode(padded, p);
        if (code == 0 || ctx->log_[code] != FieldElement::kZeroLog) {
            throw Error(Errc::InvariantBreach, "primitive element has short order");
        }
        ctx->exp_[i] = code;
        ctx->log_[code] = i;
        cur = poly_mulmod(cur, omega, modulus, p);
    }
    if (cur != Poly{1}) throw Error(Errc::InvariantBreach, "omega^(q-1) != 1");

    ctx->minus_one_log_ = (p == 2) ? 0 : n / 2;

    ctx->zech_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t code = ctx->exp_[i];
        const std::uint32_t c0 = code % p;
        const std::uint32_t shifted = code - c0 + (c0 + 1) % p;
        ctx->zech_[i] = shifted == 0 ? FieldElement::kZeroLog : ctx->log_[shifted];
    }

    ctx->trace_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        FieldElement x{i};
        FieldElement sum = x;
        for (std::uint32_t k = 1; k < f; ++k) {
            x = ctx->frobenius(x);
            sum = ctx->add(sum, x);
        }
        const std::uint32_t code = ctx->code_of(sum);
        if (code >= p) throw Error(Errc::InvariantBreach, "trace left the prime field");
        ctx->trace_[i] = code;
    }

    if (f % 2 == 0) {
        ctx->subfield_ = build(p, f / 2);
        ctx->subfield_map_.emplace(*ctx->subfield_, *ctx);
    }
    return ctx;
}

FieldElement FieldContext::omega_pow(std::int64_t k) const noexcept {
    std::int64_t r = k % static_cast<std::int64_t>(n_);
    if (r < 0) r += n_;
    return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldContext::add(FieldElement a, FieldElement b) const noexcept {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::uint32_t diff = b.log >= a.log ? b.log - a.log : b.log + n_ - a.log;
    const std::uint32_t z = zech_[diff];
    if (z == FieldElement::kZeroLog) return {};
    std::uint64_t r = std::uint64_t{a.log} + z;
    if (r >= n_) r -= n_;
    return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldContext::neg(FieldElement a) const noexcept {
    if (a.is_zero() || minus_one_log_ == 0) return a;
    return mul(a, {minus_one_log_});
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const noexcept {
    if (a.is_zero() || b.is_zero()) return {};
    std::uint64_t r = std::uint64_t{a.log} + b.log;
    if (r >= n_) r -= n_;
    return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldContext::inv(FieldElement a) const {
    if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    return {a.log == 0 ? 0 : n_ - a.log};
}

FieldElement FieldContext::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement FieldContext::pow(FieldElement a, std::int64_t k) const {
    if (a.is_zero()) {
        if (k < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
        return k == 0 ? one() : zero();
    }
    const std::int64_t n = n_;
    std::int64_t r = k % n;
    if (r < 0) r += n;
    return {static_cast<std::uint32_t>((static_cast<unsigned __int128>(a.log) * r) % n)};
}

FieldElement FieldContext::frobenius(FieldElement a) const noexcept {
    if (a.is_zero()) return a;
    return {static_cast<std::uint32_t>(std::uint64_t{a.log} * spec_.p % n_)};
}

std::uint32_t FieldContext::discrete_log(FieldElement x) const {
    if (x.is_zero()) throw Error(Errc::ZeroHasNoLog, "discrete log of zero");
    return x.log;
}

std::uint32_t FieldContext::absolute_trace(FieldElement x) const noexcept {
    return x.is_zero() ? 0 : trace_[x.log];
}

std::vector<std::uint32_t> FieldContext::coefficients(FieldElement x) const {
    std::vector<std::uint32_t> c(spec_.f, 0);
    std::uint32_t code = code_of(x);
    for (auto& v : c) {
        v = code % spec_.p;
        code /= spec_.p;
    }
    return c;
}

FieldElement FieldContext::from_code(std::uint32_t code) const noexcept {
    return code == 0 ? FieldElement{} : FieldElement{log_[code]};
}

FieldElement FieldContext::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > spec_.f) throw Error(Errc::BadForm, "too many coefficients");
    std::uint64_t code = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) code = code * spec_.p + coeffs[k] % spec_.p;
    return from_code(static_cast<std::uint32_t>(code));
}

FieldElement FieldContext::from_int(std::int64_t c) const {
    std::int64_t r = c % static_cast<std::int64_t>(spec_.p);
    if (r < 0) r += spec_.p;
    return from_code(static_cast<std::uint32_t>(r));
}

const FieldContext& FieldContext::subfield() const {
    if (!subfield_) throw Error(Errc::NoSubfield, "field of odd degree has no half-degree subfield");
    return *subfield_;
}

const SubfieldEmbedding& FieldContext::subfield_map() const {
    if (!subfield_map_) throw Error(Errc::NoSubfield, "field of odd degree has no half-degree subfield");
    return *subfield_map_;
}

std::vector<FieldElement> FieldContext::subfield_elements() const {
    const auto& small = subfield();
    const auto& map = subfield_map();
    std::vector<FieldElement> out(small.order());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = map.to_big(small.element_at(i));
    return out;
}

FieldElement FieldContext::rel_trace(FieldElement x) const {
    const auto& map = subfield_map();
    const FieldElement y = add(x, pow(x, static_cast<std::int64_t>(subfield_->order())));
    return map.to_small(y);
}

SubfieldEmbedding::SubfieldEmbedding(const FieldContext& small, const FieldContext& big) {
    if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0) {
        throw Error(Errc::NoSubfield, "not a subfield");
    }
    const std::uint32_t n_small = small.group_order();
    const std::uint32_t n_big = big.group_order();
    step_ = n_big / n_small;

    // Least-log root of the small field's modulus inside the big field.
    const auto& mu = small.spec().modulus;
    auto evaluate = [&](FieldElement y) {
        FieldElement acc = big.zero();
        for (std::size_t k = mu.size(); k-- > 0;) acc = big.add(big.mul(acc, y), big.from_int(mu[k]));
        return acc;
    };
    std::optional<FieldElement> root;
    if (evaluate(big.zero()).is_zero()) root = big.zero();
    for (std::uint64_t k = 0; k < n_small && !root; ++k) {
        FieldElement y{static_cast<std::uint32_t>(k * step_)};
        if (evaluate(y).is_zero()) root = y;
    }
    if (!root) throw Error(Errc::InvariantBreach, "modulus has no root in the subfield");

    // Image of the small primitive element: sum_i c_i r^i.
    FieldElement image = big.zero();
    FieldElement rpow = big.one();
    for (std::uint32_t coeff : small.coefficients(small.omega_pow(1))) {
        image = big.add(image, big.mul(big.from_int(coeff), rpow));
        rpow = big.mul(rpow, *root);
    }
    if (image.is_zero() || image.log % step_ != 0) {
        throw Error(Errc::InvariantBreach, "embedding image outside subfield");
    }

    small_to_big_.resize(n_small);
    big_to_small_.assign(n_small, FieldElement::kZeroLog);
    for (std::uint32_t k = 0; k < n_small; ++k) {
        const auto big_log = static_cast<std::uint32_t>(std::uint64_t{image.log} * k % n_big);
        small_to_big_[k] = big_log;
        if (big_to_small_[big_log / step_] != FieldElement::kZeroLog) {
            throw Error(Errc::InvariantBreach, "embedding is not injective");
        }
        big_to_small_[big_log / step_] = k;
    }
}

FieldElement SubfieldEmbedding::to_big(FieldElement x) const noexcept {
    return x.is_zero() ? x : FieldElement{small_to_big_[x.log]};
}

bool SubfieldEmbedding::in_image(FieldElement x) const noexcept {
    return x.is_zero() || x.log % step_ == 0;
}

FieldElement SubfieldEmbedding::to_small(FieldElement x) const {
    if (x.is_zero()) return x;
    if (x.log % step_ != 0) throw Error(Errc::NoSubfield, "element not in subfield");
    return {big_to_small_[x.log / step_]};
}

FieldElement norm_to_subfield(const FieldContext& big, const FieldContext& small, FieldElement x) {
    const std::uint64_t exponent = (big.order() - 1) / (small.order() - 1);
    return big.pow(x, static_cast<std::int64_t>(exponent));
}

}  // namespace hadamax
