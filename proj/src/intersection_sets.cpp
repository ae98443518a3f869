#include "hadamax/intersection_sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "hadamax/error.hpp"

namespace hadamax {

namespace {

bool is_square(const FieldContext&, FieldElement x) { return !x.is_zero() && x.log % 2 == 0; }

std::uint32_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

/// Translates of a subset of F_q: block s = { x + s : x in base }.
std::vector<PointSet> translates(const FieldContext& fq, const std::function<bool(FieldElement)>& base,
                                 std::size_t universe, std::size_t offset) {
    const auto q = static_cast<std::uint32_t>(fq.order());
    std::vector<std::uint32_t> base_idx;
    for (std::uint32_t i = 0; i < q; ++i) {
        if (base(fq.element_at(i))) base_idx.push_back(i);
    }
    std::vector<PointSet> out;
    out.reserve(q);
    for (std::uint32_t s = 0; s < q; ++s) {
        PointSet b(universe);
        const FieldElement fs = fq.element_at(s);
        for (std::uint32_t i : base_idx) b.insert(offset + fq.index_of(fq.add(fq.element_at(i), fs)));
        out.push_back(std::move(b));
    }
    return out;
}

PointSet merge(const PointSet& a, const PointSet& b) {
    PointSet out(a.universe());
    for (std::uint32_t i : a.members()) out.insert(i);
    for (std::uint32_t i : b.members()) out.insert(i);
    return out;
}

std::vector<std::uint32_t> residue_range(std::uint32_t start, std::uint32_t len, std::uint32_t e) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < len; ++i) out.push_back((start + i) % e);
    return out;
}

void require_odd_characteristic(const FieldContext& ext) {
    if (ext.characteristic() == 2) throw Error(Errc::BadForm, "characteristic 2 is outside every family");
}

}  // namespace

// ---------------------------------------------------------------- PointSet

std::size_t PointSet::size() const noexcept {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
}

std::size_t PointSet::intersection_size(const PointSet& other) const noexcept {
    std::size_t c = 0;
    const std::size_t words = std::min(bits_.size(), other.bits_.size());
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(bits_[w] & other.bits_[w]);
    return c;
}

std::vector<std::uint32_t> PointSet::members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < universe_; ++i) {
        if (contains(i)) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

std::size_t BlockDesign::replication(std::size_t point) const {
    std::size_t r = 0;
    for (const auto& b : blocks) r += b.contains(point);
    return r;
}

// ---------------------------------------------------------------- designs

BlockDesign paley_design(const FieldContext& fq) {
    if (fq.order() % 4 != 3) throw Error(Errc::WrongResidue, "Paley design needs q = 3 mod 4");
    BlockDesign d;
    d.points = fq.order();
    d.blocks = translates(fq, [&](FieldElement x) { return x.is_zero() || is_square(fq, x); }, d.points, 0);
    return d;
}

PairedDesign paired_design(const FieldContext& fq) {
    if (fq.order() % 4 != 1) throw Error(Errc::WrongResidue, "paired designs need q = 1 mod 4");
    const std::size_t q = fq.order();
    auto sq_zero = [&](FieldElement x) { return x.is_zero() || is_square(fq, x); };
    auto sq = [&](FieldElement x) { return is_square(fq, x); };
    auto nonsq = [&](FieldElement x) { return !x.is_zero() && !is_square(fq, x); };

    const auto a0 = translates(fq, sq_zero, 2 * q, 0);
    const auto a1 = translates(fq, sq, 2 * q, q);
    const auto b0 = translates(fq, sq, 2 * q, 0);
    const auto b1 = translates(fq, nonsq, 2 * q, q);
    PairedDesign out;
    out.first.points = out.second.points = 2 * q;
    for (std::size_t s = 0; s < q; ++s) {
        out.first.blocks.push_back(merge(a0[s], a1[s]));
        out.second.blocks.push_back(merge(b0[s], b1[s]));
    }
    return out;
}

// ---------------------------------------------------------------- profiles

std::vector<std::uint32_t> IntersectionSet::values() const {
    std::vector<std::uint32_t> v;
    for (const auto& [value, count] : profile) v.push_back(value);
    return v;
}

IntersectionSet intersection_profile(const PointSet& d, const BlockDesign& design) {
    if (d.universe() != design.points) throw Error(Errc::LengthMismatch, "point set and design differ in size");
    IntersectionSet out;
    out.members = d;
    out.per_block.reserve(design.blocks.size());
    for (std::uint32_t b = 0; b < design.blocks.size(); ++b) {
        const auto a = static_cast<std::uint32_t>(design.blocks[b].intersection_size(d));
        out.per_block.push_back(a);
        ++out.profile[a];
        out.duals[a].push_back(b);
    }
    return out;
}

IntersectionSet paired_profile(const PointSet& d0, const PointSet& d1, const BlockDesign& design) {
    const std::size_t q = d0.universe();
    if (d1.universe() != q || design.points != 2 * q) throw Error(Errc::LengthMismatch, "paired profile sizes");
    PointSet joint(2 * q);
    for (std::uint32_t i : d0.members()) joint.insert(i);
    for (std::uint32_t i : d1.members()) joint.insert(q + i);
    return intersection_profile(joint, design);
}

// ---------------------------------------------------------------- D_{l,H}

PointSet build_dl_set(const FieldContext& ext, std::uint64_t ell, const std::function<bool(FieldElement)>& in_target) {
    const auto& small = ext.subfield();
    const auto& map = ext.subfield_map();
    const auto q = static_cast<std::uint32_t>(small.order());
    if (ell % (q + 1) == 0) throw Error(Errc::BadEll, "q+1 divides l");
    const FieldElement w_l = ext.omega_pow(static_cast<std::int64_t>(ell));
    PointSet out(q);
    for (std::uint32_t i = 0; i < q; ++i) {
        const FieldElement y = ext.add(ext.one(), ext.mul(w_l, map.to_big(small.element_at(i))));
        if (in_target(y)) out.insert(i);
    }
    return out;
}

PointSet build_dlh(const FieldContext& ext, std::uint64_t ell, std::uint32_t e, std::span<const std::uint32_t> h_set) {
    require_dlh_preconditions(ext, e, ell);
    std::vector<bool> in_h(e, false);
    for (std::uint32_t j : h_set) {
        if (j >= e) throw Error(Errc::BadH, "residue " + std::to_string(j) + " not below e");
        in_h[j] = true;
    }
    return build_dl_set(ext, ell, [&](FieldElement y) { return in_h[y.log % e]; });
}

// ---------------------------------------------------------------- families

const char* to_string(Family f) noexcept {
    switch (f) {
        case Family::E8: return "e8";
        case Family::E4Odd: return "e4-odd";
        case Family::E4Even: return "e4-even";
        case Family::Scheme: return "scheme";
    }
    return "?";
}

std::uint64_t family_q(Family family, std::uint32_t m) {
    const std::uint64_t mm = m;
    switch (family) {
        case Family::E8: return 4 * mm * mm + 4 * mm + 3;
        case Family::E4Odd:
        case Family::E4Even: return 2 * mm * mm + 2 * mm + 1;
        case Family::Scheme: return 2 * mm * mm - 1;
    }
    return 0;
}

std::optional<std::uint32_t> family_m(Family family, std::uint64_t q) {
    for (std::uint32_t m = 1; family_q(family, m) <= q; ++m) {
        if (family_q(family, m) != q) continue;
        if (family == Family::E4Odd && m % 2 == 0) return std::nullopt;
        if (family == Family::E4Even && m % 2 == 1) return std::nullopt;
        if (family == Family::Scheme && m % 2 == 0) return std::nullopt;
        return m;
    }
    return std::nullopt;
}

namespace {

struct FamilySetup {
    Family family;
    std::uint32_t m;
    std::uint64_t q;
    GaussDecomposition dec;
};

FamilySetup setup_family(const FieldContext& ext, Family family) {
    require_odd_characteristic(ext);
    const std::uint64_t q = ext.subfield().order();
    FamilySetup s{family, 0, q, {}};
    if (family == Family::Scheme) throw Error(Errc::BadForm, "scheme parameters need a partition");
    if (family == Family::E8) {
        const auto m = family_m(Family::E8, q);
        if (!m) throw Error(Errc::BadForm, std::to_string(q) + " is not 4m^2+4m+3");
        s.m = *m;
        s.dec = decompose_gauss(ext, GaussFamily::Order8);
    } else {
        const auto m = family_m(Family::E4Odd, q).value_or(family_m(Family::E4Even, q).value_or(0));
        if (m == 0) throw Error(Errc::BadForm, std::to_string(q) + " is not 2m^2+2m+1");
        s.m = m;
        s.family = (m % 2 == 1) ? Family::E4Odd : Family::E4Even;
        s.dec = decompose_gauss(ext, GaussFamily::Order4);
    }
    return s;
}

/// Admissible h values for one l (empty when l fails).
std::vector<std::uint32_t> admissible_h(const FieldContext& ext, const FamilySetup& s, std::uint64_t ell) {
    std::vector<std::uint32_t> out;
    if (ell % (s.q + 1) == 0) return out;
    const auto li = static_cast<std::int64_t>(ell);
    const auto qi = static_cast<std::int64_t>(s.q);
    const FieldElement c = ext.sub(ext.omega_pow(li * qi), ext.omega_pow(li));
    const int ed = s.dec.epsilon * s.dec.delta;
    if (s.family == Family::E8) {
        if (c.log % 8 != mod(4 + 2 * s.dec.delta, 8)) return out;
        for (std::uint32_t hp = 0; hp < 4; ++hp) {
            if (ell % 8 == mod(2 - 5 * ed - 6 * static_cast<std::int64_t>(hp), 8)) out.push_back(hp);
        }
    } else {
        for (std::uint32_t h = 0; h < 4; ++h) {
            if (ell % 4 == (3 + h) % 4 && c.log % 4 == mod(s.dec.delta * (1 + 2 * static_cast<std::int64_t>(h)), 4)) {
                out.push_back(h);
            }
        }
    }
    return out;
}

ParamChoice make_choice(const FamilySetup& s, std::uint64_t ell, std::uint32_t h) {
    ParamChoice c;
    c.family = s.family;
    c.m = s.m;
    c.ell = ell;
    c.h = h;
    c.decomposition = s.dec;
    const int ed = s.dec.epsilon * s.dec.delta;
    if (s.family == Family::E8) {
        c.e = 8;
        const std::uint32_t hh = (2 * h + (ed == 1 ? 0 : 1)) % 8;
        c.h0 = residue_range(hh, 4, 8);
    } else {
        c.e = 4;
        const auto a = residue_range(h, 2, 4);
        const auto b = residue_range(h + 1, 2, 4);
        c.h0 = (ed == 1) ? a : b;
        c.h1 = (ed == 1) ? b : a;
    }
    return c;
}

}  // namespace

std::vector<ParamChoice> admissible_params(const FieldContext& ext, Family family) {
    const auto s = setup_family(ext, family);
    std::vector<ParamChoice> out;
    for (std::uint64_t ell = 1; ell < ext.group_order(); ++ell) {
        for (std::uint32_t h : admissible_h(ext, s, ell)) out.push_back(make_choice(s, ell, h));
    }
    return out;
}

ParamChoice find_params(const FieldContext& ext, Family family) {
    const auto s = setup_family(ext, family);
    for (std::uint64_t ell = 1; ell < ext.group_order(); ++ell) {
        const auto hs = admissible_h(ext, s, ell);
        if (!hs.empty()) return make_choice(s, ell, hs.front());
    }
    throw Error(Errc::NotFound, "no admissible (h, l) for q=" + std::to_string(s.q));
}

bool params_satisfy_conditions(const FieldContext& ext, const ParamChoice& choice) {
    const std::uint64_t q = ext.subfield().order();
    if (choice.ell % (q + 1) == 0 || !choice.decomposition) return false;
    const auto li = static_cast<std::int64_t>(choice.ell);
    const FieldElement c = ext.sub(ext.omega_pow(li * static_cast<std::int64_t>(q)), ext.omega_pow(li));
    const Complex chi_c = root_of_unity(c.log, choice.e);
    const Complex chi_w = root_of_unity(li, choice.e);
    const int eps = choice.decomposition->epsilon;
    const int del = choice.decomposition->delta;
    const auto h = static_cast<std::int64_t>(choice.h);
    if (choice.family == Family::E8) {
        return approx_equal(chi_w, root_of_unity(2 - 5 * eps * del - 6 * h, 8)) &&
               approx_equal(chi_c, -root_of_unity(del, 4));
    }
    return approx_equal(chi_w, root_of_unity(3 + h, 4)) && approx_equal(chi_c, root_of_unity(del * (1 + 2 * h), 4));
}

std::optional<ParamChoice> find_scheme_params(const FieldContext& ext, std::span<const std::uint8_t> labels,
                                              std::uint32_t m, int tau) {
    const std::uint64_t q = ext.subfield().order();
    if (labels.size() != ext.order()) throw Error(Errc::LengthMismatch, "labelling does not cover the field");
    const std::uint64_t e = 4ull * m * m;
    if (ext.group_order() % e != 0) throw Error(Errc::BadE, "4m^2 does not divide q^2-1");
    const std::uint32_t target = mod(tau * static_cast<std::int64_t>(m) * m, static_cast<std::int64_t>(e));
    for (std::uint64_t ell = 1; ell < ext.group_order(); ++ell) {
        if (ell % (q + 1) == 0) continue;
        const auto li = static_cast<std::int64_t>(ell);
        const FieldElement wl = ext.omega_pow(li);
        const std::uint8_t lab = labels[ext.index_of(wl)];
        if (lab != 2 && lab != 4) continue;
        const FieldElement c = ext.sub(ext.omega_pow(li * static_cast<std::int64_t>(q)), wl);
        if (c.log % e != target) continue;
        ParamChoice out;
        out.family = Family::Scheme;
        out.m = m;
        out.ell = ell;
        out.tau = tau;
        out.e = static_cast<std::uint32_t>(e);
        return out;
    }
    return std::nullopt;
}

FamilyPromise family_promise(Family family, std::uint32_t m) {
    const std::uint32_t s = m * m;
    switch (family) {
        case Family::E8: return {2 * s + m + 2, 0, {s + 1, s + 2, s + m + 1, s + m + 2}, {}};
        case Family::E4Odd: return {s, s + m, {s, s + 1, s + m, s + m + 1}, {s - 1, s, s + m - 1, s + m}};
        case Family::E4Even: return {s, s + m + 1, {s, s + 1, s + m + 1, s + m + 2}, {s - 1, s, s + m, s + m + 1}};
        case Family::Scheme: return {s - m, s, {s - m, s}, {s - m, s}};
    }
    return {};
}

// ---------------------------------------------------------------- oracles

SizeFormulaOracle::SizeFormulaOracle(const FieldContext& ext, std::uint32_t e) : ext_(ext), e_(e) {
    require_dlh_preconditions(ext, e, 1);
    gq_ = gauss_sum(ext.subfield(), 2, 1);
    gauss_.resize(e);
    for (std::uint32_t i = 0; i < e; ++i) gauss_[i] = gauss_sum(ext, e, i);
    periods_ = gauss_periods(ext, e);
}

SizeFormulaCheck SizeFormulaOracle::check(std::uint64_t ell, std::span<const std::uint32_t> h_set) const {
    const FieldContext& ext = ext_;
    const std::uint32_t e = e_;
    require_dlh_preconditions(ext, e, ell);
    const auto& small = ext.subfield();
    const auto& map = ext.subfield_map();
    const auto q = static_cast<std::uint32_t>(small.order());
    const double qd = q;

    // H must be a transversal of the residues mod e/2.
    std::vector<bool> in_h(e, false);
    std::vector<int> half_hits(e / 2, 0);
    for (std::uint32_t j : h_set) {
        if (j >= e || in_h[j]) throw Error(Errc::BadH, "H must be distinct residues below e");
        in_h[j] = true;
        ++half_hits[j % (e / 2)];
    }
    for (int c : half_hits) {
        if (c != 1) throw Error(Errc::BadH, "H must cover every residue mod e/2 exactly once");
    }

    const auto li = static_cast<std::int64_t>(ell);
    const auto qi = static_cast<std::int64_t>(q);
    const FieldElement w_l = ext.omega_pow(li);
    const FieldElement w_lq = ext.omega_pow(li * qi);
    const FieldElement c = ext.sub(w_lq, w_l);
    const std::int64_t log_c = c.log;
    const std::int64_t log_m1 = ext.minus_one().log;
    auto chi = [&](std::int64_t power, std::int64_t log_x) { return root_of_unity(power * log_x, e); };

    std::vector<Complex> a(e, 0.0);
    for (std::uint32_t i = 0; i < e; ++i) {
        for (std::uint32_t j = 0; j < e; ++j) {
            if (in_h[j]) a[i] += root_of_unity(-static_cast<std::int64_t>(j) * i, e);
        }
    }
    // psi(b * union of C_j, j in H) for nonzero b.
    auto class_char = [&](FieldElement b) {
        Complex s = 0;
        for (std::uint32_t j = 0; j < e; ++j) {
            if (in_h[j]) s += periods_[(j + b.log) % e];
        }
        return s;
    };

    const PointSet d = build_dl_set(ext, ell, [&](FieldElement y) { return in_h[y.log % e]; });
    SizeFormulaCheck out;
    out.size = static_cast<std::uint32_t>(d.size());
    auto record = [&](Complex value, double exact) {
        const double r = std::abs(value - exact);
        out.worst_residual = std::max(out.worst_residual, r);
        return std::lround(value.real()) == std::lround(exact) && r < 1e-6;
    };

    const Complex chi_m1 = chi(1, log_m1);
    Complex sum33 = 0;
    for (std::uint32_t i = 1; i < e; i += 2) {
        sum33 += a[i] * gauss_[i] * chi(-static_cast<std::int64_t>(i), w_lq.log) * chi(i, log_c);
    }
    const Complex size33 = qd / 2 + chi_m1 * gq_ / (e * qd) * sum33;
    const FieldElement b34 = ext.div(w_lq, c);
    const Complex size34 = qd / 2 + chi_m1 * gq_ / (2 * qd) + chi_m1 * gq_ / qd * class_char(b34);
    out.size_gauss = size33.real();
    out.size_periods = size34.real();
    if (!record(size33, out.size)) ++out.mismatches;
    if (!record(size34, out.size)) ++out.mismatches;

    const FieldElement minus_w_lq = ext.neg(w_lq);
    const FieldElement b36b = ext.div(minus_w_lq, c);
    const bool xi_l = in_h[w_l.log % e];
    for (std::uint32_t is = 0; is < q; ++is) {
        const FieldElement s_small = small.element_at(is);
        // Exact N_s = |D cap (C_0 + s)|.
        std::uint32_t exact = 0;
        for (std::uint32_t x : d.members()) {
            const FieldElement diff = small.sub(small.element_at(x), s_small);
            if (is_square(small, diff)) ++exact;
        }
        const FieldElement s_big = map.to_big(s_small);
        const FieldElement u = ext.add(ext.one(), ext.mul(w_l, s_big));     // 1 + w^l s
        const FieldElement v = ext.add(ext.one(), ext.mul(w_lq, s_big));    // 1 + w^{ql} s
        Complex first = 0, second = 0;
        for (std::uint32_t i = 1; i < e; i += 2) {
            const auto ii = static_cast<std::int64_t>(i);
            first += a[i] * (chi(ii, u.log) + chi(ii, w_l.log));
            second += a[i] * gauss_[i] * chi(ii, log_c) * (chi(-ii, v.log) + chi(-ii, minus_w_lq.log));
        }
        const Complex n35 = (qd - 1) / 4 - first / (2.0 * e) + gq_ / (2.0 * e * qd) * second;
        const bool xi_s = in_h[u.log % e];
        const Complex n36 = (qd - 1) / 4 + (1.0 - xi_s - xi_l) / 2 +
                            gq_ / (2 * qd) * (1.0 + class_char(ext.div(v, c)) + class_char(b36b));
        const bool ok35 = record(n35, exact);
        const bool ok36 = record(n36, exact);
        if (!ok35 || !ok36) ++out.mismatches;
    }
    return out;
}

bool check_size_formulas(const FieldContext& ext, std::uint64_t ell, std::uint32_t e,
                         std::span<const std::uint32_t> h_set) {
    return SizeFormulaOracle(ext, e).check(ell, h_set).holds();
}

}  // namespace hadamax
