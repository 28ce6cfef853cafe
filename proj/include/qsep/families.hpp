// families.hpp
// Exact constructors for the structured state families: GHZ projectors,
// generalised Werner states, the X-shaped diagonal family rho(t), its
// constant-diagonal sharpness subfamily, mu(s), and product densities
// (I +- sigma_m1 x ... x sigma_mn) / 2^n.
//
// Index conventions: a "canonical" index j has leading bit 0, so the
// anti-diagonal pairs (j, ~j) are enumerated by j = 0 .. 2^(n-1)-1.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bit_index.hpp"
#include "bloch.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace qsep {

enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

inline constexpr double family_tol = 1e-12;
inline constexpr double family_psd_tol = 1e-10;

namespace detail {

inline std::size_t dim_of(int n) { return std::size_t{1} << n; }

inline void require_canonical(const BitIndex& j, const char* who) {
    if (j.bit(1) != 0)
        throw ArgumentError(std::string(who) + ": index " + j.to_string() + " must have leading bit 0");
}

inline void require_qubits(int n, int lo, const char* who) {
    if (n < lo || n > max_qubits)
        throw ArgumentError(std::string(who) + ": qubit count must be in [" + std::to_string(lo) + ", 16]");
}

} // namespace detail

struct WernerSpec {
    int n;
    double s;
    BitIndex j;
    Sign sign = Sign::plus;

    void validate() const {
        detail::require_qubits(n, 2, "WernerSpec");
        if (j.size() != n) throw ArgumentError("WernerSpec: index length differs from n");
        detail::require_canonical(j, "WernerSpec");
        if (!(s >= 0.0 && s <= 1.0)) throw ArgumentError("WernerSpec: s must be in [0, 1]");
    }
};

// t^+_j, t^-_j for canonical j (vectors of length 2^(n-1)).
struct DiagonalFamilySpec {
    int n;
    std::vector<double> tplus;
    std::vector<double> tminus;

    std::size_t pairs() const { return detail::dim_of(n) / 2; }

    void validate() const {
        detail::require_qubits(n, 2, "DiagonalFamilySpec");
        if (tplus.size() != pairs() || tminus.size() != pairs())
            throw ArgumentError("DiagonalFamilySpec: expected " + std::to_string(pairs()) +
                                " weights for each sign");
        double total = 0.0;
        for (std::size_t j = 0; j < pairs(); ++j) {
            if (!(tplus[j] >= 0.0) || !(tminus[j] >= 0.0))
                throw ArgumentError("DiagonalFamilySpec: weights must be nonnegative");
            total += tplus[j] + tminus[j];
        }
        if (std::abs(total - 1.0) > family_tol)
            throw ArgumentError("DiagonalFamilySpec: weights sum to " + std::to_string(total) + ", expected 1");
    }

    // t^+(j) = t^-(j) for every j != 0: fixed points of depolarization.
    bool depolarization_invariant() const {
        for (std::size_t j = 1; j < pairs(); ++j)
            if (tplus[j] != tminus[j]) return false;
        return true;
    }
};

struct SharpnessSpec {
    int n;
    double c;
    double d;

    void validate() const {
        detail::require_qubits(n, 3, "SharpnessSpec");
        const double lim = 1.0 / static_cast<double>(detail::dim_of(n));
        if (!(std::abs(c) <= lim) || !(std::abs(d) <= lim))
            throw ArgumentError("SharpnessSpec: c and d must lie in [-1/2^n, 1/2^n] = [" + std::to_string(-lim) +
                                ", " + std::to_string(lim) + "]");
    }

    std::size_t unit_band() const { return detail::dim_of(n) / 4; }  // anti-diagonal pairs carrying 1/2^n
    std::size_t c_band() const { return detail::dim_of(n) / 8; }
};

struct MuSpec {
    double s;
    DiagonalFamilySpec u;

    void validate() const {
        u.validate();
        if (!(s >= 0.0 && s <= 1.0)) throw ArgumentError("MuSpec: s must be in [0, 1]");
    }
};

struct ProductSpec {
    int n;
    std::vector<Bloch> vectors;
    Sign sign = Sign::plus;

    void validate() const {
        detail::require_qubits(n, 1, "ProductSpec");
        if (vectors.size() != static_cast<std::size_t>(n))
            throw ArgumentError("ProductSpec: expected one unit vector per qubit");
        for (const auto& m : vectors)
            if (std::abs(norm(m) - 1.0) > family_tol) throw ArgumentError("ProductSpec: vectors must have unit length");
    }
};

// rho^{+-}(j) = |Psi^{+-}(j)><Psi^{+-}(j)|, |Psi^{+-}(j)> = (|j> +- |~j>)/sqrt(2)
inline DensityMatrix ghz_projector(const BitIndex& j, Sign sign) {
    detail::require_canonical(j, "ghz_projector");
    const std::size_t d = detail::dim_of(j.size());
    const std::size_t a = j.value();
    const std::size_t b = j.complement().value();
    ComplexMatrix m(d);
    m(a, a) = 0.5;
    m(b, b) = 0.5;
    m(a, b) = 0.5 * sign_value(sign);
    m(b, a) = 0.5 * sign_value(sign);
    return DensityMatrix(std::move(m), family_psd_tol);
}

// W = (1-s)/2^n I + s rho^{+-}(j). Built for j = 0 and carried to general j
// by conjugation with the local flips X^{j_1} x ... x X^{j_n}, which is the
// index permutation r -> r ^ j.
inline DensityMatrix werner(const WernerSpec& spec) {
    spec.validate();
    const std::size_t d = detail::dim_of(spec.n);
    const std::size_t last = d - 1;
    ComplexMatrix base(d);
    const double mixed = (1.0 - spec.s) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) base(i, i) = mixed;
    base(0, 0) = mixed + 0.5 * spec.s;
    base(last, last) = mixed + 0.5 * spec.s;
    base(0, last) = 0.5 * spec.s * sign_value(spec.sign);
    base(last, 0) = base(0, last);

    const std::size_t flip = spec.j.value();
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = base(r ^ flip, c ^ flip);
    return DensityMatrix(std::move(m), family_psd_tol);
}

inline double werner_threshold(int n) {
    if (n < 2 || n > max_qubits) throw ArgumentError("werner_threshold: n must be in [2, 16]");
    return 1.0 / (std::ldexp(1.0, n - 1) + 1.0);
}

// Encoding of W^{+-}(s, j) inside the diagonal family: the maximally mixed
// part spreads (1-s)/2^n over every t^{+-}_u, and s lands on t^{+-}_j.
inline DiagonalFamilySpec werner_as_diagonal_family(const WernerSpec& spec) {
    spec.validate();
    DiagonalFamilySpec t{spec.n, {}, {}};
    const double mixed = (1.0 - spec.s) / static_cast<double>(detail::dim_of(spec.n));
    t.tplus.assign(t.pairs(), mixed);
    t.tminus.assign(t.pairs(), mixed);
    (spec.sign == Sign::plus ? t.tplus : t.tminus)[spec.j.value()] += spec.s;
    return t;
}

namespace detail {

inline ComplexMatrix x_shaped(int n, const std::vector<double>& diag_half, const std::vector<double>& anti_half) {
    const std::size_t d = dim_of(n);
    ComplexMatrix m(d);
    for (std::size_t j = 0; j < d / 2; ++j) {
        const std::size_t jb = (d - 1) ^ j;
        m(j, j) = diag_half[j];
        m(jb, jb) = diag_half[j];
        m(j, jb) = anti_half[j];
        m(jb, j) = anti_half[j];
    }
    return m;
}

} // namespace detail

// rho(t) = sum_j t^+_j rho^+(j) + t^-_j rho^-(j): diagonal (t^+ + t^-)/2 at j
// and ~j, anti-diagonal (t^+ - t^-)/2 at (j, ~j).
inline DensityMatrix diagonal_family(const DiagonalFamilySpec& spec) {
    spec.validate();
    std::vector<double> diag(spec.pairs()), anti(spec.pairs());
    for (std::size_t j = 0; j < spec.pairs(); ++j) {
        diag[j] = 0.5 * (spec.tplus[j] + spec.tminus[j]);
        anti[j] = 0.5 * (spec.tplus[j] - spec.tminus[j]);
    }
    return DensityMatrix(detail::x_shaped(spec.n, diag, anti), family_psd_tol);
}

// The t-weights of a sharpness state: t^+ = 1/2^(n-1), t^- = 0 on the first
// 2^(n-2) pairs, 1/2^n +- c on the next 2^(n-3), 1/2^n +- d on the rest.
inline DiagonalFamilySpec sharpness_as_diagonal_family(const SharpnessSpec& spec) {
    spec.validate();
    const double unit = 1.0 / static_cast<double>(detail::dim_of(spec.n));
    DiagonalFamilySpec t{spec.n, {}, {}};
    for (std::size_t j = 0; j < t.pairs(); ++j) {
        if (j < spec.unit_band()) {
            t.tplus.push_back(2.0 * unit);
            t.tminus.push_back(0.0);
        } else {
            const double x = j < spec.unit_band() + spec.c_band() ? spec.c : spec.d;
            t.tplus.push_back(unit + x);
            t.tminus.push_back(unit - x);
        }
    }
    return t;
}

// Constant diagonal 1/2^n; anti-diagonal 1/2^n, c, d by band.
inline DensityMatrix sharpness_state(const SharpnessSpec& spec) {
    spec.validate();
    const std::size_t pairs = detail::dim_of(spec.n) / 2;
    const double unit = 1.0 / static_cast<double>(detail::dim_of(spec.n));
    std::vector<double> diag(pairs, unit), anti(pairs);
    for (std::size_t j = 0; j < pairs; ++j) {
        if (j < spec.unit_band()) anti[j] = unit;
        else if (j < spec.unit_band() + spec.c_band()) anti[j] = spec.c;
        else anti[j] = spec.d;
    }
    return DensityMatrix(detail::x_shaped(spec.n, diag, anti), family_psd_tol);
}

// mu(s) = (1-s) I/2^n + s rho(u)
inline DensityMatrix mu_state(const MuSpec& spec) {
    spec.validate();
    const auto& u = spec.u;
    const double mixed = (1.0 - spec.s) / static_cast<double>(detail::dim_of(u.n));
    std::vector<double> diag(u.pairs()), anti(u.pairs());
    for (std::size_t j = 0; j < u.pairs(); ++j) {
        diag[j] = mixed + spec.s * 0.5 * (u.tplus[j] + u.tminus[j]);
        anti[j] = spec.s * 0.5 * (u.tplus[j] - u.tminus[j]);
    }
    return DensityMatrix(detail::x_shaped(u.n, diag, anti), family_psd_tol);
}

// rho^{+-}(M_n) = (I +- sigma_m1 x ... x sigma_mn) / 2^n
inline DensityMatrix product_density(const ProductSpec& spec) {
    spec.validate();
    ComplexMatrix corr = sigma_dot(spec.vectors[0]);
    for (int r = 1; r < spec.n; ++r) corr = kron(corr, sigma_dot(spec.vectors[static_cast<std::size_t>(r)]));
    const std::size_t d = detail::dim_of(spec.n);
    const double scale = 1.0 / static_cast<double>(d);
    ComplexMatrix m = corr * cplx(sign_value(spec.sign) * scale);
    for (std::size_t i = 0; i < d; ++i) m(i, i) += scale;
    return DensityMatrix(std::move(m), family_psd_tol);
}

} // namespace qsep
