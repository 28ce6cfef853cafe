// decomposer.hpp
// Constructive full-separability certificates:
//  * product_decomposition: (I +- sigma_m1 x ... x sigma_mn)/2^n as 2^(n-1)
//    equally weighted pure products, by peeling one qubit at a time:
//      rho^{+-}(M_n) = 1/2 [rho^{+-}(M_{n-1}) x P+(m_n) + rho^{-+}(M_{n-1}) x P-(m_n)]
//  * spin_norm_decomposition: one bracket (I + v sigma-product)/2^n per
//    nonzero spin coefficient, the remainder on I/2^n.
//  * werner_decomposition / mu_decomposition: the same idea restricted to
//    the last spin column, where only even-parity rows are Hermitian.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bases.hpp"
#include "bit_index.hpp"
#include "bloch.hpp"
#include "certificate.hpp"
#include "criteria.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "families.hpp"

namespace qsep {

inline constexpr double certify_tol = 1e-12;

// All n-bit strings of even parity; |Ind| = 2^(n-1).
struct IndSet {
    int n;
    std::vector<BitIndex> members;

    explicit IndSet(int qubits) : n(qubits) {
        if (n < 1 || n > max_qubits) throw ArgumentError("IndSet: qubit count out of range");
        for (std::uint32_t v = 0; v < (1u << n); ++v)
            if ((std::popcount(v) & 1) == 0) members.emplace_back(n, v);
    }
};

namespace detail {

// Sign patterns of rho^{sign}(M_k) over k active qubits, in recursion order.
inline void unwind_signs(int k, double sign, std::vector<std::vector<double>>& out) {
    if (k == 1) {
        out.push_back({sign});
        return;
    }
    std::vector<std::vector<double>> head_plus, head_minus;
    unwind_signs(k - 1, sign, head_plus);
    unwind_signs(k - 1, -sign, head_minus);
    for (auto& h : head_plus) {
        h.push_back(1.0);
        out.push_back(std::move(h));
    }
    for (auto& h : head_minus) {
        h.push_back(-1.0);
        out.push_back(std::move(h));
    }
}

// Expands weight * (I + sign (x)_{r active} sigma_{axis_r})/2^n into product
// terms. Qubits without an axis are identity slots and get the zero vector.
inline void expand_bracket(int n, const std::vector<std::optional<Bloch>>& axes, double sign, double weight,
                           std::vector<ProductTerm>& out) {
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < axes.size(); ++r)
        if (axes[r]) active.push_back(r);
    if (active.empty()) throw ContractError("expand_bracket: no active qubit");
    std::vector<std::vector<double>> patterns;
    unwind_signs(static_cast<int>(active.size()), sign, patterns);
    const double w = weight / std::ldexp(1.0, static_cast<int>(active.size()) - 1);
    for (const auto& pat : patterns) {
        ProductTerm t{w, std::vector<Bloch>(static_cast<std::size_t>(n), zero_bloch)};
        for (std::size_t i = 0; i < active.size(); ++i) t.bloch[active[i]] = scaled(*axes[active[i]], pat[i]);
        out.push_back(std::move(t));
    }
}

// Conjugation by sigma_x on qubit r maps (x, y, z) -> (x, -y, -z).
inline void apply_flips(SeparableDecomposition& dec, const BitIndex& flips) {
    for (auto& t : dec.terms)
        for (int r = 1; r <= dec.n; ++r)
            if (flips.bit(r)) {
                auto& m = t.bloch[static_cast<std::size_t>(r - 1)];
                m[1] = -m[1];
                m[2] = -m[2];
            }
}

inline ProductTerm basis_projector(int n, std::uint32_t value, double weight) {
    ProductTerm t{weight, {}};
    for (int r = 1; r <= n; ++r) t.bloch.push_back(((value >> (n - r)) & 1u) ? Bloch{0.0, 0.0, -1.0} : z_axis);
    return t;
}

inline ProductTerm mixed_term(int n, double weight) {
    return {weight, std::vector<Bloch>(static_cast<std::size_t>(n), zero_bloch)};
}

inline double clamp_boundary_weight(double w, const char* who, double value) {
    if (w < -certify_tol) throw NotCertifiableError(std::string(who) + ": identity weight would be negative", value);
    return w < 0.0 ? 0.0 : w;
}

} // namespace detail

inline SeparableDecomposition product_decomposition(const ProductSpec& spec) {
    spec.validate();
    std::vector<std::optional<Bloch>> axes(spec.vectors.begin(), spec.vectors.end());
    SeparableDecomposition dec{spec.n, {}};
    detail::expand_bracket(spec.n, axes, sign_value(spec.sign), 1.0, dec.terms);
    return dec;
}

// Axis of the real Pauli in slot (j_r, k_r): (0,1) x, (1,0) z, (1,1) y.
inline std::optional<Bloch> spin_slot_axis(int j, int k) {
    if (j == 0 && k == 0) return std::nullopt;
    if (j == 0) return x_axis;
    return k == 0 ? z_axis : y_axis;
}

// rho = (1 - ||rho||_1) I/2^n + sum |s_jk| (I + v_jk (-i)^{j.k} S_jk)/2^n.
// (-i)^{j.k} S_jk is exactly the tensor product of the real Paulis named by
// spin_slot_axis, so v_jk is the sign of the real number i^{j.k} s_jk.
inline SeparableDecomposition spin_norm_decomposition(const DensityMatrix& rho) {
    const int n = rho.qubits();
    const auto spin = spin_from_density(rho);
    const double norm1 = spin_norm1(spin);
    if (norm1 > 1.0 + certify_tol)
        throw NotCertifiableError("spin_norm_decomposition: spin norm " + std::to_string(norm1) + " exceeds 1", norm1);

    SeparableDecomposition dec{n, {}};
    dec.terms.push_back(detail::mixed_term(n, 0.0));
    double used = 0.0;
    const std::size_t d = spin.dim();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            if ((j == 0 && k == 0) || spin(j, k) == cplx{}) continue;
            const double coeff = twisted_spin_coefficient(spin, j, k).real();
            if (coeff == 0.0) continue;
            std::vector<std::optional<Bloch>> axes;
            for (int r = 1; r <= n; ++r)
                axes.push_back(spin_slot_axis(static_cast<int>((j >> (n - r)) & 1u),
                                              static_cast<int>((k >> (n - r)) & 1u)));
            detail::expand_bracket(n, axes, coeff > 0.0 ? 1.0 : -1.0, std::abs(coeff), dec.terms);
            used += std::abs(coeff);
        }
    dec.terms.front().weight = detail::clamp_boundary_weight(1.0 - used, "spin_norm_decomposition", norm1);
    return dec;
}

// W(s, 0) = ((1-s)/2^n - s/2) I + s/2 (|0..0><0..0| + |1..1><1..1|)
//           + s sum_{i in Ind} (I +- S_{i,1..1})/2^n,
// with S_{i,1..1} = (-1)^{|i|/2} (x)_r (sigma_x if i_r = 0 else sigma_y).
// General j follows by sigma_x conjugation on the qubits where j_r = 1.
inline SeparableDecomposition werner_decomposition(const WernerSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const double threshold = werner_threshold(n);
    if (spec.s > threshold + certify_tol)
        throw NotCertifiableError("werner_decomposition: s = " + std::to_string(spec.s) +
                                      " exceeds the full-separability threshold 1/(2^(n-1)+1) = " +
                                      std::to_string(threshold),
                                  spec.s);
    const double s = spec.s;
    SeparableDecomposition dec{n, {}};
    const double identity = 1.0 - s - std::ldexp(s, n - 1);
    dec.terms.push_back(detail::mixed_term(n, detail::clamp_boundary_weight(identity, "werner_decomposition", s)));
    if (s > 0.0) {
        const std::uint32_t ones = (1u << n) - 1u;
        dec.terms.push_back(detail::basis_projector(n, 0, 0.5 * s));
        dec.terms.push_back(detail::basis_projector(n, ones, 0.5 * s));
        for (const auto& i : IndSet(n).members) {
            std::vector<std::optional<Bloch>> axes;
            for (int r = 1; r <= n; ++r) axes.push_back(i.bit(r) ? y_axis : x_axis);
            const double sign = sign_value(spec.sign) * ((i.weight() / 2) % 2 == 0 ? 1.0 : -1.0);
            detail::expand_bracket(n, axes, sign, s, dec.terms);
        }
    }
    detail::apply_flips(dec, spec.j);
    return dec;
}

// mu(s) = (1-s) I/2^n + s rho(u). Each anti-diagonal pair (j, ~j) with
// delta_j = u+_j - u-_j != 0 is the Werner construction conjugated by the
// flips of j; the identity budget is 1 - s - s 2^(n-1) sum_j |delta_j|.
inline SeparableDecomposition mu_decomposition(const MuSpec& spec) {
    spec.validate();
    const auto& u = spec.u;
    const int n = u.n;
    const double s = spec.s;
    const double bound = mu_bound(u);
    if (s > bound + certify_tol)
        throw NotCertifiableError("mu_decomposition: s = " + std::to_string(s) + " exceeds the bound " +
                                      std::to_string(bound),
                                  s);
    double spread = 0.0;
    for (std::size_t j = 0; j < u.pairs(); ++j) spread += std::abs(u.tplus[j] - u.tminus[j]);

    SeparableDecomposition dec{n, {}};
    const double identity = 1.0 - s - s * std::ldexp(spread, n - 1);
    dec.terms.push_back(detail::mixed_term(n, detail::clamp_boundary_weight(identity, "mu_decomposition", s)));
    if (s == 0.0) return dec;

    const std::uint32_t ones = (1u << n) - 1u;
    const IndSet ind(n);
    for (std::size_t jv = 0; jv < u.pairs(); ++jv) {
        const auto j = static_cast<std::uint32_t>(jv);
        const double diag = 0.5 * s * (u.tplus[jv] + u.tminus[jv]);
        if (diag > 0.0) {
            dec.terms.push_back(detail::basis_projector(n, j, diag));
            dec.terms.push_back(detail::basis_projector(n, ones ^ j, diag));
        }
        const double delta = u.tplus[jv] - u.tminus[jv];
        if (delta == 0.0) continue;
        SeparableDecomposition pair{n, {}};
        for (const auto& i : ind.members) {
            std::vector<std::optional<Bloch>> axes;
            for (int r = 1; r <= n; ++r) axes.push_back(i.bit(r) ? y_axis : x_axis);
            const double sign = (delta > 0.0 ? 1.0 : -1.0) * ((i.weight() / 2) % 2 == 0 ? 1.0 : -1.0);
            detail::expand_bracket(n, axes, sign, s * std::abs(delta), pair.terms);
        }
        detail::apply_flips(pair, BitIndex(n, j));
        for (auto& t : pair.terms) dec.terms.push_back(std::move(t));
    }
    return dec;
}

} // namespace qsep
