// criteria.hpp
// Separability tests: the partial-transpose test, the Cauchy-Schwarz
// necessary conditions in the computational basis, the spin-norm sufficient
// condition and its corollaries, the mu(s) bound, and the exact decision for
// the constant-diagonal sharpness family.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bases.hpp"
#include "bit_index.hpp"
#include "certificate.hpp"
#include "density.hpp"
#include "families.hpp"

namespace qsep {

inline constexpr double peres_tol = 1e-10;
inline constexpr double necessary_tol = 1e-12;  // times the largest |entry|
inline constexpr double sufficient_tol = 1e-12;
inline constexpr double sharpness_tol = 1e-12;

// margin >= 0 means the condition holds; its magnitude is the slack.
struct CriterionResult {
    bool pass = false;
    double margin = 0.0;
    std::string witness;
};

inline CriterionResult make_result(double margin, double tol, std::string witness = {}) {
    return {margin >= -tol, margin, std::move(witness)};
}

inline CriterionResult peres_test(const DensityMatrix& rho, const QubitSubset& subset, double tol = peres_tol) {
    const auto eig = hermitian_eigenvalues(partial_transpose(rho, subset));
    return make_result(eig.front(), tol, "subset " + subset_label(subset));
}

// For every pair j != k split as j = j1 j2, k = k1 k2 at `cut`:
//   sqrt(rho_jj rho_kk) >= |<j1 k2|rho|k1 j2>|   and   >= |rho_jk|.
// The other two orderings are complex conjugates of these.
inline CriterionResult cauchy_schwarz_bipartite(const DensityMatrix& rho, int cut) {
    const int n = rho.qubits();
    if (cut < 1 || cut >= n) throw ArgumentError("cauchy_schwarz_bipartite: cut must be in [1, n)");
    const std::uint32_t d = static_cast<std::uint32_t>(rho.dim());
    const std::uint32_t tail = (1u << (n - cut)) - 1u;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t bj = 0, bk = 0;
    for (std::uint32_t j = 0; j < d; ++j)
        for (std::uint32_t k = 0; k < d; ++k) {
            if (j == k) continue;
            const double lhs = std::sqrt(std::max(0.0, rho(j, j).real()) * std::max(0.0, rho(k, k).real()));
            const std::uint32_t row = (j & ~tail) | (k & tail);
            const std::uint32_t col = (k & ~tail) | (j & tail);
            const double rhs = std::max(std::abs(rho(row, col)), std::abs(rho(j, k)));
            const double m = lhs - rhs;
            if (m < best) {
                best = m;
                bj = j;
                bk = k;
            }
        }
    return make_result(best, necessary_tol * rho.matrix().max_abs(),
                       "cut " + std::to_string(cut) + " j=" + BitIndex(n, bj).to_string() +
                           " k=" + BitIndex(n, bk).to_string());
}

// min_j sqrt(rho_jj rho_~j~j) >= max_u |rho_{u,~u}|, necessary for full separability.
inline CriterionResult antidiagonal_necessary(const DensityMatrix& rho) {
    const int n = rho.qubits();
    const std::uint32_t d = static_cast<std::uint32_t>(rho.dim());
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::uint32_t jmin = 0, umax = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
        const std::uint32_t jb = (d - 1) ^ j;
        const double v = std::sqrt(std::max(0.0, rho(j, j).real()) * std::max(0.0, rho(jb, jb).real()));
        if (v < lo) {
            lo = v;
            jmin = j;
        }
        const double a = std::abs(rho(j, jb));
        if (a > hi) {
            hi = a;
            umax = j;
        }
    }
    return make_result(lo - hi, necessary_tol * rho.matrix().max_abs(),
                       "j=" + BitIndex(n, jmin).to_string() + " u=" + BitIndex(n, umax).to_string());
}

// min_j (t+_j + t-_j) >= max_u |t+_u - t-_u|; exactly twice the antidiagonal margin
// of diagonal_family(spec).
inline CriterionResult diagonal_family_necessary(const DiagonalFamilySpec& spec) {
    spec.validate();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::size_t jmin = 0, umax = 0;
    for (std::size_t j = 0; j < spec.pairs(); ++j) {
        const double sum = spec.tplus[j] + spec.tminus[j];
        const double diff = std::abs(spec.tplus[j] - spec.tminus[j]);
        if (sum < lo) {
            lo = sum;
            jmin = j;
        }
        if (diff > hi) {
            hi = diff;
            umax = j;
        }
    }
    const int n = spec.n;
    return make_result(lo - hi, necessary_tol,
                       "j=" + BitIndex(n, static_cast<std::uint32_t>(jmin)).to_string() +
                           " u=" + BitIndex(n, static_cast<std::uint32_t>(umax)).to_string());
}

// ||rho||_1 <= 1 implies full separability. Failure is inconclusive.
inline CriterionResult spin_norm_sufficient(const CoefficientTable& spin) {
    const double norm1 = spin_norm1(spin);
    return make_result(1.0 - norm1, sufficient_tol);
}

inline CriterionResult spin_norm_sufficient(const DensityMatrix& rho) {
    return spin_norm_sufficient(spin_from_density(rho));
}

inline double random_neighborhood_bound(int n) { return 1.0 / (std::ldexp(1.0, 2 * n) - 1.0); }

// Every |s_jk| <= 1/(4^n - 1) (off the identity slot) implies full separability.
inline CriterionResult random_neighborhood_check(const CoefficientTable& spin) {
    if (spin.basis() != BasisKind::spin) throw ContractError("random_neighborhood_check: expected a spin table");
    const int n = spin.qubits();
    const std::size_t d = spin.dim();
    double worst = 0.0;
    std::size_t wj = 0, wk = 0;
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            if (j == 0 && k == 0) continue;
            const double a = std::abs(spin(j, k));
            if (a > worst) {
                worst = a;
                wj = j;
                wk = k;
            }
        }
    const double bound = random_neighborhood_bound(n);
    return make_result(bound - worst, sufficient_tol * bound,
                       "j=" + BitIndex(n, static_cast<std::uint32_t>(wj)).to_string() +
                           " k=" + BitIndex(n, static_cast<std::uint32_t>(wk)).to_string());
}

inline CriterionResult random_neighborhood_check(const DensityMatrix& rho) {
    return random_neighborhood_check(spin_from_density(rho));
}

// (1 + 2^(n-1) sum_j |u+_j - u-_j|)^-1
inline double mu_bound(const DiagonalFamilySpec& u) {
    u.validate();
    double spread = 0.0;
    for (std::size_t j = 0; j < u.pairs(); ++j) spread += std::abs(u.tplus[j] - u.tminus[j]);
    return 1.0 / (1.0 + std::ldexp(spread, u.n - 1));
}

inline CriterionResult mu_sufficient(const MuSpec& spec) {
    spec.validate();
    return make_result(mu_bound(spec.u) - spec.s, sufficient_tol);
}

// Planar product decompositions of constant-diagonal states: every Bloch
// vector lies in the x-y plane at angle theta(a, r) from the x axis.
struct PlanarAngleProfile {
    int n = 0;
    std::vector<double> weights;              // p(a)
    std::vector<std::vector<double>> angles;  // angles[a][r], r = 0..n-1

    SeparableDecomposition to_decomposition() const {
        SeparableDecomposition dec{n, {}};
        for (std::size_t a = 0; a < weights.size(); ++a) {
            ProductTerm t{weights[a], {}};
            for (double th : angles[a]) t.bloch.push_back({std::cos(th), std::sin(th), 0.0});
            dec.terms.push_back(std::move(t));
        }
        return dec;
    }

    // rho(j, ~j) = 2^-n sum_a p(a) exp(-i sum_r (-1)^{j_r} theta(a, r)).
    // (The sign of the exponent follows <0|rho_r|1> = e^{-i theta}/2.)
    cplx antidiagonal(const BitIndex& j) const {
        cplx acc = 0.0;
        for (std::size_t a = 0; a < weights.size(); ++a) {
            double phase = 0.0;
            for (int r = 1; r <= n; ++r)
                phase += (j.bit(r) ? -1.0 : 1.0) * angles[a][static_cast<std::size_t>(r - 1)];
            acc += weights[a] * std::polar(1.0, -phase);
        }
        return acc / std::ldexp(1.0, n);
    }

    // Real part: 2^-n sum_a p(a) cos(sum_r (-1)^{j_r} theta(a, r)).
    double antidiagonal_cos(const BitIndex& j) const { return antidiagonal(j).real(); }
};

// Explanatory derivation of why c = d is forced, written out for n qubits.
inline std::vector<std::string> sharpness_angle_trace(const SharpnessSpec& spec) {
    const int n = spec.n;
    std::vector<std::string> lines;
    const std::string unit = "1/" + std::to_string(1u << n);
    lines.push_back("a planar decomposition has rho(j,~j) = 2^-n sum_a p(a) cos(sum_r (-1)^{j_r} theta(a,r))");
    lines.push_back("pairs with prefix 00 carry rho(j,~j) = " + unit +
                    ", the maximum, so every term a has sum_r (-1)^{j_r} theta(a,r) = 0 mod 2pi");
    if (n == 3) {
        lines.push_back("j=000: theta1+theta2+theta3 = 0, j=001: theta1+theta2-theta3 = 0 (mod 2pi)");
        lines.push_back("=> 2 theta3 = 0, i.e. theta3 in {0, pi}, and theta2 = -theta1 - theta3");
        lines.push_back("=> rho(010,101) = rho(011,100) = 1/8 sum_a p(a) cos(theta1 - theta2 + theta3)");
    } else {
        lines.push_back("differences across bit r >= 3 give 2 theta(a,r) = 0, so theta(a,r) in {0, pi} for r >= 3");
        lines.push_back("=> (-1)^{j_r} theta(a,r) = theta(a,r) mod 2pi for r >= 3, so every pair with prefix 01 has "
                        "the same anti-diagonal entry");
    }
    lines.push_back("=> the c band and the d band must coincide: fully separable requires c = d");
    return lines;
}

struct SharpnessDecision {
    CriterionResult result;  // pass <=> fully separable
    double spin_norm = 0.0;
    bool peres_all_pass = false;
    std::vector<std::string> angle_trace;
};

// Fully separable iff c = d. Peres holds on every cut regardless.
inline SharpnessDecision sharpness_decision(const SharpnessSpec& spec) {
    spec.validate();
    const auto rho = sharpness_state(spec);
    SharpnessDecision out;
    out.result = make_result(-std::abs(spec.c - spec.d), sharpness_tol);
    out.spin_norm = spin_norm1(rho);
    out.peres_all_pass = true;
    for (const auto& subset : all_proper_subsets(spec.n))
        out.peres_all_pass = out.peres_all_pass && peres_test(rho, subset).pass;
    out.angle_trace = sharpness_angle_trace(spec);
    return out;
}

// Closed form of the sharpness-family spin norm: 1 + 2^(n-1) |c - d|.
inline double sharpness_spin_norm(const SharpnessSpec& spec) {
    return 1.0 + std::ldexp(std::abs(spec.c - spec.d), spec.n - 1);
}

} // namespace qsep
