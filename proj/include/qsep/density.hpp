// density.hpp
// Validated n-qubit density matrices and the partial transpose.

#pragma once

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace qsep {

inline constexpr double default_psd_tol = 1e-9;
inline constexpr double trace_tol = 1e-12;
inline constexpr double reconstruction_hermitian_tol = 1e-12;

namespace detail {

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace detail

inline int qubits_for_dim(std::size_t dim) {
    if (dim < 2 || !std::has_single_bit(dim))
        throw ValidationError(Invariant::dimension, "dimension " + std::to_string(dim) + " is not 2^n with n >= 1");
    const int n = std::countr_zero(dim);
    if (n > 16) throw ValidationError(Invariant::dimension, "more than 16 qubits");
    return n;
}

// Hermitian, unit-trace, positive-semidefinite 2^n x 2^n matrix.
// Immutable once constructed.
class DensityMatrix {
public:
    // Rejects anything that is not exactly Hermitian; nothing is repaired.
    explicit DensityMatrix(ComplexMatrix mat, double psd_tol = default_psd_tol)
        : n_(qubits_for_dim(mat.dim())), mat_(std::move(mat)), psd_tol_(psd_tol) {
        check_exact_hermitian();
        validate_trace_and_spectrum();
    }

    // For matrices reassembled from floating-point sums (basis expansions,
    // certificates). Deviations up to `herm_tol` (relative to the largest
    // entry) are rounding; the upper triangle is kept and mirrored.
    static DensityMatrix from_reconstruction(ComplexMatrix mat, double herm_tol = reconstruction_hermitian_tol,
                                             double psd_tol = default_psd_tol) {
        const std::size_t d = mat.dim();
        const double scale = std::max(mat.max_abs(), 1.0);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r; c < d; ++c)
                if (std::abs(mat(r, c) - std::conj(mat(c, r))) > herm_tol * scale)
                    throw ValidationError(Invariant::hermitian,
                                          "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                              ") differs from the conjugate of its transpose partner",
                                          r, c);
        for (std::size_t r = 0; r < d; ++r) {
            mat(r, r) = mat(r, r).real();
            for (std::size_t c = r + 1; c < d; ++c) mat(c, r) = std::conj(mat(r, c));
        }
        return DensityMatrix(std::move(mat), psd_tol);
    }

    int qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return mat_; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }
    double psd_tolerance() const noexcept { return psd_tol_; }
    double min_eigenvalue() const noexcept { return min_eig_; }

    static DensityMatrix maximally_mixed(int n) {
        const std::size_t d = std::size_t{1} << n;
        return DensityMatrix(ComplexMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)));
    }

private:
    void check_exact_hermitian() const {
        const std::size_t d = mat_.dim();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r; c < d; ++c)
                if (mat_(r, c) != std::conj(mat_(c, r)))
                    throw ValidationError(Invariant::hermitian,
                                          "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                              ") is not the conjugate of entry (" + std::to_string(c) + "," +
                                              std::to_string(r) + ")",
                                          r, c);
    }

    void validate_trace_and_spectrum() {
        const double tr = mat_.trace().real();
        if (std::abs(tr - 1.0) > trace_tol)
            throw ValidationError(Invariant::trace, "trace is " + detail::num(tr) + ", expected 1");
        min_eig_ = hermitian_eigenvalues(mat_).front();
        if (min_eig_ < -psd_tol_)
            throw ValidationError(Invariant::psd, "smallest eigenvalue " + detail::num(min_eig_) +
                                                      " is below -" + detail::num(psd_tol_));
    }

    int n_;
    ComplexMatrix mat_;
    double psd_tol_;
    double min_eig_ = 0.0;
};

// Qubit subsets are 1-based positions; qubit 1 is the most significant bit.
using QubitSubset = std::set<int>;

inline std::uint32_t subset_mask(int n, const QubitSubset& subset) {
    std::uint32_t mask = 0;
    for (int q : subset) {
        if (q < 1 || q > n) throw ArgumentError("qubit position " + std::to_string(q) + " outside [1, n]");
        mask |= 1u << (n - q);
    }
    return mask;
}

inline std::string subset_label(const QubitSubset& subset) {
    std::string s = "{";
    for (int q : subset) {
        if (s.size() > 1) s += ",";
        s += std::to_string(q);
    }
    return s + "}";
}

// Every proper nonempty subset, ordered by mask value read with qubit 1 as
// the lowest bit so that {1}, {2}, {1,2}, {3}, ... come out naturally.
inline std::vector<QubitSubset> all_proper_subsets(int n) {
    std::vector<QubitSubset> out;
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t m = 1; m < full; ++m) {
        QubitSubset s;
        for (int q = 1; q <= n; ++q)
            if (m & (1u << (q - 1))) s.insert(q);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<QubitSubset> single_qubit_subsets(int n) {
    std::vector<QubitSubset> out;
    for (int q = 1; q <= n; ++q) out.push_back({q});
    return out;
}

// Output (r, c) = input (r', c') where r', c' exchange the subset bits of r and c.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int n, const QubitSubset& subset) {
    if (m.dim() != (std::size_t{1} << n)) throw ArgumentError("partial_transpose: dimension is not 2^n");
    if (subset.empty() || subset.size() >= static_cast<std::size_t>(n))
        throw ArgumentError("partial_transpose: subset must be nonempty and proper");
    const std::uint32_t mask = subset_mask(n, subset);
    const std::size_t d = m.dim();
    ComplexMatrix out(d);
    for (std::uint32_t r = 0; r < d; ++r)
        for (std::uint32_t c = 0; c < d; ++c) {
            const std::uint32_t rp = (r & ~mask) | (c & mask);
            const std::uint32_t cp = (c & ~mask) | (r & mask);
            out(r, c) = m(rp, cp);
        }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const QubitSubset& subset) {
    return partial_transpose(rho.matrix(), rho.qubits(), subset);
}

} // namespace qsep
