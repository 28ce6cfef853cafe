// bases.hpp
// Adjusted basis A_{j,k} = |j><j^k| and spin basis S_{j,k} = sigma_{j,j^k},
// and the Walsh-Hadamard transform between their coefficient tables.
//
// Single-qubit spin elements, indexed (j,k):
//   S_{0,0} = I   S_{0,1} = sigma_x
//   S_{1,0} = sigma_z   S_{1,1} = i sigma_y = [[0,1],[-1,0]]
// All four are real matrices, and S = H A entrywise in the (j,k) array with
// H the 2x2 Hadamard matrix. Tensor powers follow: [s] = H^[n] [a].

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bit_index.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace qsep {

enum class BasisKind { adjusted, spin };

inline const char* to_string(BasisKind k) { return k == BasisKind::adjusted ? "adjusted" : "spin"; }

// 2^n x 2^n table of operator-basis coefficients, indexed (j, k).
class CoefficientTable {
public:
    CoefficientTable(int n, BasisKind basis)
        : n_(n), basis_(basis), dim_(std::size_t{1} << n), values_(dim_ * dim_) {
        if (n < 1 || n > max_qubits) throw ArgumentError("CoefficientTable: qubit count out of range");
    }

    CoefficientTable(int n, BasisKind basis, std::vector<cplx> values) : CoefficientTable(n, basis) {
        if (values.size() != values_.size()) throw ArgumentError("CoefficientTable: wrong number of values");
        values_ = std::move(values);
    }

    int qubits() const noexcept { return n_; }
    BasisKind basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t j, std::size_t k) { return values_[j * dim_ + k]; }
    const cplx& operator()(std::size_t j, std::size_t k) const { return values_[j * dim_ + k]; }

    const cplx& at(const BitIndex& j, const BitIndex& k) const {
        if (j.size() != n_ || k.size() != n_) throw ArgumentError("CoefficientTable: index length mismatch");
        return (*this)(j.value(), k.value());
    }

    std::span<const cplx> values() const noexcept { return values_; }
    std::span<cplx> values() noexcept { return values_; }

private:
    int n_;
    BasisKind basis_;
    std::size_t dim_;
    std::vector<cplx> values_;
};

struct BasisElement {
    int n;
    BasisKind kind;
    BitIndex j;
    BitIndex k;
    ComplexMatrix matrix;
};

namespace detail {

inline ComplexMatrix single_qubit_element(BasisKind kind, int j, int k) {
    if (kind == BasisKind::adjusted) {
        ComplexMatrix e(2);
        e(static_cast<std::size_t>(j), static_cast<std::size_t>(j ^ k)) = 1.0;
        return e;
    }
    switch ((j << 1) | k) {
        case 0b00: return pauli::I();
        case 0b01: return pauli::X();
        case 0b10: return pauli::Z();
        default: return {{0.0, 1.0}, {-1.0, 0.0}};
    }
}

// In-place unnormalised Walsh-Hadamard transform along the row index of a
// dim x dim row-major table: column k becomes H^[n] applied to column k.
// Rows are processed pairwise so every column sees the same butterfly order
// as a column-at-a-time transform would.
inline void fwht_rows(std::span<cplx> values, std::size_t dim) {
    for (std::size_t h = 1; h < dim; h <<= 1)
        for (std::size_t base = 0; base < dim; base += 2 * h)
            for (std::size_t r = base; r < base + h; ++r) {
                cplx* top = values.data() + r * dim;
                cplx* bot = values.data() + (r + h) * dim;
                for (std::size_t k = 0; k < dim; ++k) {
                    const cplx x = top[k];
                    const cplx y = bot[k];
                    top[k] = x + y;
                    bot[k] = x - y;
                }
            }
}

// i^p for integer p >= 0.
inline cplx i_power(int p) {
    switch (p & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace detail

inline BasisElement basis_element(BasisKind kind, const BitIndex& j, const BitIndex& k) {
    if (j.size() != k.size()) throw ArgumentError("basis_element: j and k differ in length");
    const int n = j.size();
    ComplexMatrix m = detail::single_qubit_element(kind, j.bit(1), k.bit(1));
    for (int q = 2; q <= n; ++q) m = kron(m, detail::single_qubit_element(kind, j.bit(q), k.bit(q)));
    return {n, kind, j, k, std::move(m)};
}

// a_{j,k} = tr(A_{j,k}^dagger rho) = rho(j, j^k)
inline CoefficientTable adjusted_from_density(const DensityMatrix& rho) {
    const int n = rho.qubits();
    CoefficientTable t(n, BasisKind::adjusted);
    const std::size_t d = t.dim();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) t(j, k) = rho(j, j ^ k);
    return t;
}

inline CoefficientTable spin_from_adjusted(const CoefficientTable& adjusted) {
    if (adjusted.basis() != BasisKind::adjusted)
        throw ContractError("spin_from_adjusted: table is not in the adjusted basis");
    std::vector<cplx> v(adjusted.values().begin(), adjusted.values().end());
    detail::fwht_rows(v, adjusted.dim());
    return CoefficientTable(adjusted.qubits(), BasisKind::spin, std::move(v));
}

// H^[n] H^[n] = 2^n I, so the inverse is the same butterfly scaled by 2^-n.
inline CoefficientTable adjusted_from_spin(const CoefficientTable& spin) {
    if (spin.basis() != BasisKind::spin) throw ContractError("adjusted_from_spin: table is not in the spin basis");
    std::vector<cplx> v(spin.values().begin(), spin.values().end());
    detail::fwht_rows(v, spin.dim());
    const double scale = 1.0 / static_cast<double>(spin.dim());
    for (auto& z : v) z *= scale;
    return CoefficientTable(spin.qubits(), BasisKind::adjusted, std::move(v));
}

inline CoefficientTable spin_from_density(const DensityMatrix& rho) {
    return spin_from_adjusted(adjusted_from_density(rho));
}

// Undoes the re-indexing of adjusted_from_density without validation.
inline ComplexMatrix matrix_from_adjusted(const CoefficientTable& adjusted) {
    if (adjusted.basis() != BasisKind::adjusted)
        throw ContractError("matrix_from_adjusted: table is not in the adjusted basis");
    const std::size_t d = adjusted.dim();
    ComplexMatrix m(d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) m(j, j ^ k) = adjusted(j, k);
    return m;
}

// rho = 2^-n sum_{j,k} s_{j,k} S_{j,k}; throws ValidationError if the result
// is not a density matrix.
inline DensityMatrix density_from_spin(const CoefficientTable& spin, double psd_tol = default_psd_tol) {
    if (spin.basis() != BasisKind::spin) throw ContractError("density_from_spin: table is not in the spin basis");
    return DensityMatrix::from_reconstruction(matrix_from_adjusted(adjusted_from_spin(spin)),
                                              reconstruction_hermitian_tol, psd_tol);
}

// i^{j.k} s_{j,k}: real for Hermitian operators. This is the coefficient of
// the Hermitian product of real Paulis (-i)^{j.k} S_{j,k}.
inline cplx twisted_spin_coefficient(const CoefficientTable& spin, std::size_t j, std::size_t k) {
    const int jk = std::popcount(static_cast<std::uint32_t>(j & k));
    return detail::i_power(jk) * spin(j, k);
}

inline double spin_norm1(const CoefficientTable& spin) {
    if (spin.basis() != BasisKind::spin) throw ContractError("spin_norm1: table is not in the spin basis");
    double total = 0.0;
    const auto v = spin.values();
    for (std::size_t i = 1; i < v.size(); ++i) total += std::abs(v[i]);
    return total;
}

inline double spin_norm1(const DensityMatrix& rho) { return spin_norm1(spin_from_density(rho)); }

} // namespace qsep
