// matrix.hpp
// Dense row-major complex matrices: Kronecker products, trace inner product
// and a cyclic Jacobi eigensolver for Hermitian matrices.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qsep {

using cplx = std::complex<double>;

inline constexpr std::size_t max_dim = std::size_t{1} << 16;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(checked_count(dim)) {}

    ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), data_(std::move(entries)) {
        if (data_.size() != checked_count(dim))
            throw ArgumentError("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(data_.size()));
    }

    // Row-by-row literal, mostly for tests.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto& row : rows) {
            if (row.size() != dim_) throw ArgumentError("ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    std::span<const cplx> entries() const noexcept { return data_; }
    std::span<cplx> entries() noexcept { return data_; }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    // Largest |A(r,c) - conj(A(c,r))|. Zero means exactly Hermitian.
    double hermitian_defect() const {
        double d = 0.0;
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = r; c < dim_; ++c)
                d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return d;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx a) {
        for (auto& z : data_) z *= a;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    static std::size_t checked_count(std::size_t dim) {
        if (dim == 0 || dim > max_dim) throw SizeError("ComplexMatrix: dimension must be in [1, 2^16]");
        return dim * dim;
    }

    void same_dim(const ComplexMatrix& o) const {
        if (o.dim_ != dim_) throw ArgumentError("ComplexMatrix: dimension mismatch");
    }

    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ArgumentError("max_abs_diff: dimension mismatch");
    double d = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
    return d;
}

// Entry ((a1*dimB + b1), (a2*dimB + b2)) = A(a1,a2) * B(b1,b2).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    if (da > max_dim / db) throw SizeError("kron: result dimension exceeds 2^16");
    ComplexMatrix out(da * db);
    for (std::size_t a1 = 0; a1 < da; ++a1)
        for (std::size_t a2 = 0; a2 < da; ++a2) {
            const cplx x = a(a1, a2);
            if (x == cplx{}) continue;
            for (std::size_t b1 = 0; b1 < db; ++b1)
                for (std::size_t b2 = 0; b2 < db; ++b2) out(a1 * db + b1, a2 * db + b2) = x * b(b1, b2);
        }
    return out;
}

// <B, C> = tr(B^dagger C)
inline cplx trace_inner(const ComplexMatrix& b, const ComplexMatrix& c) {
    if (b.dim() != c.dim()) throw ArgumentError("trace_inner: dimension mismatch");
    cplx acc = 0.0;
    const auto eb = b.entries();
    const auto ec = c.entries();
    for (std::size_t i = 0; i < eb.size(); ++i) acc += std::conj(eb[i]) * ec[i];
    return acc;
}

struct JacobiOptions {
    double off_diagonal_tol = 1e-14;  // relative to the Frobenius norm
    int max_sweeps = 100;
    double hermitian_tol = 1e-12;     // relative to max |entry|
};

// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi.
//
// Each rotation first rotates the phase of column q so that A(p,q) becomes
// real and nonnegative, then applies the classic real symmetric rotation.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const JacobiOptions& opt = {}) {
    const std::size_t n = m.dim();
    const double scale = std::max(m.max_abs(), 1.0);
    if (m.hermitian_defect() > opt.hermitian_tol * scale)
        throw ContractError("hermitian_eigenvalues: input is not Hermitian");

    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    const double threshold = opt.off_diagonal_tol * std::max(m.frobenius_norm(), 1e-300);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += std::norm(a(r, c));
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < opt.max_sweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase = apq / mag;  // A(p,q) = mag * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p,q) plane.
                const cplx upp = c;
                const cplx upq = s;
                const cplx uqp = -s * std::conj(phase);
                const cplx uqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {  // A <- A U
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Single-qubit operators used across modules.
namespace pauli {
inline ComplexMatrix I() { return {{1.0, 0.0}, {0.0, 1.0}}; }
inline ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix Y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
inline ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace qsep
