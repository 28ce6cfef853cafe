// certificate.hpp
// Full-separability certificates: weighted lists of product states
//   rho = sum_a p(a) (x)_r (I + m(a,r).sigma)/2
// plus an independent verifier that reassembles them.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bloch.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace qsep {

inline constexpr double certificate_weight_tol = 1e-12;
inline constexpr double certificate_norm_tol = 1e-12;

struct ProductTerm {
    double weight;
    std::vector<Bloch> bloch;  // one vector per qubit, |m| <= 1
};

struct SeparableDecomposition {
    int n = 0;
    std::vector<ProductTerm> terms;

    double weight_sum() const {
        double s = 0.0;
        for (const auto& t : terms) s += t.weight;
        return s;
    }
};

// Invariant violations, one message each; empty means well formed.
inline std::vector<std::string> certificate_violations(const SeparableDecomposition& dec) {
    std::vector<std::string> out;
    if (dec.n < 1 || dec.n > 16) out.push_back("qubit count out of range");
    if (dec.terms.empty()) out.push_back("no terms");
    for (std::size_t a = 0; a < dec.terms.size(); ++a) {
        const auto& t = dec.terms[a];
        const std::string where = "term " + std::to_string(a);
        if (!(t.weight >= 0.0)) out.push_back(where + ": negative weight");
        if (t.bloch.size() != static_cast<std::size_t>(dec.n)) {
            out.push_back(where + ": expected " + std::to_string(dec.n) + " Bloch vectors");
            continue;
        }
        for (std::size_t r = 0; r < t.bloch.size(); ++r)
            if (!(norm(t.bloch[r]) <= 1.0 + certificate_norm_tol))
                out.push_back(where + ", qubit " + std::to_string(r + 1) + ": Bloch vector longer than 1");
    }
    const double sum = dec.weight_sum();
    if (!(std::abs(sum - 1.0) <= certificate_weight_tol)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "weights sum to %.17g", sum);
        out.emplace_back(buf);
    }
    return out;
}

inline ComplexMatrix product_matrix(const std::vector<Bloch>& bloch) {
    ComplexMatrix m = qubit_state(bloch.at(0));
    for (std::size_t r = 1; r < bloch.size(); ++r) m = kron(m, qubit_state(bloch[r]));
    return m;
}

// sum_a p(a) (x)_r (I + m(a,r).sigma)/2, terms accumulated in list order.
inline ComplexMatrix reassemble(const SeparableDecomposition& dec) {
    if (dec.n < 1 || dec.n > 16) throw ArgumentError("reassemble: qubit count out of range");
    ComplexMatrix acc(std::size_t{1} << dec.n);
    for (const auto& t : dec.terms) {
        if (t.bloch.size() != static_cast<std::size_t>(dec.n))
            throw ArgumentError("reassemble: term has the wrong number of Bloch vectors");
        acc += product_matrix(t.bloch) * cplx(t.weight);
    }
    return acc;
}

struct VerificationResult {
    bool pass = false;
    double max_deviation = 0.0;
    std::vector<std::string> violations;
};

inline VerificationResult verify_decomposition(const SeparableDecomposition& dec, const DensityMatrix& rho,
                                               double tol) {
    if (dec.n != rho.qubits())
        throw ArgumentError("verify_decomposition: certificate has " + std::to_string(dec.n) +
                            " qubits, state has " + std::to_string(rho.qubits()));
    VerificationResult res;
    res.violations = certificate_violations(dec);
    bool shape_ok = true;
    for (const auto& t : dec.terms) shape_ok = shape_ok && t.bloch.size() == static_cast<std::size_t>(dec.n);
    if (shape_ok && !dec.terms.empty()) {
        res.max_deviation = max_abs_diff(reassemble(dec), rho.matrix());
    } else {
        res.max_deviation = INFINITY;
    }
    res.pass = res.violations.empty() && res.max_deviation <= tol;
    return res;
}

} // namespace qsep
