// family_decl.hpp
// A tagged description of which structured family a state was built from.
// State files may carry one so that analysis can take the family path.

#pragma once

#include <string>
#include <variant>

#include "bit_index.hpp"
#include "density.hpp"
#include "families.hpp"

namespace qsep {

struct MixedDecl {
    int n;
};

struct GhzDecl {
    BitIndex j;
    Sign sign = Sign::plus;
};

using FamilyDecl = std::variant<MixedDecl, GhzDecl, WernerSpec, DiagonalFamilySpec, SharpnessSpec, MuSpec, ProductSpec>;

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline std::string family_name(const FamilyDecl& decl) {
    return std::visit(overloaded{[](const MixedDecl&) { return std::string("mixed"); },
                                 [](const GhzDecl&) { return std::string("ghz"); },
                                 [](const WernerSpec&) { return std::string("werner"); },
                                 [](const DiagonalFamilySpec&) { return std::string("diagonal"); },
                                 [](const SharpnessSpec&) { return std::string("sharpness"); },
                                 [](const MuSpec&) { return std::string("mu"); },
                                 [](const ProductSpec&) { return std::string("product"); }},
                      decl);
}

inline int family_qubits(const FamilyDecl& decl) {
    return std::visit(overloaded{[](const MixedDecl& d) { return d.n; },
                                 [](const GhzDecl& d) { return d.j.size(); },
                                 [](const MuSpec& d) { return d.u.n; },
                                 [](const auto& d) { return d.n; }},
                      decl);
}

inline DensityMatrix build_state(const FamilyDecl& decl) {
    return std::visit(overloaded{[](const MixedDecl& d) {
                                     if (d.n < 1 || d.n > max_qubits)
                                         throw ArgumentError("mixed: qubit count out of range");
                                     return DensityMatrix::maximally_mixed(d.n);
                                 },
                                 [](const GhzDecl& d) { return ghz_projector(d.j, d.sign); },
                                 [](const WernerSpec& d) { return werner(d); },
                                 [](const DiagonalFamilySpec& d) { return diagonal_family(d); },
                                 [](const SharpnessSpec& d) { return sharpness_state(d); },
                                 [](const MuSpec& d) { return mu_state(d); },
                                 [](const ProductSpec& d) { return product_density(d); }},
                      decl);
}

} // namespace qsep
