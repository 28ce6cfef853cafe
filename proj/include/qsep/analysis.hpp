// analysis.hpp
// The full criteria battery over one state, verdict aggregation, and a
// deterministic plain-text rendering of the result.

#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bases.hpp"
#include "certificate.hpp"
#include "criteria.hpp"
#include "decomposer.hpp"
#include "density.hpp"
#include "family_decl.hpp"

namespace qsep {

enum class Verdict { fully_separable, not_fully_separable, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::fully_separable: return "fully-separable (certified)";
        case Verdict::not_fully_separable: return "not-fully-separable (witnessed)";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

// 0 certified, 1 witnessed, 2 inconclusive.
inline int exit_code(Verdict v) {
    switch (v) {
        case Verdict::fully_separable: return 0;
        case Verdict::not_fully_separable: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 2;
}

enum class FamilyRole { necessary, sufficient, decision };

inline const char* to_string(FamilyRole r) {
    switch (r) {
        case FamilyRole::necessary: return "necessary";
        case FamilyRole::sufficient: return "sufficient";
        case FamilyRole::decision: return "decision";
    }
    return "?";
}

struct FamilyFinding {
    std::string family;
    FamilyRole role = FamilyRole::necessary;
    CriterionResult result;
    std::vector<std::string> notes;
};

struct AnalysisOptions {
    std::optional<std::vector<QubitSubset>> subsets;  // overrides the default Peres battery
    bool exhaustive = false;
    int jobs = 1;
    double tol = peres_tol;  // Peres tolerance and certificate verification tolerance
    std::optional<FamilyDecl> family;
};

struct AnalysisReport {
    int n = 0;
    std::vector<std::pair<QubitSubset, CriterionResult>> peres;
    std::vector<CriterionResult> cauchy_schwarz;  // one per cut 1..n-1
    std::optional<CriterionResult> cauchy_schwarz_overall;
    CriterionResult antidiagonal;
    double spin_norm = 0.0;
    CriterionResult spin_norm_result;
    CriterionResult neighborhood;
    std::optional<FamilyFinding> family_specific;
    Verdict overall = Verdict::inconclusive;
    std::optional<SeparableDecomposition> certificate;
    std::string certificate_source;
    std::optional<VerificationResult> certificate_check;
    std::vector<std::string> notes;
};

inline constexpr int exhaustive_peres_limit = 6;
inline constexpr double family_match_tol = 1e-12;

inline std::vector<QubitSubset> default_peres_subsets(int n, bool exhaustive) {
    if (n < 2) return {};
    return (exhaustive || n <= exhaustive_peres_limit) ? all_proper_subsets(n) : single_qubit_subsets(n);
}

namespace detail {

inline std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::vector<std::pair<QubitSubset, CriterionResult>> run_peres(const DensityMatrix& rho,
                                                                      const std::vector<QubitSubset>& subsets,
                                                                      double tol, int jobs) {
    std::vector<std::pair<QubitSubset, CriterionResult>> out(subsets.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < subsets.size(); i += stride) out[i] = {subsets[i], peres_test(rho, subsets[i], tol)};
    };
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), subsets.size());
    if (workers <= 1) {
        work(0, 1);
        return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
    return out;
}

struct FamilyOutcome {
    FamilyFinding finding;
    std::optional<SeparableDecomposition> certificate;
};

inline FamilyOutcome family_path(const FamilyDecl& decl) {
    FamilyOutcome out;
    out.finding.family = family_name(decl);
    std::visit(
        overloaded{
            [&](const MixedDecl& d) {
                out.finding.role = FamilyRole::sufficient;
                out.finding.result = make_result(1.0, 0.0, "maximally mixed");
                out.certificate = SeparableDecomposition{d.n, {mixed_term(d.n, 1.0)}};
            },
            [&](const GhzDecl& d) {
                const int n = d.j.size();
                DiagonalFamilySpec t{n, std::vector<double>(std::size_t{1} << (n - 1), 0.0),
                                     std::vector<double>(std::size_t{1} << (n - 1), 0.0)};
                (d.sign == Sign::plus ? t.tplus : t.tminus)[d.j.value()] = 1.0;
                out.finding.role = FamilyRole::necessary;
                out.finding.result = diagonal_family_necessary(t);
                out.finding.notes.push_back("GHZ projectors are extreme points of the X-shaped family");
            },
            [&](const WernerSpec& d) {
                const double thr = werner_threshold(d.n);
                out.finding.role = FamilyRole::decision;
                out.finding.result = make_result(thr - d.s, certify_tol,
                                                 "s=" + fmt_real(d.s) + " threshold 1/(2^(n-1)+1)=" + fmt_real(thr));
                if (std::abs(d.s - thr) <= certify_tol)
                    out.finding.notes.push_back("s is exactly at the threshold (boundary, separable)");
                if (out.finding.result.pass) {
                    out.certificate = werner_decomposition(d);
                } else {
                    out.finding.notes.push_back("s exceeds 1/(2^(n-1)+1): not fully separable");
                }
            },
            [&](const DiagonalFamilySpec& d) {
                out.finding.role = FamilyRole::necessary;
                out.finding.result = diagonal_family_necessary(d);
                if (d.depolarization_invariant() && out.finding.result.pass)
                    out.finding.notes.push_back(
                        "depolarization-invariant member: the t-condition is known to be sufficient, "
                        "but no constructive certificate is available");
            },
            [&](const SharpnessSpec& d) {
                const auto dec = sharpness_decision(d);
                out.finding.role = FamilyRole::decision;
                out.finding.result = dec.result;
                out.finding.result.witness = "c=" + fmt_real(d.c) + " d=" + fmt_real(d.d);
                out.finding.notes.push_back(dec.result.pass ? "fully separable (c = d)"
                                                            : "not fully separable (c != d)");
                out.finding.notes.push_back(dec.peres_all_pass ? "Peres passes on all cuts"
                                                               : "Peres fails on some cut");
                out.finding.notes.push_back("||rho||_1=" + fmt_real(dec.spin_norm));
                for (const auto& line : dec.angle_trace) out.finding.notes.push_back("angle: " + line);
                if (dec.result.pass) out.certificate = spin_norm_decomposition(sharpness_state(d));
            },
            [&](const MuSpec& d) {
                out.finding.role = FamilyRole::sufficient;
                out.finding.result = mu_sufficient(d);
                out.finding.result.witness = "s=" + fmt_real(d.s) + " bound=" + fmt_real(mu_bound(d.u));
                if (out.finding.result.pass) out.certificate = mu_decomposition(d);
            },
            [&](const ProductSpec& d) {
                out.finding.role = FamilyRole::sufficient;
                out.finding.result = make_result(0.0, 0.0, "product construction");
                out.certificate = product_decomposition(d);
            }},
        decl);
    return out;
}

} // namespace detail

inline AnalysisReport analyze(const DensityMatrix& rho, const AnalysisOptions& opt = {}) {
    AnalysisReport rep;
    const int n = rho.qubits();
    rep.n = n;

    const auto subsets = opt.subsets ? *opt.subsets : default_peres_subsets(n, opt.exhaustive);
    rep.peres = detail::run_peres(rho, subsets, opt.tol, opt.jobs);

    for (int cut = 1; cut < n; ++cut) rep.cauchy_schwarz.push_back(cauchy_schwarz_bipartite(rho, cut));
    if (!rep.cauchy_schwarz.empty())
        rep.cauchy_schwarz_overall = *std::min_element(
            rep.cauchy_schwarz.begin(), rep.cauchy_schwarz.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.margin < b.margin; });
    rep.antidiagonal = antidiagonal_necessary(rho);

    const auto spin = spin_from_density(rho);
    rep.spin_norm = spin_norm1(spin);
    rep.spin_norm_result = spin_norm_sufficient(spin);
    rep.neighborhood = random_neighborhood_check(spin);

    std::optional<SeparableDecomposition> family_cert;
    if (opt.family) {
        if (family_qubits(*opt.family) != n)
            throw ArgumentError("declared family has a different qubit count than the state");
        const auto expected = build_state(*opt.family);
        if (max_abs_diff(expected.matrix(), rho.matrix()) > family_match_tol)
            throw ArgumentError("state does not match its declared " + family_name(*opt.family) + " family");
        auto fam = detail::family_path(*opt.family);
        rep.family_specific = std::move(fam.finding);
        family_cert = std::move(fam.certificate);
    }

    if (family_cert) {
        rep.certificate = std::move(family_cert);
        rep.certificate_source = "family:" + rep.family_specific->family;
    } else if (rep.spin_norm_result.pass) {
        rep.certificate = spin_norm_decomposition(rho);
        rep.certificate_source = "spin-norm";
    }
    if (rep.certificate) rep.certificate_check = verify_decomposition(*rep.certificate, rho, opt.tol);

    bool witnessed = !rep.antidiagonal.pass;
    for (const auto& [subset, r] : rep.peres) witnessed = witnessed || !r.pass;
    for (const auto& r : rep.cauchy_schwarz) witnessed = witnessed || !r.pass;
    if (rep.family_specific && rep.family_specific->role != FamilyRole::sufficient)
        witnessed = witnessed || !rep.family_specific->result.pass;
    const bool certified = rep.certificate_check && rep.certificate_check->pass;

    if (certified && witnessed) {
        rep.overall = Verdict::inconclusive;
        rep.notes.push_back("conflict: a verified certificate exists but a necessary test failed");
    } else if (certified) {
        rep.overall = Verdict::fully_separable;
    } else if (witnessed) {
        rep.overall = Verdict::not_fully_separable;
    } else {
        rep.overall = Verdict::inconclusive;
        if (rep.certificate_check) rep.notes.push_back("certificate failed verification");
        if (!rep.spin_norm_result.pass)
            rep.notes.push_back("spin norm exceeds 1: the sufficient condition does not apply");
    }
    return rep;
}

inline std::string render(const AnalysisReport& rep) {
    using detail::fmt_real;
    std::ostringstream os;
    auto line = [&](const std::string& tag, const CriterionResult& r) {
        os << tag << ": " << (r.pass ? "pass" : "fail") << "  margin=" << fmt_real(r.margin);
        if (!r.witness.empty()) os << "  [" << r.witness << "]";
        os << '\n';
    };
    os << "qsep analysis\n";
    os << "qubits: " << rep.n << '\n';
    os << "spin norm ||rho||_1: " << fmt_real(rep.spin_norm) << '\n';
    for (const auto& [subset, r] : rep.peres) line("peres " + subset_label(subset), r);
    for (std::size_t i = 0; i < rep.cauchy_schwarz.size(); ++i)
        line("cauchy-schwarz cut " + std::to_string(i + 1), rep.cauchy_schwarz[i]);
    line("antidiagonal", rep.antidiagonal);
    line("spin-norm sufficient", rep.spin_norm_result);
    line("random-neighborhood", rep.neighborhood);
    if (rep.family_specific) {
        const auto& f = *rep.family_specific;
        line("family " + f.family + " (" + to_string(f.role) + ")", f.result);
        for (const auto& note : f.notes) os << "  " << note << '\n';
    }
    if (rep.certificate) {
        os << "certificate: " << rep.certificate->terms.size() << " terms from " << rep.certificate_source;
        if (rep.certificate_check)
            os << ", verification " << (rep.certificate_check->pass ? "pass" : "fail")
               << " max deviation=" << fmt_real(rep.certificate_check->max_deviation);
        os << '\n';
    }
    for (const auto& note : rep.notes) os << "note: " << note << '\n';
    os << "overall: " << to_string(rep.overall) << '\n';
    return os.str();
}

} // namespace qsep
