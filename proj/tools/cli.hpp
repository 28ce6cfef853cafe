// cli.hpp
// Command-line front end: analyze, family, verify, transform.
// Exit codes: 0 certified / verified, 1 witnessed / verification failed,
// 2 inconclusive, 3 usage or argument error, 4 parse error, 5 validation error.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsep/qsep.hpp"

namespace qsep::cli {

enum ExitCode : int {
    exit_certified = 0,
    exit_witnessed = 1,
    exit_inconclusive = 2,
    exit_usage = 3,
    exit_parse = 4,
    exit_validation = 5,
};

namespace detail {

inline StateFile load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open state file '" + path + "'");
    return read_state(in);
}

inline SeparableDecomposition load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open certificate file '" + path + "'");
    return read_certificate(in);
}

template <class Writer>
void write_file(const std::string& path, Writer&& w) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write '" + path + "'");
    w(out);
}

// "2" -> {2}, "1+3" -> {1,3}
inline QubitSubset parse_subset(const std::string& text) {
    QubitSubset s;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '+')) {
        try {
            std::size_t used = 0;
            const int q = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            s.insert(q);
        } catch (const std::logic_error&) {
            throw ArgumentError("invalid cut '" + text + "': use qubit numbers joined by '+', e.g. 1+3");
        }
    }
    return s;
}

inline Sign parse_sign(const std::string& s) {
    if (s == "+" || s == "plus") return Sign::plus;
    if (s == "-" || s == "minus") return Sign::minus;
    throw ArgumentError("sign must be + or -");
}

inline Bloch parse_vector(const std::string& text) {
    static const std::vector<std::pair<std::string, Bloch>> named = {
        {"x", x_axis}, {"y", y_axis}, {"z", z_axis},
        {"-x", {-1.0, 0.0, 0.0}}, {"-y", {0.0, -1.0, 0.0}}, {"-z", {0.0, 0.0, -1.0}}};
    for (const auto& [name, v] : named)
        if (text == name) return v;
    std::stringstream ss(text);
    std::string item;
    std::vector<double> parts;
    while (std::getline(ss, item, ',')) {
        try {
            parts.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw ArgumentError("invalid vector '" + text + "'");
        }
    }
    if (parts.size() != 3) throw ArgumentError("vector '" + text + "' needs three components (or x, -y, ...)");
    return {parts[0], parts[1], parts[2]};
}

struct FamilyArgs {
    std::string name;
    int n = 0;
    double s = 0.0;
    std::string sign = "+";
    std::string j;
    double c = 0.0;
    double d = 0.0;
    std::vector<double> tplus, tminus;
    std::vector<std::string> m;
};

inline BitIndex index_or_zero(const FamilyArgs& a) {
    if (a.j.empty()) return BitIndex::zeros(a.n);
    auto j = BitIndex::parse(a.j);
    if (j.size() != a.n) throw ArgumentError("--j must have exactly n digits");
    return j;
}

inline FamilyDecl make_family(const FamilyArgs& a) {
    if (a.name != "ghz" && (a.n < 1 || a.n > max_qubits)) throw ArgumentError("--n must be in [1, 16]");
    if (a.name == "mixed") return MixedDecl{a.n};
    if (a.name == "ghz") {
        if (a.j.empty()) throw ArgumentError("ghz needs --j (leading bit 0)");
        return GhzDecl{BitIndex::parse(a.j), parse_sign(a.sign)};
    }
    if (a.name == "werner") {
        WernerSpec w{a.n, a.s, index_or_zero(a), parse_sign(a.sign)};
        w.validate();
        return w;
    }
    if (a.name == "diagonal") {
        DiagonalFamilySpec t{a.n, a.tplus, a.tminus};
        t.validate();
        return t;
    }
    if (a.name == "sharpness") {
        SharpnessSpec sp{a.n, a.c, a.d};
        sp.validate();
        return sp;
    }
    if (a.name == "mu") {
        MuSpec mu{a.s, DiagonalFamilySpec{a.n, a.tplus, a.tminus}};
        mu.validate();
        return mu;
    }
    if (a.name == "product") {
        ProductSpec p{a.n, {}, parse_sign(a.sign)};
        for (const auto& v : a.m) p.vectors.push_back(parse_vector(v));
        p.validate();
        return p;
    }
    throw ArgumentError("unknown family '" + a.name + "' (mixed, ghz, werner, diagonal, sharpness, mu, product)");
}

inline std::string werner_range_hint(const FamilyArgs& a) {
    if (a.name != "werner" || a.n < 2 || a.n > max_qubits) return {};
    return "certification requires s <= 1/(2^(n-1)+1) = " + format_real(werner_threshold(a.n));
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"qsep: full-separability analysis of n-qubit density matrices"};
    app.require_subcommand(1);


    double tol = peres_tol;

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Run the criteria battery on a state file");
    std::string state_path, out_path;
    std::vector<std::string> cuts;
    bool exhaustive = false, decompose = false, ignore_family = false;
    int jobs = 1;
    analyze_cmd->add_option("state", state_path, "State file")->required();
    analyze_cmd->add_option("--tol", tol, "Peres and certificate-verification tolerance");
    analyze_cmd->add_option("--cuts", cuts, "Qubit subsets for the Peres test, e.g. 1 2 1+3");
    analyze_cmd->add_flag("--exhaustive", exhaustive, "Peres test on every proper subset at any n");
    analyze_cmd->add_option("--jobs", jobs, "Worker threads for the Peres battery")->check(CLI::PositiveNumber);
    analyze_cmd->add_flag("--decompose", decompose, "Write the certificate when one exists");
    analyze_cmd->add_option("--out", out_path, "Certificate output path (with --decompose)");
    analyze_cmd->add_flag("--ignore-family", ignore_family, "Analyze as an anonymous matrix");

    // family
    auto* family_cmd = app.add_subcommand("family", "Construct a structured state");
    detail::FamilyArgs fa;
    std::string cert_path;
    family_cmd->add_option("name", fa.name, "mixed | ghz | werner | diagonal | sharpness | mu | product")->required();
    family_cmd->add_option("--tol", tol, "Peres and certificate-verification tolerance");
    family_cmd->add_option("--n", fa.n, "Qubit count");
    family_cmd->add_option("--s", fa.s, "Mixing weight (werner, mu)");
    family_cmd->add_option("--sign", fa.sign, "+ or -");
    family_cmd->add_option("--j", fa.j, "Index bit string with leading 0 (werner, ghz)");
    family_cmd->add_option("--c", fa.c, "Sharpness parameter c");
    family_cmd->add_option("--d", fa.d, "Sharpness parameter d");
    family_cmd->add_option("--tplus,--uplus", fa.tplus, "t+ (or u+) weights for the 2^(n-1) canonical indices")
        ->delimiter(',');
    family_cmd->add_option("--tminus,--uminus", fa.tminus, "t- (or u-) weights")->delimiter(',');
    family_cmd->add_option("--m", fa.m, "Unit vector per qubit: x, -y, or a,b,c (repeat per qubit)");
    family_cmd->add_option("--out", out_path, "State output path");
    family_cmd->add_flag("--decompose", decompose, "Run the family decision and emit a certificate");
    family_cmd->add_option("--cert", cert_path, "Certificate output path (with --decompose)");
    family_cmd->add_option("--jobs", jobs, "Worker threads for the Peres battery")->check(CLI::PositiveNumber);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against a state");
    std::string verify_cert;
    verify_cmd->add_option("certificate", verify_cert, "Certificate file")->required();
    verify_cmd->add_option("state", state_path, "State file")->required();
    verify_cmd->add_option("--tol", tol, "Maximum entrywise deviation");

    // transform
    auto* transform_cmd = app.add_subcommand("transform", "Write the coefficient table of a state");
    std::string basis = "spin";
    transform_cmd->add_option("state", state_path, "State file")->required();
    transform_cmd->add_option("--basis", basis, "spin | adjusted")->check(CLI::IsMember({"spin", "adjusted"}));
    transform_cmd->add_option("--out", out_path, "Table output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*analyze_cmd) {
            AnalysisOptions opt;
            opt.tol = tol;
            opt.exhaustive = exhaustive;
            opt.jobs = jobs;
            if (!cuts.empty()) {
                std::vector<QubitSubset> subsets;
                for (const auto& c : cuts) subsets.push_back(detail::parse_subset(c));
                opt.subsets = subsets;
            }
            const auto sf = detail::load_state(state_path);
            const auto rho = sf.density();
            if (!ignore_family) opt.family = sf.family;
            const auto rep = analyze(rho, opt);
            out << render(rep);
            if (decompose) {
                if (rep.certificate && rep.certificate_check && rep.certificate_check->pass) {
                    if (out_path.empty()) write_certificate(out, *rep.certificate);
                    else detail::write_file(out_path, [&](std::ostream& o) { write_certificate(o, *rep.certificate); });
                } else {
                    out << "no certificate available\n";
                }
            }
            return exit_code(rep.overall);
        }
        if (*family_cmd) {
            FamilyDecl decl;
            try {
                decl = detail::make_family(fa);
            } catch (const ArgumentError& e) {
                const auto hint = detail::werner_range_hint(fa);
                err << "argument error: " << e.what() << (hint.empty() ? "" : "; " + hint) << '\n';
                return exit_usage;
            }
            const auto rho = build_state(decl);
            if (!out_path.empty())
                detail::write_file(out_path, [&](std::ostream& o) { write_state(o, rho, decl); });
            else if (!decompose)
                write_state(out, rho, decl);
            if (!decompose) return exit_certified;
            AnalysisOptions opt;
            opt.tol = tol;
            opt.jobs = jobs;
            opt.family = decl;
            const auto rep = analyze(rho, opt);
            out << "family: " << format_family(decl) << '\n';
            if (const auto hint = detail::werner_range_hint(fa); !hint.empty()) out << hint << '\n';
            out << render(rep);
            if (rep.certificate && rep.certificate_check && rep.certificate_check->pass) {
                if (cert_path.empty()) write_certificate(out, *rep.certificate);
                else detail::write_file(cert_path, [&](std::ostream& o) { write_certificate(o, *rep.certificate); });
            }
            return exit_code(rep.overall);
        }
        if (*verify_cmd) {
            const auto dec = detail::load_certificate(verify_cert);
            const auto rho = detail::load_state(state_path).density();
            const auto res = verify_decomposition(dec, rho, tol);
            out << "verification: " << (res.pass ? "pass" : "fail") << '\n';
            out << "max deviation: " << format_real(res.max_deviation) << '\n';
            for (const auto& v : res.violations) out << "violation: " << v << '\n';
            return res.pass ? exit_certified : exit_witnessed;
        }
        if (*transform_cmd) {
            const auto rho = detail::load_state(state_path).density();
            const auto adjusted = adjusted_from_density(rho);
            const auto table = basis == "spin" ? spin_from_adjusted(adjusted) : adjusted;
            if (out_path.empty()) write_table(out, table);
            else detail::write_file(out_path, [&](std::ostream& o) { write_table(o, table); });
            return exit_certified;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace qsep::cli
