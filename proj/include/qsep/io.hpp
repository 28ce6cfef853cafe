// io.hpp
// Line-oriented text formats, all tagged "qsep/1":
//
//   qsep/1 state               qsep/1 certificate         qsep/1 table spin
//   n 2                        n 2                        n 1
//   family werner n=2 ...      terms 2                    0 0 [1, 0]
//   [re, im] [re, im] ...      0.5 [1, 0, 0] [1, 0, 0]    0 1 [0, 0]
//   ...                        0.5 [-1, 0, 0] [-1, 0, 0]  ...
//
// '#' starts a comment; blank lines are ignored. Reals are written with 17
// significant digits so that a write/read cycle is lossless.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bases.hpp"
#include "bit_index.hpp"
#include "certificate.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "family_decl.hpp"
#include "families.hpp"

namespace qsep {

inline constexpr std::string_view format_tag = "qsep/1";

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
    return buf;
}

namespace detail {

// Cursor over one line with 1-based column reporting.
class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, pos_ + 1); }

    void expect(char ch) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    std::string_view word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '\r') ++pos_;
        if (start == pos_) fail("expected a token");
        return text_.substr(start, pos_ - start);
    }

    void keyword(std::string_view kw) {
        skip_ws();
        const std::size_t start = pos_;
        if (word() != kw) {
            pos_ = start;
            fail("expected '" + std::string(kw) + "'");
        }
    }

    double real() {
        skip_ws();
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || !std::isfinite(v)) fail("expected a finite decimal number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    long integer() {
        skip_ws();
        long v = 0;
        const char* first = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
        if (ec != std::errc()) fail("expected an integer");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    // [a, b, ...] with exactly `count` reals
    std::vector<double> bracketed(std::size_t count) {
        std::vector<double> out;
        expect('[');
        for (std::size_t i = 0; i < count; ++i) {
            if (i) expect(',');
            out.push_back(real());
        }
        expect(']');
        return out;
    }

    void finish() {
        if (!at_end()) fail("unexpected trailing text");
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

// Non-blank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.emplace_back(no, raw);
    }
    return out;
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : lines_(content_lines(in)) {}

    LineCursor next(const char* what) {
        if (idx_ >= lines_.size())
            throw ParseError(std::string("unexpected end of file, expected ") + what,
                             lines_.empty() ? 1 : lines_.back().first + 1, 1);
        const auto& [no, text] = lines_[idx_++];
        return LineCursor(text, no);
    }
    bool peek_keyword(std::string_view kw) const {
        if (idx_ >= lines_.size()) return false;
        const auto& text = lines_[idx_].second;
        const auto start = text.find_first_not_of(" \t");
        return text.compare(start, kw.size(), kw) == 0 &&
               (start + kw.size() == text.size() || text[start + kw.size()] == ' ');
    }
    void finish() const {
        if (idx_ < lines_.size()) throw ParseError("unexpected extra content", lines_[idx_].first, 1);
    }

private:
    std::vector<std::pair<std::size_t, std::string>> lines_;
    std::size_t idx_ = 0;
};

inline void read_header(LineReader& r, std::string_view kind) {
    auto c = r.next("header");
    c.keyword(format_tag);
    c.keyword(kind);
    c.finish();
}

inline int read_qubits(LineReader& r) {
    auto c = r.next("qubit count");
    c.keyword("n");
    const long n = c.integer();
    c.finish();
    if (n < 1 || n > max_qubits) c.fail("qubit count must be in [1, 16]");
    return static_cast<int>(n);
}

inline std::string join_reals(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_real(v[i]);
    }
    return s;
}

inline std::vector<double> split_reals(std::string_view text, const LineCursor& where) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() || !std::isfinite(v))
            where.fail("invalid number '" + std::string(piece) + "' in family parameters");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace detail

// "werner n=3 s=0.2 sign=+ j=000" and friends.
inline std::string format_family(const FamilyDecl& decl) {
    using detail::join_reals;
    std::string out = family_name(decl);
    std::visit(overloaded{[&](const MixedDecl& d) { out += " n=" + std::to_string(d.n); },
                          [&](const GhzDecl& d) {
                              out += " j=" + d.j.to_string() + " sign=" + sign_char(d.sign);
                          },
                          [&](const WernerSpec& d) {
                              out += " n=" + std::to_string(d.n) + " s=" + format_real(d.s) + " sign=" +
                                     sign_char(d.sign) + " j=" + d.j.to_string();
                          },
                          [&](const DiagonalFamilySpec& d) {
                              out += " n=" + std::to_string(d.n) + " tplus=" + join_reals(d.tplus) +
                                     " tminus=" + join_reals(d.tminus);
                          },
                          [&](const SharpnessSpec& d) {
                              out += " n=" + std::to_string(d.n) + " c=" + format_real(d.c) + " d=" + format_real(d.d);
                          },
                          [&](const MuSpec& d) {
                              out += " n=" + std::to_string(d.u.n) + " s=" + format_real(d.s) +
                                     " uplus=" + join_reals(d.u.tplus) + " uminus=" + join_reals(d.u.tminus);
                          },
                          [&](const ProductSpec& d) {
                              out += " n=" + std::to_string(d.n) + " sign=" + sign_char(d.sign) + " m=";
                              for (std::size_t r = 0; r < d.vectors.size(); ++r) {
                                  if (r) out += ";";
                                  out += join_reals({d.vectors[r][0], d.vectors[r][1], d.vectors[r][2]});
                              }
                          }},
               decl);
    return out;
}

namespace detail {

inline FamilyDecl parse_family(LineCursor& c) {
    const std::string name(c.word());
    std::vector<std::pair<std::string, std::string>> kv;
    while (!c.at_end()) {
        const auto tok = c.word();
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos || eq == 0) c.fail("expected key=value");
        kv.emplace_back(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
    }
    auto get = [&](const std::string& key) -> const std::string& {
        for (const auto& [k, v] : kv)
            if (k == key) return v;
        c.fail("family " + name + " is missing parameter '" + key + "'");
    };
    auto real = [&](const std::string& key) {
        const auto v = split_reals(get(key), c);
        if (v.size() != 1) c.fail("parameter '" + key + "' must be a single number");
        return v.front();
    };
    auto integer = [&](const std::string& key) {
        const auto v = real(key);
        if (v != std::floor(v)) c.fail("parameter '" + key + "' must be an integer");
        return static_cast<int>(v);
    };
    auto sign = [&]() {
        const auto& v = get("sign");
        if (v == "+") return Sign::plus;
        if (v == "-") return Sign::minus;
        c.fail("sign must be + or -");
    };
    auto bits = [&](const std::string& key) {
        try {
            return BitIndex::parse(get(key));
        } catch (const ArgumentError& e) {
            c.fail(e.what());
        }
    };
    try {
        if (name == "mixed") return MixedDecl{integer("n")};
        if (name == "ghz") return GhzDecl{bits("j"), sign()};
        if (name == "werner") return WernerSpec{integer("n"), real("s"), bits("j"), sign()};
        if (name == "diagonal")
            return DiagonalFamilySpec{integer("n"), split_reals(get("tplus"), c), split_reals(get("tminus"), c)};
        if (name == "sharpness") return SharpnessSpec{integer("n"), real("c"), real("d")};
        if (name == "mu")
            return MuSpec{real("s"), DiagonalFamilySpec{integer("n"), split_reals(get("uplus"), c),
                                                        split_reals(get("uminus"), c)}};
        if (name == "product") {
            ProductSpec p{integer("n"), {}, sign()};
            std::string_view all = get("m");
            std::size_t start = 0;
            while (true) {
                const auto semi = all.find(';', start);
                const auto v = split_reals(all.substr(start, semi == std::string_view::npos ? all.npos : semi - start), c);
                if (v.size() != 3) c.fail("product vectors must have three components");
                p.vectors.push_back({v[0], v[1], v[2]});
                if (semi == std::string_view::npos) break;
                start = semi + 1;
            }
            return p;
        }
    } catch (const ArgumentError& e) {
        c.fail(e.what());
    }
    c.fail("unknown family '" + name + "'");
}

} // namespace detail

struct StateFile {
    int n = 0;
    ComplexMatrix matrix;
    std::optional<FamilyDecl> family;

    // Validates; throws ValidationError naming the failed invariant.
    DensityMatrix density(double psd_tol = default_psd_tol) const { return DensityMatrix(matrix, psd_tol); }
};

inline void write_state(std::ostream& os, const DensityMatrix& rho, const std::optional<FamilyDecl>& family = {}) {
    os << format_tag << " state\n";
    os << "n " << rho.qubits() << '\n';
    if (family) os << "family " << format_family(*family) << '\n';
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            if (c) os << ' ';
            os << '[' << format_real(rho(r, c).real()) << ", " << format_real(rho(r, c).imag()) << ']';
        }
        os << '\n';
    }
}

inline StateFile read_state(std::istream& in) {
    detail::LineReader reader(in);
    detail::read_header(reader, "state");
    StateFile sf;
    sf.n = detail::read_qubits(reader);
    if (reader.peek_keyword("family")) {
        auto c = reader.next("family");
        c.keyword("family");
        sf.family = detail::parse_family(c);
        if (family_qubits(*sf.family) != sf.n) c.fail("family qubit count differs from n");
    }
    const std::size_t d = std::size_t{1} << sf.n;
    std::vector<cplx> entries;
    entries.reserve(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        auto c = reader.next("matrix row");
        for (std::size_t col = 0; col < d; ++col) {
            const auto pair = c.bracketed(2);
            entries.emplace_back(pair[0], pair[1]);
        }
        c.finish();
    }
    reader.finish();
    sf.matrix = ComplexMatrix(d, std::move(entries));
    return sf;
}

inline void write_certificate(std::ostream& os, const SeparableDecomposition& dec) {
    os << format_tag << " certificate\n";
    os << "n " << dec.n << '\n';
    os << "terms " << dec.terms.size() << '\n';
    for (const auto& t : dec.terms) {
        os << format_real(t.weight);
        for (const auto& m : t.bloch)
            os << " [" << format_real(m[0]) << ", " << format_real(m[1]) << ", " << format_real(m[2]) << ']';
        os << '\n';
    }
}

// Parses only; verify_decomposition checks weights, norms and the sum.
inline SeparableDecomposition read_certificate(std::istream& in) {
    detail::LineReader reader(in);
    detail::read_header(reader, "certificate");
    SeparableDecomposition dec;
    dec.n = detail::read_qubits(reader);
    auto c = reader.next("term count");
    c.keyword("terms");
    const long count = c.integer();
    c.finish();
    if (count < 1) c.fail("a certificate needs at least one term");
    for (long a = 0; a < count; ++a) {
        auto line = reader.next("certificate term");
        ProductTerm t{line.real(), {}};
        for (int r = 0; r < dec.n; ++r) {
            const auto v = line.bracketed(3);
            t.bloch.push_back({v[0], v[1], v[2]});
        }
        line.finish();
        dec.terms.push_back(std::move(t));
    }
    reader.finish();
    return dec;
}

// Full table, row-major ascending j then k, indices as bit strings.
inline void write_table(std::ostream& os, const CoefficientTable& t) {
    os << format_tag << " table " << to_string(t.basis()) << '\n';
    os << "n " << t.qubits() << '\n';
    const int n = t.qubits();
    for (std::size_t j = 0; j < t.dim(); ++j)
        for (std::size_t k = 0; k < t.dim(); ++k) {
            const auto& z = t(j, k);
            os << BitIndex(n, static_cast<std::uint32_t>(j)).to_string() << ' '
               << BitIndex(n, static_cast<std::uint32_t>(k)).to_string() << " [" << format_real(z.real()) << ", "
               << format_real(z.imag()) << "]\n";
        }
}

inline CoefficientTable read_table(std::istream& in) {
    detail::LineReader reader(in);
    auto h = reader.next("header");
    h.keyword(format_tag);
    h.keyword("table");
    const auto kind = h.word();
    BasisKind basis;
    if (kind == "spin") basis = BasisKind::spin;
    else if (kind == "adjusted") basis = BasisKind::adjusted;
    else h.fail("basis must be 'spin' or 'adjusted'");
    h.finish();
    const int n = detail::read_qubits(reader);
    CoefficientTable t(n, basis);
    for (std::size_t j = 0; j < t.dim(); ++j)
        for (std::size_t k = 0; k < t.dim(); ++k) {
            auto c = reader.next("table entry");
            const auto jw = c.word();
            const auto kw = c.word();
            const auto expect_j = BitIndex(n, static_cast<std::uint32_t>(j)).to_string();
            const auto expect_k = BitIndex(n, static_cast<std::uint32_t>(k)).to_string();
            if (jw != expect_j || kw != expect_k) c.fail("expected entry " + expect_j + " " + expect_k);
            const auto v = c.bracketed(2);
            c.finish();
            t(j, k) = cplx(v[0], v[1]);
        }
    reader.finish();
    return t;
}

} // namespace qsep
