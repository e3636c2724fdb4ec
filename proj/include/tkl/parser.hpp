#pragma once

// Text form for symbols.
//
//   expr    := term (('*' | '/') term)*
//   term    := primary ('^' int)?
//   primary := 'conj' '(' expr ')' | '(' expr ')' | atom | const
//   atom    := 'z' | 'b_i' | 'S' '(' float ')'
//            | 'Sd' '{' float ':' float (',' float ':' float)* '}'
//            | 'B' '[' complex (',' complex)* ']' | 'B' '[' '@' label ']'
//            | 'O' '{' name (':' param)* '}' | 'Theta' '(' '@' label ')'
//   const   := '1' | '-1' | 'i' | '-i' | 'cis' '(' float ')'
//
// Angles and measure weights are radians-valued floats; complex literals
// look like `0.5+0.25i`, `-1.5i` or `2.0`.  `@label` references resolve
// against a SequenceRegistry.  print_symbol emits a canonical form that
// parses back to an equal symbol: constant first, factors in normalized
// order, `conj(...)` wrappers, and `/` for negative outer exponents.

#include <cctype>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "seq_io.hpp"
#include "sequence.hpp"
#include "symbol.hpp"
#include "verdict.hpp"

namespace tkl {

struct SequenceRegistry {
    std::map<std::string, std::shared_ptr<const PointSequence>> sequences;
    std::map<std::string, std::shared_ptr<const DensityReport>> densities;

    void add(const std::string& label, PointSequence seq) {
        sequences[label] = std::make_shared<const PointSequence>(std::move(seq));
    }
    void add_density(const std::string& label, DensityReport rep) {
        densities[label] = std::make_shared<const DensityReport>(std::move(rep));
    }
};

namespace detail {

class SymbolParser {
public:
    SymbolParser(const std::string& src, Space space, const SequenceRegistry* reg)
        : s_(src), space_(space), reg_(reg) {}

    SymbolExpr parse() {
        SymbolExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return normalize(e);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    Space space_;
    const SequenceRegistry* reg_;

    [[noreturn]] void fail(const std::string& msg, Errc code = Errc::SyntaxError) const {
        fail_at(msg, pos_, code);
    }

    [[noreturn]] void fail_at(const std::string& msg, std::size_t at,
                              Errc code = Errc::SyntaxError) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(code, msg, line, col);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == b) fail("expected a name");
        return s_.substr(b, pos_ - b);
    }

    double number() {
        skip_ws();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    int integer() {
        skip_ws();
        const std::size_t at = pos_;
        const double v = number();
        if (v != std::floor(v) || std::abs(v) > 1e6) fail_at("expected a small integer", at);
        return static_cast<int>(v);
    }

    // raw text until the closing delimiter (no nesting)
    std::string until(char close) {
        std::size_t b = pos_;
        while (pos_ < s_.size() && s_[pos_] != close) ++pos_;
        if (pos_ == s_.size()) fail_at(std::string("missing '") + close + "'", b);
        std::string r = s_.substr(b, pos_ - b);
        ++pos_;
        return r;
    }

    cx complex_lit(const std::string& tok, std::size_t at) const {
        const std::string t = trim(tok);
        if (t.empty()) fail_at("empty complex literal", at);
        if (t.back() != 'i') {
            try {
                return cx(parse_num(t, "complex literal"), 0.0);
            } catch (const Error&) {
                fail_at("bad complex literal '" + t + "'", at);
            }
        }
        const std::string body = t.substr(0, t.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        try {
            if (split == std::string::npos)
                return cx(0.0, parse_num(body.empty() ? "1" : body, "complex literal"));
            std::string im = body.substr(split);
            if (im == "+") im = "1";
            if (im == "-") im = "-1";
            return cx(parse_num(body.substr(0, split), "complex literal"),
                      parse_num(im, "complex literal"));
        } catch (const Error&) {
            fail_at("bad complex literal '" + t + "'", at);
        }
    }

    void check_space(const Atom& a, std::size_t at) const {
        if (!atom_allowed_in(a, space_))
            fail_at(std::string("atom not available on the ") + to_string(space_), at,
                    Errc::MixedSpace);
    }

    SymbolExpr expr() {
        SymbolExpr e = term();
        while (true) {
            if (eat('*'))
                e = e * term();
            else if (eat('/'))
                e = e / term();
            else
                return e;
        }
    }

    SymbolExpr term() {
        SymbolExpr e = primary();
        if (eat('^')) return pow(e, integer());
        return e;
    }

    SymbolExpr primary() {
        skip_ws();
        const std::size_t at = pos_;
        const char c = peek();
        if (c == '(') {
            ++pos_;
            SymbolExpr e = expr();
            expect(')');
            return e;
        }
        if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'i' &&
            (pos_ + 2 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 2])))) {
            pos_ += 2;
            return SymbolExpr::constant(space_, -0.5 * std::numbers::pi);
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            const double v = number();
            if (v == 1.0) return SymbolExpr::one(space_);
            if (v == -1.0) return SymbolExpr::constant(space_, std::numbers::pi);
            fail_at("only unimodular constants are allowed; use cis(theta)", at);
        }
        const std::string name = ident();
        if (name == "conj") {
            expect('(');
            SymbolExpr e = expr();
            expect(')');
            return conjugate(e);
        }
        if (name == "i") return SymbolExpr::constant(space_, 0.5 * std::numbers::pi);
        if (name == "cis") {
            expect('(');
            const double th = number();
            expect(')');
            return SymbolExpr::constant(space_, th);
        }
        return atom_expr(name, at);
    }

    SymbolExpr atom_expr(const std::string& name, std::size_t at) {
        Atom a;
        if (name == "z") {
            a = Coordinate{};
        } else if (name == "b_i") {
            a = BlaschkeAtI{};
        } else if (name == "S") {
            expect('(');
            const double v = number();
            expect(')');
            if (!(v >= 0.0)) fail_at("S needs a nonnegative exponent parameter", at,
                                     Errc::BadParameters);
            a = SingularExp{v};
        } else if (name == "Sd") {
            expect('{');
            SingularDiskMeasure m;
            do {
                const double angle = number();
                expect(':');
                const double w = number();
                m.masses.emplace_back(angle, w);
            } while (eat(','));
            expect('}');
            a = std::move(m);
        } else if (name == "B") {
            expect('[');
            BlaschkeZeros b;
            if (eat('@')) {
                const std::string label = ident();
                expect(']');
                b.seq_label = label;
                b.zeros = resolve_points(label, at);
            } else {
                do {
                    skip_ws();
                    const std::size_t lit_at = pos_;
                    std::size_t e = pos_;
                    while (e < s_.size() && s_[e] != ',' && s_[e] != ']') ++e;
                    b.zeros.push_back(complex_lit(s_.substr(pos_, e - pos_), lit_at));
                    pos_ = e;
                } while (eat(','));
                expect(']');
            }
            a = std::move(b);
        } else if (name == "O") {
            expect('{');
            const std::size_t body_at = pos_;
            const auto parts = split(until('}'), ':');
            const std::string& kind = parts[0];
            try {
                if (kind == "band") {
                    if (parts.size() != 3) fail_at("O{band:lo:hi} needs two bounds", body_at);
                    a = OuterSource::band(parse_num(parts[1], "band bound"),
                                          parse_num(parts[2], "band bound"));
                } else if (kind == "table") {
                    if (parts.size() != 2) fail_at("O{table:path} needs a path", body_at);
                    a = OuterSource::from_table(load_log_modulus(parts[1]), parts[1]);
                } else {
                    if (parts.size() != 1) fail_at("unexpected parameters for O{" + kind + "}",
                                                   body_at);
                    a = OuterSource::named(kind, space_);
                }
            } catch (const Error& err) {
                if (err.has_position() || err.code() == Errc::IoError) throw;
                fail_at(err.what(), body_at, err.code());
            }
        } else if (name == "Theta") {
            expect('(');
            if (!eat('@')) fail("Theta needs a sequence reference '@label'");
            const std::string label = ident();
            expect(')');
            MifSpectrum m;
            m.label = label;
            if (!reg_ || !reg_->sequences.count(label))
                fail_at("unknown sequence reference '@" + label + "'", at, Errc::UnknownSeqRef);
            m.spectrum = reg_->sequences.at(label);
            if (reg_->densities.count(label)) m.density = reg_->densities.at(label);
            a = std::move(m);
        } else {
            fail_at("unknown name '" + name + "'", at);
        }
        check_space(a, at);
        return SymbolExpr::atom(space_, std::move(a));
    }

    std::vector<cx> resolve_points(const std::string& label, std::size_t at) const {
        if (!reg_ || !reg_->sequences.count(label))
            fail_at("unknown sequence reference '@" + label + "'", at, Errc::UnknownSeqRef);
        return reg_->sequences.at(label)->points;
    }
};

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string print_complex(const cx& z) {
    if (z.imag() == 0.0) return fmt17(z.real());
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

inline std::string print_atom(const Atom& a) {
    if (std::holds_alternative<Coordinate>(a)) return "z";
    if (std::holds_alternative<BlaschkeAtI>(a)) return "b_i";
    if (const auto* s = std::get_if<SingularExp>(&a)) return "S(" + fmt17(s->a) + ")";
    if (const auto* m = std::get_if<SingularDiskMeasure>(&a)) {
        std::string r = "Sd{";
        for (std::size_t i = 0; i < m->masses.size(); ++i) {
            if (i) r += ",";
            r += fmt17(m->masses[i].first) + ":" + fmt17(m->masses[i].second);
        }
        return r + "}";
    }
    if (const auto* b = std::get_if<BlaschkeZeros>(&a)) {
        if (b->seq_label) return "B[@" + *b->seq_label + "]";
        std::string r = "B[";
        for (std::size_t i = 0; i < b->zeros.size(); ++i) {
            if (i) r += ",";
            r += print_complex(b->zeros[i]);
        }
        return r + "]";
    }
    if (const auto* o = std::get_if<OuterSource>(&a)) {
        if (o->name == "band")
            return "O{band:" + fmt17(o->params.at(0)) + ":" + fmt17(o->params.at(1)) + "}";
        if (o->name == "table") return "O{table:" + o->table_path + "}";
        return "O{" + o->name + "}";
    }
    if (const auto* t = std::get_if<MifSpectrum>(&a)) return "Theta(@" + t->label + ")";
    return "?";
}

} // namespace detail

// Parse a symbol in the expression language; the result is normalized.
inline SymbolExpr parse_symbol(const std::string& src, Space space,
                               const SequenceRegistry* registry = nullptr) {
    return detail::SymbolParser(src, space, registry).parse();
}

// Canonical text form; parse_symbol(print_symbol(e), e.space, reg) == normalize(e).
inline std::string print_symbol(const SymbolExpr& expr) {
    const SymbolExpr e = normalize(expr);
    std::vector<std::string> num, den;

    if (e.angle != 0.0) {
        if (e.angle == std::numbers::pi)
            num.push_back("(-1)");
        else if (e.angle == 0.5 * std::numbers::pi)
            num.push_back("(i)");
        else if (e.angle == -0.5 * std::numbers::pi)
            num.push_back("(-i)");
        else
            num.push_back("cis(" + detail::fmt17(e.angle) + ")");
    }

    for (const Factor& f : e.factors) {
        const int mag = f.exponent < 0 ? -f.exponent : f.exponent;
        std::string tok = detail::print_atom(f.atom);
        if (mag != 1) tok += "^" + std::to_string(mag);
        const bool inner = atom_class(f.atom) != AtomClass::Outer;
        if (inner) {
            // normalized inner factors carry sign in the exponent only
            num.push_back(f.exponent < 0 ? "conj(" + tok + ")" : tok);
        } else {
            if (f.conjugated) tok = "conj(" + tok + ")";
            (f.exponent < 0 ? den : num).push_back(tok);
        }
    }

    std::string out;
    if (num.empty()) out = "1";
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (i) out += "*";
        out += num[i];
    }
    for (const std::string& d : den) out += "/" + d;
    return out;
}

} // namespace tkl
