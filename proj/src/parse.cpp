#include "openbook/parse.hpp"

#include <cctype>
#include <optional>

namespace openbook {
namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Caret, LParen, RParen, Semi, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s, std::size_t offset = 0) : s_(s), i_(offset) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ >= s_.size()) {
            tok_ = {Tok::End, "", i_};
            return;
        }
        const std::size_t start = i_;
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            // rational literal p/q
            if (j < s_.size() && s_[j] == '/' && j + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
                ++j;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            }
            tok_ = {Tok::Number, s_.substr(i_, j - i_), start};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            tok_ = {Tok::Name, s_.substr(i_, j - i_), start};
            i_ = j;
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_ = {Tok::Plus, "+", start}; return;
            case '-': tok_ = {Tok::Minus, "-", start}; return;
            case '*': tok_ = {Tok::Star, "*", start}; return;
            case '^': tok_ = {Tok::Caret, "^", start}; return;
            case '(': tok_ = {Tok::LParen, "(", start}; return;
            case ')': tok_ = {Tok::RParen, ")", start}; return;
            case ';': tok_ = {Tok::Semi, ";", start}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& s_;
    std::size_t i_;
    Token tok_;
};

Rational parse_rational_literal(const std::string& text, std::size_t pos) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator", pos);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw ParseError("bad numeric literal '" + text + "'", pos);
    }
}

// Shared recursive-descent core. Variables resolve through a callback so the
// mixed and real paths can differ on conj()/i handling and name inference.
class PolyParser {
public:
    PolyParser(Lexer& lex, std::vector<std::string>& vars, bool declared, bool mixed)
        : lex_(lex), vars_(vars), declared_(declared), mixed_(mixed) {}

    // Parsing happens with a generous variable arity (slots for 9 names),
    // trimmed by the caller once the final count is known.
    CPoly parse_expression(int arity) {
        arity_ = arity;
        CPoly acc = parse_term();
        while (true) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Plus) {
                lex_.take();
                acc += parse_term();
            } else if (k == Tok::Minus) {
                lex_.take();
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    int max_var_used() const { return max_var_used_; }

private:
    CPoly parse_term() {
        CPoly acc = parse_factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            acc *= parse_factor();
        }
        return acc;
    }

    CPoly parse_factor() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return -parse_factor();
        }
        CPoly base = parse_atom();
        if (lex_.peek().kind == Tok::Caret) {
            auto caret = lex_.take();
            if (lex_.peek().kind != Tok::Number)
                throw ParseError("expected integer exponent after '^'", caret.pos);
            auto num = lex_.take();
            if (num.text.find('/') != std::string::npos)
                throw ParseError("exponent must be a non-negative integer", num.pos);
            unsigned long e = 0;
            try {
                e = std::stoul(num.text);
            } catch (const std::exception&) {
                throw ParseError("exponent out of range", num.pos);
            }
            if (e > kExponentCap) throw ParseError("exponent exceeds 2^16", num.pos);
            return base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    CPoly parse_atom() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                lex_.take();
                return CPoly::constant(2 * arity_, GaussianRational(parse_rational_literal(t.text, t.pos)));
            }
            case Tok::LParen: {
                lex_.take();
                CPoly inner = parse_expression(arity_);
                if (lex_.peek().kind != Tok::RParen)
                    throw ParseError("expected ')'", lex_.peek().pos);
                lex_.take();
                return inner;
            }
            case Tok::Name: {
                lex_.take();
                if (mixed_ && t.text == "i")
                    return CPoly::constant(2 * arity_, GaussianRational::i());
                if (t.text == "conj") {
                    if (!mixed_) throw ParseError("conj() is not allowed in real polynomials", t.pos);
                    if (lex_.peek().kind != Tok::LParen)
                        throw ParseError("expected '(' after conj", lex_.peek().pos);
                    lex_.take();
                    Token v = lex_.take();
                    if (v.kind != Tok::Name)
                        throw ParseError("conj() expects a variable", v.pos);
                    int j = resolve_var(v);
                    if (lex_.peek().kind != Tok::RParen)
                        throw ParseError("expected ')'", lex_.peek().pos);
                    lex_.take();
                    return CPoly::variable(2 * arity_, arity_ + j);
                }
                return CPoly::variable(2 * arity_, resolve_var(t));
            }
            case Tok::End: throw ParseError("unexpected end of input", t.pos);
            default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    int resolve_var(const Token& t) {
        for (std::size_t j = 0; j < vars_.size(); ++j) {
            if (vars_[j] == t.text) {
                max_var_used_ = std::max(max_var_used_, static_cast<int>(j) + 1);
                return static_cast<int>(j);
            }
        }
        if (declared_) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        // undeclared: z1..z9 (mixed) or x1..x9 (real)
        const char lead = mixed_ ? 'z' : 'x';
        if (t.text.size() == 2 && t.text[0] == lead && t.text[1] >= '1' && t.text[1] <= '9') {
            int idx = t.text[1] - '1';
            max_var_used_ = std::max(max_var_used_, idx + 1);
            return idx;
        }
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
    }

    Lexer& lex_;
    std::vector<std::string>& vars_;
    bool declared_;
    bool mixed_;
    int arity_ = 0;
    int max_var_used_ = 0;
};

// Reads an optional leading "vars: a, b, c" line. Returns the offset where
// polynomial text begins.
std::size_t read_vars_header(const std::string& text, std::vector<std::string>& vars) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (text.compare(i, 4, "vars") != 0) return 0;
    std::size_t j = i + 4;
    while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
    if (j >= text.size() || text[j] != ':') return 0;
    ++j;
    std::size_t eol = text.find('\n', j);
    if (eol == std::string::npos) eol = text.size();
    std::string name;
    for (std::size_t k = j; k <= eol; ++k) {
        char c = k < eol ? text[k] : ',';
        if (c == ',' ) {
            std::size_t a = 0, b = name.size();
            while (a < b && std::isspace(static_cast<unsigned char>(name[a]))) ++a;
            while (b > a && std::isspace(static_cast<unsigned char>(name[b - 1]))) --b;
            std::string trimmed = name.substr(a, b - a);
            if (!trimmed.empty()) vars.push_back(trimmed);
            name.clear();
        } else {
            name += c;
        }
    }
    if (vars.empty()) throw ParseError("empty vars: header", i);
    return eol < text.size() ? eol + 1 : eol;
}

// Trim a polynomial parsed with slack arity down to the final variable count.
CPoly trim_mixed_arity(const CPoly& p, int slack_n, int n) {
    CPoly out(2 * n);
    for (const auto& [e, c] : p.terms()) {
        Expo f(2 * n, 0);
        for (int j = 0; j < n; ++j) {
            f[j] = e[j];
            f[n + j] = e[slack_n + j];
        }
        out.add_term(f, c);
    }
    return out;
}

}  // namespace

ParsedMixed parse_mixed(const std::string& text) {
    std::vector<std::string> vars;
    std::size_t start = read_vars_header(text, vars);
    const bool declared = !vars.empty();
    const int slack = declared ? static_cast<int>(vars.size()) : 9;
    if (!declared)
        for (int j = 1; j <= 9; ++j) vars.push_back("z" + std::to_string(j));

    Lexer lex(text, start);
    PolyParser parser(lex, vars, declared, /*mixed=*/true);
    CPoly p = parser.parse_expression(slack);
    if (lex.peek().kind != Tok::End)
        throw ParseError("unexpected trailing input", lex.peek().pos);

    int n = declared ? slack : std::max(parser.max_var_used(), 1);
    vars.resize(n);
    return {MixedPolynomial(n, trim_mixed_arity(p, slack, n)), vars};
}

ParsedRealMap parse_real_map(const std::string& text) {
    std::vector<std::string> vars;
    std::size_t start = read_vars_header(text, vars);
    const bool declared = !vars.empty();
    const int slack = declared ? static_cast<int>(vars.size()) : 9;
    if (!declared)
        for (int j = 1; j <= 9; ++j) vars.push_back("x" + std::to_string(j));

    Lexer lex(text, start);
    std::vector<CPoly> comps;
    int used = 0;
    while (true) {
        PolyParser parser(lex, vars, declared, /*mixed=*/false);
        comps.push_back(parser.parse_expression(slack));
        used = std::max(used, parser.max_var_used());
        if (lex.peek().kind == Tok::Semi) {
            lex.take();
            continue;
        }
        if (lex.peek().kind == Tok::End) break;
        throw ParseError("unexpected trailing input", lex.peek().pos);
    }

    int m = declared ? slack : std::max(used, 1);
    if (static_cast<int>(comps.size()) > m)
        throw ParseError("map has more components than variables", text.size());
    vars.resize(m);

    RealPolyMap map;
    map.m = m;
    for (const auto& cp : comps) {
        RealPoly r(m);
        for (const auto& [e, c] : cp.terms()) {
            Expo f(e.begin(), e.begin() + m);
            if (c.im != 0) throw ParseError("complex coefficient in real polynomial", 0);
            r.add_term(f, c.re);
        }
        map.components.push_back(std::move(r));
    }
    return {map, vars};
}

namespace {

std::string rational_str(const Rational& r) { return to_string(r); }

// Coefficient rendering: "3", "-3/4", "i", "-2*i", "(2+3*i)".
std::string coeff_str(const GaussianRational& c, bool* negated_out, bool allow_sign_fold) {
    *negated_out = false;
    if (c.im == 0) {
        Rational r = c.re;
        if (allow_sign_fold && r < 0) {
            *negated_out = true;
            r = -r;
        }
        return rational_str(r);
    }
    if (c.re == 0) {
        Rational b = c.im;
        if (allow_sign_fold && b < 0) {
            *negated_out = true;
            b = -b;
        }
        if (b == 1) return "i";
        return rational_str(b) + "*i";
    }
    std::string s = "(" + rational_str(c.re);
    if (c.im > 0)
        s += c.im == 1 ? "+i" : "+" + rational_str(c.im) + "*i";
    else
        s += c.im == -1 ? "-i" : "-" + rational_str(-c.im) + "*i";
    return s + ")";
}

std::string monomial_str(const Expo& e, int n, const std::vector<std::string>& vars, bool mixed) {
    std::string s;
    auto append = [&](const std::string& name, std::uint32_t k) {
        if (!k) return;
        if (!s.empty()) s += "*";
        s += name;
        if (k > 1) s += "^" + std::to_string(k);
    };
    for (int j = 0; j < n; ++j) append(vars[j], e[j]);
    if (mixed)
        for (int j = 0; j < n; ++j) append("conj(" + vars[j] + ")", e[n + j]);
    return s;
}

template <class C>
std::string poly_str(const Poly<C>& p, int n, const std::vector<std::string>& vars, bool mixed) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, craw] : p.sorted_terms()) {
        GaussianRational c;
        convert_coeff(craw, c);
        bool neg = false;
        std::string cs = coeff_str(c, &neg, true);
        std::string ms = monomial_str(e, n, vars, mixed);
        std::string body;
        if (ms.empty())
            body = cs;
        else if (cs == "1")
            body = ms;
        else
            body = cs + "*" + ms;
        if (first) {
            out += neg ? "-" + body : body;
            first = false;
        } else {
            out += neg ? " - " + body : " + " + body;
        }
    }
    return out;
}

}  // namespace

std::string to_string(const MixedPolynomial& f, const std::vector<std::string>& vars) {
    return poly_str(f.poly(), f.nvars(), vars, true);
}

std::string to_string(const RealPoly& f, const std::vector<std::string>& vars) {
    return poly_str(f, f.nvars(), vars, false);
}

std::string to_string(const RealPolyMap& map, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < map.components.size(); ++i) {
        if (i) s += "; ";
        s += to_string(map.components[i], vars);
    }
    return s;
}

std::vector<std::string> default_z_names(int n) {
    std::vector<std::string> v;
    for (int j = 1; j <= n; ++j) v.push_back("z" + std::to_string(j));
    return v;
}

std::vector<std::string> default_x_names(int m) {
    std::vector<std::string> v;
    for (int j = 1; j <= m; ++j) v.push_back("x" + std::to_string(j));
    return v;
}

}  // namespace openbook
