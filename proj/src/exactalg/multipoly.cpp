#include "exactalg/multipoly.hpp"

#include <cctype>
#include <optional>

namespace heights::exactalg {

mpz_class zmultipoly_int_content(const ZMultiPoly& p) {
    mpz_class g = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZMultiPoly zmultipoly_exact_div(const ZMultiPoly& a, const ZMultiPoly& b) {
    if (b.is_zero()) throw MathError("polynomial division by zero");
    if (a.is_zero()) return a;
    int nv = a.nvars() >= 1 ? a.nvars() : b.nvars();
    ZMultiPoly rem = a;
    ZMultiPoly quo = ZMultiPoly::zero(nv);
    const Monomial& ltb = b.leading_monomial();
    const mpz_class& lcb = b.leading_coeff();
    while (!rem.is_zero()) {
        const Monomial& lta = rem.leading_monomial();
        if (nv >= 1 && !lta.divisible_by(ltb, nv)) throw MathError("polynomial division not exact");
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.leading_coeff().get_mpz_t(), lcb.get_mpz_t());
        if (r != 0) throw MathError("polynomial division not exact");
        Monomial mq = nv >= 1 ? lta.divide(ltb, nv) : Monomial::one();
        ZMultiPoly t = ZMultiPoly::term(nv, mq, q);
        quo += t;
        rem -= b.times_term(mq, q);
    }
    return quo;
}

namespace {

struct Token {
    enum Kind { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd } kind;
    std::string text;
};

class Lexer {
   public:
    explicit Lexer(const std::string& s) : s_(s) {}
    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::kEnd, ""};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {Token::kNumber, s_.substr(start, pos_ - start)};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::kIdent, s_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
            case '+':
                return {Token::kPlus, "+"};
            case '-':
                return {Token::kMinus, "-"};
            case '*':
                return {Token::kStar, "*"};
            case '/':
                return {Token::kSlash, "/"};
            case '^':
                return {Token::kCaret, "^"};
            case '(':
                return {Token::kLParen, "("};
            case ')':
                return {Token::kRParen, ")"};
            default:
                throw UsageError(std::string("unexpected character '") + c + "' in polynomial");
        }
    }

   private:
    const std::string& s_;
    size_t pos_ = 0;
};

class Parser {
   public:
    Parser(const std::string& text, const std::vector<std::string>& names)
        : lexer_(text), names_(names), nvars_(static_cast<int>(names.size())) {
        advance();
    }

    QMultiPoly parse() {
        QMultiPoly p = expr();
        if (cur_.kind != Token::kEnd) throw UsageError("trailing input after polynomial: '" + cur_.text + "'");
        return p;
    }

   private:
    void advance() { cur_ = lexer_.next(); }

    QMultiPoly expr() {
        bool neg = false;
        while (cur_.kind == Token::kPlus || cur_.kind == Token::kMinus) {
            if (cur_.kind == Token::kMinus) neg = !neg;
            advance();
        }
        QMultiPoly acc = term();
        if (neg) acc = -acc;
        while (cur_.kind == Token::kPlus || cur_.kind == Token::kMinus) {
            bool sub = cur_.kind == Token::kMinus;
            advance();
            QMultiPoly t = term();
            acc = sub ? acc - t : acc + t;
        }
        return acc;
    }

    QMultiPoly term() {
        QMultiPoly acc = factor();
        while (true) {
            if (cur_.kind == Token::kStar) {
                advance();
                acc *= factor();
            } else if (cur_.kind == Token::kSlash) {
                advance();
                QMultiPoly d = factor();
                if (!d.is_constant() || d.is_zero())
                    throw UsageError("division only by nonzero constants in polynomial input");
                acc = acc.scaled(1 / d.constant_coeff());
            } else if (cur_.kind == Token::kNumber || cur_.kind == Token::kIdent ||
                       cur_.kind == Token::kLParen) {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    QMultiPoly factor() {
        QMultiPoly base = atom();
        while (cur_.kind == Token::kCaret) {
            advance();
            if (cur_.kind != Token::kNumber) throw UsageError("exponent must be a nonnegative integer");
            long e = std::stol(cur_.text);
            advance();
            QMultiPoly out = QMultiPoly::constant(nvars_, 1);
            for (long i = 0; i < e; ++i) out *= base;
            base = out;
        }
        return base;
    }

    QMultiPoly atom() {
        if (cur_.kind == Token::kNumber) {
            mpq_class v(cur_.text);
            advance();
            return QMultiPoly::constant(nvars_, v);
        }
        if (cur_.kind == Token::kIdent) {
            std::string run = cur_.text;
            advance();
            return ident_product(run);
        }
        if (cur_.kind == Token::kLParen) {
            advance();
            QMultiPoly p = expr();
            if (cur_.kind != Token::kRParen) throw UsageError("missing ')' in polynomial");
            advance();
            return p;
        }
        if (cur_.kind == Token::kMinus || cur_.kind == Token::kPlus) {
            bool neg = cur_.kind == Token::kMinus;
            advance();
            QMultiPoly p = factor();
            return neg ? -p : p;
        }
        throw UsageError("unexpected token '" + cur_.text + "' in polynomial");
    }

    // An identifier run either names one declared variable or decomposes into
    // a juxtaposition of declared names (greedy longest match), so both
    // "x*y" and "xy" parse when x and y are declared.
    QMultiPoly ident_product(const std::string& run) {
        for (int i = 0; i < nvars_; ++i)
            if (names_[i] == run) return QMultiPoly::variable(nvars_, i);
        QMultiPoly acc = QMultiPoly::constant(nvars_, 1);
        size_t pos = 0;
        while (pos < run.size()) {
            int best = -1;
            size_t best_len = 0;
            for (int i = 0; i < nvars_; ++i) {
                const std::string& nm = names_[i];
                if (nm.size() > best_len && run.compare(pos, nm.size(), nm) == 0) {
                    best = i;
                    best_len = nm.size();
                }
            }
            if (best < 0) throw UsageError("unknown variable in '" + run + "'");
            acc *= QMultiPoly::variable(nvars_, best);
            pos += best_len;
        }
        return acc;
    }

    Lexer lexer_;
    Token cur_;
    const std::vector<std::string>& names_;
    int nvars_;
};

}  // namespace

QMultiPoly parse_multipoly(const std::string& text, const std::vector<std::string>& var_names) {
    if (var_names.empty() || var_names.size() > Monomial::kMaxVars)
        throw UsageError("variable count out of supported range");
    return Parser(text, var_names).parse();
}

ZMultiPoly zmultipoly_from_q(const QMultiPoly& p, mpz_class* denominator_out) {
    mpz_class den = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    ZMultiPoly out = ZMultiPoly::zero(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        mpq_class scaled = c * mpq_class(den);
        out.mutable_terms().emplace_back(m, scaled.get_num());
    }
    if (denominator_out) *denominator_out = den;
    return out;
}

}  // namespace heights::exactalg
